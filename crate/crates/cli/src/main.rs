//! Batch command-line surface over the symdisc library.
//!
//! Exit codes: 0 on success (membership included), 1 on a negative domain
//! verdict (outside, invalid data, failed criteria), 2 on parse or usage
//! errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use symdisc::error::Error as CoreError;
use symdisc::gamma::{
    fundamental_tuple, gamma_tuple_from_json, verify_fot_identities, verify_tetra,
};
use symdisc::geometry::{classify, recover_c_banded, Region, SymPoint};
use symdisc::hardy::{build_dilation, default_degree, verify_dilation_moments, verify_minimality};
use symdisc::matrix::{matrix_from_json, matrix_to_json, CMatrix};
use symdisc::spectrum::{taylor_spectrum, CommutingTuple};
use symdisc::variety::{build_variety, trace, vn_inequality_check};

#[derive(Parser)]
#[command(
    name = "symdisc",
    version,
    about = "Operator theory on the symmetrized polydisc"
)]
struct Cli {
    /// Numerical tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Seed for all randomized sampling.
    #[arg(long, global = true, default_value_t = 20260810)]
    seed: u64,
    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Truncation degree for Hardy-space constructions; defaults to
    /// max(20, first power with a dead tail).
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Polar grid as RxA (radial x angular).
    #[arg(long, global = true, default_value = "5x16", value_parser = parse_grid)]
    grid: (usize, usize),
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a symmetrized point against the closed domain.
    Member { point: PathBuf },
    /// Taylor joint spectrum of a commuting tuple (JSON array of matrices).
    Spectrum { tuple: PathBuf },
    /// Fundamental operator tuple and identity residual table.
    Fot { tuple: PathBuf },
    /// Variety validation and tracing.
    Variety {
        #[command(subcommand)]
        action: VarietyAction,
    },
    /// Truncated isometric dilation with the residual table.
    Dilate {
        tuple: PathBuf,
        /// Directory for the bundle block matrices.
        #[arg(long)]
        dump_blocks: Option<PathBuf>,
    },
    /// Von Neumann inequality over the tuple's distinguished variety.
    Vncheck {
        tuple: PathBuf,
        /// Number of sampled polynomials.
        #[arg(long, default_value_t = 100)]
        polys: usize,
        /// Wire the variety to the tuple's own FOT instead of the adjoint's.
        #[arg(long)]
        literal: bool,
    },
    /// Run the acceptance criteria.
    Selftest,
}

#[derive(Subcommand)]
enum VarietyAction {
    /// Validate pencil data and print the validity report.
    Check { matrices: PathBuf },
    /// Emit the fiber trace as CSV over the polar grid.
    Trace { matrices: PathBuf },
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (r, a) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| "grid must look like 5x16".to_string())?;
    let radial = r.parse().map_err(|_| "bad radial count".to_string())?;
    let angular = a.parse().map_err(|_| "bad angular count".to_string())?;
    if radial == 0 || angular == 0 {
        return Err("grid sizes must be ≥ 1".to_string());
    }
    Ok((radial, angular))
}

/// Full-precision float for CSV cells (17 significant digits).
fn full(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CoreError> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn read_json(path: &PathBuf) -> Result<serde_json::Value, CoreError> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn matrices_from_json(v: &serde_json::Value) -> Result<Vec<CMatrix>, CoreError> {
    let arr = v
        .as_array()
        .ok_or_else(|| CoreError::Usage("expected a JSON array of matrices".into()))?;
    if arr.is_empty() {
        return Err(CoreError::Usage("empty matrix list".into()));
    }
    arr.iter().map(matrix_from_json).collect()
}

/// 2 for parse/usage trouble, 1 for negative domain verdicts.
fn exit_code_for(e: &CoreError) -> u8 {
    match e {
        CoreError::Usage(_) | CoreError::Json(_) | CoreError::Io(_) => 2,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<u8, CoreError> {
    match &cli.command {
        Command::Member { point } => {
            let x: SymPoint = serde_json::from_value(read_json(point)?)?;
            x.validate()?;
            let region = classify(&x, cli.tol);
            let mut lines = format!("{region}\n");
            if region != Region::Outside {
                // recovered coordinate chain, level by level
                let mut coords = x.coords();
                while coords.len() > 1 {
                    let level = SymPoint::from_coords(&coords)?;
                    match recover_c_banded(&level, 1e-8) {
                        Ok(c) => {
                            let printed: Vec<String> = c
                                .iter()
                                .map(|z| format!("[{}, {}]", full(z.re), full(z.im)))
                                .collect();
                            lines.push_str(&format!(
                                "c-level {}: [{}]\n",
                                coords.len() - 1,
                                printed.join(", ")
                            ));
                            coords = c;
                        }
                        Err(_) => break,
                    }
                }
            }
            emit(&cli.out, &lines)?;
            Ok(if region == Region::Outside { 1 } else { 0 })
        }
        Command::Spectrum { tuple } => {
            let mats = matrices_from_json(&read_json(tuple)?)?;
            let t = CommutingTuple::new(mats, cli.tol.max(1e-10) * 16.0)?;
            let spec = taylor_spectrum(&t, cli.tol.max(1e-9))?;
            emit(
                &cli.out,
                &format!("{}\n", serde_json::to_string_pretty(&spec)?),
            )?;
            Ok(0)
        }
        Command::Fot { tuple } => {
            let t = gamma_tuple_from_json(&read_json(tuple)?, cli.tol.max(1e-9) * 16.0)?;
            let a = fundamental_tuple(&t, cli.tol.max(1e-7))?;
            let b = fundamental_tuple(&t.adjoint()?, cli.tol.max(1e-7))?;
            let tetra = verify_tetra(&t, &a);
            let identities = verify_fot_identities(&t, &a, &b)?;
            let report = serde_json::json!({
                "defect_rank": t.defect.rank,
                "F": a.matrices.iter().map(matrix_to_json).collect::<Vec<_>>(),
                "adjoint_F": b.matrices.iter().map(matrix_to_json).collect::<Vec<_>>(),
                "residuals": a.residuals,
                "radius_margin": a.radius_margin,
                "tetra_residuals": tetra,
                "identities": identities,
            });
            emit(
                &cli.out,
                &format!("{}\n", serde_json::to_string_pretty(&report)?),
            )?;
            Ok(0)
        }
        Command::Variety { action } => match action {
            VarietyAction::Check { matrices } => {
                let mats = matrices_from_json(&read_json(matrices)?)?;
                match build_variety(mats, cli.tol.max(1e-9)) {
                    Ok(v) => {
                        let report = serde_json::json!({
                            "n": v.n,
                            "order": v.order,
                            "valid": true,
                            "validity": v.validity,
                        });
                        emit(
                            &cli.out,
                            &format!("{}\n", serde_json::to_string_pretty(&report)?),
                        )?;
                        Ok(0)
                    }
                    Err(CoreError::InvalidVarietyData { condition, defect }) => {
                        let report = serde_json::json!({
                            "valid": false,
                            "condition": condition,
                            "defect": defect,
                        });
                        emit(
                            &cli.out,
                            &format!("{}\n", serde_json::to_string_pretty(&report)?),
                        )?;
                        Ok(1)
                    }
                    Err(e) => Err(e),
                }
            }
            VarietyAction::Trace { matrices } => {
                let mats = matrices_from_json(&read_json(matrices)?)?;
                let v = build_variety(mats, cli.tol.max(1e-9))?;
                let samples = trace(&v, cli.grid.0, cli.grid.1, cli.tol)?;
                let mut csv = String::from("p_re,p_im");
                for i in 1..v.n {
                    csv.push_str(&format!(",s{i}_re,s{i}_im"));
                }
                csv.push_str(",region\n");
                for fs in &samples {
                    for (s, tag) in fs.points.iter().zip(&fs.region_tags) {
                        csv.push_str(&full(fs.p.re));
                        csv.push(',');
                        csv.push_str(&full(fs.p.im));
                        for z in s {
                            csv.push(',');
                            csv.push_str(&full(z.re));
                            csv.push(',');
                            csv.push_str(&full(z.im));
                        }
                        csv.push_str(&format!(",{tag}\n"));
                    }
                }
                emit(&cli.out, &csv)?;
                Ok(0)
            }
        },
        Command::Dilate { tuple, dump_blocks } => {
            let t = gamma_tuple_from_json(&read_json(tuple)?, cli.tol.max(1e-9) * 16.0)?;
            let degree = cli.degree.unwrap_or_else(|| default_degree(&t.p_op));
            let bundle = build_dilation(&t, degree, cli.tol.max(1e-8))?;
            let moments = verify_dilation_moments(&bundle, &t, 3);
            let minimality = verify_minimality(&bundle, &t);
            let report = serde_json::json!({
                "degree": bundle.hardy.degree,
                "base_dim": bundle.hardy.base_dim,
                "degenerate": bundle.degenerate,
                "tail_bound": bundle.tail_bound,
                "isometry_defect": bundle.isometry_defect,
                "intertwine_residuals": bundle.intertwine_residuals,
                "shift_residual": bundle.shift_residual,
                "pencil_margin": bundle.pencil_margin,
                "pencil_exact": bundle.pencil_exact,
                "moment_max_residual": moments.max_residual,
                "extension_residual": moments.extension_residual,
                "minimal": minimality.minimal,
                "span_rank": minimality.span_rank,
            });
            if let Some(dir) = dump_blocks {
                fs::create_dir_all(dir)?;
                for (i, m) in bundle.t_ops.iter().enumerate() {
                    fs::write(
                        dir.join(format!("t{}.json", i + 1)),
                        serde_json::to_string_pretty(&matrix_to_json(m))?,
                    )?;
                }
                fs::write(
                    dir.join("v.json"),
                    serde_json::to_string_pretty(&matrix_to_json(&bundle.v_op))?,
                )?;
                fs::write(
                    dir.join("w.json"),
                    serde_json::to_string_pretty(&matrix_to_json(&bundle.w_op))?,
                )?;
            }
            emit(
                &cli.out,
                &format!("{}\n", serde_json::to_string_pretty(&report)?),
            )?;
            Ok(0)
        }
        Command::Vncheck {
            tuple,
            polys,
            literal,
        } => {
            let t = gamma_tuple_from_json(&read_json(tuple)?, cli.tol.max(1e-9) * 16.0)?;
            let wired = if *literal {
                fundamental_tuple(&t, cli.tol.max(1e-7))?
            } else {
                fundamental_tuple(&t.adjoint()?, cli.tol.max(1e-7))?
            };
            let v = build_variety(wired.matrices.clone(), cli.tol.max(1e-9))?;
            let rep = vn_inequality_check(
                &t,
                &v,
                *polys,
                cli.seed,
                cli.grid.0,
                cli.grid.1,
                cli.tol.max(1e-7),
                *literal,
            )?;
            let report = serde_json::json!({
                "worst_slack": rep.worst_slack,
                "worst_poly": rep.worst_poly,
                "fot_distance": rep.fot_distance,
                "polys": polys,
                "literal_wiring": literal,
            });
            emit(
                &cli.out,
                &format!("{}\n", serde_json::to_string_pretty(&report)?),
            )?;
            Ok(if rep.worst_slack >= -cli.tol { 0 } else { 1 })
        }
        Command::Selftest => {
            let outcomes = symdisc::acceptance::run_all(cli.seed, cli.tol);
            let mut all = true;
            let mut table = String::new();
            for o in &outcomes {
                table.push_str(&o.line());
                table.push('\n');
                all &= o.pass;
            }
            table.push_str(&format!(
                "{}/{} criteria passed\n",
                outcomes.iter().filter(|o| o.pass).count(),
                outcomes.len()
            ));
            emit(&cli.out, &table)?;
            Ok(if all { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
