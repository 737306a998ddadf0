//! Property-based acceptance suite at desk scale.
//!
//! Each criterion is seeded, self-timed, and returns a pass/fail outcome
//! with a one-line detail.  Thresholds are pinned to their stated values at
//! the default tolerance `1e-8` and scale linearly with a caller-supplied
//! tolerance, so tightening the tolerance surfaces the truncation-bounded
//! checks honestly.

use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::gamma::{
    self, check_gamma_contraction, classify_tuple, fundamental_tuple, gamma3_to_gamma2,
    generate_pure, verify_fot_identities, verify_tetra, GammaTuple,
};
use crate::geometry::{self, classify, classify_point, gamma2_closed_form, Region, SymPoint};
use crate::hardy::{
    build_dilation, model_compression, verify_admissibility, verify_dilation_moments, verify_l0,
};
use crate::matrix::{c64, re, CMatrix, C64};
use crate::sample;
use crate::spectrum::{matching_distance, taylor_spectrum, CommutingTuple};
use crate::variety::{
    boundary_exit_report, build_variety, contains, fiber, project_g3_to_g2,
    projection_fiber_distance, separation_certificate, trace, vn_inequality_check, VarietyRep,
};

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: f64,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:02} {:<28} {:>7.2}s/{:<4.0}s  {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.limit_seconds,
            self.detail
        )
    }
}

/// Names and time limits, in criterion order.
pub const CRITERIA: [(&str, f64); 11] = [
    ("membership-oracle-n2", 5.0),
    ("symmetrization-soundness", 10.0),
    ("joint-spectrum-reconstruction", 30.0),
    ("fot-residuals", 60.0),
    ("fot-identity-suite", 60.0),
    ("dilation-fidelity", 120.0),
    ("model-round-trip", 60.0),
    ("variety-distinguishedness", 60.0),
    ("von-neumann-on-varieties", 120.0),
    ("separation-certificates", 30.0),
    ("g3-to-g2-projection", 30.0),
];

/// Run one criterion (1-based id).
pub fn run_criterion(id: usize, seed: u64, tol: f64) -> CriterionOutcome {
    let (name, limit) = CRITERIA[id - 1];
    let start = Instant::now();
    let result = match id {
        1 => c01_membership_oracle(seed, tol),
        2 => c02_symmetrization_soundness(seed, tol),
        3 => c03_joint_spectrum(seed, tol),
        4 => c04_fot_residuals(seed, tol),
        5 => c05_fot_identity_suite(seed, tol),
        6 => c06_dilation_fidelity(seed, tol),
        7 => c07_model_round_trip(seed, tol),
        8 => c08_variety_distinguishedness(seed, tol),
        9 => c09_von_neumann(seed, tol),
        10 => c10_separation(seed, tol),
        11 => c11_projection(seed, tol),
        _ => Err(crate::error::Error::usage("criterion id out of range")),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (pass, detail) = match result {
        Ok((pass, detail)) => (pass, detail),
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionOutcome {
        id,
        name,
        pass: pass && seconds < limit,
        detail,
        seconds,
        limit_seconds: limit,
    }
}

/// Run the full suite.
pub fn run_all(seed: u64, tol: f64) -> Vec<CriterionOutcome> {
    (1..=CRITERIA.len())
        .map(|id| run_criterion(id, seed, tol))
        .collect()
}

/// Stated thresholds are pinned at tol = 1e-8 and scale with the caller's
/// tolerance.
fn scaled(stated: f64, tol: f64) -> f64 {
    stated * (tol / 1e-8)
}

// --- corpora -------------------------------------------------------------

/// Commuting normal tuple of `arity` diagonal matrices conjugated by a
/// shared unitary, with planted joint eigenvalues.
fn normal_tuple(order: usize, joint_eigs: &[Vec<C64>], rng: &mut impl Rng) -> Vec<CMatrix> {
    let arity = joint_eigs[0].len();
    let q = sample::random_unitary(order, rng);
    (0..arity)
        .map(|i| {
            let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(
                joint_eigs.iter().map(|p| p[i]).collect(),
            ));
            &q * d * q.adjoint()
        })
        .collect()
}

/// Pencil data for `generate_pure` at level `n`: commuting normal matrices
/// whose joint eigenvalues are comfortably interior symmetrized points.
/// Rejection-sampled against the scaled-pencil validation; the sampling
/// radius shrinks with failed attempts so every seed terminates.
fn admissible_pencil_data(n: usize, order: usize, rng: &mut impl Rng) -> Vec<CMatrix> {
    let mut attempts = 0u32;
    loop {
        let radius = 0.7 * 0.95f64.powi((attempts / 4) as i32);
        attempts += 1;
        let joint: Vec<Vec<C64>> = (0..order)
            .map(|_| {
                let z: Vec<C64> = (0..n - 1)
                    .map(|_| sample::unit_disc(rng) * radius)
                    .collect();
                geometry::symmetrize(&z)
                    .map(|x| x.coords())
                    .unwrap_or_else(|_| vec![c64(0.0, 0.0); n - 1])
            })
            .collect();
        let f = normal_tuple(order, &joint, rng);
        if gamma::scaled_pencil_margin(&f, n, 32)
            .map(|m| m <= -1e-4)
            .unwrap_or(false)
        {
            return f;
        }
    }
}

/// Pure generated corpus for n = 3 with total order ≤ `max_order`.
fn generated_corpus(seed: u64, count: usize, max_order: usize) -> Result<Vec<GammaTuple>> {
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let mut rng = sample::stream(seed, "acceptance-generated", k as u64);
        let m = 1 + (k % 3);
        let max_n = (max_order / m).saturating_sub(1).max(1);
        let big_n = 1 + rng.random_range(0..max_n.min(6));
        let f = admissible_pencil_data(3, m, &mut rng);
        out.push(generate_pure(&f, big_n, 1e-8)?);
    }
    Ok(out)
}

/// Seeded valid varieties for n ∈ {2, 3}: normal data with interior margin
/// plus the nilpotent staples.
fn variety_corpus(seed: u64, count: usize) -> Result<Vec<VarietyRep>> {
    let mut out = Vec::new();
    let nil = CMatrix::from_row_slice(2, 2, &[re(0.0), re(1.0), re(0.0), re(0.0)]);
    out.push(build_variety(vec![nil.clone()], 1e-9)?);
    out.push(build_variety(vec![nil.clone(), nil], 1e-9)?);
    let mut k = 0u64;
    while out.len() < count {
        let mut rng = sample::stream(seed, "acceptance-variety", k);
        k += 1;
        let order = 2 + (k as usize % 5);
        if k.is_multiple_of(2) {
            // n = 2: single normal matrix with spectrum inside the disc
            let eigs: Vec<Vec<C64>> = (0..order)
                .map(|_| vec![sample::unit_disc(&mut rng) * 0.85])
                .collect();
            let f = normal_tuple(order, &eigs, &mut rng);
            if let Ok(v) = build_variety(f, 1e-8) {
                out.push(v);
            }
        } else {
            // n = 3: commuting normal pair with joint spectrum inside G_2
            let joint: Vec<Vec<C64>> = (0..order)
                .map(|_| {
                    let z = [
                        sample::unit_disc(&mut rng) * 0.8,
                        sample::unit_disc(&mut rng) * 0.8,
                    ];
                    geometry::symmetrize(&z).map(|x| x.coords()).unwrap()
                })
                .collect();
            let f = normal_tuple(order, &joint, &mut rng);
            if let Ok(v) = build_variety(f, 1e-8) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

// --- criteria ------------------------------------------------------------

fn c01_membership_oracle(seed: u64, tol: f64) -> Result<(bool, String)> {
    let mut rng = sample::stream(seed, "acceptance-c1", 0);
    let band = 1e-6;
    let mut compared = 0usize;
    let mut disagreements = 0usize;
    while compared < 10_000 {
        let s = c64(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let p = c64(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let m1 = s.norm() - 2.0;
        let m2 = (s - s.conj() * p).norm() - (1.0 - p.norm_sqr());
        if m1.abs() < band || m2.abs() < band || (p.norm() - 1.0).abs() < band {
            continue;
        }
        compared += 1;
        let x = SymPoint::new(vec![s], p)?;
        if classify(&x, tol).in_closure() != gamma2_closed_form(s, p) {
            disagreements += 1;
        }
    }
    Ok((
        disagreements == 0,
        format!("{compared} points compared, {disagreements} disagreements"),
    ))
}

fn c02_symmetrization_soundness(seed: u64, tol: f64) -> Result<(bool, String)> {
    let mut closure_failures = 0usize;
    let mut exterior_failures = 0usize;
    for n in [2usize, 3, 4] {
        let mut rng = sample::stream(seed, "acceptance-c2", n as u64);
        for _ in 0..10_000 {
            let z = sample::polydisc_point(n, &mut rng);
            if !classify(&geometry::symmetrize(&z)?, tol).in_closure() {
                closure_failures += 1;
            }
        }
        for _ in 0..1_000 {
            let mut z = sample::polydisc_point(n, &mut rng);
            let k = rng.random_range(0..n);
            let boost = rng.random_range(1.01f64..1.5);
            z[k] = Complex64::from_polar(boost, rng.random_range(0.0..std::f64::consts::TAU));
            if classify(&geometry::symmetrize(&z)?, tol) != Region::Outside {
                exterior_failures += 1;
            }
        }
    }
    Ok((
        closure_failures == 0 && exterior_failures == 0,
        format!("closure failures {closure_failures}, exterior failures {exterior_failures}"),
    ))
}

fn c03_joint_spectrum(seed: u64, tol: f64) -> Result<(bool, String)> {
    let threshold = scaled(1e-6, tol);
    let mut worst = 0.0f64;
    for k in 0..200u64 {
        let mut rng = sample::stream(seed, "acceptance-c3", k);
        let order = 2 + (k as usize % 11);
        let arity = 2 + (k as usize % 2);
        let (mats, planted) = sample::commuting_upper_family(order, arity, &mut rng);
        let q = sample::random_unitary(order, &mut rng);
        let conj: Vec<CMatrix> = mats.iter().map(|m| &q * m * q.adjoint()).collect();
        let t = CommutingTuple::new(conj, 1e-7)?;
        let spec = taylor_spectrum(&t, 1e-6)?;
        worst = worst.max(matching_distance(&spec.points, &planted));
    }
    Ok((
        worst <= threshold,
        format!("worst matching distance {worst:.3e} (≤ {threshold:.1e})"),
    ))
}

fn c04_fot_residuals(seed: u64, tol: f64) -> Result<(bool, String)> {
    let corpus = generated_corpus(seed, 100, 20)?;
    let resid_threshold = scaled(1e-8, tol);
    let radius_threshold = scaled(1e-6, tol);
    let mut worst_resid = 0.0f64;
    let mut worst_tetra = 0.0f64;
    let mut worst_radius = f64::NEG_INFINITY;
    for t in &corpus {
        let f = fundamental_tuple(t, 1e-7)?;
        worst_resid = worst_resid.max(f.residuals.iter().copied().fold(0.0, f64::max));
        worst_tetra = worst_tetra.max(verify_tetra(t, &f).iter().copied().fold(0.0, f64::max));
        worst_radius = worst_radius.max(f.radius_margin);
    }
    let pass = worst_resid <= resid_threshold
        && worst_tetra <= resid_threshold
        && worst_radius <= radius_threshold;
    Ok((
        pass,
        format!(
            "{} tuples: fot {worst_resid:.2e}, tetra {worst_tetra:.2e}, ω-margin {worst_radius:.2e}",
            corpus.len()
        ),
    ))
}

fn c05_fot_identity_suite(seed: u64, tol: f64) -> Result<(bool, String)> {
    let threshold = scaled(1e-8, tol);
    let mut worst = 0.0f64;
    let mut checked_dense = 0usize;
    let mut skipped_when_singular = true;

    // invertible-P corpus: conjugated diagonal tuples with |p| = 1/2
    for k in 0..20u64 {
        let mut rng = sample::stream(seed, "acceptance-c5-dense", k);
        let order = 2 + (k as usize % 4);
        let mut joint = Vec::with_capacity(order);
        while joint.len() < order {
            let z: Vec<C64> = (0..3).map(|_| sample::unit_disc(&mut rng) * 0.95).collect();
            let prod: C64 = z.iter().product();
            if prod.norm() < 0.2 {
                continue;
            }
            let fix = (0.5 / prod.norm()).powf(1.0 / 3.0);
            let z: Vec<C64> = z.iter().map(|w| w * fix).collect();
            if z.iter().all(|w| w.norm() <= 0.98) {
                joint.push(geometry::symmetrize(&z)?.coords());
            }
        }
        let mats = normal_tuple(order, &joint, &mut rng);
        let t = GammaTuple::new(mats[..2].to_vec(), mats[2].clone(), 1e-7)?;
        let a = fundamental_tuple(&t, 1e-7)?;
        let b = fundamental_tuple(&t.adjoint()?, 1e-7)?;
        let rep = verify_fot_identities(&t, &a, &b)?;
        if rep.skipped("self-commutator-balance") {
            return Ok((false, "dense-range example was wrongly gated".into()));
        }
        checked_dense += 1;
        worst = worst.max(rep.max_checked_residual());
    }

    // generated corpus: P is the block shift, so the dense-range identities
    // must report Skipped instead of false-failing
    for t in generated_corpus(seed.wrapping_add(1), 12, 16)? {
        let a = fundamental_tuple(&t, 1e-7)?;
        let b = fundamental_tuple(&t.adjoint()?, 1e-7)?;
        let rep = verify_fot_identities(&t, &a, &b)?;
        if !rep.skipped("self-commutator-balance") {
            skipped_when_singular = false;
        }
        worst = worst.max(rep.max_checked_residual());
    }
    let pass = worst <= threshold && skipped_when_singular;
    Ok((
        pass,
        format!(
            "worst residual {worst:.2e} (≤ {threshold:.1e}), {checked_dense} dense-range tuples, gating {}",
            if skipped_when_singular { "honest" } else { "broken" }
        ),
    ))
}

fn c06_dilation_fidelity(seed: u64, tol: f64) -> Result<(bool, String)> {
    let corpus = generated_corpus(seed, 24, 18)?;
    let mut worst_rel = 0.0f64;
    let mut worst_tail = 0.0f64;
    for t in &corpus {
        let degree = t.order / t.defect_adj.rank.max(1) + 2;
        let bundle = build_dilation(t, degree, 1e-7)?;
        worst_tail = worst_tail.max(bundle.tail_bound);
        let moments = verify_dilation_moments(&bundle, t, 4);
        // stated: moment residuals ≤ 10·tail_bound, tail ≤ 1e-8 for
        // nilpotent P; the floor keeps the exact (tail = 0) case meaningful
        let budget = 10.0 * bundle.tail_bound.max(scaled(1e-9, tol));
        worst_rel = worst_rel.max(moments.max_residual / budget);
    }
    let l0_threshold = scaled(1e-8, tol);
    let mut worst_l0 = 0.0f64;
    for k in 0..6u64 {
        let mut rng = sample::stream(seed, "acceptance-c6-l0", k);
        let m = 1 + (k as usize % 3);
        let p = sample::random_contraction(m, 0.5, &mut rng);
        let rep = verify_l0(&p, 40, 16)?;
        worst_l0 = worst_l0.max(rep.offband_residual).max(rep.maclaurin_defect);
    }
    let pass = worst_rel <= 1.0 && worst_tail <= scaled(1e-8, tol) && worst_l0 <= l0_threshold;
    Ok((
        pass,
        format!(
            "{} dilations: moments/budget {worst_rel:.2e}, tail {worst_tail:.2e}, L0 {worst_l0:.2e}",
            corpus.len()
        ),
    ))
}

fn c07_model_round_trip(seed: u64, tol: f64) -> Result<(bool, String)> {
    let threshold = scaled(1e-8, tol);
    let corpus = generated_corpus(seed, 24, 18)?;
    let mut worst_model = 0.0f64;
    let mut worst_adm = 0.0f64;
    for t in &corpus {
        let degree = t.order / t.defect_adj.rank.max(1) + 2;
        let model = model_compression(t, degree, 1e-7)?;
        worst_model = worst_model.max(model.equivalence_residual);
        let a = fundamental_tuple(t, 1e-7)?;
        let b = fundamental_tuple(&t.adjoint()?, 1e-7)?;
        let adm = verify_admissibility(&a, &b, &t.p_op, 32)?;
        worst_adm = worst_adm.max(adm.max_residual());
    }
    let pass = worst_model <= threshold && worst_adm <= threshold;
    Ok((
        pass,
        format!(
            "{} models: equivalence {worst_model:.2e}, admissibility {worst_adm:.2e} (≤ {threshold:.1e})",
            corpus.len()
        ),
    ))
}

fn c08_variety_distinguishedness(seed: u64, tol: f64) -> Result<(bool, String)> {
    let corpus = variety_corpus(seed, 50)?;
    let exit_threshold = scaled(1e-6, tol);
    let mut interior_failures = 0usize;
    let mut worst_exit = 0.0f64;
    for v in &corpus {
        for fs in trace(v, 4, 8, 1e-7)? {
            if fs.p.norm() < 1.0 - 1e-9 {
                for tag in &fs.region_tags {
                    if *tag == Region::Outside {
                        interior_failures += 1;
                    }
                }
            }
        }
        let rep = boundary_exit_report(v, 360, 1e-8)?;
        worst_exit = worst_exit.max(rep.max_defect);
    }
    let pass = interior_failures == 0 && worst_exit <= exit_threshold;
    Ok((
        pass,
        format!(
            "{} varieties: interior failures {interior_failures}, worst exit defect {worst_exit:.2e}",
            corpus.len()
        ),
    ))
}

fn c09_von_neumann(seed: u64, tol: f64) -> Result<(bool, String)> {
    let threshold = scaled(1e-6, tol);
    let mut worst_slack = f64::INFINITY;
    let mut tuples = 0usize;
    for k in 0..6u64 {
        let mut rng = sample::stream(seed, "acceptance-c9", k);
        let m = 1 + (k as usize % 2);
        let f = admissible_pencil_data(3, m, &mut rng);
        let v = match build_variety(f.clone(), 1e-8) {
            Ok(v) => v,
            Err(_) => continue,
        };
        // includes an order-12 tuple (m = 2, N = 5)
        let big_n = if k == 5 { 5 } else { 2 + (k as usize % 3) };
        let t = generate_pure(&f, big_n, 1e-8)?;
        let rep = vn_inequality_check(&t, &v, 100, seed ^ k, 6, 24, 1e-6, false)?;
        worst_slack = worst_slack.min(rep.worst_slack);
        tuples += 1;
    }

    // non-example family: diagonal tuple with a joint eigenvalue on
    // ∂Γ_3 \ bΓ_3 must be rejected at the hypothesis wiring
    let s1 = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![re(2.0), re(0.0)]));
    let s2 = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![re(1.0), re(0.0)]));
    let p = CMatrix::zeros(2, 2);
    let bad = GammaTuple::new(vec![s1, s2], p, 1e-9)?;
    let b = fundamental_tuple(&bad.adjoint()?, 1e-7)?;
    let rejected = build_variety(b.matrices.clone(), 1e-8).is_err();

    let pass = tuples >= 4 && worst_slack >= -threshold && rejected;
    Ok((
        pass,
        format!(
            "{tuples} tuples × 100 polynomials: worst slack {worst_slack:.2e}, boundary family {}",
            if rejected { "rejected" } else { "NOT rejected" }
        ),
    ))
}

fn c10_separation(seed: u64, tol: f64) -> Result<(bool, String)> {
    let margin = scaled(1e-8, tol);
    let nil = CMatrix::from_row_slice(2, 2, &[re(0.0), re(1.0), re(0.0), re(0.0)]);
    let varieties = [
        build_variety(vec![nil.clone()], 1e-9)?,
        build_variety(vec![nil.clone(), nil], 1e-9)?,
        {
            let mut rng = sample::stream(seed, "acceptance-c10-v", 0);
            let joint: Vec<Vec<C64>> = (0..3)
                .map(|_| {
                    let z = [
                        sample::unit_disc(&mut rng) * 0.8,
                        sample::unit_disc(&mut rng) * 0.8,
                    ];
                    geometry::symmetrize(&z).map(|x| x.coords()).unwrap()
                })
                .collect();
            build_variety(normal_tuple(3, &joint, &mut rng), 1e-8)?
        },
    ];
    let mut checked = 0usize;
    let mut failures = 0usize;
    for (vi, v) in varieties.iter().enumerate() {
        let mut rng = sample::stream(seed, "acceptance-c10", vi as u64);
        let mut count = 0usize;
        while count < 1000 {
            let z = sample::polydisc_point(v.n, &mut rng);
            let x = geometry::symmetrize(&z)?;
            if contains(v, &x, 1e-7)? {
                continue;
            }
            count += 1;
            checked += 1;
            match separation_certificate(v, &x, 1e-9) {
                Ok(cert) => {
                    if cert.value_at_x <= cert.sup_on_variety + margin {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
    }
    Ok((
        failures == 0,
        format!("{checked} off-variety points, {failures} failed certificates"),
    ))
}

fn c11_projection(seed: u64, tol: f64) -> Result<(bool, String)> {
    let threshold = scaled(1e-6, tol);
    // projected varieties: radius < 1 and pushforward-fiber agreement
    let corpus: Vec<VarietyRep> = variety_corpus(seed, 20)?
        .into_iter()
        .filter(|v| v.n == 3)
        .collect();
    let mut worst_fiber = 0.0f64;
    let mut projected = 0usize;
    for v in &corpus {
        let image = project_g3_to_g2(v, 1e-8)?;
        projected += 1;
        let mut rng = sample::stream(seed, "acceptance-c11", projected as u64);
        for _ in 0..4 {
            let p = sample::unit_disc(&mut rng) * 0.9;
            worst_fiber = worst_fiber.max(projection_fiber_distance(v, &image, p, 1e-7)?);
        }
    }

    // tuple-level map on normal inputs passes the exact n = 2 check
    let mut tuple_ok = true;
    for k in 0..6u64 {
        let mut rng = sample::stream(seed, "acceptance-c11-t", k);
        let joint: Vec<Vec<C64>> = (0..3)
            .map(|_| {
                let z: Vec<C64> = (0..3).map(|_| sample::unit_disc(&mut rng) * 0.9).collect();
                geometry::symmetrize(&z).map(|x| x.coords()).unwrap()
            })
            .collect();
        let mats = normal_tuple(3, &joint, &mut rng);
        let t = GammaTuple::new(mats[..2].to_vec(), mats[2].clone(), 1e-7)?;
        let omega = sample::unit_circle(&mut rng);
        let (s, p) = gamma3_to_gamma2(&t, omega)?;
        let pair = GammaTuple::new(vec![s], p, 1e-6)?;
        let rep = check_gamma_contraction(&pair, 0, seed)?;
        if !(rep.exact && rep.spectrum_ok) {
            tuple_ok = false;
        }
    }

    // the non-converse example: source rejected, image accepted
    let source = SymPoint::new(vec![re(2.0), re(2.5)], re(0.5))?;
    let source_rejected = classify(&source, 1e-8) == Region::Outside;
    let mut image_accepted = true;
    for j in 0..16 {
        let omega = Complex64::from_polar(1.0, j as f64 / 16.0 * std::f64::consts::TAU);
        let s = (re(2.0) + omega * re(2.5)) / 3.0;
        let p = omega * 0.5;
        if !gamma2_closed_form(s, p) {
            image_accepted = false;
        }
    }

    let pass =
        worst_fiber <= threshold && tuple_ok && source_rejected && image_accepted && projected >= 5;
    Ok((
        pass,
        format!(
            "{projected} projections: fiber distance {worst_fiber:.2e}; tuple map {}; non-converse example {}",
            if tuple_ok { "exact-pass" } else { "failed" },
            if source_rejected && image_accepted { "reproduced" } else { "broken" }
        ),
    ))
}

// `classify_tuple` and `fiber` are exercised by the library tests; the
// acceptance suite links them here to keep the public surface honest.
#[allow(dead_code)]
fn _surface(t: &GammaTuple, v: &VarietyRep) -> Result<()> {
    let _ = classify_tuple(t, 1e-8)?;
    let _ = fiber(v, c64(0.0, 0.0), 1e-8)?;
    let _ = classify_point(&[c64(0.0, 0.0)], 1e-8);
    Ok(())
}
