//! Operator-tuple layer: `Γ_n`-contraction verification, fundamental
//! operator tuples and their identity suite, tuple classification, pure
//! tuple generation, and the `Γ_3 → Γ_2` map.
//!
//! A candidate `Γ_n`-contraction is a commuting tuple `(S_1, …, S_{n-1}, P)`
//! with `‖P‖ ≤ 1`.  Its fundamental operator tuple is the unique solution
//! `(F_1, …, F_{n-1})` on the defect space of `P` of
//! `S_i - S_{n-i}* P = D_P F_i D_P`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{self, Region};
use crate::matrix::schur;
use crate::matrix::{
    commutator, defect, hermitian_min_eig, normality_defect, nrm, numerical_radius, re, CMatrix,
    DefectData, C64,
};
use crate::poly::MPoly;
use crate::sample;
use crate::spectrum::{taylor_spectrum, CommutingTuple};

/// Defect-rank cutoff shared by all tuple constructions.
pub const RANK_TOL: f64 = 1e-10;

/// Candidate `Γ_n`-contraction `(S_1, …, S_{n-1}, P)` with derived defect
/// data for `P` and `P*`.
#[derive(Debug, Clone)]
pub struct GammaTuple {
    /// Level `n ≥ 2` (the tuple has `n` operators).
    pub n: usize,
    pub order: usize,
    pub s_ops: Vec<CMatrix>,
    pub p_op: CMatrix,
    pub defect: DefectData,
    pub defect_adj: DefectData,
    pub commutator_defect: f64,
    pub tol: f64,
}

impl GammaTuple {
    /// Certify dimensions, commutativity (including with `P`) and
    /// `‖P‖ ≤ 1 + tol`, then attach defect data.
    pub fn new(s_ops: Vec<CMatrix>, p_op: CMatrix, tol: f64) -> Result<Self> {
        if s_ops.is_empty() {
            return Err(Error::usage("GammaTuple: need n ≥ 2 (at least one S)"));
        }
        let order = p_op.nrows();
        if p_op.ncols() != order || order == 0 {
            return Err(Error::usage("GammaTuple: P must be square and nonempty"));
        }
        for s in &s_ops {
            if s.nrows() != order || s.ncols() != order {
                return Err(Error::usage(
                    "GammaTuple: all matrices must share the order",
                ));
            }
        }
        let mut all = s_ops.clone();
        all.push(p_op.clone());
        let scale = all.iter().map(nrm).fold(1.0f64, f64::max);
        let mut cdef = 0.0f64;
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                cdef = cdef.max(nrm(&commutator(&all[i], &all[j])));
            }
        }
        if cdef > tol * scale {
            return Err(Error::NotCommuting {
                defect: cdef,
                tol: tol * scale,
            });
        }
        let pnorm = nrm(&p_op);
        if pnorm > 1.0 + tol {
            return Err(Error::NotAContraction { norm: pnorm, tol });
        }
        let dp = defect(&p_op, RANK_TOL)?;
        let dp_adj = defect(&p_op.adjoint(), RANK_TOL)?;
        Ok(GammaTuple {
            n: s_ops.len() + 1,
            order,
            s_ops,
            p_op,
            defect: dp,
            defect_adj: dp_adj,
            commutator_defect: cdef,
            tol,
        })
    }

    /// The adjoint tuple `(S_1*, …, S_{n-1}*, P*)`.
    pub fn adjoint(&self) -> Result<GammaTuple> {
        GammaTuple::new(
            self.s_ops.iter().map(|s| s.adjoint()).collect(),
            self.p_op.adjoint(),
            self.tol,
        )
    }

    /// All `n` matrices in tuple order.
    pub fn all_matrices(&self) -> Vec<CMatrix> {
        let mut v = self.s_ops.clone();
        v.push(self.p_op.clone());
        v
    }

    /// Largest operator norm among the tuple members (≥ 1 floor).
    pub fn scale(&self) -> f64 {
        self.all_matrices().iter().map(nrm).fold(1.0f64, f64::max)
    }

    /// `P` pure: every eigenvalue strictly inside the unit disc.
    pub fn is_pure(&self, tol: f64) -> bool {
        schur::spectral_radius(&self.p_op)
            .map(|r| r < 1.0 - tol)
            .unwrap_or(false)
    }
}

/// Fundamental operator tuple on the defect coordinates of `P`.
#[derive(Debug, Clone)]
pub struct FundamentalTuple {
    /// `F_1, …, F_{n-1}` expressed in the orthonormal defect basis; order
    /// equals the defect rank (empty matrices when the defect is trivial).
    pub matrices: Vec<CMatrix>,
    /// Per-index residual `‖S_i - S_{n-i}* P - D_P F_i D_P‖`.
    pub residuals: Vec<f64>,
    /// `max_z ω(F_i + F_{n-i} z) - n` over 64 circle samples (≤ 0 expected).
    pub radius_margin: f64,
}

/// Solve `S_i - S_{n-i}* P = D_P F_i D_P` by pseudo-inversion on the defect
/// space.  Defect rank 0 (isometries and unitaries) yields the empty tuple.
pub fn fundamental_tuple(t: &GammaTuple, tol: f64) -> Result<FundamentalTuple> {
    let k = t.n - 1;
    let d = &t.defect;
    let mut matrices = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    for i in 0..k {
        let m = &t.s_ops[i] - t.s_ops[k - 1 - i].adjoint() * &t.p_op;
        if d.rank == 0 {
            matrices.push(CMatrix::zeros(0, 0));
            residuals.push(nrm(&m));
            continue;
        }
        let f = d.pinv_sandwich(&m);
        let resid = nrm(&(&m - &d.d_matrix * d.lift(&f) * &d.d_matrix));
        matrices.push(f);
        residuals.push(resid);
    }
    let worst = residuals.iter().copied().fold(0.0f64, f64::max);
    if worst > tol * t.scale() {
        return Err(Error::NotRepresentable {
            residual: worst,
            tol: tol * t.scale(),
        });
    }
    let radius_margin = fot_radius_margin(&matrices, t.n, 64)?;
    Ok(FundamentalTuple {
        matrices,
        residuals,
        radius_margin,
    })
}

/// `max_i max_z ω(F_i + F_{n-i} z) - n` over circle samples.
pub fn fot_radius_margin(matrices: &[CMatrix], n: usize, circle_samples: usize) -> Result<f64> {
    let k = matrices.len();
    if k == 0 || matrices[0].is_empty() {
        return Ok(-(n as f64));
    }
    let mut worst = f64::NEG_INFINITY;
    for j in 0..circle_samples {
        let z = Complex64::from_polar(
            1.0,
            j as f64 / circle_samples as f64 * std::f64::consts::TAU,
        );
        for i in 0..k {
            let pencil = &matrices[i] + matrices[k - 1 - i].map(|x| x * z);
            worst = worst.max(numerical_radius(&pencil, 64)? - n as f64);
        }
    }
    Ok(worst)
}

/// Per-index residual of `D_P S_i = F_i D_P + F_{n-i}* D_P P` with the
/// defect-space operators lifted to the full space.
pub fn verify_tetra(t: &GammaTuple, f: &FundamentalTuple) -> Vec<f64> {
    let k = t.n - 1;
    let d = &t.defect;
    (0..k)
        .map(|i| {
            if d.rank == 0 {
                return nrm(&(&d.d_matrix * &t.s_ops[i]));
            }
            let fi = d.lift(&f.matrices[i]);
            let fni = d.lift(&f.matrices[k - 1 - i]);
            nrm(&(&d.d_matrix * &t.s_ops[i]
                - &fi * &d.d_matrix
                - fni.adjoint() * &d.d_matrix * &t.p_op))
        })
        .collect()
}

/// Outcome of one gated identity check.
#[derive(Debug, Clone, Serialize)]
pub enum CheckStatus {
    Checked { residual: f64 },
    Skipped { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub index: usize,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct FotIdentityReport {
    pub entries: Vec<IdentityCheck>,
}

impl FotIdentityReport {
    fn push(&mut self, identity: &str, index: usize, status: CheckStatus) {
        self.entries.push(IdentityCheck {
            identity: identity.to_string(),
            index,
            status,
        });
    }

    /// Largest residual among executed checks.
    pub fn max_checked_residual(&self) -> f64 {
        self.entries
            .iter()
            .filter_map(|e| match e.status {
                CheckStatus::Checked { residual } => Some(residual),
                CheckStatus::Skipped { .. } => None,
            })
            .fold(0.0, f64::max)
    }

    pub fn skipped(&self, identity: &str) -> bool {
        self.entries
            .iter()
            .any(|e| e.identity == identity && matches!(e.status, CheckStatus::Skipped { .. }))
    }
}

/// Run the fundamental-tuple identity suite for a tuple, its FOT `a` and the
/// adjoint tuple's FOT `b`.  Hypothesis-gated checks report `Skipped` when
/// their preconditions fail instead of false-failing.
pub fn verify_fot_identities(
    t: &GammaTuple,
    a: &FundamentalTuple,
    b: &FundamentalTuple,
) -> Result<FotIdentityReport> {
    let k = t.n - 1;
    let d = &t.defect;
    let dstar = &t.defect_adj;
    let p = &t.p_op;
    let mut report = FotIdentityReport::default();
    let scale = t.scale();

    // commuting-FOT gate shared by the product identities
    let mut fot_commutator = 0.0f64;
    for i in 0..k {
        for j in i + 1..k {
            if !a.matrices[i].is_empty() {
                fot_commutator =
                    fot_commutator.max(nrm(&commutator(&a.matrices[i], &a.matrices[j])));
            }
        }
    }
    let fot_commuting = fot_commutator <= 1e-8 * scale;
    // dense-range gate for the self-commutator identities
    let min_sv = if p.is_empty() {
        0.0
    } else {
        p.singular_values().min()
    };
    let dense_range = min_sv > 1e-8;

    for i in 0..k {
        let ni = k - 1 - i;
        let m_i = &t.s_ops[i] - t.s_ops[ni].adjoint() * p;
        let _ = m_i;

        // products of S against products of the FOT on the defect space
        if fot_commuting {
            let lhs = t.s_ops[i].adjoint() * &t.s_ops[i] - t.s_ops[ni].adjoint() * &t.s_ops[ni];
            let rhs = if d.rank == 0 {
                CMatrix::zeros(t.order, t.order)
            } else {
                let core = a.matrices[i].adjoint() * &a.matrices[i]
                    - a.matrices[ni].adjoint() * &a.matrices[ni];
                &d.d_matrix * d.lift(&core) * &d.d_matrix
            };
            report.push(
                "norm-difference",
                i + 1,
                CheckStatus::Checked {
                    residual: nrm(&(lhs - rhs)),
                },
            );
        } else {
            report.push(
                "norm-difference",
                i + 1,
                CheckStatus::Skipped {
                    reason: format!("FOT not commuting (defect {fot_commutator:.3e})"),
                },
            );
        }

        if d.rank > 0 && dstar.rank > 0 {
            // D_P A_i = (S_i D_P - D_{P*} B_{n-i} P)|𝒟_P
            let lhs = &d.d_matrix * &d.basis * &a.matrices[i];
            let rhs = (&t.s_ops[i] * &d.d_matrix
                - &dstar.d_matrix * dstar.lift(&b.matrices[ni]) * p)
                * &d.basis;
            report.push(
                "mixed-intertwining",
                i + 1,
                CheckStatus::Checked {
                    residual: nrm(&(lhs - rhs)),
                },
            );

            // P A_i = B_i* P|𝒟_P
            let lhs = p * &d.basis * &a.matrices[i];
            let rhs = dstar.lift(&b.matrices[i]).adjoint() * p * &d.basis;
            report.push(
                "shift-conjugation",
                i + 1,
                CheckStatus::Checked {
                    residual: nrm(&(lhs - rhs)),
                },
            );

            // (A_i* D_P D_{P*} - A_{n-i} P*)|𝒟_{P*} = D_P D_{P*} B_i - P* B_{n-i}*
            let ai = d.lift(&a.matrices[i]);
            let ani = d.lift(&a.matrices[ni]);
            let bi = dstar.lift(&b.matrices[i]);
            let bni = dstar.lift(&b.matrices[ni]);
            let lhs =
                (ai.adjoint() * &d.d_matrix * &dstar.d_matrix - ani * p.adjoint()) * &dstar.basis;
            let rhs =
                (&d.d_matrix * &dstar.d_matrix * bi - p.adjoint() * bni.adjoint()) * &dstar.basis;
            report.push(
                "cross-defect",
                i + 1,
                CheckStatus::Checked {
                    residual: nrm(&(lhs - rhs)),
                },
            );
        } else {
            let reason = "trivial defect space".to_string();
            report.push(
                "mixed-intertwining",
                i + 1,
                CheckStatus::Skipped {
                    reason: reason.clone(),
                },
            );
            report.push(
                "shift-conjugation",
                i + 1,
                CheckStatus::Skipped {
                    reason: reason.clone(),
                },
            );
            report.push("cross-defect", i + 1, CheckStatus::Skipped { reason });
        }

        // self-commutator balance, gated on commuting FOT and dense range
        if fot_commuting && dense_range && d.rank > 0 && dstar.rank > 0 {
            let r1 = nrm(&(commutator(&a.matrices[i].adjoint(), &a.matrices[i])
                - commutator(&a.matrices[ni].adjoint(), &a.matrices[ni])));
            let r2 = nrm(&commutator(&b.matrices[i], &b.matrices[ni]));
            let r3 = nrm(&(commutator(&b.matrices[i].adjoint(), &b.matrices[i])
                - commutator(&b.matrices[ni].adjoint(), &b.matrices[ni])));
            report.push(
                "self-commutator-balance",
                i + 1,
                CheckStatus::Checked {
                    residual: r1.max(r2).max(r3),
                },
            );
        } else {
            let reason = if !fot_commuting {
                format!("FOT not commuting (defect {fot_commutator:.3e})")
            } else if !dense_range {
                format!("P range not dense (σ_min = {min_sv:.3e})")
            } else {
                "trivial defect space".to_string()
            };
            report.push(
                "self-commutator-balance",
                i + 1,
                CheckStatus::Skipped { reason },
            );
        }
    }
    Ok(report)
}

/// Operator pencil `Φ_i` evaluated at `(α S_1, …, α^{n-1} S_{n-1}, α^n P)`:
/// `(nI - S)*(nI - S) - (nP - S')*(nP - S')` with the scaled entries.
/// Hermitian by construction.
pub fn phi_operator(t: &GammaTuple, i: usize, alpha: C64) -> Result<CMatrix> {
    let n = t.n;
    if i < 1 || i > n - 1 {
        return Err(Error::usage(format!(
            "phi_operator: need 1 ≤ i ≤ {}",
            n - 1
        )));
    }
    if alpha.norm() > 1.0 + 1e-12 {
        return Err(Error::usage("phi_operator: need |alpha| ≤ 1"));
    }
    let id = CMatrix::identity(t.order, t.order);
    let nf = re(n as f64);
    let si = t.s_ops[i - 1].map(|x| x * alpha.powu(i as u32));
    let sni = t.s_ops[n - 1 - i].map(|x| x * alpha.powu((n - i) as u32));
    let pa = t.p_op.map(|x| x * alpha.powu(n as u32));
    let u = id.map(|x| x * nf) - &si;
    let v = pa.map(|x| x * nf) - &sni;
    let phi = u.adjoint() * &u - v.adjoint() * &v;
    let herm = (&phi + phi.adjoint()).scale(0.5);
    debug_assert!(
        nrm(&(&phi - &herm)) <= 1e-10 * (1.0 + nrm(&herm)),
        "phi_operator asymmetry"
    );
    Ok(herm)
}

/// Graded verification report for `Γ_n`-contractivity.
#[derive(Debug, Clone, Serialize)]
pub struct ContractionReport {
    /// Tuple is commuting normal, so the spectral verdict is exact.
    pub exact: bool,
    /// Stage (a): Taylor joint spectrum inside `Γ_n`.
    pub spectrum_ok: bool,
    /// Worst membership margin over the joint eigenvalues (≤ 0 inside).
    pub spectrum_margin: f64,
    /// Stage (b): minimum eigenvalue of the scaled pencils over the α-grid.
    pub phi_min_eig: f64,
    pub phi_ok: bool,
    /// Stage (c): worst `sup_cloud |f| + tol - ‖f(T)‖` over sampled
    /// polynomials (a falsifier: the sampled sup lower-bounds the true sup).
    pub vn_worst_slack: f64,
    pub vn_ok: bool,
}

impl ContractionReport {
    /// Overall verdict: exact tuples are decided by the spectrum alone.
    pub fn passes(&self) -> bool {
        if self.exact {
            self.spectrum_ok
        } else {
            self.spectrum_ok && self.phi_ok && self.vn_ok
        }
    }
}

/// Number of cloud samples used to estimate suprema over `Γ_n`.
const VN_CLOUD: usize = 100_000;

/// Graded `Γ_n`-contraction check: joint-spectrum membership, pencil
/// positivity over an α-grid, and a sampled von Neumann falsifier.  For
/// commuting normal tuples the spectrum stage is an exact decision.
pub fn check_gamma_contraction(
    t: &GammaTuple,
    poly_samples: usize,
    seed: u64,
) -> Result<ContractionReport> {
    let scale = t.scale();
    let all = t.all_matrices();
    let exact = all
        .iter()
        .all(|m| normality_defect(m) <= 1e-8 * scale * scale);

    // (a) joint spectrum membership; defective tuples carry eigenvalue error
    // of order eps^(1/jordan), so classification gets a loose band.
    let tuple = CommutingTuple::new(all, t.tol.max(1e-9) * 16.0)?;
    let spec = taylor_spectrum(&tuple, (t.tol.max(1e-9) * 16.0).max(1e-7))?;
    let class_tol = if exact { 1e-7 } else { 1e-5 };
    let mut spectrum_margin = f64::NEG_INFINITY;
    let mut spectrum_ok = true;
    for point in &spec.points {
        let margin = geometry::gamma_margin(point, class_tol);
        spectrum_margin = spectrum_margin.max(margin);
        if geometry::classify_point(point, class_tol) == Region::Outside {
            spectrum_ok = false;
        }
    }

    // (b) pencil positivity over an α polar grid including the unit circle
    let mut phi_min = f64::INFINITY;
    for rj in 1..=4 {
        let r = rj as f64 / 4.0;
        for aj in 0..16 {
            let alpha = Complex64::from_polar(r, aj as f64 / 16.0 * std::f64::consts::TAU);
            for i in 1..t.n {
                phi_min = phi_min.min(hermitian_min_eig(&phi_operator(t, i, alpha)?));
            }
        }
    }
    let phi_ok = phi_min >= -1e-8 * scale * scale;

    // (c) sampled von Neumann falsifier on a torus + polydisc cloud
    let mut vn_worst = f64::INFINITY;
    if poly_samples > 0 {
        let mut cloud = Vec::with_capacity(VN_CLOUD);
        let mut rng = sample::stream(seed, "gamma-vn-cloud", 0);
        for j in 0..VN_CLOUD {
            let z: Vec<C64> = if j % 2 == 0 {
                (0..t.n).map(|_| sample::unit_circle(&mut rng)).collect()
            } else {
                sample::polydisc_point(t.n, &mut rng)
            };
            cloud.push(geometry::symmetrize(&z)?.coords());
        }
        let mats = t.all_matrices();
        for k in 0..poly_samples {
            let mut prng = sample::stream(seed, "gamma-vn-poly", k as u64);
            let f = MPoly::random(t.n, 3, &mut prng);
            let sup = cloud
                .iter()
                .map(|pt| f.eval_scalar(pt).norm())
                .fold(0.0f64, f64::max);
            let val = nrm(&f.eval_matrix(&mats));
            // the sampled sup lower-bounds the true sup; the band absorbs
            // cloud sparsity so true contractions never false-fail
            let slack = sup + 1e-2 * (1.0 + sup) - val;
            vn_worst = vn_worst.min(slack);
        }
    }
    let vn_ok = vn_worst >= 0.0 || poly_samples == 0;

    Ok(ContractionReport {
        exact,
        spectrum_ok,
        spectrum_margin,
        phi_min_eig: phi_min,
        phi_ok,
        vn_worst_slack: if poly_samples == 0 {
            f64::INFINITY
        } else {
            vn_worst
        },
        vn_ok,
    })
}

/// Structure classes of a candidate tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TupleClass {
    GammaUnitary,
    GammaIsometry,
    PureGammaIsometry,
    GammaContraction,
    NotGamma,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub class: TupleClass,
    /// All eigenvalues of `P` strictly inside the unit disc.
    pub pure: bool,
    /// `max_i ‖S_i - S_{n-i}* P‖`.
    pub pencil_defect: f64,
    /// `max(‖P*P - I‖, ‖P P* - I‖)`.
    pub unitary_defect: f64,
}

/// Decision tree on the structure theorems: unitary/isometry tests on `P`,
/// the pencil identity `S_i = S_{n-i}* P`, the scaled-tuple condition, and
/// purity of `P`.
pub fn classify_tuple(t: &GammaTuple, tol: f64) -> Result<ClassifyReport> {
    let k = t.n - 1;
    let id = CMatrix::identity(t.order, t.order);
    let iso_defect = nrm(&(t.p_op.adjoint() * &t.p_op - &id));
    let coiso_defect = nrm(&(&t.p_op * t.p_op.adjoint() - &id));
    let unitary_defect = iso_defect.max(coiso_defect);
    let pencil_defect = (0..k)
        .map(|i| nrm(&(&t.s_ops[i] - t.s_ops[k - 1 - i].adjoint() * &t.p_op)))
        .fold(0.0f64, f64::max);
    let pure = t.is_pure(tol);

    let report = check_gamma_contraction(t, 8, 1)?;
    if !report.passes() {
        return Ok(ClassifyReport {
            class: TupleClass::NotGamma,
            pure,
            pencil_defect,
            unitary_defect,
        });
    }

    let scaled_ok = scaled_tuple_contraction_ok(&t.s_ops, t.n, tol)?;
    let class = if unitary_defect <= tol && pencil_defect <= tol * t.scale() && scaled_ok {
        TupleClass::GammaUnitary
    } else if iso_defect <= tol && pencil_defect <= tol * t.scale() && scaled_ok {
        // unreachable for square matrices (isometry forces unitary); kept to
        // mirror the structure theorems
        if pure {
            TupleClass::PureGammaIsometry
        } else {
            TupleClass::GammaIsometry
        }
    } else {
        TupleClass::GammaContraction
    };
    Ok(ClassifyReport {
        class,
        pure,
        pencil_defect,
        unitary_defect,
    })
}

/// `((n-1)/n S_1, …, 1/n S_{n-1})` as a `Γ_{n-1}`-contraction test.
fn scaled_tuple_contraction_ok(s_ops: &[CMatrix], n: usize, tol: f64) -> Result<bool> {
    let k = s_ops.len();
    let scaled: Vec<CMatrix> = (0..k)
        .map(|i| s_ops[i].map(|x| x * re((n - 1 - i) as f64 / n as f64)))
        .collect();
    if k == 1 {
        // Γ_1-contraction is exactly ‖T‖ ≤ 1
        return Ok(nrm(&scaled[0]) <= 1.0 + tol);
    }
    let gt = GammaTuple::new(
        scaled[..k - 1].to_vec(),
        scaled[k - 1].clone(),
        tol.max(1e-8) * 4.0,
    );
    match gt {
        Ok(gt) => Ok(check_gamma_contraction(&gt, 4, 2)?.passes()),
        Err(_) => Ok(false),
    }
}

/// Build a pure `Γ_n`-contraction on the degree-≤ `N` truncated coefficient
/// space from a commuting normal tuple `f = (F_1, …, F_{n-1})`:
/// `S_i` is block Toeplitz with diagonal block `F_i*` and subdiagonal block
/// `F_{n-i}`, and `P` is the block shift (nilpotent of index `N+1`).
///
/// The data is validated first: commuting, normal, and the scaled pencil
/// tuple must stay inside `Γ_{n-1}` on a circle grid (exact for normal
/// tuples via joint-spectrum membership).
pub fn generate_pure(f: &[CMatrix], big_n: usize, tol: f64) -> Result<GammaTuple> {
    if f.is_empty() {
        return Err(Error::usage("generate_pure: need at least one matrix"));
    }
    if big_n < 1 {
        return Err(Error::usage("generate_pure: need N ≥ 1"));
    }
    let n = f.len() + 1;
    let m = f[0].nrows();
    for fi in f {
        if fi.nrows() != m || fi.ncols() != m || m == 0 {
            return Err(Error::usage(
                "generate_pure: matrices must be square, equal order",
            ));
        }
    }
    let scale = f.iter().map(nrm).fold(1.0f64, f64::max);
    for (i, fi) in f.iter().enumerate() {
        let nd = normality_defect(fi);
        if nd > tol * scale * scale {
            return Err(Error::InvalidFundamentalData(format!(
                "F_{} is not normal (defect {nd:.3e})",
                i + 1
            )));
        }
        for (j, fj) in f.iter().enumerate().skip(i + 1) {
            let cd = nrm(&commutator(fi, fj));
            if cd > tol * scale * scale {
                return Err(Error::InvalidFundamentalData(format!(
                    "F_{} and F_{} do not commute (defect {cd:.3e})",
                    i + 1,
                    j + 1
                )));
            }
            // Fuglede: commuting normals *-commute; verified directly since
            // the inputs are only numerically normal
            let sd = nrm(&commutator(&fi.adjoint(), fj));
            if sd > (tol * scale * scale).max(1e-9 * scale * scale) {
                return Err(Error::InvalidFundamentalData(format!(
                    "F_{}* and F_{} do not commute (defect {sd:.3e})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    // circle validation of the scaled pencil tuple
    let margin = scaled_pencil_margin(f, n, 64)
        .map_err(|e| Error::InvalidFundamentalData(format!("pencil validation: {e}")))?;
    if margin > 1e-7 {
        return Err(Error::InvalidFundamentalData(format!(
            "scaled pencil leaves Γ_{} (margin {margin:.3e})",
            n - 1
        )));
    }
    // assemble the truncated block-Toeplitz tuple
    let dim = m * (big_n + 1);
    let mut p = CMatrix::zeros(dim, dim);
    for b in 0..big_n {
        for r in 0..m {
            p[((b + 1) * m + r, b * m + r)] = re(1.0);
        }
    }
    let mut s_ops = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let diag = f[i].adjoint();
        let sub = &f[n - 2 - i];
        let mut s = CMatrix::zeros(dim, dim);
        for b in 0..=big_n {
            for r in 0..m {
                for c in 0..m {
                    s[(b * m + r, b * m + c)] = diag[(r, c)];
                    if b < big_n {
                        s[((b + 1) * m + r, b * m + c)] = sub[(r, c)];
                    }
                }
            }
        }
        s_ops.push(s);
    }
    GammaTuple::new(s_ops, p, (tol * 64.0).max(1e-8))
}

/// Worst membership margin over circle samples of the scaled pencil tuple
/// `((n-1)/n (F_1* + F_{n-1} z), …, 1/n (F_{n-1}* + F_1 z))` against
/// `Γ_{n-1}` (≤ 0 means the tuple stays inside on every sample).
///
/// Exact for commuting normal data, where per-sample membership reduces to
/// joint-spectrum membership; errors when the pencils fail to commute.
pub fn scaled_pencil_margin(f: &[CMatrix], n: usize, circle_samples: usize) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for jz in 0..circle_samples {
        let z = Complex64::from_polar(
            1.0,
            jz as f64 / circle_samples as f64 * std::f64::consts::TAU,
        );
        let pencils: Vec<CMatrix> = (0..n - 1)
            .map(|i| {
                (f[i].adjoint() + f[n - 2 - i].map(|x| x * z))
                    .map(|x| x * re((n - 1 - i) as f64 / n as f64))
            })
            .collect();
        let tuple = CommutingTuple::new(pencils, 1e-7)?;
        let spec = taylor_spectrum(&tuple, 1e-7)?;
        for point in &spec.points {
            worst = worst.max(geometry::gamma_margin(point, 1e-9));
        }
    }
    Ok(worst)
}

/// `Γ_3 → Γ_2`: the pair `(S_1/3 + ω S_2/3, ω P)` for unimodular `ω`.
pub fn gamma3_to_gamma2(t: &GammaTuple, omega: C64) -> Result<(CMatrix, CMatrix)> {
    if t.n != 3 {
        return Err(Error::usage("gamma3_to_gamma2: tuple must have n = 3"));
    }
    if (omega.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::usage("gamma3_to_gamma2: ω must be unimodular"));
    }
    let s = t.s_ops[0].map(|x| x / 3.0) + t.s_ops[1].map(|x| x * omega / 3.0);
    let p = t.p_op.map(|x| x * omega);
    Ok((s, p))
}

// ---------------------------------------------------------------------------
// JSON bundle {"S": [matrix, …], "P": matrix}
// ---------------------------------------------------------------------------

/// Serialize a tuple to the repo-wide bundle schema.
pub fn gamma_tuple_to_json(t: &GammaTuple) -> serde_json::Value {
    serde_json::json!({
        "S": t.s_ops.iter().map(crate::matrix::matrix_to_json).collect::<Vec<_>>(),
        "P": crate::matrix::matrix_to_json(&t.p_op),
    })
}

/// Parse a tuple bundle and certify it with tolerance `tol`.
pub fn gamma_tuple_from_json(v: &serde_json::Value, tol: f64) -> Result<GammaTuple> {
    let s_val = v
        .get("S")
        .and_then(|s| s.as_array())
        .ok_or_else(|| Error::usage("tuple bundle: missing \"S\" array"))?;
    let p_val = v
        .get("P")
        .ok_or_else(|| Error::usage("tuple bundle: missing \"P\""))?;
    let s_ops = s_val
        .iter()
        .map(crate::matrix::matrix_from_json)
        .collect::<Result<Vec<_>>>()?;
    let p = crate::matrix::matrix_from_json(p_val)?;
    GammaTuple::new(s_ops, p, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c64;

    fn scalar_tuple(vals: &[f64]) -> GammaTuple {
        let k = vals.len() - 1;
        GammaTuple::new(
            vals[..k]
                .iter()
                .map(|&v| CMatrix::from_element(1, 1, re(v)))
                .collect(),
            CMatrix::from_element(1, 1, re(vals[k])),
            1e-10,
        )
        .unwrap()
    }

    /// Diagonal Γ_n-unitary built by symmetrizing unimodular n-tuples.
    fn diagonal_gamma_unitary(n: usize, order: usize, seed: u64) -> GammaTuple {
        let mut rng = sample::stream(seed, "gamma-unitary", 0);
        let mut s_diag = vec![Vec::with_capacity(order); n - 1];
        let mut p_diag = Vec::with_capacity(order);
        for _ in 0..order {
            let z: Vec<C64> = (0..n).map(|_| sample::unit_circle(&mut rng)).collect();
            let x = geometry::symmetrize(&z).unwrap();
            for i in 0..n - 1 {
                s_diag[i].push(x.s[i]);
            }
            p_diag.push(x.p);
        }
        let diag = |v: &Vec<C64>| CMatrix::from_diagonal(&nalgebra::DVector::from_vec(v.clone()));
        GammaTuple::new(s_diag.iter().map(diag).collect(), diag(&p_diag), 1e-10).unwrap()
    }

    #[test]
    fn fot_scalar_example() {
        let t = scalar_tuple(&[1.0, 1.0, 0.25]);
        let f = fundamental_tuple(&t, 1e-8).unwrap();
        assert!((f.matrices[0][(0, 0)] - re(0.8)).norm() < 1e-12);
        assert!((f.matrices[1][(0, 0)] - re(0.8)).norm() < 1e-12);
        assert!(f.residuals.iter().all(|&r| r < 1e-12));
        assert!(f.radius_margin <= 1e-9);
    }

    #[test]
    fn fot_of_unitary_is_empty() {
        let t = diagonal_gamma_unitary(3, 4, 5);
        let f = fundamental_tuple(&t, 1e-8).unwrap();
        assert!(f.matrices.iter().all(|m| m.is_empty()));
        assert!(f.residuals.iter().all(|&r| r < 1e-9));
    }

    #[test]
    fn fot_p_zero_reads_off_s() {
        // P = 0, S_i = c_i I with c in Γ_{n-1}: D_P = I and F_i = c_i I
        let c = [c64(0.3, 0.2), c64(0.1, -0.4)];
        let t = GammaTuple::new(
            c.iter()
                .map(|&ci| CMatrix::identity(3, 3).map(|x| x * ci))
                .collect(),
            CMatrix::zeros(3, 3),
            1e-10,
        )
        .unwrap();
        let f = fundamental_tuple(&t, 1e-10).unwrap();
        for (fi, &ci) in f.matrices.iter().zip(&c) {
            assert!(nrm(&(fi - CMatrix::identity(3, 3).map(|x| x * ci))) < 1e-12);
        }
    }

    #[test]
    fn tetra_identity_scalar_and_generated() {
        let t = scalar_tuple(&[1.0, 1.0, 0.25]);
        let f = fundamental_tuple(&t, 1e-8).unwrap();
        assert!(verify_tetra(&t, &f).iter().all(|&r| r < 1e-12));

        let fm = vec![
            CMatrix::from_element(1, 1, re(0.5)),
            CMatrix::from_element(1, 1, c64(0.2, 0.3)),
        ];
        let g = generate_pure(&fm, 3, 1e-9).unwrap();
        let fg = fundamental_tuple(&g, 1e-8).unwrap();
        assert!(verify_tetra(&g, &fg).iter().all(|&r| r < 1e-10));
    }

    #[test]
    fn generated_tuple_fot_recovers_data() {
        // the adjoint tuple's FOT equals the generator data exactly on the
        // degree-0 defect block
        let fm = vec![
            CMatrix::from_element(1, 1, re(0.8)),
            CMatrix::from_element(1, 1, re(0.8)),
        ];
        let g = generate_pure(&fm, 3, 1e-9).unwrap();
        assert_eq!(g.order, 4);
        let b = fundamental_tuple(&g.adjoint().unwrap(), 1e-8).unwrap();
        assert!((b.matrices[0][(0, 0)] - re(0.8)).norm() < 1e-10);
        assert!((b.matrices[1][(0, 0)] - re(0.8)).norm() < 1e-10);
    }

    #[test]
    fn generate_pure_zero_data_is_shift() {
        let fm = vec![CMatrix::zeros(1, 1), CMatrix::zeros(1, 1)];
        let g = generate_pure(&fm, 2, 1e-10).unwrap();
        assert!(g.s_ops.iter().all(|s| nrm(s) < 1e-14));
        // P is the truncated shift, nilpotent of index N+1
        let mut pw = CMatrix::identity(3, 3);
        for _ in 0..3 {
            pw = &pw * &g.p_op;
        }
        assert!(nrm(&pw) < 1e-14);
    }

    #[test]
    fn generate_pure_rejects_bad_pencil() {
        // c = (1, 2) lies outside Γ_2, so the scalar data must be rejected
        let fm = vec![
            CMatrix::from_element(1, 1, re(1.0)),
            CMatrix::from_element(1, 1, re(2.0)),
        ];
        assert!(matches!(
            generate_pure(&fm, 2, 1e-9),
            Err(Error::InvalidFundamentalData(_))
        ));
    }

    #[test]
    fn phi_operator_zero_tuple() {
        let t = GammaTuple::new(
            vec![CMatrix::zeros(2, 2), CMatrix::zeros(2, 2)],
            CMatrix::zeros(2, 2),
            1e-10,
        )
        .unwrap();
        let phi = phi_operator(&t, 1, re(0.7)).unwrap();
        assert!(nrm(&(phi - CMatrix::identity(2, 2).map(|x| x * re(9.0)))) < 1e-12);
    }

    #[test]
    fn phi_operator_unitary_boundary_vanishing() {
        let t = diagonal_gamma_unitary(3, 3, 9);
        for j in 0..8 {
            let alpha = Complex64::from_polar(1.0, j as f64 / 8.0 * std::f64::consts::TAU);
            for i in 1..3 {
                let phi = phi_operator(&t, i, alpha).unwrap();
                let min = hermitian_min_eig(&phi);
                assert!(min >= -1e-8, "Φ must stay PSD on the circle, got {min}");
            }
        }
        // and the pencil degenerates at the right place: min eigenvalue 0
        let phi = phi_operator(&t, 1, re(1.0)).unwrap();
        assert!(hermitian_min_eig(&phi).abs() < 1e-7);
    }

    #[test]
    fn check_contraction_scalar_cases() {
        let inside = scalar_tuple(&[1.0, 1.0, 0.25]);
        let r = check_gamma_contraction(&inside, 6, 3).unwrap();
        assert!(r.exact);
        assert!(r.passes(), "margin {}", r.spectrum_margin);

        let outside = scalar_tuple(&[2.0, 2.5, 0.5]);
        let r = check_gamma_contraction(&outside, 0, 3).unwrap();
        assert!(!r.spectrum_ok, "stage (a) must reject the outside point");
    }

    #[test]
    fn check_contraction_generated() {
        let fm = vec![
            CMatrix::from_element(1, 1, re(0.5)),
            CMatrix::from_element(1, 1, c64(0.3, 0.2)),
        ];
        let g = generate_pure(&fm, 4, 1e-9).unwrap();
        let r = check_gamma_contraction(&g, 6, 4).unwrap();
        assert!(r.spectrum_ok, "margin {}", r.spectrum_margin);
        assert!(r.phi_ok, "phi min {}", r.phi_min_eig);
        assert!(r.vn_ok, "vn slack {}", r.vn_worst_slack);
    }

    #[test]
    fn classify_examples() {
        let u = diagonal_gamma_unitary(3, 4, 11);
        let r = classify_tuple(&u, 1e-8).unwrap();
        assert_eq!(r.class, TupleClass::GammaUnitary);
        assert!(!r.pure);

        let fm = vec![
            CMatrix::from_element(1, 1, re(0.4)),
            CMatrix::from_element(1, 1, re(0.4)),
        ];
        let g = generate_pure(&fm, 3, 1e-9).unwrap();
        let r = classify_tuple(&g, 1e-8).unwrap();
        assert_eq!(r.class, TupleClass::GammaContraction);
        assert!(r.pure, "block shift P is nilpotent, hence pure");

        let zero = scalar_tuple(&[0.0, 0.0, 0.0]);
        let r = classify_tuple(&zero, 1e-8).unwrap();
        assert_eq!(r.class, TupleClass::GammaContraction);
        assert!(r.pure);
    }

    #[test]
    fn identity_suite_scalar_clean() {
        let t = scalar_tuple(&[1.0, 1.0, 0.25]);
        let a = fundamental_tuple(&t, 1e-8).unwrap();
        let b = fundamental_tuple(&t.adjoint().unwrap(), 1e-8).unwrap();
        let rep = verify_fot_identities(&t, &a, &b).unwrap();
        assert!(rep.max_checked_residual() < 1e-12);
        assert!(!rep.skipped("self-commutator-balance"));
    }

    #[test]
    fn identity_suite_gates_on_p_range() {
        // P = 0 has no dense range: the self-commutator checks must skip
        let t = GammaTuple::new(
            vec![
                CMatrix::identity(2, 2).map(|x| x * re(0.3)),
                CMatrix::identity(2, 2).map(|x| x * re(0.3)),
            ],
            CMatrix::zeros(2, 2),
            1e-10,
        )
        .unwrap();
        let a = fundamental_tuple(&t, 1e-8).unwrap();
        let b = fundamental_tuple(&t.adjoint().unwrap(), 1e-8).unwrap();
        let rep = verify_fot_identities(&t, &a, &b).unwrap();
        assert!(rep.skipped("self-commutator-balance"));
        assert!(rep.max_checked_residual() < 1e-10);
    }

    #[test]
    fn gamma3_to_gamma2_examples() {
        let t = scalar_tuple(&[1.0, 1.0, 0.25]);
        let (s, p) = gamma3_to_gamma2(&t, re(1.0)).unwrap();
        assert!((s[(0, 0)] - re(2.0 / 3.0)).norm() < 1e-14);
        assert!((p[(0, 0)] - re(0.25)).norm() < 1e-14);
        assert!(geometry::gamma2_closed_form(s[(0, 0)], p[(0, 0)]));

        let zero = scalar_tuple(&[0.0, 0.0, 0.0]);
        let (s, p) = gamma3_to_gamma2(&zero, re(1.0)).unwrap();
        assert!(geometry::gamma2_closed_form(s[(0, 0)], p[(0, 0)]));

        // non-converse example: source outside Γ_3, image inside Γ_2
        let outside = scalar_tuple(&[2.0, 2.5, 0.5]);
        assert_eq!(
            geometry::classify(
                &geometry::SymPoint::new(vec![re(2.0), re(2.5)], re(0.5)).unwrap(),
                1e-8
            ),
            Region::Outside
        );
        for j in 0..8 {
            let omega = Complex64::from_polar(1.0, j as f64 / 8.0 * std::f64::consts::TAU);
            let (s, p) = gamma3_to_gamma2(&outside, omega).unwrap();
            assert!(geometry::gamma2_closed_form(s[(0, 0)], p[(0, 0)]));
        }
    }

    #[test]
    fn fot_unitary_invariance_of_singular_values() {
        let fm = vec![
            CMatrix::from_element(2, 2, re(0.0))
                + CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                    c64(0.4, 0.1),
                    c64(-0.2, 0.3),
                ])),
            CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                c64(0.1, -0.2),
                c64(0.3, 0.0),
            ])),
        ];
        let g = generate_pure(&fm, 2, 1e-9).unwrap();
        let f0 = fundamental_tuple(&g, 1e-8).unwrap();
        let mut rng = sample::stream(17, "fot-conj", 0);
        let q = sample::random_unitary(g.order, &mut rng);
        let conj = GammaTuple::new(
            g.s_ops.iter().map(|s| q.adjoint() * s * &q).collect(),
            q.adjoint() * &g.p_op * &q,
            1e-8,
        )
        .unwrap();
        let f1 = fundamental_tuple(&conj, 1e-8).unwrap();
        for (a, b) in f0.matrices.iter().zip(&f1.matrices) {
            let sa = a.singular_values();
            let sb = b.singular_values();
            for (x, y) in sa.iter().zip(sb.iter()) {
                assert!((x - y).abs() < 1e-6, "singular values must match");
            }
        }
    }

    #[test]
    fn adjoint_closure_of_checks() {
        let fm = vec![
            CMatrix::from_element(1, 1, re(0.5)),
            CMatrix::from_element(1, 1, re(0.5)),
        ];
        let g = generate_pure(&fm, 3, 1e-9).unwrap();
        let fwd = check_gamma_contraction(&g, 4, 5).unwrap();
        let adj = check_gamma_contraction(&g.adjoint().unwrap(), 4, 5).unwrap();
        assert!(fwd.spectrum_ok && adj.spectrum_ok);
        assert!(fwd.phi_ok && adj.phi_ok);
    }

    #[test]
    fn tuple_json_round_trip() {
        let t = scalar_tuple(&[1.0, 1.0, 0.25]);
        let v = gamma_tuple_to_json(&t);
        let u = gamma_tuple_from_json(&v, 1e-8).unwrap();
        assert_eq!(u.n, 3);
        assert!(nrm(&(&u.p_op - &t.p_op)) < 1e-15);
    }
}
