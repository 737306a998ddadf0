//! Truncated vector-valued Hardy-space machinery.
//!
//! Everything lives on the degree-≤ `N` coefficient space `E^{N+1}` of
//! `H²(E)` for a defect space `E`: characteristic functions and their
//! Maclaurin block matrices, the embedding `W : h ↦ Σ z^k ⊗ D_{P*} P*^k h`,
//! the explicit isometric dilation of a pure tuple, the functional-model
//! compression, admissibility intertwinings and coincidence certificates.
//! Each finite statement carries an explicit tail budget in `‖P^{N+1}‖`;
//! for nilpotent `P` of index ≤ `N+1` the constructions are exact.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{fundamental_tuple, scaled_pencil_margin, FundamentalTuple, GammaTuple};
use crate::matrix::schur::spectral_radius;
use crate::matrix::{
    defect, hermitian_eigen, normality_defect, nrm, resolvent_apply, CMatrix, DefectData, C64,
};
use crate::poly::monomials;

/// Condition-number ceiling for resolvent evaluations.
const COND_LIMIT: f64 = 1e12;

/// Block layout of the degree-≤ `N` truncated coefficient space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedHardy {
    /// Dimension of the coefficient space `E`.
    pub base_dim: usize,
    /// Truncation degree `N`.
    pub degree: usize,
}

impl TruncatedHardy {
    pub fn total_dim(&self) -> usize {
        self.base_dim * (self.degree + 1)
    }

    /// Row/column offset of the degree-`k` block.
    pub fn block_start(&self, k: usize) -> usize {
        self.base_dim * k
    }
}

/// Block Toeplitz matrix with the given diagonal and first-subdiagonal
/// blocks on the truncated space.
pub fn block_toeplitz(diag: &CMatrix, sub: &CMatrix, degree: usize) -> CMatrix {
    let m = diag.nrows();
    let dim = m * (degree + 1);
    let mut out = CMatrix::zeros(dim, dim);
    for b in 0..=degree {
        for r in 0..m {
            for c in 0..m {
                out[(b * m + r, b * m + c)] = diag[(r, c)];
                if b < degree {
                    out[((b + 1) * m + r, b * m + c)] = sub[(r, c)];
                }
            }
        }
    }
    out
}

/// Truncated block shift `M_z ⊗ I` on the truncated space.
pub fn block_shift(base_dim: usize, degree: usize) -> CMatrix {
    block_toeplitz(
        &CMatrix::zeros(base_dim, base_dim),
        &CMatrix::identity(base_dim, base_dim),
        degree,
    )
}

/// Characteristic function `Θ_P(z) = [-P + z D_{P*}(I - zP*)^{-1} D_P]`
/// expressed from the defect basis of `P` to the defect basis of `P*`.
///
/// Unitary `P` has trivial defects and yields the empty matrix.
pub fn characteristic_function(p: &CMatrix, z: C64) -> Result<CMatrix> {
    let d = defect(p, crate::gamma::RANK_TOL)?;
    let dstar = defect(&p.adjoint(), crate::gamma::RANK_TOL)?;
    characteristic_function_with(p, z, &d, &dstar)
}

fn characteristic_function_with(
    p: &CMatrix,
    z: C64,
    d: &DefectData,
    dstar: &DefectData,
) -> Result<CMatrix> {
    if d.rank == 0 || dstar.rank == 0 {
        return Ok(CMatrix::zeros(dstar.rank, d.rank));
    }
    let rhs = &d.d_matrix * &d.basis;
    let solved = resolvent_apply(p, z, &rhs, COND_LIMIT)?;
    let full = (-p) * &d.basis + (&dstar.d_matrix * solved).map(|x| x * z);
    Ok(dstar.basis.adjoint() * full)
}

/// Maclaurin blocks of `Θ_P`: block 0 is `-P` compressed to the defect
/// bases, block `l ≥ 1` is `D_{P*} P*^{l-1} D_P` compressed likewise.
pub fn maclaurin_blocks(
    p: &CMatrix,
    count: usize,
    d: &DefectData,
    dstar: &DefectData,
) -> Vec<CMatrix> {
    let mut out = Vec::with_capacity(count + 1);
    out.push(dstar.basis.adjoint() * (-p) * &d.basis);
    let mut power = CMatrix::identity(p.nrows(), p.ncols());
    let pa = p.adjoint();
    for _ in 1..=count {
        let blk = dstar.basis.adjoint() * &dstar.d_matrix * &power * &d.d_matrix * &d.basis;
        out.push(blk);
        power = &power * &pa;
    }
    out
}

fn w_matrix(p: &CMatrix, dstar: &DefectData, degree: usize) -> CMatrix {
    let m = p.nrows();
    let rows = dstar.rank * (degree + 1);
    let mut w = CMatrix::zeros(rows, m);
    let mut power = CMatrix::identity(m, m);
    let pa = p.adjoint();
    for k in 0..=degree {
        let blk = dstar.basis.adjoint() * &dstar.d_matrix * &power;
        for r in 0..dstar.rank {
            for c in 0..m {
                w[(k * dstar.rank + r, c)] = blk[(r, c)];
            }
        }
        power = &power * &pa;
    }
    w
}

/// `‖P^{N+1}‖`, the tail scale of every degree-`N` truncation.
pub fn tail_norm(p: &CMatrix, degree: usize) -> f64 {
    let m = p.nrows();
    let mut power = CMatrix::identity(m, m);
    for _ in 0..=degree {
        power = &power * p;
        // early exit once the powers are numerically dead
        if nrm(&power) < 1e-300 {
            return 0.0;
        }
    }
    nrm(&power)
}

/// Default truncation degree for a contraction: `max(20, k)` where `k` is
/// the first power with `‖P^k‖ < 1e-12` (capped at 400 for slowly decaying
/// contractions).
pub fn default_degree(p: &CMatrix) -> usize {
    let m = p.nrows();
    let mut power = CMatrix::identity(m, m);
    for k in 1..=400usize {
        power = &power * p;
        if nrm(&power) < 1e-12 {
            return k.max(20);
        }
    }
    400
}

/// The embedding `W : h ↦ Σ_{k≤N} z^k ⊗ D_{P*} P*^k h` in defect
/// coordinates; `‖W*W - I‖ ≤ ‖P^{N+1}‖²`, exactly zero for nilpotent `P` of
/// index ≤ `N+1`.
pub fn build_w(t: &GammaTuple, degree: usize) -> Result<CMatrix> {
    let radius = spectral_radius(&t.p_op)?;
    if radius >= 1.0 - 1e-12 {
        return Err(Error::PurityRequired {
            spectral_radius: radius,
        });
    }
    Ok(w_matrix(&t.p_op, &t.defect_adj, degree))
}

/// Explicit truncated dilation bundle of a pure tuple.
#[derive(Debug, Clone)]
pub struct DilationBundle {
    pub hardy: TruncatedHardy,
    /// `T_i = I ⊗ B_i* + M_z ⊗ B_{n-i}` for the adjoint tuple's FOT `B`.
    pub t_ops: Vec<CMatrix>,
    /// Truncated block shift `V`.
    pub v_op: CMatrix,
    /// The embedding from the source space.
    pub w_op: CMatrix,
    /// `‖P^{N+1}‖`.
    pub tail_bound: f64,
    /// Per-index `‖W* T_i - S_i W*‖`.
    pub intertwine_residuals: Vec<f64>,
    /// `‖V* W - W P*‖`.
    pub shift_residual: f64,
    /// `‖W* W - I‖`.
    pub isometry_defect: f64,
    /// Scaled-pencil margin of the wired FOT (graded hypothesis); `None`
    /// when the pencil tuple failed to commute within tolerance.
    pub pencil_margin: Option<f64>,
    /// The wired FOT is commuting normal, making the margin an exact test.
    pub pencil_exact: bool,
    /// Identity dilation of a `Γ_n`-isometry (trivial defect of `P`).
    pub degenerate: bool,
}

/// Build the truncated `Γ_n`-isometric dilation of a pure tuple at degree
/// `N` and verify the intertwining identities against a tail budget.
///
/// A `Γ_n`-isometry (trivial adjoint defect) is returned as the identity
/// dilation of itself.
pub fn build_dilation(t: &GammaTuple, degree: usize, tol: f64) -> Result<DilationBundle> {
    if t.defect_adj.rank == 0 {
        return Ok(DilationBundle {
            hardy: TruncatedHardy {
                base_dim: t.order,
                degree: 0,
            },
            t_ops: t.s_ops.clone(),
            v_op: t.p_op.clone(),
            w_op: CMatrix::identity(t.order, t.order),
            tail_bound: 0.0,
            intertwine_residuals: vec![0.0; t.n - 1],
            shift_residual: 0.0,
            isometry_defect: 0.0,
            pencil_margin: Some(-(t.n as f64)),
            pencil_exact: true,
            degenerate: true,
        });
    }
    let w = build_w(t, degree)?;
    let b = fundamental_tuple(&t.adjoint()?, tol.max(1e-8))?;
    let k = t.n - 1;

    // graded scaled-pencil hypothesis on the wired FOT
    let scale = b.matrices.iter().map(nrm).fold(1.0f64, f64::max);
    let pencil_exact = b.matrices.iter().enumerate().all(|(i, bi)| {
        normality_defect(bi) <= 1e-8 * scale * scale
            && b.matrices[i + 1..]
                .iter()
                .all(|bj| nrm(&crate::matrix::commutator(bi, bj)) <= 1e-8 * scale * scale)
    });
    let pencil_margin = scaled_pencil_margin(&b.matrices, t.n, 32).ok();

    let hardy = TruncatedHardy {
        base_dim: t.defect_adj.rank,
        degree,
    };
    let t_ops: Vec<CMatrix> = (0..k)
        .map(|i| block_toeplitz(&b.matrices[i].adjoint(), &b.matrices[k - 1 - i], degree))
        .collect();
    let v_op = block_shift(hardy.base_dim, degree);

    let tail_bound = tail_norm(&t.p_op, degree);
    let isometry_defect = nrm(&(w.adjoint() * &w - CMatrix::identity(t.order, t.order)));
    let intertwine_residuals: Vec<f64> = (0..k)
        .map(|i| nrm(&(w.adjoint() * &t_ops[i] - &t.s_ops[i] * w.adjoint())))
        .collect();
    let shift_residual = nrm(&(v_op.adjoint() * &w - &w * t.p_op.adjoint()));

    let fot_worst = b.residuals.iter().copied().fold(0.0f64, f64::max);
    let budget = 10.0
        * (tail_bound * (1.0 + scale) * (t.order as f64).sqrt() + fot_worst + 1e-9 * t.scale());
    let worst = intertwine_residuals
        .iter()
        .copied()
        .fold(shift_residual, f64::max);
    if worst > budget {
        return Err(Error::DilationFailure {
            residual: worst,
            budget,
        });
    }
    Ok(DilationBundle {
        hardy,
        t_ops,
        v_op,
        w_op: w,
        tail_bound,
        intertwine_residuals,
        shift_residual,
        isometry_defect,
        pencil_margin,
        pencil_exact,
        degenerate: false,
    })
}

/// One verified dilation moment.
#[derive(Debug, Clone, Serialize)]
pub struct MomentEntry {
    /// Exponents of `T_1, …, T_{n-1}` followed by the `V` power.
    pub monomial: Vec<u32>,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentReport {
    pub entries: Vec<MomentEntry>,
    pub max_residual: f64,
    /// Worst `‖T_i* W - W S_i*‖` (co-isometric extension identities).
    pub extension_residual: f64,
}

/// Verify `W* T^m V^k W = S^m P^k` for every monomial of total degree up to
/// `max_total_degree`, plus the co-isometric extension identities.
pub fn verify_dilation_moments(
    bundle: &DilationBundle,
    t: &GammaTuple,
    max_total_degree: u32,
) -> MomentReport {
    let k = t.n - 1;
    let w = &bundle.w_op;
    let mut entries = Vec::new();
    let mut max_residual = 0.0f64;
    for exps in monomials(t.n, max_total_degree) {
        let mut big = CMatrix::identity(bundle.hardy.total_dim(), bundle.hardy.total_dim());
        let mut small = CMatrix::identity(t.order, t.order);
        for i in 0..k {
            for _ in 0..exps[i] {
                big = &big * &bundle.t_ops[i];
                small = &small * &t.s_ops[i];
            }
        }
        for _ in 0..exps[k] {
            big = &big * &bundle.v_op;
            small = &small * &t.p_op;
        }
        let residual = nrm(&(w.adjoint() * big * w - small));
        max_residual = max_residual.max(residual);
        entries.push(MomentEntry {
            monomial: exps,
            residual,
        });
    }
    let extension_residual = (0..k)
        .map(|i| nrm(&(bundle.t_ops[i].adjoint() * w - w * t.s_ops[i].adjoint())))
        .fold(0.0f64, f64::max);
    MomentReport {
        entries,
        max_residual,
        extension_residual,
    }
}

/// Truncation-level minimality proxy for a dilation bundle.
#[derive(Debug, Clone, Serialize)]
pub struct MinimalityReport {
    /// Numerical rank of the span of `{T^m V^k W h}`.
    pub span_rank: usize,
    /// Dimension of the truncated dilation space.
    pub total_dim: usize,
    pub minimal: bool,
}

/// Check that the monomial orbit of the embedded source space spans the
/// truncated dilation space.  The `V`-powers of `W` alone reach every
/// degree block (the degree-0 block of `W` spans the coefficient space by
/// construction), so a monomial subset with `T`-degree ≤ 2 certifies the
/// span; rank can only grow with more monomials.
pub fn verify_minimality(bundle: &DilationBundle, t: &GammaTuple) -> MinimalityReport {
    let total_dim = if bundle.degenerate {
        t.order
    } else {
        bundle.hardy.total_dim()
    };
    let k = t.n - 1;
    let degree = bundle.hardy.degree;
    // T-monomials of total degree ≤ 2
    let mut t_monos: Vec<Vec<u32>> = monomials(k, 2);
    t_monos.sort();
    // V^j W for j = 0..degree
    let mut shifted_w: Vec<CMatrix> = Vec::with_capacity(degree + 1);
    shifted_w.push(bundle.w_op.clone());
    for j in 0..degree {
        shifted_w.push(&bundle.v_op * &shifted_w[j]);
    }
    let mut cols: Vec<CMatrix> = Vec::new();
    for exps in &t_monos {
        let mut prefix = CMatrix::identity(total_dim, total_dim);
        for i in 0..k {
            for _ in 0..exps[i] {
                prefix = &prefix * &bundle.t_ops[i];
            }
        }
        for vw in &shifted_w {
            cols.push(&prefix * vw);
        }
    }
    let width: usize = cols.iter().map(|c| c.ncols()).sum();
    let mut span = CMatrix::zeros(total_dim, width);
    let mut at = 0;
    for c in &cols {
        for j in 0..c.ncols() {
            span.set_column(at, &c.column(j));
            at += 1;
        }
    }
    let sv = span.singular_values();
    let smax = sv.max().max(1e-300);
    let span_rank = sv.iter().filter(|&&s| s > 1e-9 * smax).count();
    MinimalityReport {
        span_rank,
        total_dim,
        minimal: span_rank == total_dim,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct L0Report {
    /// `‖W W* + M_Θ M_Θ* - I‖` on the full truncated space.
    pub residual: f64,
    /// Same norm restricted off the top-degree band of width `lag`.
    pub offband_residual: f64,
    /// Effective Maclaurin lag (last block above the dead cutoff).
    pub lag: usize,
    /// Max over `z` samples of `‖Σ_l z^l Θ^(l) - Θ_P(z)‖`, validating the
    /// block construction against the resolvent formula.
    pub maclaurin_defect: f64,
}

/// Verify `W W* + M_Θ M_Θ* = I` on the truncated space, building `M_Θ` from
/// Maclaurin blocks so it is exactly block lower triangular.
pub fn verify_l0(p: &CMatrix, degree: usize, z_samples: usize) -> Result<L0Report> {
    let radius = spectral_radius(p)?;
    if radius >= 1.0 - 1e-12 {
        return Err(Error::PurityRequired {
            spectral_radius: radius,
        });
    }
    let d = defect(p, crate::gamma::RANK_TOL)?;
    let dstar = defect(&p.adjoint(), crate::gamma::RANK_TOL)?;
    let th = maclaurin_blocks(p, degree, &d, &dstar);
    let lag = th
        .iter()
        .enumerate()
        .rev()
        .find(|(_, blk)| nrm(blk) > 1e-13)
        .map(|(l, _)| l)
        .unwrap_or(0);
    let rows = dstar.rank * (degree + 1);
    let cols = d.rank * (degree + 1);
    let mut mth = CMatrix::zeros(rows, cols);
    for bj in 0..=degree {
        for bk in 0..=bj {
            let blk = &th[bj - bk];
            for r in 0..dstar.rank {
                for c in 0..d.rank {
                    mth[(bj * dstar.rank + r, bk * d.rank + c)] = blk[(r, c)];
                }
            }
        }
    }
    let w = w_matrix(p, &dstar, degree);
    let err = &w * w.adjoint() + &mth * mth.adjoint() - CMatrix::identity(rows, rows);
    let residual = nrm(&err);
    let keep = degree + 1 - lag.min(degree);
    let offband_residual = if keep == 0 {
        0.0
    } else {
        nrm(&err
            .view((0, 0), (keep * dstar.rank, keep * dstar.rank))
            .into_owned())
    };
    // pointwise cross-check of the Maclaurin blocks
    let mut maclaurin_defect = 0.0f64;
    for j in 0..z_samples.max(1) {
        let r = if j % 2 == 0 { 0.35 } else { 0.7 };
        let z = Complex64::from_polar(
            r,
            j as f64 / z_samples.max(1) as f64 * std::f64::consts::TAU,
        );
        let direct = characteristic_function_with(p, z, &d, &dstar)?;
        let mut acc = CMatrix::zeros(dstar.rank, d.rank);
        let mut zp = Complex64::new(1.0, 0.0);
        for blk in &th {
            acc += blk.map(|x| x * zp);
            zp *= z;
        }
        maclaurin_defect = maclaurin_defect.max(nrm(&(acc - direct)));
    }
    Ok(L0Report {
        residual,
        offband_residual,
        lag,
        maclaurin_defect,
    })
}

/// Functional-model compression report.
#[derive(Debug, Clone)]
pub struct ModelReport {
    /// Orthonormal basis of the model space inside the truncated space.
    pub model_basis: CMatrix,
    /// Compressions `R_i` of `I ⊗ B_i* + M_z ⊗ B_{n-i}` to the model space.
    pub r_ops: Vec<CMatrix>,
    /// Compression `R` of the block shift.
    pub r_shift: CMatrix,
    pub model_dim: usize,
    /// Worst unitary-equivalence residual against `(S_i, P)` through `W`.
    pub equivalence_residual: f64,
    /// `‖(I - Q Q*) W‖` — the embedded source space sits inside the model.
    pub containment_residual: f64,
}

/// Compute the model space as the orthocomplement of the truncated range of
/// `M_Θ` (entire columns only) and compress the dilation operators to it.
pub fn model_compression(t: &GammaTuple, degree: usize, tol: f64) -> Result<ModelReport> {
    let bundle = build_dilation(t, degree, tol)?;
    if bundle.degenerate {
        return Err(Error::usage(
            "model_compression: tuple is a Γ_n-isometry; the model is the tuple itself",
        ));
    }
    let p = &t.p_op;
    let d = &t.defect;
    let dstar = &t.defect_adj;
    let th = maclaurin_blocks(p, degree, d, dstar);
    let scale_th = th.iter().map(nrm).fold(1.0f64, f64::max);
    let lag = th
        .iter()
        .enumerate()
        .rev()
        .find(|(_, blk)| nrm(blk) > 1e-13 * scale_th)
        .map(|(l, _)| l)
        .unwrap_or(0);
    let rows = dstar.rank * (degree + 1);
    // entire columns only: degree-k columns with k + lag ≤ N live fully
    // inside the truncation
    let full_cols = degree + 1 - lag.min(degree);
    let cols = d.rank * full_cols;
    let mut mth = CMatrix::zeros(rows, cols);
    for bk in 0..full_cols {
        for l in 0..=lag.min(degree - bk) {
            let blk = &th[l];
            for r in 0..dstar.rank {
                for c in 0..d.rank {
                    mth[((bk + l) * dstar.rank + r, bk * d.rank + c)] = blk[(r, c)];
                }
            }
        }
    }
    // orthocomplement of the column space via the Hermitian projector
    let complement = if cols == 0 {
        CMatrix::identity(rows, rows)
    } else {
        let svd = mth.clone().svd(true, false);
        let u = svd.u.as_ref().expect("requested");
        let smax = svd.singular_values.max();
        let rank = svd
            .singular_values
            .iter()
            .filter(|&&s| s > 1e-10 * smax.max(1.0))
            .count();
        let mut proj = CMatrix::identity(rows, rows);
        for j in 0..rank {
            let col = u.column(j);
            proj -= &(col * col.adjoint());
        }
        let (vals, vecs) = hermitian_eigen(&proj);
        let dim = vals.iter().filter(|&&v| v > 0.5).count();
        vecs.columns(0, dim).into_owned()
    };
    let model_dim = complement.ncols();
    let band_allowance = lag * d.rank + d.rank;
    if model_dim < t.order || model_dim > t.order + band_allowance {
        return Err(Error::ModelFailure {
            expected: t.order,
            got: model_dim,
            band: band_allowance,
        });
    }
    let q = complement;
    let r_ops: Vec<CMatrix> = bundle.t_ops.iter().map(|m| q.adjoint() * m * &q).collect();
    let r_shift = q.adjoint() * &bundle.v_op * &q;

    let w = &bundle.w_op;
    let x = q.adjoint() * w;
    let containment_residual = nrm(&(w - &q * &x));
    let mut equivalence_residual = nrm(&(x.adjoint() * &x - CMatrix::identity(t.order, t.order)));
    for (i, r) in r_ops.iter().enumerate() {
        equivalence_residual = equivalence_residual.max(nrm(&(x.adjoint() * r * &x - &t.s_ops[i])));
    }
    equivalence_residual = equivalence_residual.max(nrm(&(x.adjoint() * &r_shift * &x - p)));
    equivalence_residual = equivalence_residual.max(containment_residual);
    Ok(ModelReport {
        model_basis: q,
        r_ops,
        r_shift,
        model_dim,
        equivalence_residual,
        containment_residual,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AdmissibilityReport {
    /// Per-index max over `z` of
    /// `‖(B_i* + B_{n-i}z) Θ_P(z) - Θ_P(z)(A_i + A_{n-i}* z)‖`.
    pub forward: Vec<f64>,
    /// Per-index max over `z` of the dual intertwining through `Θ_{P*}`.
    pub dual: Vec<f64>,
}

impl AdmissibilityReport {
    pub fn max_residual(&self) -> f64 {
        self.forward
            .iter()
            .chain(self.dual.iter())
            .copied()
            .fold(0.0, f64::max)
    }
}

/// Verify the admissibility intertwinings between the FOT `a` of a tuple and
/// the FOT `b` of its adjoint, through the characteristic functions of `P`
/// and `P*`, over `z` samples in the open disc.
pub fn verify_admissibility(
    a: &FundamentalTuple,
    b: &FundamentalTuple,
    p: &CMatrix,
    z_samples: usize,
) -> Result<AdmissibilityReport> {
    let k = a.matrices.len();
    if b.matrices.len() != k {
        return Err(Error::usage("verify_admissibility: FOT arity mismatch"));
    }
    let d = defect(p, crate::gamma::RANK_TOL)?;
    let dstar = defect(&p.adjoint(), crate::gamma::RANK_TOL)?;
    let mut forward = vec![0.0f64; k];
    let mut dual = vec![0.0f64; k];
    if d.rank == 0 || dstar.rank == 0 {
        return Ok(AdmissibilityReport { forward, dual });
    }
    for j in 0..z_samples.max(1) {
        let r = [0.25, 0.55, 0.8][j % 3];
        let z = Complex64::from_polar(
            r,
            j as f64 / z_samples.max(1) as f64 * std::f64::consts::TAU,
        );
        let theta = characteristic_function_with(p, z, &d, &dstar)?;
        let theta_star = characteristic_function_with(&p.adjoint(), z, &dstar, &d)?;
        for i in 0..k {
            let ni = k - 1 - i;
            let lhs = (b.matrices[i].adjoint() + b.matrices[ni].map(|x| x * z)) * &theta;
            let rhs = &theta * (&a.matrices[i] + a.matrices[ni].adjoint().map(|x| x * z));
            forward[i] = forward[i].max(nrm(&(lhs - rhs)));
            let lhs = (a.matrices[i].adjoint() + a.matrices[ni].map(|x| x * z)) * &theta_star;
            let rhs = &theta_star * (&b.matrices[i] + b.matrices[ni].adjoint().map(|x| x * z));
            dual[i] = dual[i].max(nrm(&(lhs - rhs)));
        }
    }
    Ok(AdmissibilityReport { forward, dual })
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub coincide: bool,
    /// Max over `z` of `‖u_* Θ_P(z) - Θ_{P'}(z) u‖`.
    pub theta_residual: f64,
    /// Per-index `‖u_* B_i - B_i' u_*‖`.
    pub fot_residuals: Vec<f64>,
}

/// Verify a coincidence certificate: `u : 𝒟_P → 𝒟_{P'}` and
/// `u_* : 𝒟_{P*} → 𝒟_{P'*}` must be unitary, intertwine the characteristic
/// functions on `z` samples, and intertwine the adjoint FOTs.  Verification
/// only — no witness search.
#[allow(clippy::too_many_arguments)]
pub fn verify_equivalence_certificate(
    u: &CMatrix,
    u_star: &CMatrix,
    p: &CMatrix,
    p2: &CMatrix,
    b: &FundamentalTuple,
    b2: &FundamentalTuple,
    z_samples: usize,
    tol: f64,
) -> Result<EquivalenceReport> {
    let unit_defect = |m: &CMatrix| -> f64 {
        if m.ncols() == 0 {
            return 0.0;
        }
        nrm(&(m.adjoint() * m - CMatrix::identity(m.ncols(), m.ncols()))).max(nrm(&(m * m
            .adjoint()
            - CMatrix::identity(m.nrows(), m.nrows()))))
    };
    if unit_defect(u) > tol || unit_defect(u_star) > tol {
        return Err(Error::usage(
            "verify_equivalence_certificate: u and u_* must be unitary",
        ));
    }
    if b.matrices.len() != b2.matrices.len() {
        return Err(Error::usage(
            "verify_equivalence_certificate: FOT arity mismatch",
        ));
    }
    let d1 = defect(p, crate::gamma::RANK_TOL)?;
    let d1s = defect(&p.adjoint(), crate::gamma::RANK_TOL)?;
    let d2 = defect(p2, crate::gamma::RANK_TOL)?;
    let d2s = defect(&p2.adjoint(), crate::gamma::RANK_TOL)?;
    let mut theta_residual = 0.0f64;
    for j in 0..z_samples.max(1) {
        let r = [0.2, 0.5, 0.75][j % 3];
        let z = Complex64::from_polar(
            r,
            j as f64 / z_samples.max(1) as f64 * std::f64::consts::TAU,
        );
        let t1 = characteristic_function_with(p, z, &d1, &d1s)?;
        let t2 = characteristic_function_with(p2, z, &d2, &d2s)?;
        theta_residual = theta_residual.max(nrm(&(u_star * t1 - t2 * u)));
    }
    let fot_residuals: Vec<f64> = b
        .matrices
        .iter()
        .zip(&b2.matrices)
        .map(|(bi, bi2)| nrm(&(u_star * bi - bi2 * u_star)))
        .collect();
    let coincide = theta_residual <= tol && fot_residuals.iter().all(|&r| r <= tol);
    Ok(EquivalenceReport {
        coincide,
        theta_residual,
        fot_residuals,
    })
}
