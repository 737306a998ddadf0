//! Dense complex matrix primitives consumed by every other module.
//!
//! The carrier type is [`CMatrix`], a dense column-major complex matrix.
//! Everything here is deterministic: Hermitian eigenvalues are returned in a
//! fixed order and eigenbases are canonicalized (phase and order), so repeated
//! runs produce bit-identical results.

pub mod schur;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = Complex64;

/// Dense complex matrix, the universal carrier for operators.
pub type CMatrix = DMatrix<C64>;

pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Shorthand complex constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Real scalar lifted to a complex one.
#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `AB - BA`.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// `A*A - AA*` norm; zero for normal matrices.
pub fn normality_defect(a: &CMatrix) -> f64 {
    nrm(&commutator(&a.adjoint(), a))
}

/// Kronecker product, used for matrix-coefficient polynomial calculus.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Operator norm that tolerates empty matrices (internal helper).
pub(crate) fn nrm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        0.0
    } else {
        a.singular_values().max()
    }
}

/// Largest singular value.
///
/// Sub-multiplicative and unitarily invariant; errors on dimension-zero input.
pub fn op_norm(a: &CMatrix) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::usage("op_norm: dimension-zero input"));
    }
    Ok(a.singular_values().max())
}

/// Eigenvalues of the Hermitian part `(a + a*)/2`, sorted ascending.
pub fn hermitian_part_eigenvalues(a: &CMatrix) -> Vec<f64> {
    let h = (a + a.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Smallest eigenvalue of the Hermitian part `(a + a*)/2`.
///
/// Symmetrizes silently; callers that care about the asymmetry defect can
/// measure `‖a - a*‖` themselves.
pub fn hermitian_min_eig(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    hermitian_part_eigenvalues(a)[0]
}

/// Full Hermitian eigendecomposition of `(a + a*)/2` with deterministic
/// ordering: eigenvalues descending, each eigenvector phase-fixed so its
/// largest-magnitude entry is real positive.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvectors as columns.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.nrows();
    let h = (a + a.adjoint()).scale(0.5);
    let se = nalgebra::SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[j].total_cmp(&se.eigenvalues[i]));
    let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vecs = CMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &se.eigenvectors.column(i));
    }
    canonicalize_columns(&mut vecs);
    (vals, vecs)
}

/// Fix the phase of each column so its largest-magnitude entry is real
/// positive (ties broken by the smallest row index).
pub(crate) fn canonicalize_columns(m: &mut CMatrix) {
    for j in 0..m.ncols() {
        let mut best = 0usize;
        let mut mag = -1.0f64;
        for i in 0..m.nrows() {
            let v = m[(i, j)].norm();
            if v > mag + 1e-14 {
                mag = v;
                best = i;
            }
        }
        if mag > 1e-300 {
            let phase = m[(best, j)] / m[(best, j)].norm();
            let corr = phase.conj();
            for i in 0..m.nrows() {
                m[(i, j)] *= corr;
            }
        }
    }
}

/// Numerical radius `ω(a)`: max over a θ-grid, refined by golden-section
/// search, of the largest eigenvalue of `(e^{iθ}a + e^{-iθ}a*)/2`.
///
/// The result lies in `[‖a‖/2, ‖a‖]`.
pub fn numerical_radius(a: &CMatrix, angular_samples: usize) -> Result<f64> {
    if a.nrows() != a.ncols() {
        return Err(Error::usage("numerical_radius: matrix must be square"));
    }
    if angular_samples < 8 {
        return Err(Error::usage(
            "numerical_radius: need at least 8 angular samples",
        ));
    }
    if a.is_empty() {
        return Ok(0.0);
    }
    let lambda_max = |theta: f64| -> f64 {
        let z = C64::from_polar(1.0, theta);
        let h = (a.map(|x| x * z) + a.adjoint().map(|x| x * z.conj())).scale(0.5);
        let ev = h.symmetric_eigenvalues();
        ev.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    };
    let step = std::f64::consts::TAU / angular_samples as f64;
    let mut best = f64::NEG_INFINITY;
    let mut best_j = 0usize;
    for j in 0..angular_samples {
        let v = lambda_max(j as f64 * step);
        if v > best {
            best = v;
            best_j = j;
        }
    }
    // Golden-section refinement around the best grid point; the objective is
    // continuous in θ, so a local bracket suffices at this grid density.
    let mut lo = best_j as f64 * step - step;
    let mut hi = best_j as f64 * step + step;
    let inv_phi = 0.618_033_988_749_894_9_f64;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = lambda_max(x1);
    let mut f2 = lambda_max(x2);
    while hi - lo > 1e-10 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = lambda_max(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = lambda_max(x1);
        }
    }
    Ok(best.max(f1).max(f2))
}

/// Defect data of a contraction `P`: the positive square root
/// `D_P = (I - P*P)^{1/2}` together with an orthonormal basis of its range.
#[derive(Debug, Clone)]
pub struct DefectData {
    /// The positive square root `D_P` on the full space.
    pub d_matrix: CMatrix,
    /// Columns form an orthonormal basis of the defect space (range of `D_P`).
    pub basis: CMatrix,
    /// Square roots of the retained eigenvalues of `I - P*P`, descending.
    pub sqrt_eigs: Vec<f64>,
    /// Dimension of the defect space.
    pub rank: usize,
}

impl DefectData {
    /// Compress a full-space operator to defect coordinates: `E* m E`.
    pub fn compress(&self, m: &CMatrix) -> CMatrix {
        self.basis.adjoint() * m * &self.basis
    }

    /// Lift a defect-coordinate operator to the full space: `E m E*`.
    pub fn lift(&self, m: &CMatrix) -> CMatrix {
        &self.basis * m * self.basis.adjoint()
    }

    /// `E* D_P⁺ m D_P⁺ E` — sandwich by the pseudo-inverse of `D_P`,
    /// expressed directly in defect coordinates.
    pub fn pinv_sandwich(&self, m: &CMatrix) -> CMatrix {
        let mut core = self.compress(m);
        for i in 0..self.rank {
            for j in 0..self.rank {
                core[(i, j)] /= re(self.sqrt_eigs[i] * self.sqrt_eigs[j]);
            }
        }
        core
    }

    /// `E* D_P m D_P E` in defect coordinates.
    pub fn d_sandwich(&self, m: &CMatrix) -> CMatrix {
        let mut core = self.compress(m);
        for i in 0..self.rank {
            for j in 0..self.rank {
                core[(i, j)] *= re(self.sqrt_eigs[i] * self.sqrt_eigs[j]);
            }
        }
        core
    }
}

/// Hermitian eigendecomposition of `I - p*p` with eigenvalue clamping.
///
/// Eigenvalues in `[-rank_tol, 0)` are clamped to zero (floating-point
/// contractions sit on the boundary); anything more negative means `p` is not
/// a contraction.  The basis spans eigenvectors with eigenvalue above
/// `rank_tol`, in descending eigenvalue order.
pub fn defect(p: &CMatrix, rank_tol: f64) -> Result<DefectData> {
    if p.nrows() != p.ncols() {
        return Err(Error::usage("defect: matrix must be square"));
    }
    let n = p.nrows();
    let norm = op_norm(p)?;
    if norm > 1.0 + rank_tol {
        return Err(Error::NotAContraction {
            norm,
            tol: rank_tol,
        });
    }
    let gram = CMatrix::identity(n, n) - p.adjoint() * p;
    let (vals, vecs) = hermitian_eigen(&gram);
    let mut clamped = Vec::with_capacity(n);
    for &v in &vals {
        if v < -rank_tol.max(1e2 * f64::EPSILON * (1.0 + norm * norm)) {
            return Err(Error::NotAContraction {
                norm: (1.0 - v).sqrt(),
                tol: rank_tol,
            });
        }
        clamped.push(v.max(0.0));
    }
    let rank = clamped.iter().filter(|&&v| v > rank_tol).count();
    let basis = vecs.columns(0, rank).into_owned();
    let sqrt_eigs: Vec<f64> = clamped[..rank].iter().map(|v| v.sqrt()).collect();
    let mut d_matrix = CMatrix::zeros(n, n);
    for (k, &s) in sqrt_eigs.iter().enumerate() {
        let col = basis.column(k);
        d_matrix += (col * col.adjoint()).map(|x| x * re(s));
    }
    Ok(DefectData {
        d_matrix,
        basis,
        sqrt_eigs,
        rank,
    })
}

/// Solve `(I - z p*) x = b` columns, failing when the resolvent is
/// numerically singular.
pub fn resolvent_apply(p: &CMatrix, z: C64, rhs: &CMatrix, cond_limit: f64) -> Result<CMatrix> {
    let n = p.nrows();
    let m = CMatrix::identity(n, n) - p.adjoint().map(|x| x * z);
    let sv = m.singular_values();
    let smax = sv.max();
    let smin = sv.min();
    let cond = if smin > 0.0 {
        smax / smin
    } else {
        f64::INFINITY
    };
    if cond > cond_limit {
        return Err(Error::EvaluationFailure { condition: cond });
    }
    m.lu()
        .solve(rhs)
        .ok_or(Error::EvaluationFailure { condition: cond })
}

// ---------------------------------------------------------------------------
// JSON schema: {"rows": R, "cols": C, "data": [[re, im], …]} in row-major
// order.  num-complex serializes Complex64 as the [re, im] pair directly.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

/// Serialize a matrix to the repo-wide JSON schema.
pub fn matrix_to_json(m: &CMatrix) -> serde_json::Value {
    let mut data = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            data.push(m[(i, j)]);
        }
    }
    serde_json::to_value(MatrixJson {
        rows: m.nrows(),
        cols: m.ncols(),
        data,
    })
    .expect("matrix serialization cannot fail")
}

/// Parse a matrix from the repo-wide JSON schema, validating the invariants
/// (entry count, finiteness).
pub fn matrix_from_json(v: &serde_json::Value) -> Result<CMatrix> {
    let mj: MatrixJson = serde_json::from_value(v.clone())?;
    if mj.rows == 0 || mj.cols == 0 {
        return Err(Error::usage("matrix: rows and cols must be positive"));
    }
    if mj.data.len() != mj.rows * mj.cols {
        return Err(Error::usage(format!(
            "matrix: expected {} entries, got {}",
            mj.rows * mj.cols,
            mj.data.len()
        )));
    }
    if mj
        .data
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::usage("matrix: entries must be finite"));
    }
    Ok(CMatrix::from_row_slice(mj.rows, mj.cols, &mj.data))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(a: f64, b: f64, c: f64, d: f64) -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[re(a), re(b), re(c), re(d)])
    }

    #[test]
    fn op_norm_identity_and_zero() {
        assert!((op_norm(&CMatrix::identity(3, 3)).unwrap() - 1.0).abs() < 1e-14);
        assert!(op_norm(&CMatrix::zeros(2, 3)).unwrap() < 1e-14);
    }

    #[test]
    fn op_norm_nilpotent() {
        // singular values of [[0,2],[0,0]] are {2, 0}
        assert!((op_norm(&m2(0.0, 2.0, 0.0, 0.0)).unwrap() - 2.0).abs() < 1e-13);
    }

    #[test]
    fn op_norm_empty_is_usage_error() {
        assert!(matches!(
            op_norm(&CMatrix::zeros(0, 0)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn numerical_radius_examples() {
        // Hermitian case: ω equals the spectral radius.
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![re(1.0), re(-2.0)]));
        assert!((numerical_radius(&d, 256).unwrap() - 2.0).abs() < 1e-9);
        assert!(numerical_radius(&CMatrix::zeros(3, 3), 64).unwrap() < 1e-12);
        // 2x2 nilpotent: numerical range is the disc of radius |t|/2.
        let n = m2(0.0, 2.0, 0.0, 0.0);
        assert!((numerical_radius(&n, 256).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn numerical_radius_dense_sweep_oracle() {
        // Independent oracle: dense θ-sweep without refinement at 20000
        // samples, on a fixed non-normal matrix.
        let a = CMatrix::from_row_slice(
            2,
            2,
            &[c64(0.3, 0.1), c64(1.2, -0.4), c64(0.0, 0.2), c64(-0.5, 0.0)],
        );
        let fine = {
            let mut best = f64::NEG_INFINITY;
            for j in 0..20000 {
                let t = j as f64 / 20000.0 * std::f64::consts::TAU;
                let z = C64::from_polar(1.0, t);
                let h = (a.map(|x| x * z) + a.adjoint().map(|x| x * z.conj())).scale(0.5);
                best = best.max(h.symmetric_eigenvalues().max());
            }
            best
        };
        let fast = numerical_radius(&a, 256).unwrap();
        assert!((fast - fine).abs() < 1e-7, "fast {fast} vs oracle {fine}");
    }

    #[test]
    fn defect_examples() {
        let z = CMatrix::zeros(2, 2);
        let d = defect(&z, 1e-10).unwrap();
        assert_eq!(d.rank, 2);
        assert!(nrm(&(&d.d_matrix - CMatrix::identity(2, 2))) < 1e-14);

        let u = m2(0.0, 1.0, 1.0, 0.0); // a unitary
        let d = defect(&u, 1e-10).unwrap();
        assert_eq!(d.rank, 0);
        assert!(nrm(&d.d_matrix) < 1e-10);

        let p = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![re(0.6), re(1.0)]));
        let d = defect(&p, 1e-10).unwrap();
        assert_eq!(d.rank, 1);
        assert!((d.d_matrix[(0, 0)].re - 0.8).abs() < 1e-14);
        assert!(d.d_matrix[(1, 1)].norm() < 1e-12);
        assert!((d.basis[(0, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn defect_rejects_expansions() {
        let p = m2(1.5, 0.0, 0.0, 0.0);
        assert!(matches!(
            defect(&p, 1e-10),
            Err(Error::NotAContraction { .. })
        ));
    }

    #[test]
    fn hermitian_min_eig_examples() {
        assert!((hermitian_min_eig(&CMatrix::identity(3, 3)) - 1.0).abs() < 1e-14);
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![re(3.0), re(-0.5)]));
        assert!((hermitian_min_eig(&d) + 0.5).abs() < 1e-14);
        // I - p*p for p = diag(0.6, 1) has eigenvalues {0.64, 0}.
        let p = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![re(0.6), re(1.0)]));
        let g = CMatrix::identity(2, 2) - p.adjoint() * &p;
        assert!(hermitian_min_eig(&g).abs() < 1e-14);
    }

    #[test]
    fn matrix_json_round_trip() {
        let a = CMatrix::from_row_slice(
            2,
            3,
            &[
                c64(1.0, -2.0),
                c64(0.125, 3.5),
                c64(0.0, 0.0),
                c64(-1e-17, 7.0),
                c64(2.0 / 3.0, 0.1),
                c64(5.0, -0.25),
            ],
        );
        let v = matrix_to_json(&a);
        let b = matrix_from_json(&v).unwrap();
        assert_eq!(a, b, "round trip must be lossless");
    }

    #[test]
    fn matrix_json_validates() {
        let bad = serde_json::json!({"rows": 2, "cols": 2, "data": [[1.0, 0.0]]});
        assert!(matrix_from_json(&bad).is_err());
        let nan = serde_json::json!({"rows": 1, "cols": 1, "data": [[f64::NAN, 0.0]]});
        assert!(matrix_from_json(&nan).is_err());
    }
}
