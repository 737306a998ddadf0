//! Taylor joint spectra of commuting matrix tuples.
//!
//! For commuting matrices the Taylor joint spectrum equals the set of joint
//! eigenvalues, which equals the multiset of joint diagonal coefficients of a
//! simultaneous triangularization.  The triangularization is constructive:
//! find a joint eigenvector, rotate it onto the first coordinate with a
//! Householder reflection, and recurse on the trailing block.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::schur;
use crate::matrix::{canonicalize_columns, nrm, CMatrix, C64};

/// Relative gap below which eigenvalues are grouped into one cluster.
const CLUSTER_GAP: f64 = 1e-8;

/// An ordered list of same-order square matrices with certified pairwise
/// commutator defect.
#[derive(Debug, Clone)]
pub struct CommutingTuple {
    pub order: usize,
    pub arity: usize,
    pub matrices: Vec<CMatrix>,
    pub commutator_defect: f64,
}

impl CommutingTuple {
    /// Certify and wrap a tuple; fails when any pairwise commutator exceeds
    /// `tol` (relative to the largest operator norm).
    pub fn new(matrices: Vec<CMatrix>, tol: f64) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::usage("CommutingTuple: empty tuple"));
        }
        let order = matrices[0].nrows();
        if order == 0 {
            return Err(Error::usage("CommutingTuple: dimension-zero matrices"));
        }
        for m in &matrices {
            if m.nrows() != order || m.ncols() != order {
                return Err(Error::usage(
                    "CommutingTuple: matrices must be square and of equal order",
                ));
            }
        }
        let scale = matrices.iter().map(nrm).fold(1.0f64, f64::max);
        let mut defect = 0.0f64;
        for i in 0..matrices.len() {
            for j in i + 1..matrices.len() {
                defect = defect.max(nrm(&crate::matrix::commutator(&matrices[i], &matrices[j])));
            }
        }
        if defect > tol * scale {
            return Err(Error::NotCommuting {
                defect,
                tol: tol * scale,
            });
        }
        Ok(CommutingTuple {
            order,
            arity: matrices.len(),
            matrices,
            commutator_defect: defect,
        })
    }
}

/// Multiset of joint eigenvalue tuples; point count equals the matrix order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JointSpectrum {
    pub points: Vec<Vec<C64>>,
    pub order: usize,
}

impl JointSpectrum {
    /// Coordinate `i` of every point, as a multiset.
    pub fn coordinate(&self, i: usize) -> Vec<C64> {
        self.points.iter().map(|p| p[i]).collect()
    }
}

fn lex_cmp(a: &C64, b: &C64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn sort_points(points: &mut [Vec<C64>]) {
    points.sort_by(|x, y| {
        for (a, b) in x.iter().zip(y.iter()) {
            let c = lex_cmp(a, b);
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    });
}

/// Group sorted eigenvalues into clusters of relative gap `CLUSTER_GAP`,
/// returning `(representative mean, radius, members)` per cluster sorted
/// lexicographically by representative.
fn cluster_eigenvalues(eigs: &[C64], scale: f64) -> Vec<(C64, f64)> {
    let mut sorted = eigs.to_vec();
    sorted.sort_by(lex_cmp);
    let gap = CLUSTER_GAP * scale.max(1.0);
    let mut clusters: Vec<Vec<C64>> = Vec::new();
    for &e in &sorted {
        if let Some(last) = clusters.last_mut() {
            if last.iter().any(|&x| (x - e).norm() <= gap) {
                last.push(e);
                continue;
            }
        }
        clusters.push(vec![e]);
    }
    let mut out: Vec<(C64, f64)> = clusters
        .iter()
        .map(|c| {
            let mean = c.iter().sum::<C64>() / c.len() as f64;
            let radius = c.iter().map(|&x| (x - mean).norm()).fold(0.0, f64::max);
            (mean, radius)
        })
        .collect();
    out.sort_by(|a, b| lex_cmp(&a.0, &b.0));
    out
}

/// Kernel basis of `a - λI` by SVD: right singular vectors whose singular
/// value is below `cut` (at least one, the smallest).
fn kernel_basis(a: &CMatrix, lambda: C64, cut: f64) -> CMatrix {
    let d = a.nrows();
    let shifted = a - CMatrix::identity(d, d).map(|x| x * lambda);
    if d == 1 {
        return CMatrix::identity(1, 1);
    }
    let svd = shifted.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let mut keep: Vec<usize> = idx
        .iter()
        .copied()
        .filter(|&i| svd.singular_values[i] <= cut)
        .collect();
    if keep.is_empty() {
        keep.push(idx[0]);
    }
    keep.sort_unstable();
    let mut basis = CMatrix::zeros(d, keep.len());
    for (col, &i) in keep.iter().enumerate() {
        basis.set_column(col, &vt.row(i).adjoint());
    }
    canonicalize_columns(&mut basis);
    basis
}

fn joint_eigenpair_attempt(matrices: &[CMatrix], kernel_relax: f64) -> Result<(Vec<C64>, CMatrix)> {
    let order = matrices[0].nrows();
    let mut q = CMatrix::identity(order, order);
    let mut lambdas = Vec::with_capacity(matrices.len());
    for m in matrices {
        let compressed = q.adjoint() * m * &q;
        let scale = nrm(m).max(1.0);
        let eigs = schur::eigenvalues(&compressed)?;
        let clusters = cluster_eigenvalues(&eigs, scale);
        // deterministic choice: lexicographically smallest representative
        let (lambda, radius) = clusters[0];
        let cut = (2.0 * radius + 1e-11 * scale) * kernel_relax;
        let basis = kernel_basis(&compressed, lambda, cut);
        q = &q * &basis;
        lambdas.push(lambda);
    }
    let v = q.column(0).into_owned();
    let v = &v / crate::matrix::re(v.norm());
    let mut vmat = CMatrix::zeros(order, 1);
    vmat.set_column(0, &v.column(0));
    Ok((lambdas, vmat))
}

/// Find a joint eigenvalue and unit joint eigenvector of a commuting tuple.
///
/// The eigenvector search narrows an eigenspace chain across the arity; the
/// returned pair satisfies `‖T_i v - λ_i v‖ ≤ tol` for every `i`, otherwise
/// a `NumericalFailure` carries the worst residual.
pub fn joint_eigenpair(t: &CommutingTuple, tol: f64) -> Result<(Vec<C64>, CMatrix)> {
    joint_eigenpair_of(&t.matrices, tol)
}

fn joint_eigenpair_of(matrices: &[CMatrix], tol: f64) -> Result<(Vec<C64>, CMatrix)> {
    let mut worst = f64::INFINITY;
    for relax in [1.0, 32.0, 1024.0] {
        let (lambdas, v) = joint_eigenpair_attempt(matrices, relax)?;
        let mut residual = 0.0f64;
        for (m, &l) in matrices.iter().zip(&lambdas) {
            residual = residual.max(nrm(&(m * &v - v.map(|x| x * l))));
        }
        if residual <= tol {
            return Ok((lambdas, v));
        }
        worst = worst.min(residual);
    }
    Err(Error::NumericalFailure {
        what: "joint eigenvector deflation".into(),
        residual: worst,
    })
}

/// Complex Householder reflection mapping unit vector `v` to a unimodular
/// multiple of `e_1`.
fn householder_to_e1(v: &CMatrix) -> CMatrix {
    let d = v.nrows();
    let mut w = v.column(0).into_owned();
    let alpha = w[0];
    let phase = if alpha.norm() > 0.0 {
        alpha / alpha.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    w[0] += phase;
    let norm = w.norm();
    let id = CMatrix::identity(d, d);
    if norm <= 1e-14 {
        return id;
    }
    let w = w.map(|x| x / norm);
    let mut wmat = CMatrix::zeros(d, 1);
    wmat.set_column(0, &w.column(0));
    id - (&wmat * wmat.adjoint()).map(|x| x * 2.0)
}

/// Simultaneously triangularize a commuting tuple: returns a unitary `U` and
/// upper-triangular `R_i` with `U* T_i U = R_i` up to `order · tol`.
pub fn simultaneous_triangularize(t: &CommutingTuple, tol: f64) -> Result<(CMatrix, Vec<CMatrix>)> {
    let order = t.order;
    let mut u = CMatrix::identity(order, order);
    let mut work: Vec<CMatrix> = t.matrices.clone();
    for step in 0..order.saturating_sub(1) {
        let d = order - step;
        let sub: Vec<CMatrix> = work
            .iter()
            .map(|m| m.view((step, step), (d, d)).into_owned())
            .collect();
        let (_, v) = joint_eigenpair_of(&sub, tol * (1.0 + t.commutator_defect / tol.max(1e-300)))?;
        let h = householder_to_e1(&v);
        // grow to the full order: identity on the already-deflated corner
        let mut hfull = CMatrix::identity(order, order);
        for i in 0..d {
            for j in 0..d {
                hfull[(step + i, step + j)] = h[(i, j)];
            }
        }
        for m in work.iter_mut() {
            *m = hfull.adjoint() * &*m * &hfull;
        }
        u = &u * &hfull;
    }
    // measure and strip the lower-triangular residue
    let scale = t.matrices.iter().map(nrm).fold(1.0f64, f64::max);
    let budget = (order as f64) * tol * scale + (order as f64) * t.commutator_defect * 16.0;
    let mut lower_defect = 0.0f64;
    for m in &work {
        for j in 0..order {
            for i in j + 1..order {
                lower_defect = lower_defect.max(m[(i, j)].norm());
            }
        }
    }
    if lower_defect > budget {
        return Err(Error::NumericalFailure {
            what: "simultaneous triangularization deflation".into(),
            residual: lower_defect,
        });
    }
    let triangles: Vec<CMatrix> = work
        .into_iter()
        .map(|mut m| {
            for j in 0..order {
                for i in j + 1..order {
                    m[(i, j)] = Complex64::new(0.0, 0.0);
                }
            }
            m
        })
        .collect();
    Ok((u, triangles))
}

/// Taylor joint spectrum as the multiset of joint diagonal coefficients of a
/// simultaneous triangularization, sorted lexicographically.
pub fn taylor_spectrum(t: &CommutingTuple, tol: f64) -> Result<JointSpectrum> {
    let (_, triangles) = simultaneous_triangularize(t, tol)?;
    let mut points: Vec<Vec<C64>> = (0..t.order)
        .map(|k| triangles.iter().map(|r| r[(k, k)]).collect())
        .collect();
    sort_points(&mut points);
    Ok(JointSpectrum {
        points,
        order: t.order,
    })
}

/// Bottleneck matching distance between two point multisets under the
/// max-coordinate metric: the smallest `d` admitting a perfect matching whose
/// every pair is within `d`.  Infinite when the multiset sizes differ.
pub fn matching_distance(a: &[Vec<C64>], b: &[Vec<C64>]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let n = a.len();
    if n == 0 {
        return 0.0;
    }
    let dist = |i: usize, j: usize| -> f64 {
        a[i].iter()
            .zip(&b[j])
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    };
    let mut all: Vec<f64> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| dist(i, j))
        .collect();
    all.sort_by(f64::total_cmp);
    all.dedup();

    // Kuhn's augmenting-path matching restricted to edges ≤ threshold.
    let feasible = |threshold: f64| -> bool {
        let mut match_of_b: Vec<Option<usize>> = vec![None; n];
        fn try_assign(
            i: usize,
            n: usize,
            threshold: f64,
            dist: &dyn Fn(usize, usize) -> f64,
            seen: &mut [bool],
            match_of_b: &mut [Option<usize>],
        ) -> bool {
            for j in 0..n {
                if !seen[j] && dist(i, j) <= threshold {
                    seen[j] = true;
                    if match_of_b[j].is_none()
                        || try_assign(match_of_b[j].unwrap(), n, threshold, dist, seen, match_of_b)
                    {
                        match_of_b[j] = Some(i);
                        return true;
                    }
                }
            }
            false
        }
        for i in 0..n {
            let mut seen = vec![false; n];
            if !try_assign(i, n, threshold, &dist, &mut seen, &mut match_of_b) {
                return false;
            }
        }
        true
    };

    let mut lo = 0usize;
    let mut hi = all.len() - 1;
    if !feasible(all[hi]) {
        return f64::INFINITY;
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(all[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    all[lo]
}
