//! Complex Schur decomposition by Householder–Hessenberg reduction followed
//! by an explicit single-shift QR iteration with Wilkinson shifts.
//!
//! `a = Q T Q*` with `Q` unitary and `T` upper triangular; the eigenvalues of
//! `a` appear on the diagonal of `T`.  Dense, order ≤ ~500 by design.

use super::{nrm, CMatrix, C64, ONE};
use crate::error::{Error, Result};

/// Result of a Schur decomposition.
pub struct SchurDecomposition {
    pub q: CMatrix,
    pub t: CMatrix,
}

/// Complex Givens rotation `[[c, s], [-conj(s), c]]` with real `c ≥ 0`
/// zeroing the second component of `(a, b)`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let t = (an * an + bn * bn).sqrt();
    (an / t, (a / an) * b.conj() / t)
}

fn hessenberg(h: &mut CMatrix, q: &mut CMatrix) {
    let n = h.nrows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let mut v: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm <= 1e-300 {
            continue;
        }
        let alpha = v[0];
        let phase = if alpha.norm() > 0.0 {
            alpha / alpha.norm()
        } else {
            ONE
        };
        v[0] += phase * xnorm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm <= 1e-300 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // h ← (I - 2vv*) h on rows k+1..n
        for j in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for (r, vi) in v.iter().enumerate() {
                dot += vi.conj() * h[(k + 1 + r, j)];
            }
            let dot = dot * 2.0;
            for (r, vi) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= vi * dot;
            }
        }
        // h ← h (I - 2vv*) on cols k+1..n
        for i in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for (r, vi) in v.iter().enumerate() {
                dot += h[(i, k + 1 + r)] * vi;
            }
            let dot = dot * 2.0;
            for (r, vi) in v.iter().enumerate() {
                h[(i, k + 1 + r)] -= dot * vi.conj();
            }
        }
        // accumulate q ← q (I - 2vv*)
        for i in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for (r, vi) in v.iter().enumerate() {
                dot += q[(i, k + 1 + r)] * vi;
            }
            let dot = dot * 2.0;
            for (r, vi) in v.iter().enumerate() {
                q[(i, k + 1 + r)] -= dot * vi.conj();
            }
        }
    }
    // clean below the first subdiagonal
    for j in 0..n {
        for i in j + 2..n {
            h[(i, j)] = C64::new(0.0, 0.0);
        }
    }
}

/// Eigenvalue of the 2x2 block closest to its lower-right entry.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let tr = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (tr * tr - det).sqrt();
    let e1 = tr + disc;
    let e2 = tr - disc;
    if (e1 - d).norm() < (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

/// Compute the complex Schur decomposition `a = Q T Q*`.
pub fn complex_schur(a: &CMatrix) -> Result<SchurDecomposition> {
    if a.nrows() != a.ncols() {
        return Err(Error::usage("schur: matrix must be square"));
    }
    let n = a.nrows();
    let mut h = a.clone();
    let mut q = CMatrix::identity(n, n);
    if n <= 1 {
        return Ok(SchurDecomposition { q, t: h });
    }
    hessenberg(&mut h, &mut q);
    let scale = nrm(a).max(1e-300);
    let eps = f64::EPSILON;

    let mut hi = n - 1;
    let mut since_deflation = 0usize;
    let mut total = 0usize;
    let max_total = 60 * n * n + 200;
    loop {
        // deflate converged subdiagonals at the active corner
        while hi > 0 {
            let s = h[(hi, hi - 1)].norm();
            let local = h[(hi - 1, hi - 1)].norm() + h[(hi, hi)].norm();
            if s <= eps * (local + scale) {
                h[(hi, hi - 1)] = C64::new(0.0, 0.0);
                hi -= 1;
                since_deflation = 0;
            } else {
                break;
            }
        }
        if hi == 0 {
            break;
        }
        // active window [lo, hi]
        let mut lo = hi;
        while lo > 0 {
            let s = h[(lo, lo - 1)].norm();
            let local = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if s <= eps * (local + scale) {
                h[(lo, lo - 1)] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }

        total += 1;
        since_deflation += 1;
        if total > max_total {
            return Err(Error::NumericalFailure {
                what: "complex QR iteration".into(),
                residual: h[(hi, hi - 1)].norm(),
            });
        }
        let sigma = if since_deflation.is_multiple_of(16) {
            // exceptional shift to break symmetry-induced cycles
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        // explicit shifted QR sweep on [lo, hi]
        for k in lo..=hi {
            h[(k, k)] -= sigma;
        }
        let mut rots: Vec<(f64, C64)> = Vec::with_capacity(hi - lo);
        for m in lo..hi {
            let (c, s) = givens(h[(m, m)], h[(m + 1, m)]);
            rots.push((c, s));
            for j in m..n {
                let x = h[(m, j)];
                let y = h[(m + 1, j)];
                h[(m, j)] = x * c + y * s;
                h[(m + 1, j)] = -x * s.conj() + y * c;
            }
            h[(m + 1, m)] = C64::new(0.0, 0.0);
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let m = lo + idx;
            let top = (m + 2).min(hi + 1);
            for i in 0..top {
                let x = h[(i, m)];
                let y = h[(i, m + 1)];
                h[(i, m)] = x * c + y * s.conj();
                h[(i, m + 1)] = -x * s + y * c;
            }
            for i in 0..n {
                let x = q[(i, m)];
                let y = q[(i, m + 1)];
                q[(i, m)] = x * c + y * s.conj();
                q[(i, m + 1)] = -x * s + y * c;
            }
        }
        for k in lo..=hi {
            h[(k, k)] += sigma;
        }
    }
    // enforce exact triangularity
    for j in 0..n {
        for i in j + 1..n {
            h[(i, j)] = C64::new(0.0, 0.0);
        }
    }
    Ok(SchurDecomposition { q, t: h })
}

/// Eigenvalues sorted lexicographically by (real, imaginary) parts.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<C64>> {
    let dec = complex_schur(a)?;
    let mut ev: Vec<C64> = (0..a.nrows()).map(|i| dec.t[(i, i)]).collect();
    ev.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(ev)
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(a: &CMatrix) -> Result<f64> {
    Ok(eigenvalues(a)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::re;

    fn residual(a: &CMatrix, dec: &SchurDecomposition) -> f64 {
        let n = a.nrows();
        let unit = nrm(&(dec.q.adjoint() * &dec.q - CMatrix::identity(n, n)));
        let rec = nrm(&(&dec.q * &dec.t * dec.q.adjoint() - a));
        unit.max(rec)
    }

    #[test]
    fn schur_diagonal_is_fixed_point() {
        let a = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            re(3.0),
            re(-1.0),
            re(0.5),
        ]));
        let dec = complex_schur(&a).unwrap();
        assert!(residual(&a, &dec) < 1e-12);
        let ev = eigenvalues(&a).unwrap();
        assert!((ev[0].re + 1.0).abs() < 1e-12);
        assert!((ev[2].re - 3.0).abs() < 1e-12);
    }

    #[test]
    fn schur_known_rotation_eigenvalues() {
        // [[0,-1],[1,0]] has eigenvalues ±i
        let a = CMatrix::from_row_slice(2, 2, &[re(0.0), re(-1.0), re(1.0), re(0.0)]);
        let ev = eigenvalues(&a).unwrap();
        assert!((ev[0] - C64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((ev[1] - C64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn schur_random_residuals() {
        use rand::Rng;
        let mut rng = crate::sample::stream(7, "schur-test", 0);
        for trial in 0..8 {
            let n = 3 + 3 * (trial % 4);
            let a = CMatrix::from_fn(n, n, |_, _| {
                C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            });
            let dec = complex_schur(&a).unwrap();
            assert!(
                residual(&a, &dec) < 1e-11 * (n as f64),
                "residual too large at order {n}"
            );
        }
    }

    #[test]
    fn schur_defective_jordan_block() {
        let mut a = CMatrix::zeros(4, 4);
        for i in 0..3 {
            a[(i, i + 1)] = re(1.0);
        }
        for i in 0..4 {
            a[(i, i)] = re(2.0);
        }
        let ev = eigenvalues(&a).unwrap();
        for e in ev {
            assert!(
                (e - re(2.0)).norm() < 1e-3,
                "Jordan eigenvalues cluster at 2"
            );
        }
        assert!((spectral_radius(&a).unwrap() - 2.0).abs() < 1e-3);
    }

    #[test]
    fn schur_repeated_eigenvalue_traces() {
        use rand::Rng;
        let mut rng = crate::sample::stream(11, "schur-test", 1);
        let n = 12;
        let a = CMatrix::from_fn(n, n, |_, _| {
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let ev = eigenvalues(&a).unwrap();
        let tr: C64 = (0..n).map(|i| a[(i, i)]).sum();
        let evsum: C64 = ev.iter().sum();
        assert!((tr - evsum).norm() < 1e-10);
    }
}
