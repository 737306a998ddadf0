//! Polynomial calculus in several commuting variables, with scalar or matrix
//! coefficients.  Used by the von Neumann checks.

use num_complex::Complex64;
use rand::Rng;

use crate::matrix::{kron, CMatrix, C64};

/// Scalar-coefficient polynomial in `nvars` commuting variables.
#[derive(Debug, Clone)]
pub struct MPoly {
    pub nvars: usize,
    /// `(exponents, coefficient)` terms; exponents have length `nvars`.
    pub terms: Vec<(Vec<u32>, C64)>,
}

impl MPoly {
    pub fn constant(nvars: usize, c: C64) -> Self {
        MPoly {
            nvars,
            terms: vec![(vec![0; nvars], c)],
        }
    }

    /// All monomials of total degree ≤ `max_degree` with coefficients drawn
    /// uniformly from the unit disc.
    pub fn random(nvars: usize, max_degree: u32, rng: &mut impl Rng) -> Self {
        let mut terms = Vec::new();
        for exps in monomials(nvars, max_degree) {
            terms.push((exps, crate::sample::unit_disc(rng)));
        }
        MPoly { nvars, terms }
    }

    pub fn eval_scalar(&self, point: &[C64]) -> C64 {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (exps, c) in &self.terms {
            let mut m = *c;
            for (z, &e) in point.iter().zip(exps) {
                m *= z.powu(e);
            }
            acc += m;
        }
        acc
    }

    /// Evaluate on a commuting matrix tuple.
    pub fn eval_matrix(&self, mats: &[CMatrix]) -> CMatrix {
        debug_assert_eq!(mats.len(), self.nvars);
        let n = mats[0].nrows();
        let powers = power_table(mats, self.max_degrees());
        let mut acc = CMatrix::zeros(n, n);
        for (exps, c) in &self.terms {
            let mut m = CMatrix::identity(n, n).map(|x| x * c);
            for (v, &e) in powers.iter().zip(exps) {
                if e > 0 {
                    m = &m * &v[e as usize];
                }
            }
            acc += m;
        }
        acc
    }

    fn max_degrees(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.nvars];
        for (exps, _) in &self.terms {
            for (slot, &e) in d.iter_mut().zip(exps) {
                *slot = (*slot).max(e);
            }
        }
        d
    }
}

/// Matrix-coefficient polynomial; evaluation on operators acts on the tensor
/// product (coefficient space ⊗ operator space).
#[derive(Debug, Clone)]
pub struct MatPoly {
    pub nvars: usize,
    pub dim: usize,
    pub terms: Vec<(Vec<u32>, CMatrix)>,
}

impl MatPoly {
    pub fn random(nvars: usize, dim: usize, max_degree: u32, rng: &mut impl Rng) -> Self {
        let mut terms = Vec::new();
        for exps in monomials(nvars, max_degree) {
            let coeff = CMatrix::from_fn(dim, dim, |_, _| crate::sample::unit_disc(rng) * 0.5);
            terms.push((exps, coeff));
        }
        MatPoly { nvars, dim, terms }
    }

    /// Value at a scalar point: a `dim × dim` matrix.
    pub fn eval_scalar(&self, point: &[C64]) -> CMatrix {
        let mut acc = CMatrix::zeros(self.dim, self.dim);
        for (exps, coeff) in &self.terms {
            let mut z = Complex64::new(1.0, 0.0);
            for (w, &e) in point.iter().zip(exps) {
                z *= w.powu(e);
            }
            acc += coeff.map(|x| x * z);
        }
        acc
    }

    /// Value on a commuting matrix tuple: `Σ coeff ⊗ monomial(T)`.
    pub fn eval_matrix(&self, mats: &[CMatrix]) -> CMatrix {
        let n = mats[0].nrows();
        let powers = power_table(mats, self.max_degrees());
        let mut acc = CMatrix::zeros(self.dim * n, self.dim * n);
        for (exps, coeff) in &self.terms {
            let mut m = CMatrix::identity(n, n);
            for (v, &e) in powers.iter().zip(exps) {
                if e > 0 {
                    m = &m * &v[e as usize];
                }
            }
            acc += kron(coeff, &m);
        }
        acc
    }

    fn max_degrees(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.nvars];
        for (exps, _) in &self.terms {
            for (slot, &e) in d.iter_mut().zip(exps) {
                *slot = (*slot).max(e);
            }
        }
        d
    }
}

/// Exponent vectors of every monomial with total degree ≤ `max_degree`,
/// in deterministic lexicographic order.
pub fn monomials(nvars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(slot: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slot == current.len() {
            out.push(current.clone());
            return;
        }
        for e in 0..=remaining {
            current[slot] = e;
            rec(slot + 1, remaining - e, current, out);
        }
        current[slot] = 0;
    }
    rec(0, max_degree, &mut current, &mut out);
    out
}

fn power_table(mats: &[CMatrix], degrees: Vec<u32>) -> Vec<Vec<CMatrix>> {
    let n = mats[0].nrows();
    mats.iter()
        .zip(degrees)
        .map(|(m, d)| {
            let mut v = Vec::with_capacity(d as usize + 1);
            v.push(CMatrix::identity(n, n));
            for k in 1..=d as usize {
                let next = &v[k - 1] * m;
                v.push(next);
            }
            v
        })
        .collect()
}
