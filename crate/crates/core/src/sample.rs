//! Deterministic sampling utilities.
//!
//! Every random draw in the crate flows through [`stream`], a counter-based
//! generator keyed by `(seed, purpose tag, index)`.  Parallel or reordered
//! sampling therefore cannot change results: the stream for a given key is
//! fixed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{c64, CMatrix, C64};

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn tag_hash(tag: &str) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Deterministic RNG for `(seed, tag, index)`.
pub fn stream(seed: u64, tag: &str, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    let mut state =
        splitmix(seed) ^ splitmix(tag_hash(tag)) ^ splitmix(index.wrapping_mul(0x9e3779b97f4a7c15));
    for chunk in key.chunks_mut(8) {
        state = splitmix(state);
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Uniform point of the closed unit disc.
pub fn unit_disc(rng: &mut impl Rng) -> C64 {
    let r = rng.random_range(0.0f64..1.0).sqrt();
    let t = rng.random_range(0.0f64..std::f64::consts::TAU);
    Complex64::from_polar(r, t)
}

/// Uniform point of the unit circle.
pub fn unit_circle(rng: &mut impl Rng) -> C64 {
    Complex64::from_polar(1.0, rng.random_range(0.0f64..std::f64::consts::TAU))
}

/// Standard complex Gaussian via Box–Muller.
pub fn gaussian(rng: &mut impl Rng) -> C64 {
    let u: f64 = rng.random_range(f64::EPSILON..1.0);
    let v: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let r = (-2.0 * u.ln()).sqrt();
    c64(r * v.cos(), r * v.sin())
}

/// Dense matrix with i.i.d. complex Gaussian entries.
pub fn gaussian_matrix(n: usize, m: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(n, m, |_, _| gaussian(rng))
}

/// Haar-ish random unitary: Q factor of a complex Gaussian matrix with the
/// R diagonal phases normalized.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
    let g = gaussian_matrix(n, n, rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Random contraction: Gaussian matrix scaled to the requested norm.
pub fn random_contraction(n: usize, target_norm: f64, rng: &mut impl Rng) -> CMatrix {
    let g = gaussian_matrix(n, n, rng);
    let s = crate::matrix::op_norm(&g).expect("nonempty");
    g.map(|z| z * (target_norm / s))
}

/// Random point of the closed unit polydisc in `C^n`.
pub fn polydisc_point(n: usize, rng: &mut impl Rng) -> Vec<C64> {
    (0..n).map(|_| unit_disc(rng)).collect()
}

/// Commuting upper-triangular family: a base upper-triangular matrix plus
/// polynomials in it, so the family commutes exactly and the planted joint
/// diagonal is known.  Returns `(matrices, diagonals)` where `diagonals[k]`
/// is the joint coefficient tuple of slot `k`.
pub fn commuting_upper_family(
    order: usize,
    arity: usize,
    rng: &mut impl Rng,
) -> (Vec<CMatrix>, Vec<Vec<C64>>) {
    let mut base = CMatrix::zeros(order, order);
    for i in 0..order {
        for j in i..order {
            base[(i, j)] = if i == j {
                // well-separated diagonal keeps eigenspaces well conditioned
                c64(
                    i as f64 + rng.random_range(-0.2..0.2),
                    rng.random_range(-0.4..0.4),
                )
            } else {
                gaussian(rng) * 0.5
            };
        }
    }
    let mut mats = Vec::with_capacity(arity);
    let mut diag_per_mat: Vec<Vec<C64>> = Vec::with_capacity(arity);
    for _ in 0..arity {
        let deg = 2.min(order - 1).max(1);
        let coeffs: Vec<C64> = (0..=deg).map(|_| gaussian(rng) * 0.5).collect();
        let mut m = CMatrix::zeros(order, order);
        let mut pw = CMatrix::identity(order, order);
        for c in &coeffs {
            m += pw.map(|z| z * c);
            pw = &pw * &base;
        }
        diag_per_mat.push((0..order).map(|k| m[(k, k)]).collect());
        mats.push(m);
    }
    let diagonals: Vec<Vec<C64>> = (0..order)
        .map(|k| (0..arity).map(|i| diag_per_mat[i][k]).collect())
        .collect();
    (mats, diagonals)
}
