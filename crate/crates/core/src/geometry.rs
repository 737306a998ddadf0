//! Scalar geometry of the symmetrized polydisc.
//!
//! A point of `C^n` in symmetrized coordinates is `(s_1, …, s_{n-1}, p)`.
//! Membership in the closed domain `Γ_n` is decided by exact recursion: for
//! `|p| < 1` the coordinates `c_i = (s_i - conj(s_{n-i}) p)/(1 - |p|²)` are
//! the unique solution of `s_i = c_i + conj(c_{n-i}) p`, and the point lies in
//! `Γ_n` iff `c` lies in `Γ_{n-1}`; the base level is the closed unit disc.
//! On the band `|p| ≈ 1` membership is equivalent to membership in the
//! distinguished boundary, tested by its own criterion.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::C64;

/// Width of the `|p| ≈ 1` band inside which the interior recursion is
/// replaced by the distinguished-boundary criterion.
pub const BOUNDARY_BAND: f64 = 1e-8;

/// Largest supported level: the recursion is exact but the `1/(1-|p|²)`
/// amplification compounds across levels, so conditioning degrades past
/// a dozen of them.
pub const MAX_LEVEL: usize = 13;

/// Location of a point relative to the closed symmetrized polydisc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    /// Strictly inside the open domain `G_n`.
    OpenInterior,
    /// On the topological boundary but not the distinguished boundary.
    TopologicalBoundary,
    /// On the distinguished boundary (hence on the topological boundary).
    DistinguishedBoundary,
    /// Not in the closed domain.
    Outside,
}

impl Region {
    /// Membership in the closed domain.
    pub fn in_closure(self) -> bool {
        self != Region::Outside
    }
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Region::OpenInterior => "OpenInterior",
            Region::TopologicalBoundary => "TopologicalBoundary",
            Region::DistinguishedBoundary => "DistinguishedBoundary",
            Region::Outside => "Outside",
        };
        f.write_str(s)
    }
}

/// A point `(s_1, …, s_{n-1}, p)` of `C^n` in symmetrized coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymPoint {
    /// Level `n ≥ 2`.
    pub n: usize,
    /// The first `n-1` symmetrized coordinates.
    pub s: Vec<C64>,
    /// The product coordinate.
    pub p: C64,
}

impl SymPoint {
    pub fn new(s: Vec<C64>, p: C64) -> Result<Self> {
        let n = s.len() + 1;
        if n < 2 {
            return Err(Error::usage("SymPoint: need n ≥ 2"));
        }
        if n > MAX_LEVEL {
            return Err(Error::usage(format!(
                "SymPoint: level n = {n} exceeds the supported maximum {MAX_LEVEL}"
            )));
        }
        if s.iter()
            .chain(std::iter::once(&p))
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::usage("SymPoint: coordinates must be finite"));
        }
        Ok(SymPoint { n, s, p })
    }

    /// Full coordinate vector `(s_1, …, s_{n-1}, p)`.
    pub fn coords(&self) -> Vec<C64> {
        let mut v = self.s.clone();
        v.push(self.p);
        v
    }

    /// Build from a full coordinate vector.
    pub fn from_coords(coords: &[C64]) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::usage("SymPoint: need at least 2 coordinates"));
        }
        SymPoint::new(
            coords[..coords.len() - 1].to_vec(),
            coords[coords.len() - 1],
        )
    }

    /// Validate the JSON-level invariants after deserialization.
    pub fn validate(&self) -> Result<()> {
        if self.n != self.s.len() + 1 {
            return Err(Error::usage(format!(
                "SymPoint: n = {} inconsistent with {} s-coordinates",
                self.n,
                self.s.len()
            )));
        }
        if self.n < 2 {
            return Err(Error::usage("SymPoint: need n ≥ 2"));
        }
        if self.n > MAX_LEVEL {
            return Err(Error::usage(format!(
                "SymPoint: level n = {} exceeds the supported maximum {MAX_LEVEL}",
                self.n
            )));
        }
        if self
            .s
            .iter()
            .chain(std::iter::once(&self.p))
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::usage("SymPoint: coordinates must be finite"));
        }
        Ok(())
    }
}

/// Elementary symmetric polynomials of `z`, as a symmetrized point.
///
/// Stable Horner-style accumulation; permutation invariant by construction.
pub fn symmetrize(z: &[C64]) -> Result<SymPoint> {
    let n = z.len();
    if n < 2 {
        return Err(Error::usage("symmetrize: need n ≥ 2 coordinates"));
    }
    if n > MAX_LEVEL {
        return Err(Error::usage(format!(
            "symmetrize: level n = {n} exceeds the supported maximum {MAX_LEVEL}"
        )));
    }
    let mut e = vec![Complex64::new(0.0, 0.0); n + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for &zj in z {
        for i in (1..=n).rev() {
            e[i] = e[i] + zj * e[i - 1];
        }
    }
    SymPoint::new(e[1..n].to_vec(), e[n])
}

/// The unique `c` with `s_i = c_i + conj(c_{n-i}) p`, valid away from the
/// boundary band.
pub fn recover_c(x: &SymPoint) -> Result<Vec<C64>> {
    recover_c_banded(x, BOUNDARY_BAND)
}

/// As [`recover_c`] with an explicit band width.
pub fn recover_c_banded(x: &SymPoint, band: f64) -> Result<Vec<C64>> {
    let pa = x.p.norm();
    if pa >= 1.0 - band {
        return Err(Error::BoundaryBand { p_abs: pa });
    }
    let denom = 1.0 - pa * pa;
    let k = x.n - 1;
    Ok((0..k)
        .map(|i| (x.s[i] - x.s[k - 1 - i].conj() * x.p) / denom)
        .collect())
}

/// Closed-form membership oracle for `Γ_2`: `|s| ≤ 2` and
/// `|s - conj(s) p| ≤ 1 - |p|²`.
pub fn gamma2_closed_form(s: C64, p: C64) -> bool {
    s.norm() <= 2.0 && (s - s.conj() * p).norm() <= 1.0 - p.norm_sqr()
}

/// Classify a full coordinate vector against `Γ_k` where `k = coords.len()`.
///
/// Level 1 is the closed unit disc.  This is the recursion behind
/// [`classify`]; exposed for fiber tagging of lower-level points.
pub fn classify_point(coords: &[C64], tol: f64) -> Region {
    let k = coords.len();
    debug_assert!(k >= 1);
    let p = coords[k - 1];
    let pa = p.norm();
    if k == 1 {
        return if pa < 1.0 - tol {
            Region::OpenInterior
        } else if pa <= 1.0 + tol {
            Region::DistinguishedBoundary
        } else {
            Region::Outside
        };
    }
    if pa > 1.0 + tol {
        return Region::Outside;
    }
    let s = &coords[..k - 1];
    if pa >= 1.0 - BOUNDARY_BAND.max(tol) {
        // |p| = 1: membership is equivalent to distinguished-boundary
        // membership, tested by its criterion.
        let mut sym_defect = 0.0f64;
        for i in 0..k - 1 {
            sym_defect = sym_defect.max((s[i] - s[k - 2 - i].conj() * p).norm());
        }
        if sym_defect > tol.max(1e-9) * (k as f64) {
            return Region::Outside;
        }
        let scaled: Vec<C64> = (0..k - 1)
            .map(|i| s[i] * ((k - 1 - i) as f64 / k as f64))
            .collect();
        return if classify_point(&scaled, tol).in_closure() {
            Region::DistinguishedBoundary
        } else {
            Region::Outside
        };
    }
    let denom = 1.0 - pa * pa;
    let c: Vec<C64> = (0..k - 1)
        .map(|i| (s[i] - s[k - 2 - i].conj() * p) / denom)
        .collect();
    match classify_point(&c, tol) {
        Region::OpenInterior => Region::OpenInterior,
        Region::Outside => Region::Outside,
        _ => Region::TopologicalBoundary,
    }
}

/// Classify a symmetrized point against `Γ_n`.
pub fn classify(x: &SymPoint, tol: f64) -> Region {
    classify_point(&x.coords(), tol)
}

/// Signed violation measure against `Γ_k`: ≤ 0 inside the closed domain,
/// positive values quantify how badly a membership criterion fails.  Used by
/// boundary-exit diagnostics; not a metric distance.
pub fn gamma_margin(coords: &[C64], tol: f64) -> f64 {
    let k = coords.len();
    let p = coords[k - 1];
    let pa = p.norm();
    if k == 1 {
        return pa - 1.0;
    }
    let s = &coords[..k - 1];
    if pa >= 1.0 - BOUNDARY_BAND.max(tol) {
        let mut m = pa - 1.0;
        for i in 0..k - 1 {
            m = m.max((s[i] - s[k - 2 - i].conj() * p).norm());
        }
        let scaled: Vec<C64> = (0..k - 1)
            .map(|i| s[i] * ((k - 1 - i) as f64 / k as f64))
            .collect();
        return m.max(gamma_margin(&scaled, tol));
    }
    let denom = 1.0 - pa * pa;
    let c: Vec<C64> = (0..k - 1)
        .map(|i| (s[i] - s[k - 2 - i].conj() * p) / denom)
        .collect();
    gamma_margin(&c, tol)
}

/// Real value of the scalar pencil `Φ_i` at a symmetrized point:
/// `n²(1-|p|²) + (|s_i|² - |s_{n-i}|²) - n(s_i - conj(s_{n-i})p)
///  - n(conj(s_i) - conj(p) s_{n-i})`.
///
/// The expression is real by construction (the last two terms are
/// conjugates); the imaginary residue is asserted below 1e-12.
pub fn phi_scalar(x: &SymPoint, i: usize) -> Result<f64> {
    let n = x.n;
    if i < 1 || i > n - 1 {
        return Err(Error::usage(format!("phi_scalar: need 1 ≤ i ≤ {}", n - 1)));
    }
    let si = x.s[i - 1];
    let sni = x.s[n - 1 - i];
    let nf = n as f64;
    let value = nf * nf * (1.0 - x.p.norm_sqr()) + (si.norm_sqr() - sni.norm_sqr())
        - nf * (si - sni.conj() * x.p)
        - nf * (si.conj() - x.p.conj() * sni);
    debug_assert!(
        value.im.abs() <= 1e-12 * (1.0 + value.re.abs()),
        "phi_scalar imaginary residue {}",
        value.im
    );
    Ok(value.re)
}

/// Margin report of the necessary pencil inequality
/// `|n α^n p - α^{n-i} s_{n-i}| ≤ |n - α^i s_i|` over a polar grid of the
/// closed disc.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PencilReport {
    /// Minimum of `|n - α^i s_i| - |n α^n p - α^{n-i} s_{n-i}|` over the grid.
    pub worst_margin: f64,
    /// Grid point attaining the worst margin.
    pub worst_alpha: C64,
    /// Index `i` attaining the worst margin.
    pub worst_index: usize,
}

/// Sample the pencil inequality over `radii × angles` grid points of the
/// closed unit disc (radii = `alpha_samples/2`, angles = `alpha_samples`).
///
/// A nonnegative `worst_margin` is necessary for membership in `Γ_n`; it is
/// not sufficient, so this is a falsification filter only.
pub fn pencil_inequality_check(x: &SymPoint, alpha_samples: usize) -> Result<PencilReport> {
    if alpha_samples < 16 {
        return Err(Error::usage("pencil_inequality_check: need ≥ 16 samples"));
    }
    let n = x.n;
    let nf = n as f64;
    let radii = (alpha_samples / 2).max(2);
    let mut worst = f64::INFINITY;
    let mut worst_alpha = Complex64::new(0.0, 0.0);
    let mut worst_index = 1;
    for rj in 1..=radii {
        let r = rj as f64 / radii as f64;
        for aj in 0..alpha_samples {
            let theta = aj as f64 / alpha_samples as f64 * std::f64::consts::TAU;
            let alpha = Complex64::from_polar(r, theta);
            let an = alpha.powu(n as u32);
            for i in 1..n {
                let lhs = (nf * an * x.p - alpha.powu((n - i) as u32) * x.s[n - 1 - i]).norm();
                let rhs = (Complex64::new(nf, 0.0) - alpha.powu(i as u32) * x.s[i - 1]).norm();
                let margin = rhs - lhs;
                if margin < worst {
                    worst = margin;
                    worst_alpha = alpha;
                    worst_index = i;
                }
            }
        }
    }
    Ok(PencilReport {
        worst_margin: worst,
        worst_alpha,
        worst_index,
    })
}
