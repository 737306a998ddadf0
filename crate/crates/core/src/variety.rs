//! Distinguished varieties in the open symmetrized polydisc.
//!
//! A variety is presented by commuting matrices `F_1, …, F_{n-1}` subject to
//! two conditions: the cross-commutator balance
//! `[F_i*, F_{n-j}] = [F_j*, F_{n-i}]` (equivalently, the pencils
//! `F_i* + p F_{n-i}` commute for every `p`) and joint spectrum of the data
//! inside `G_{n-1}`.  The curve is then
//! `{(s, p) : s ∈ σ_T(F_1* + p F_{n-1}, …, F_{n-1}* + p F_1)}`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{fundamental_tuple, GammaTuple};
use crate::geometry::{self, Region, SymPoint};
use crate::matrix::{commutator, nrm, numerical_radius, re, CMatrix, C64};
use crate::poly::{MPoly, MatPoly};
use crate::sample;
use crate::spectrum::{matching_distance, taylor_spectrum, CommutingTuple};

/// Validity report for the two representation conditions.
#[derive(Debug, Clone, Serialize)]
pub struct VarietyValidity {
    /// Worst pairwise `‖[F_i, F_j]‖`.
    pub commuting_defect: f64,
    /// Worst `‖[F_i*, F_{n-j}] - [F_j*, F_{n-i}]‖` over `i < j`.
    pub cross_commutator_defect: f64,
    /// Joint spectrum of `(F_1, …, F_{n-1})` inside `G_{n-1}`.
    pub spectrum_in_g: bool,
    /// Joint spectrum of the adjoint data inside `G_{n-1}` (tested
    /// separately; the two enter different proofs).
    pub adjoint_spectrum_in_g: bool,
    /// Worst membership margin among the joint eigenvalues of the data.
    pub spectrum_margin: f64,
}

/// Order-`n` variety datum `(F_1, …, F_{n-1})` with its validity report.
#[derive(Debug, Clone)]
pub struct VarietyRep {
    pub n: usize,
    /// Order of the pencil matrices.
    pub order: usize,
    pub f: Vec<CMatrix>,
    pub validity: VarietyValidity,
}

/// One fiber of the variety over a base point `p`.
#[derive(Debug, Clone)]
pub struct FiberSample {
    pub p: C64,
    /// The `s`-coordinate tuples over `p`, with multiplicity.
    pub points: Vec<Vec<C64>>,
    /// Region of each `(s, p)` in `Γ_n`.
    pub region_tags: Vec<Region>,
}

/// Validate pencil data and build a variety representation.
///
/// The cross-commutator condition is exactly commutativity of the pencils
/// `F_i* + p F_{n-i}` for every `p`: the `p`-linear term of their commutator
/// equals `[F_i*, F_{n-j}] - [F_j*, F_{n-i}]`.
pub fn build_variety(f: Vec<CMatrix>, tol: f64) -> Result<VarietyRep> {
    if f.is_empty() {
        return Err(Error::usage("build_variety: need at least one matrix"));
    }
    let order = f[0].nrows();
    if order == 0 {
        return Err(Error::usage("build_variety: dimension-zero matrices"));
    }
    for m in &f {
        if m.nrows() != order || m.ncols() != order {
            return Err(Error::usage(
                "build_variety: matrices must be square and of equal order",
            ));
        }
    }
    let n = f.len() + 1;
    let k = f.len();
    let scale = f.iter().map(nrm).fold(1.0f64, f64::max);
    let mut commuting_defect = 0.0f64;
    let mut cross_defect = 0.0f64;
    for i in 0..k {
        for j in i + 1..k {
            commuting_defect = commuting_defect.max(nrm(&commutator(&f[i], &f[j])));
            let cross = commutator(&f[i].adjoint(), &f[k - 1 - j])
                - commutator(&f[j].adjoint(), &f[k - 1 - i]);
            cross_defect = cross_defect.max(nrm(&cross));
        }
    }
    if commuting_defect > tol * scale {
        return Err(Error::InvalidVarietyData {
            condition: "pencil matrices must commute".into(),
            defect: commuting_defect,
        });
    }
    if cross_defect > tol * scale {
        return Err(Error::InvalidVarietyData {
            condition: "cross-commutator balance [F_i*, F_{n-j}] = [F_j*, F_{n-i}]".into(),
            defect: cross_defect,
        });
    }

    let tuple = CommutingTuple::new(f.clone(), (tol * 16.0).max(1e-8))?;
    let spec = taylor_spectrum(&tuple, (tol * 16.0).max(1e-7))?;
    let mut spectrum_margin = f64::NEG_INFINITY;
    let mut spectrum_in_g = true;
    let mut adjoint_in_g = true;
    for point in &spec.points {
        spectrum_margin = spectrum_margin.max(geometry::gamma_margin(point, 1e-9));
        // condition (ii) wants the OPEN domain
        if geometry::classify_point(point, 1e-9) != Region::OpenInterior {
            spectrum_in_g = false;
        }
        let conj_point: Vec<C64> = point.iter().map(|z| z.conj()).collect();
        if geometry::classify_point(&conj_point, 1e-9) != Region::OpenInterior {
            adjoint_in_g = false;
        }
    }
    let validity = VarietyValidity {
        commuting_defect,
        cross_commutator_defect: cross_defect,
        spectrum_in_g,
        adjoint_spectrum_in_g: adjoint_in_g,
        spectrum_margin,
    };
    if !spectrum_in_g {
        return Err(Error::InvalidVarietyData {
            condition: format!("joint spectrum must lie in G_{}", n - 1),
            defect: spectrum_margin.max(0.0),
        });
    }
    Ok(VarietyRep {
        n,
        order,
        f,
        validity,
    })
}

/// Pencil tuple `(F_1* + p F_{n-1}, …, F_{n-1}* + p F_1)` at a base point.
pub fn pencil_tuple(v: &VarietyRep, p: C64) -> Vec<CMatrix> {
    let k = v.f.len();
    (0..k)
        .map(|i| v.f[i].adjoint() + v.f[k - 1 - i].map(|x| x * p))
        .collect()
}

/// Joint spectrum of the pencil tuple over `p`, each point tagged with its
/// region in `Γ_n`.
pub fn fiber(v: &VarietyRep, p: C64, tol: f64) -> Result<FiberSample> {
    let pencils = pencil_tuple(v, p);
    // commutator budget: condition (i) bounds the pencil commutators by the
    // certified defects, uniformly on the closed disc
    let budget = ((v.validity.commuting_defect
        + v.validity.cross_commutator_defect * p.norm().max(1.0))
        * 64.0)
        .max(tol.max(1e-9) * 16.0);
    let tuple = CommutingTuple::new(pencils, budget)?;
    let spec = taylor_spectrum(&tuple, budget.max(1e-7))?;
    let mut region_tags = Vec::with_capacity(spec.points.len());
    for s in &spec.points {
        let mut coords = s.clone();
        coords.push(p);
        region_tags.push(geometry::classify_point(&coords, tol.max(1e-7)));
    }
    Ok(FiberSample {
        p,
        points: spec.points,
        region_tags,
    })
}

/// Fibers over the polar grid `{r e^{iθ}}` of the closed disc, radius-major
/// order (`r` outer, `θ` inner).  A single radial step samples `r = 0`.
pub fn trace(
    v: &VarietyRep,
    radial_steps: usize,
    angular_steps: usize,
    tol: f64,
) -> Result<Vec<FiberSample>> {
    if radial_steps < 1 || angular_steps < 1 {
        return Err(Error::usage("trace: grid sizes must be ≥ 1"));
    }
    let mut out = Vec::with_capacity(radial_steps * angular_steps);
    for rj in 0..radial_steps {
        let r = if radial_steps == 1 {
            0.0
        } else {
            rj as f64 / (radial_steps - 1) as f64
        };
        for aj in 0..angular_steps {
            let theta = aj as f64 / angular_steps as f64 * std::f64::consts::TAU;
            out.push(fiber(v, Complex64::from_polar(r, theta), tol)?);
        }
    }
    Ok(out)
}

/// Membership of a symmetrized point: true iff `x.s` matches a fiber point
/// over `x.p` within max-coordinate distance `tol`.
pub fn contains(v: &VarietyRep, x: &SymPoint, tol: f64) -> Result<bool> {
    if x.n != v.n {
        return Err(Error::usage(
            "contains: point level differs from variety level",
        ));
    }
    let fib = fiber(v, x.p, tol)?;
    Ok(fib.points.iter().any(|s| {
        s.iter()
            .zip(&x.s)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max)
            <= tol
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryExitReport {
    /// Worst violation of the distinguished-boundary criteria among fiber
    /// points over the unit circle.
    pub max_defect: f64,
    pub worst_p: C64,
}

/// Over `|p| = 1` samples, measure the worst violation of the
/// distinguished-boundary criteria among fiber points: the symmetry defect
/// `|s_i - conj(s_{n-i}) p|` and the membership margin of the scaled tuple.
pub fn boundary_exit_report(
    v: &VarietyRep,
    circle_samples: usize,
    tol: f64,
) -> Result<BoundaryExitReport> {
    if circle_samples == 0 {
        return Err(Error::usage("boundary_exit_report: need ≥ 1 samples"));
    }
    let n = v.n;
    let mut max_defect = 0.0f64;
    let mut worst_p = Complex64::new(1.0, 0.0);
    for j in 0..circle_samples {
        let p = Complex64::from_polar(
            1.0,
            j as f64 / circle_samples as f64 * std::f64::consts::TAU,
        );
        let fib = fiber(v, p, tol)?;
        for s in &fib.points {
            let mut defect = 0.0f64;
            for i in 0..n - 1 {
                defect = defect.max((s[i] - s[n - 2 - i].conj() * p).norm());
            }
            let scaled: Vec<C64> = (0..n - 1)
                .map(|i| s[i] * re((n - 1 - i) as f64 / n as f64))
                .collect();
            defect = defect.max(geometry::gamma_margin(&scaled, tol).max(0.0));
            if defect > max_defect {
                max_defect = defect;
                worst_p = p;
            }
        }
    }
    Ok(BoundaryExitReport {
        max_defect,
        worst_p,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparationCertificate {
    /// Index `k` of the separating determinant (1-based).
    pub witness_index: usize,
    /// `|det(F_k* + p F_{n-k} - s_k I)|` at the queried point.
    pub value_at_x: f64,
    /// Supremum of the same determinant magnitude over trace samples (≈ 0).
    pub sup_on_variety: f64,
}

/// Polynomial-convexity witness separating a point of `Γ_n` from the
/// variety: the determinant of a pencil shifted by the point's coordinate.
pub fn separation_certificate(
    v: &VarietyRep,
    x: &SymPoint,
    tol: f64,
) -> Result<SeparationCertificate> {
    if x.n != v.n {
        return Err(Error::usage("separation_certificate: level mismatch"));
    }
    let k = v.f.len();
    let id = CMatrix::identity(v.order, v.order);
    let dets: Vec<f64> = (0..k)
        .map(|i| {
            let m = v.f[i].adjoint() + v.f[k - 1 - i].map(|z| z * x.p) - id.map(|z| z * x.s[i]);
            m.determinant().norm()
        })
        .collect();
    let (best_idx, best) = dets
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    if *best <= tol {
        return Err(Error::NoCertificate);
    }
    // supremum of the same determinant over the trace grid
    let samples = trace(v, 5, 16, tol)?;
    let mut sup = 0.0f64;
    for fs in &samples {
        for s in &fs.points {
            let m = v.f[best_idx].adjoint() + v.f[k - 1 - best_idx].map(|z| z * fs.p)
                - id.map(|z| z * s[best_idx]);
            sup = sup.max(m.determinant().norm());
        }
    }
    Ok(SeparationCertificate {
        witness_index: best_idx + 1,
        value_at_x: *best,
        sup_on_variety: sup,
    })
}

/// Project an `n = 3` variety to an `n = 2` one through
/// `(s_1, s_2, p) ↦ ((s_1 + s_2)/3, p)`: the image is presented by the
/// single matrix `(F_1 + F_2)/3`, whose numerical radius must be below 1.
pub fn project_g3_to_g2(v: &VarietyRep, tol: f64) -> Result<VarietyRep> {
    if v.n != 3 {
        return Err(Error::usage("project_g3_to_g2: variety must have n = 3"));
    }
    if !v.validity.adjoint_spectrum_in_g {
        return Err(Error::InvalidVarietyData {
            condition: "projection needs the adjoint data spectrum inside G_2".into(),
            defect: v.validity.spectrum_margin.max(0.0),
        });
    }
    let g = (v.f[0].clone() + v.f[1].clone()).map(|x| x / 3.0);
    let radius = numerical_radius(&g, 256)?;
    if radius >= 1.0 {
        return Err(Error::ProjectionFailure { radius });
    }
    build_variety(vec![g], tol)
}

#[derive(Debug, Clone, Serialize)]
pub struct VnReport {
    /// `min_f [ max_{trace} ‖f(s,p)‖ - ‖f(S,P)‖ ]`; the inequality predicts
    /// a nonnegative value up to tolerance.
    pub worst_slack: f64,
    /// Index of the polynomial attaining the worst slack.
    pub worst_poly: usize,
    /// Wiring distance between the tuple's adjoint FOT and the variety data.
    pub fot_distance: f64,
}

/// Von Neumann inequality over the closure of a distinguished variety.
///
/// The hypothesis wiring follows the dilation route: `t` must be pure and
/// the variety data must equal the fundamental operator tuple of the
/// adjoint tuple.  `literal_wiring` instead compares against the tuple's own
/// FOT (the statement's literal reading), exposed for experiments.
#[allow(clippy::too_many_arguments)]
pub fn vn_inequality_check(
    t: &GammaTuple,
    v: &VarietyRep,
    poly_count: usize,
    seed: u64,
    radial_steps: usize,
    angular_steps: usize,
    tol: f64,
    literal_wiring: bool,
) -> Result<VnReport> {
    if t.n != v.n {
        return Err(Error::usage("vn_inequality_check: level mismatch"));
    }
    if !t.is_pure(1e-12) {
        return Err(Error::HypothesisViolation {
            what: "tuple is not pure".into(),
            distance: crate::matrix::schur::spectral_radius(&t.p_op)?,
        });
    }
    let wired = if literal_wiring {
        fundamental_tuple(t, 1e-6)?
    } else {
        fundamental_tuple(&t.adjoint()?, 1e-6)?
    };
    let mut fot_distance = 0.0f64;
    if wired.matrices.len() != v.f.len() {
        return Err(Error::HypothesisViolation {
            what: "FOT arity mismatch".into(),
            distance: f64::INFINITY,
        });
    }
    for (b, f) in wired.matrices.iter().zip(&v.f) {
        if b.nrows() != f.nrows() {
            return Err(Error::HypothesisViolation {
                what: "FOT dimension mismatch".into(),
                distance: f64::INFINITY,
            });
        }
        fot_distance = fot_distance.max(nrm(&(b - f)));
    }
    if fot_distance > tol.max(1e-6) {
        return Err(Error::HypothesisViolation {
            what: "variety data differs from the wired FOT".into(),
            distance: fot_distance,
        });
    }

    let samples = trace(v, radial_steps.max(2), angular_steps.max(8), tol)?;
    let mats = t.all_matrices();
    let mut worst_slack = f64::INFINITY;
    let mut worst_poly = 0usize;
    for kpoly in 0..poly_count {
        let mut rng = sample::stream(seed, "variety-vn", kpoly as u64);
        let (sup, val) = if kpoly % 3 == 2 {
            // matrix-coefficient polynomial
            let f = MatPoly::random(t.n, 2, 3, &mut rng);
            let mut sup = 0.0f64;
            for fs in &samples {
                for s in &fs.points {
                    let mut pt = s.clone();
                    pt.push(fs.p);
                    sup = sup.max(nrm(&f.eval_scalar(&pt)));
                }
            }
            (sup, nrm(&f.eval_matrix(&mats)))
        } else {
            let f = MPoly::random(t.n, 3, &mut rng);
            let mut sup = 0.0f64;
            for fs in &samples {
                for s in &fs.points {
                    let mut pt = s.clone();
                    pt.push(fs.p);
                    sup = sup.max(f.eval_scalar(&pt).norm());
                }
            }
            (sup, nrm(&f.eval_matrix(&mats)))
        };
        let slack = sup - val;
        if slack < worst_slack {
            worst_slack = slack;
            worst_poly = kpoly;
        }
    }
    Ok(VnReport {
        worst_slack,
        worst_poly,
        fot_distance,
    })
}

/// Push a fiber sample of an `n = 3` variety through the projection map.
pub fn project_fiber_points(points: &[Vec<C64>]) -> Vec<Vec<C64>> {
    points.iter().map(|s| vec![(s[0] + s[1]) / 3.0]).collect()
}

/// Consistency of the projected variety: fibers of the image equal the
/// pushforward of the source fibers, within matching distance.
pub fn projection_fiber_distance(
    source: &VarietyRep,
    image: &VarietyRep,
    p: C64,
    tol: f64,
) -> Result<f64> {
    let src = fiber(source, p, tol)?;
    let img = fiber(image, p, tol)?;
    Ok(matching_distance(
        &project_fiber_points(&src.points),
        &img.points,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c64;

    fn nilpotent2() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[re(0.0), re(1.0), re(0.0), re(0.0)])
    }

    #[test]
    fn build_variety_examples() {
        // n = 2 nilpotent: σ(F) = {0} ⊂ D
        let v = build_variety(vec![nilpotent2()], 1e-9).unwrap();
        assert_eq!(v.n, 2);
        assert!(v.validity.spectrum_in_g);

        // n = 3 with equal matrices: conditions (i) trivial
        let v3 = build_variety(vec![nilpotent2(), nilpotent2()], 1e-9).unwrap();
        assert_eq!(v3.n, 3);
        assert!(v3.validity.cross_commutator_defect < 1e-14);

        // joint eigenvalue (2, 0) is outside G_2
        let bad = build_variety(
            vec![
                CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![re(2.0), re(0.0)])),
                CMatrix::zeros(2, 2),
            ],
            1e-9,
        );
        assert!(matches!(bad, Err(Error::InvalidVarietyData { .. })));
    }

    #[test]
    fn fiber_examples() {
        let v = build_variety(vec![nilpotent2()], 1e-9).unwrap();
        // s² = p: over p = 1/4 the fiber is {±1/2}
        let fib = fiber(&v, re(0.25), 1e-8).unwrap();
        let expected = vec![vec![re(0.5)], vec![re(-0.5)]];
        assert!(matching_distance(&fib.points, &expected) < 1e-9);

        // p = 0: eigenvalue tuples of the adjoint data
        let fib0 = fiber(&v, re(0.0), 1e-8).unwrap();
        assert!(fib0.points.iter().all(|s| s[0].norm() < 1e-7));

        // n = 3 equal nilpotents over p = 1: points (±1, ±1) on bΓ_3
        let v3 = build_variety(vec![nilpotent2(), nilpotent2()], 1e-9).unwrap();
        let fib1 = fiber(&v3, re(1.0), 1e-8).unwrap();
        let expected = vec![vec![re(1.0), re(1.0)], vec![re(-1.0), re(-1.0)]];
        assert!(matching_distance(&fib1.points, &expected) < 1e-9);
        assert!(fib1
            .region_tags
            .iter()
            .all(|&r| r == Region::DistinguishedBoundary));
    }

    #[test]
    fn trace_examples() {
        let v = build_variety(vec![nilpotent2()], 1e-9).unwrap();
        let single = trace(&v, 1, 1, 1e-8).unwrap();
        assert_eq!(single.len(), 1);
        assert!(single[0].p.norm() < 1e-15);

        let grid = trace(&v, 4, 8, 1e-8).unwrap();
        assert_eq!(grid.len(), 32);
        let mut count = 0;
        for fs in &grid {
            for s in &fs.points {
                count += 1;
                assert!((s[0] * s[0] - fs.p).norm() < 1e-8, "closed curve identity");
            }
            for tag in &fs.region_tags {
                assert!(tag.in_closure(), "interior fibers never leave Γ_2");
            }
        }
        assert_eq!(count, 64);
    }

    #[test]
    fn contains_examples() {
        let v = build_variety(vec![nilpotent2()], 1e-9).unwrap();
        let on = SymPoint::new(vec![re(0.5)], re(0.25)).unwrap();
        assert!(contains(&v, &on, 1e-6).unwrap());
        let off = SymPoint::new(vec![re(0.6)], re(0.25)).unwrap();
        assert!(!contains(&v, &off, 1e-6).unwrap());
        let perturbed = SymPoint::new(vec![re(0.5 + 1e-10)], re(0.25)).unwrap();
        assert!(contains(&v, &perturbed, 1e-6).unwrap());
    }

    #[test]
    fn boundary_exit_examples() {
        let v = build_variety(vec![nilpotent2()], 1e-9).unwrap();
        let rep = boundary_exit_report(&v, 90, 1e-8).unwrap();
        assert!(rep.max_defect <= 1e-8, "got {}", rep.max_defect);

        let v3 = build_variety(vec![nilpotent2(), nilpotent2()], 1e-9).unwrap();
        let rep = boundary_exit_report(&v3, 90, 1e-8).unwrap();
        assert!(rep.max_defect <= 1e-8, "got {}", rep.max_defect);

        // force invalid data past validation: diag(2,0) makes circle fibers
        // leave the distinguished boundary
        let forced = VarietyRep {
            n: 3,
            order: 2,
            f: vec![
                CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![re(2.0), re(0.0)])),
                CMatrix::zeros(2, 2),
            ],
            validity: VarietyValidity {
                commuting_defect: 0.0,
                cross_commutator_defect: 0.0,
                spectrum_in_g: false,
                adjoint_spectrum_in_g: false,
                spectrum_margin: 1.0,
            },
        };
        let rep = boundary_exit_report(&forced, 90, 1e-8).unwrap();
        assert!(rep.max_defect > 0.1, "got {}", rep.max_defect);
    }

    #[test]
    fn separation_examples() {
        let v = build_variety(vec![nilpotent2()], 1e-9).unwrap();
        let x = SymPoint::new(vec![re(0.6)], re(0.25)).unwrap();
        let cert = separation_certificate(&v, &x, 1e-8).unwrap();
        assert!((cert.value_at_x - 0.11).abs() < 1e-12, "det = 0.36 - 0.25");
        assert!(cert.sup_on_variety < 1e-8);
        assert!(cert.value_at_x > cert.sup_on_variety + 1e-8);

        let on = SymPoint::new(vec![re(0.5)], re(0.25)).unwrap();
        assert!(matches!(
            separation_certificate(&v, &on, 1e-8),
            Err(Error::NoCertificate)
        ));

        let origin = SymPoint::new(vec![re(0.0)], re(0.25)).unwrap();
        let cert = separation_certificate(&v, &origin, 1e-8).unwrap();
        assert!(cert.value_at_x > 0.1);
    }

    #[test]
    fn projection_examples() {
        let v3 = build_variety(vec![nilpotent2(), nilpotent2()], 1e-9).unwrap();
        let v2 = project_g3_to_g2(&v3, 1e-9).unwrap();
        assert!((v2.f[0][(0, 1)] - re(2.0 / 3.0)).norm() < 1e-14);
        let omega = numerical_radius(&v2.f[0], 256).unwrap();
        assert!(
            (omega - 1.0 / 3.0).abs() < 1e-9,
            "2x2 nilpotent radius |t|/2"
        );

        let zero3 = build_variety(vec![CMatrix::zeros(2, 2), CMatrix::zeros(2, 2)], 1e-9).unwrap();
        let z2 = project_g3_to_g2(&zero3, 1e-9).unwrap();
        assert!(nrm(&z2.f[0]) < 1e-14);

        let s3 = build_variety(
            vec![
                CMatrix::from_element(1, 1, re(0.3)),
                CMatrix::from_element(1, 1, re(0.4)),
            ],
            1e-9,
        )
        .unwrap();
        let s2 = project_g3_to_g2(&s3, 1e-9).unwrap();
        assert!((s2.f[0][(0, 0)] - re(7.0 / 30.0)).norm() < 1e-14);

        // pushforward-fiber agreement on a few base points
        for p in [re(0.25), c64(0.3, 0.4), re(0.9)] {
            let d = projection_fiber_distance(&v3, &v2, p, 1e-8).unwrap();
            assert!(d < 1e-8, "fiber pushforward distance {d}");
        }
    }

    #[test]
    fn vn_check_scalar_and_generated() {
        // scalar tuple built from scalar variety data: the tuple's point lies
        // on the curve, so the inequality is tight but nonnegative
        let fdata = vec![
            CMatrix::from_element(1, 1, re(0.5)),
            CMatrix::from_element(1, 1, c64(0.2, 0.1)),
        ];
        let v = build_variety(fdata.clone(), 1e-9).unwrap();
        let t = crate::gamma::generate_pure(&fdata, 4, 1e-9).unwrap();
        let rep = vn_inequality_check(&t, &v, 30, 7, 5, 16, 1e-6, false).unwrap();
        assert!(rep.fot_distance < 1e-10, "generated wiring is exact");
        assert!(rep.worst_slack >= -1e-8, "worst slack {}", rep.worst_slack);
    }

    #[test]
    fn vn_check_rejects_bad_wiring() {
        let fdata = vec![
            CMatrix::from_element(1, 1, re(0.5)),
            CMatrix::from_element(1, 1, re(0.2)),
        ];
        let other = vec![
            CMatrix::from_element(1, 1, re(0.1)),
            CMatrix::from_element(1, 1, re(0.6)),
        ];
        let v = build_variety(other, 1e-9).unwrap();
        let t = crate::gamma::generate_pure(&fdata, 3, 1e-9).unwrap();
        assert!(matches!(
            vn_inequality_check(&t, &v, 5, 7, 4, 8, 1e-6, false),
            Err(Error::HypothesisViolation { .. })
        ));
    }

    #[test]
    fn pencil_commutators_stay_small_for_valid_data() {
        let mut rng = sample::stream(23, "variety-pencil", 0);
        // random commuting normal pair with spectrum well inside G_2
        let q = sample::random_unitary(3, &mut rng);
        let d1 = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c64(0.3, 0.1),
            c64(-0.2, 0.2),
            c64(0.1, -0.3),
        ]));
        let d2 = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c64(0.2, 0.0),
            c64(0.1, 0.1),
            c64(-0.1, 0.2),
        ]));
        let f1 = &q * d1 * q.adjoint();
        let f2 = &q * d2 * q.adjoint();
        let v = build_variety(vec![f1, f2], 1e-9).unwrap();
        for j in 0..32 {
            let p = Complex64::from_polar(
                (j % 4) as f64 / 4.0,
                j as f64 / 32.0 * std::f64::consts::TAU,
            );
            let pencils = pencil_tuple(&v, p);
            let d = nrm(&commutator(&pencils[0], &pencils[1]));
            assert!(d < 1e-9, "pencil commutator {d}");
        }
    }

    #[test]
    fn determinants_vanish_exactly_on_fibers() {
        let v = build_variety(vec![nilpotent2(), nilpotent2()], 1e-9).unwrap();
        let id = CMatrix::identity(2, 2);
        for p in [re(0.3), c64(0.2, -0.4)] {
            let fib = fiber(&v, p, 1e-8).unwrap();
            for s in &fib.points {
                for i in 0..2 {
                    let m = v.f[i].adjoint() + v.f[1 - i].map(|z| z * p) - id.map(|z| z * s[i]);
                    assert!(m.determinant().norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn conjugated_data_traces_the_same_points() {
        let mut rng = sample::stream(29, "variety-conj", 0);
        let q = sample::random_unitary(3, &mut rng);
        let d1 = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c64(0.4, 0.1),
            c64(-0.3, 0.2),
            c64(0.0, -0.4),
        ]));
        let d2 = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c64(0.1, 0.2),
            c64(0.2, -0.1),
            c64(-0.2, 0.0),
        ]));
        let v = build_variety(vec![d1.clone(), d2.clone()], 1e-9).unwrap();
        let w = build_variety(vec![q.adjoint() * d1 * &q, q.adjoint() * d2 * &q], 1e-8).unwrap();
        for p in [re(0.0), re(0.6), c64(0.3, -0.5), re(1.0)] {
            let fa = fiber(&v, p, 1e-8).unwrap();
            let fb = fiber(&w, p, 1e-8).unwrap();
            assert!(
                matching_distance(&fa.points, &fb.points) < 1e-6,
                "fibers must agree under conjugation of the data"
            );
        }
    }
}
