mod common;

use fucik_core::geometry::LinkedBalls;
use fucik_core::packing::{inradius, two_ball_rho, SolverOptions};
use fucik_core::spectrum::{
    classify, curve_c2, oracle_ball, oracle_linked, oracle_square, ClassifyOptions, SpectrumCurve,
};
use fucik_core::{Domain, Execution, Point2};
use proptest::prelude::*;

fn opts() -> SolverOptions {
    SolverOptions::default()
}

fn weights() -> Vec<f64> {
    (0..17).map(|i| 2f64.powf(-4.0 + 0.5 * i as f64)).collect()
}

type Oracle = Box<dyn Fn(f64) -> f64>;

fn max_rel_error(curve: &SpectrumCurve, oracle: impl Fn(f64) -> f64) -> f64 {
    curve.samples.iter().map(|s| (s.beta - oracle(s.t)).abs() / oracle(s.t)).fold(0.0, f64::max)
}

#[test]
fn oracle_equivalence() {
    let ball = Domain::ball(Point2::new(2.0, -1.0), 1.5).unwrap();
    let sq = Domain::unit_square();
    let linked = Domain::new(LinkedBalls { r1: 1.0, r2: 2.0, gap: 0.5, tube_half_width: None }.to_spec().unwrap()).unwrap();
    let cases: [(&Domain, Oracle); 3] = [
        (&ball, Box::new(|t| oracle_ball(1.5, t).unwrap().c())),
        (&sq, Box::new(|t| oracle_square(t).unwrap().c())),
        (&linked, Box::new(|t| oracle_linked(1.0, 2.0, t).unwrap().c())),
    ];
    for (d, oracle) in cases {
        let curve = curve_c2(d, 1.0 / 16.0, 16.0, 17, &opts()).unwrap();
        assert_eq!(curve.samples.len(), 17);
        for (s, t) in curve.samples.iter().zip(weights()) {
            assert!((s.t - t).abs() < 1e-12 * t);
        }
        let err = max_rel_error(&curve, oracle);
        assert!(err <= 1e-3, "{err}");
    }
}

#[test]
fn curve_invariants_on_the_square() {
    let curve = curve_c2(&Domain::unit_square(), 1.0 / 64.0, 64.0, 33, &opts()).unwrap();
    let tol = 1e-6;
    for w in curve.samples.windows(2) {
        assert!(w[1].beta >= w[0].beta - tol, "beta decreases at t = {}", w[1].t);
        assert!(w[1].alpha <= w[0].alpha + tol, "alpha increases at t = {}", w[1].t);
    }
    for s in &curve.samples {
        assert!((s.beta - s.t * s.alpha).abs() <= 1e-12 * s.beta);
        assert!(s.alpha >= 2.0 - 1e-6 && s.beta >= 2.0 - 1e-6);
        let w = s.witness.as_ref().unwrap();
        assert!((w.radii.0 - s.t * w.radii.1).abs() < 1e-12);
    }
    assert!(curve.symmetry_defect().unwrap() <= 2e-3);
}

#[test]
fn sequential_and_parallel_agree() {
    let d = Domain::unit_square();
    let a = curve_c2(&d, 0.25, 4.0, 5, &opts().with_execution(Execution::Sequential)).unwrap();
    let b = curve_c2(&d, 0.25, 4.0, 5, &opts().with_execution(Execution::Parallel)).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rigid_motions_leave_the_spectrum_unchanged(
        spec in common::any_domain(),
        t in common::weight(),
        theta in 0.0..6.3f64,
        x in -4.0..4.0f64,
        y in -4.0..4.0f64,
    ) {
        let d = Domain::new(spec.clone()).unwrap();
        let moved = Domain::new(spec.rigid_motion(theta, Point2::new(x, y))).unwrap();
        let tol = 1e-4 * d.diameter();
        let o = opts().with_tol(tol);
        let a = two_ball_rho(&d, t, &o).unwrap().rho;
        let b = two_ball_rho(&moved, t, &o).unwrap().rho;
        prop_assert!((a - b).abs() <= 2.0 * tol, "{a} vs {b}");
        let ra = inradius(&d, &o).unwrap().radius;
        let rb = inradius(&moved, &o).unwrap().radius;
        prop_assert!((ra - rb).abs() <= 2.0 * tol);
    }

    #[test]
    fn witnesses_are_feasible(spec in common::any_domain(), t in common::weight()) {
        let d = Domain::new(spec).unwrap();
        let sol = two_ball_rho(&d, t, &opts()).unwrap();
        let (c1, c2) = sol.centers;
        prop_assert!(d.signed_clearance(c1) >= sol.radii.0 - 1e-12);
        prop_assert!(d.signed_clearance(c2) >= sol.radii.1 - 1e-12);
        prop_assert!(c1.distance(c2) >= sol.radii.0 + sol.radii.1 - 1e-12);
        prop_assert!((sol.radii.0 - t * sol.rho).abs() <= 1e-12 * sol.rho);
    }
}

#[test]
fn classification_is_invariant_under_rigid_motion() {
    let spec = LinkedBalls { r1: 1.0, r2: 1.5, gap: 0.4, tube_half_width: None }.to_spec().unwrap();
    let a = classify(&Domain::new(spec.clone()).unwrap(), &ClassifyOptions::default(), &opts()).unwrap();
    let moved = Domain::new(spec.rigid_motion(2.1, Point2::new(5.0, -7.0))).unwrap();
    let b = classify(&moved, &ClassifyOptions::default(), &opts()).unwrap();
    assert_eq!(a.kind, b.kind);
    assert!((a.inradius - b.inradius).abs() < 1e-4);
    assert!((a.twin_radius - b.twin_radius).abs() < 1e-4);
    assert_eq!(a.intersections.len(), b.intersections.len());
    for (p, q) in a.intersections.iter().zip(&b.intersections) {
        assert!((p.alpha - q.alpha).abs() < 1e-2 && (p.beta - q.beta).abs() < 1e-2);
    }
}
