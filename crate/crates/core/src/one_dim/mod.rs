//! The unit interval: `π_p`, `sin_p`, the Fučík curves for finite `p` and
//! their limits, first-curve eigenfunction profiles and a viscosity checker.

mod curves;
mod profile;
mod quadrature;
mod trig;
mod viscosity;

use thiserror::Error;

pub use curves::{
    converge_check, curve_1d_finite, curve_1d_infinity, lambda_kp, Branch, ConvergenceRow, ConvergenceTable,
    CurveFamily1D, Eigenvalue1D, Exponent, FucikPair,
};
pub use profile::{
    eigenfunction_infinity, eigenfunction_p, normalize_sup, pair_infinity, profile_distance, sample, ProfileP,
};
pub use quadrature::{integrate, Quadrature};
pub use trig::{pi_p, sin_p, SinP};
pub use viscosity::{
    viscosity_residual, GridFunction1D, PointKind, Violation, ViscosityReport, DEFAULT_KINK_TOL, MIN_GRID,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OneDimError {
    #[error("exponent p must be a finite number > 1, got {0}")]
    Exponent(f64),
    #[error("{0}")]
    Invalid(String),
    #[error("grid with n = {n} intervals is too coarse (need at least {min})")]
    GridTooCoarse { n: usize, min: usize },
    #[error("boundary value {0} violates the Dirichlet condition")]
    Dirichlet(f64),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Domain;
    use crate::packing::{inradius, two_ball_rho, SolverOptions};

    #[test]
    fn interval_radii_match_the_limit_curves() {
        let d = Domain::interval(0.0, 1.0).unwrap();
        let opts = SolverOptions::default();
        let r = inradius(&d, &opts).unwrap().radius;
        let big_r = two_ball_rho(&d, 1.0, &opts).unwrap().rho;
        let first = curve_1d_infinity(1, Branch::OddPlus, 1.0).unwrap();
        let second = curve_1d_infinity(2, Branch::Even, 1.0).unwrap();
        assert!((1.0 / r - first.beta).abs() < 1e-9);
        assert!((1.0 / big_r - second.alpha).abs() < 1e-9);
        assert!((1.0 / big_r - second.beta).abs() < 1e-9);
    }

    #[test]
    fn finite_curves_satisfy_their_relation() {
        for k in 1..=5u32 {
            for &branch in Branch::for_index(k) {
                for p in [1.5, 3.0, 10.0, 100.0] {
                    let pp = pi_p(p).unwrap();
                    for s in [0.1, 0.5, 1.0, 2.0, 9.0] {
                        let fam = CurveFamily1D::new(k, branch, Exponent::Finite(p)).unwrap();
                        let pt = curve_1d_finite(&fam, s).unwrap();
                        let kf = k as f64;
                        let (a, b) = match branch {
                            Branch::Even => (0.5 * kf, 0.5 * kf),
                            Branch::OddPlus => (0.5 * (kf - 1.0), 0.5 * (kf + 1.0)),
                            Branch::OddMinus => (0.5 * (kf + 1.0), 0.5 * (kf - 1.0)),
                        };
                        let lhs = a / pt.alpha + b / pt.beta;
                        assert!((lhs - 1.0 / pp).abs() < 1e-10, "k={k} {branch} p={p} s={s}");
                        assert!((pt.beta / pt.alpha - s).abs() < 1e-12 * s);
                    }
                }
            }
        }
    }

    #[test]
    fn finite_curves_approach_the_limit() {
        let ps: Vec<f64> = (2..=9).map(|e| 2f64.powi(e)).collect();
        for k in 1..=4u32 {
            for &branch in Branch::for_index(k) {
                for s in [0.3, 1.0, 4.0] {
                    let t = converge_check(k, branch, s, &ps).unwrap();
                    assert!(t.monotone_tail, "k={k} {branch} s={s}");
                    assert!(t.rows.last().unwrap().distance < 0.1 * t.rows[0].distance);
                }
            }
        }
    }

    #[test]
    fn diagonal_anchoring() {
        for k in 1..=6u32 {
            for &branch in Branch::for_index(k) {
                let inf = curve_1d_infinity(k, branch, 1.0).unwrap();
                assert_eq!((inf.alpha, inf.beta), (2.0 * k as f64, 2.0 * k as f64));
                let fam = CurveFamily1D::new(k, branch, Exponent::Finite(5.0)).unwrap();
                let pt = curve_1d_finite(&fam, 1.0).unwrap();
                let root = lambda_kp(k, 5.0).unwrap().root;
                assert!((pt.alpha - root).abs() < 1e-12 && (pt.beta - root).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn eigenvalue_roots_tend_to_2k() {
        for k in 1..=4u32 {
            let r = lambda_kp(k, 1e5).unwrap().root;
            assert!((r - 2.0 * k as f64).abs() < 1e-3 * k as f64);
        }
    }
}
