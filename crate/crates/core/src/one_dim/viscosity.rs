//! Discrete residual of the limit equation
//!
//! ```text
//! min{-Δ∞u, |u'| - α u⁺} = 0   in {u > 0}
//! max{-Δ∞u, -|u'| + β u⁻} = 0  in {u < 0}
//! -Δ∞u = 0                     in {u = 0}
//! ```
//!
//! on a uniform grid of `(0, 1)`, with `Δ∞u = (u')² u''` in one dimension.
//! Smooth grid points use centered differences. At kinks the sub- or
//! supersolution inequality is tested against quadratic test functions
//! `φ(x) = u(x₀) + q(x - x₀) ± M (x - x₀)²` whose slope `q` runs over a
//! 9-point grid strictly between the one-sided slopes.

use serde::{Deserialize, Serialize};

use super::{FucikPair, OneDimError};

pub const MIN_GRID: usize = 16;
pub const DEFAULT_KINK_TOL: f64 = 1e-6;
pub const TEST_CURVATURE: f64 = 1e3;
const SLOPE_SAMPLES: usize = 9;
const SLOPE_MARGIN: f64 = 1e-6;
const DIRICHLET_TOL: f64 = 1e-12;
const REPORT_THRESHOLD: f64 = 1e-9;

/// Samples `u(i/n)`, `i = 0..=n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction1D {
    n: usize,
    values: Vec<f64>,
    kink_tol: f64,
}

impl GridFunction1D {
    pub fn new(values: Vec<f64>, kink_tol: f64) -> Result<Self, OneDimError> {
        let n = values.len().saturating_sub(1);
        if n < MIN_GRID {
            return Err(OneDimError::GridTooCoarse { n, min: MIN_GRID });
        }
        if !(kink_tol >= 0.0 && kink_tol.is_finite()) {
            return Err(OneDimError::Invalid(format!("kink tolerance must be >= 0, got {kink_tol}")));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(OneDimError::Invalid(format!("non-finite value at grid index {i}")));
        }
        for v in [values[0], values[n]] {
            if v.abs() > DIRICHLET_TOL {
                return Err(OneDimError::Dirichlet(v));
            }
        }
        Ok(Self { n, values, kink_tol })
    }

    pub fn from_fn<F>(n: usize, f: F) -> Result<Self, OneDimError>
    where
        F: Fn(f64) -> Result<f64, OneDimError>,
    {
        let values = (0..=n).map(|i| f(i as f64 / n as f64)).collect::<Result<Vec<_>, _>>()?;
        Self::new(values, DEFAULT_KINK_TOL)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kink_tol(&self) -> f64 {
        self.kink_tol
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 / self.n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Smooth,
    ConcaveKink,
    ConvexKink,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub index: usize,
    pub x: f64,
    pub u: f64,
    pub kind: PointKind,
    pub violation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViscosityReport {
    pub max_violation: f64,
    pub violating_points: Vec<Violation>,
    pub kinks: usize,
}

/// Left-hand side of the equation at a point where `u` takes value `u`,
/// for derivative data `(du, d2u)`.
fn operator(u: f64, du: f64, d2u: f64, pair: &FucikPair) -> f64 {
    let lap = -du * du * d2u;
    if u > 0.0 {
        lap.min(du.abs() - pair.alpha * u)
    } else if u < 0.0 {
        lap.max(-du.abs() - pair.beta * u)
    } else {
        lap
    }
}

pub fn viscosity_residual(u: &GridFunction1D, pair: &FucikPair) -> ViscosityReport {
    let h = 1.0 / u.n as f64;
    let v = &u.values;
    let mut max_violation = 0.0f64;
    let mut violating_points = Vec::new();
    let mut kinks = 0;
    for i in 1..u.n {
        let (sl, sr) = ((v[i] - v[i - 1]) / h, (v[i + 1] - v[i]) / h);
        let (kind, violation) = if (sr - sl).abs() <= u.kink_tol {
            let du = 0.5 * (sl + sr);
            let d2u = (sr - sl) / h;
            (PointKind::Smooth, operator(v[i], du, d2u, pair).abs())
        } else {
            kinks += 1;
            let concave = sl > sr;
            // concave kinks are touched from above (subsolution), convex ones from below
            let (curv, kind) = if concave {
                (-2.0 * TEST_CURVATURE, PointKind::ConcaveKink)
            } else {
                (2.0 * TEST_CURVATURE, PointKind::ConvexKink)
            };
            let worst = (0..SLOPE_SAMPLES)
                .map(|j| {
                    let frac = SLOPE_MARGIN + (1.0 - 2.0 * SLOPE_MARGIN) * j as f64 / (SLOPE_SAMPLES - 1) as f64;
                    let q = sl + (sr - sl) * frac;
                    let h_val = operator(v[i], q, curv, pair);
                    if concave {
                        h_val.max(0.0)
                    } else {
                        (-h_val).max(0.0)
                    }
                })
                .fold(0.0f64, f64::max);
            (kind, worst)
        };
        max_violation = max_violation.max(violation);
        if violation > REPORT_THRESHOLD {
            violating_points.push(Violation { index: i, x: u.x(i), u: v[i], kind, violation });
        }
    }
    ViscosityReport { max_violation, violating_points, kinks }
}

#[cfg(test)]
mod tests {
    use super::super::profile::{eigenfunction_infinity, pair_infinity};
    use super::*;

    fn limit_grid(ell: f64, n: usize) -> GridFunction1D {
        GridFunction1D::from_fn(n, |x| eigenfunction_infinity(ell, x)).unwrap()
    }

    #[test]
    fn exact_limit_profile_has_no_residual() {
        let u = limit_grid(0.4, 1000);
        let r = viscosity_residual(&u, &FucikPair::new(5.0, 10.0 / 3.0).unwrap());
        assert!(r.max_violation <= 1e-8, "{r:?}");
        assert_eq!(r.kinks, 2);
        assert!(r.violating_points.is_empty());
    }

    #[test]
    fn wrong_alpha_is_flagged_in_the_positive_phase() {
        let u = limit_grid(0.4, 1000);
        let r = viscosity_residual(&u, &FucikPair::new(7.5, 10.0 / 3.0).unwrap());
        assert!(r.max_violation > 0.1);
        assert!(r.violating_points.iter().all(|p| p.u > 0.0));
    }

    #[test]
    fn perturbations_of_twenty_percent_are_detected() {
        for ell in [0.2, 0.5, 0.7] {
            let u = limit_grid(ell, 1000);
            let pair = pair_infinity(ell).unwrap();
            for f in [0.8, 1.2] {
                let r = viscosity_residual(&u, &FucikPair::new(f * pair.alpha, pair.beta).unwrap());
                assert!(r.max_violation >= 0.05, "ell={ell} f={f}: {}", r.max_violation);
                let r = viscosity_residual(&u, &FucikPair::new(pair.alpha, f * pair.beta).unwrap());
                assert!(r.max_violation >= 0.05, "ell={ell} f={f} (beta): {}", r.max_violation);
            }
        }
    }

    #[test]
    fn zero_function_is_a_solution() {
        let u = GridFunction1D::new(vec![0.0; 33], DEFAULT_KINK_TOL).unwrap();
        let r = viscosity_residual(&u, &FucikPair::new(3.0, 4.0).unwrap());
        assert_eq!(r.max_violation, 0.0);
    }

    #[test]
    fn grid_validation() {
        assert!(matches!(
            GridFunction1D::new(vec![0.0; 10], DEFAULT_KINK_TOL),
            Err(OneDimError::GridTooCoarse { .. })
        ));
        let mut v = vec![0.0; 20];
        v[19] = 0.1;
        assert!(matches!(GridFunction1D::new(v, DEFAULT_KINK_TOL), Err(OneDimError::Dirichlet(_))));
        let mut v = vec![0.0; 20];
        v[3] = f64::NAN;
        assert!(GridFunction1D::new(v, DEFAULT_KINK_TOL).is_err());
    }
}
