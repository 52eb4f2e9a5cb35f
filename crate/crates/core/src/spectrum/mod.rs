//! The first nontrivial curve `C₂,∞ = {(c(t)/t, c(t)) : t > 0}` with
//! `c(t) = 1/ρ*(t)`, the trivial lines at `1/𝔯`, and domain classification.

mod oracle;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::map_indexed;
use crate::geometry::Domain;
use crate::packing::{inradius, two_ball_rho, InradiusSolution, PackingError, SolverOptions, TwoBallSolution};

pub use oracle::{
    oracle_ball, oracle_linked, oracle_square, square_branch_point, OracleBranch, OraclePoint, SQUARE_TAU,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Packing(#[from] PackingError),
    #[error("{0}")]
    Invalid(String),
}

/// Default weight range and sample count of [`curve_c2`].
pub const DEFAULT_T_MIN: f64 = 1.0 / 64.0;
pub const DEFAULT_T_MAX: f64 = 64.0;
pub const DEFAULT_SAMPLES: usize = 65;

/// `c(t) = 1/ρ*(t)`.
pub fn c_infinity(domain: &Domain, t: f64, opts: &SolverOptions) -> Result<f64, SpectrumError> {
    Ok(1.0 / two_ball_rho(domain, t, opts)?.rho)
}

/// Level `1/𝔯` of the trivial lines `ℝ × {1/𝔯}` and `{1/𝔯} × ℝ`.
pub fn trivial_lines(domain: &Domain, opts: &SolverOptions) -> Result<f64, SpectrumError> {
    Ok(1.0 / inradius(domain, opts)?.radius)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleSource {
    Optimizer,
    Oracle,
}

impl SampleSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            SampleSource::Optimizer => "optimizer",
            SampleSource::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub t: f64,
    pub alpha: f64,
    pub beta: f64,
    pub source: SampleSource,
    pub witness: Option<TwoBallSolution>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleFailure {
    pub t: f64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumCurve {
    /// Successful samples in increasing `t`.
    pub samples: Vec<CurveSample>,
    pub failures: Vec<SampleFailure>,
}

impl SpectrumCurve {
    /// Fraction of requested samples that succeeded.
    pub fn success_rate(&self) -> f64 {
        let total = self.samples.len() + self.failures.len();
        if total == 0 {
            0.0
        } else {
            self.samples.len() as f64 / total as f64
        }
    }

    /// Largest mismatch between the point at `t` and the swapped point at
    /// `1/t`, over sample pairs whose weights are reciprocal.
    pub fn symmetry_defect(&self) -> Option<f64> {
        let mut worst: Option<f64> = None;
        for a in &self.samples {
            let partner = self.samples.iter().find(|b| (a.t * b.t - 1.0).abs() <= 1e-9);
            if let Some(b) = partner {
                let d = (a.alpha - b.beta).abs().max((a.beta - b.alpha).abs());
                worst = Some(worst.map_or(d, |w: f64| w.max(d)));
            }
        }
        worst
    }
}

/// `n` weights log-spaced over `[t_min, t_max]`.
pub fn log_spaced(t_min: f64, t_max: f64, n: usize) -> Result<Vec<f64>, SpectrumError> {
    if !(t_min > 0.0 && t_min < t_max && t_max.is_finite()) {
        return Err(SpectrumError::Invalid(format!("need 0 < t_min < t_max, got [{t_min}, {t_max}]")));
    }
    if n < 2 {
        return Err(SpectrumError::Invalid(format!("need at least 2 samples, got {n}")));
    }
    let (a, b) = (t_min.ln(), t_max.ln());
    Ok((0..n)
        .map(|i| {
            if i == 0 {
                t_min
            } else if i == n - 1 {
                t_max
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect())
}

/// Samples of `C₂,∞` at log-spaced weights. A failing sample is recorded in
/// [`SpectrumCurve::failures`] and the rest of the curve is still computed.
pub fn curve_c2(
    domain: &Domain,
    t_min: f64,
    t_max: f64,
    n_samples: usize,
    opts: &SolverOptions,
) -> Result<SpectrumCurve, SpectrumError> {
    let ts = log_spaced(t_min, t_max, n_samples)?;
    let source = if domain.as_interval().is_some() {
        SampleSource::Oracle
    } else {
        SampleSource::Optimizer
    };
    let results = map_indexed(ts.len(), opts.execution, |i| two_ball_rho(domain, ts[i], opts));
    let mut curve = SpectrumCurve { samples: Vec::new(), failures: Vec::new() };
    for (t, r) in ts.into_iter().zip(results) {
        match r {
            Ok(sol) => {
                let c = 1.0 / sol.rho;
                curve.samples.push(CurveSample { t, alpha: c / t, beta: c, source, witness: Some(sol) });
            }
            Err(e) => curve.failures.push(SampleFailure { t, error: e.to_string() }),
        }
    }
    Ok(curve)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainKind {
    /// The curve stays strictly above the trivial lines (the ball).
    TypeI,
    /// The curve meets the trivial lines at two points off the diagonal.
    TypeIIA,
    /// The curve lies on the trivial lines: `𝕽 = 𝔯`.
    TypeIIB,
}

/// A point where `C₂,∞` meets a trivial line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Intersection {
    pub t: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Width of the final bisection bracket in `t`.
    pub bracket_width: f64,
    /// The eigenvalue here also lies on a trivial line, so it is not simple.
    pub non_simple: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumClassification {
    pub kind: DomainKind,
    pub inradius: f64,
    pub twin_radius: f64,
    pub trivial_level: f64,
    pub lambda2: f64,
    pub intersections: Vec<Intersection>,
    /// Largest distance from a boundary sample to the inscribed ball.
    pub ball_defect: f64,
    pub tol: f64,
    pub inscribed: InradiusSolution,
}

/// Options of [`classify`] on top of the solver options.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    /// Absolute length tolerance of the type tests; `None` means `1e-3 * diameter`.
    pub tol: Option<f64>,
    /// Relative excess of `c(t)` over `1/𝔯` that still counts as on the trivial line.
    pub level_tol: f64,
    /// Bisection stops when the bracket in `t` is this narrow.
    pub bracket: f64,
    pub boundary_samples: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { tol: None, level_tol: 1e-5, bracket: 1e-6, boundary_samples: 256 }
    }
}

pub fn classify(
    domain: &Domain,
    copts: &ClassifyOptions,
    opts: &SolverOptions,
) -> Result<SpectrumClassification, SpectrumError> {
    let tol = copts.tol.unwrap_or(1e-3 * domain.diameter());
    if !(tol.is_finite() && tol > 0.0) {
        return Err(SpectrumError::Invalid(format!("tolerance must be > 0, got {tol}")));
    }
    let inscribed = inradius(domain, opts)?;
    let r = inscribed.radius;
    let level = 1.0 / r;
    let at_one = two_ball_rho(domain, 1.0, opts)?;
    // both are maximisations, so 𝕽 can only exceed 𝔯 by solver error
    let twin = at_one.rho.min(r);

    let ball_defect = match domain.as_interval() {
        Some((a, b)) => ((inscribed.center.x - a).abs() - r).max((b - inscribed.center.x).abs() - r).max(0.0),
        None => domain
            .boundary_samples(copts.boundary_samples)
            .iter()
            .map(|q| (q.distance(inscribed.center) - r).max(0.0))
            .fold(0.0, f64::max),
    };

    let kind = if ball_defect <= tol {
        DomainKind::TypeI
    } else if (r - twin).abs() <= tol {
        DomainKind::TypeIIB
    } else {
        DomainKind::TypeIIA
    };

    let mut intersections = Vec::new();
    if kind != DomainKind::TypeI {
        let on_line = |t: f64| -> Result<bool, SpectrumError> {
            Ok(c_infinity(domain, t, opts)? <= level * (1.0 + copts.level_tol))
        };
        let found = if kind == DomainKind::TypeIIB || on_line(1.0)? {
            Some((1.0, 0.0))
        } else {
            let mut lo = None;
            let mut hi = 1.0;
            for k in 1..=30 {
                let t = 0.5f64.powi(k);
                if on_line(t)? {
                    lo = Some(t);
                    break;
                }
                hi = t;
            }
            match lo {
                None => None,
                Some(mut lo) => {
                    while hi - lo > copts.bracket {
                        let mid = 0.5 * (lo + hi);
                        if on_line(mid)? {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    Some((lo, hi - lo))
                }
            }
        };
        if let Some((t, width)) = found {
            let c = c_infinity(domain, t, opts)?;
            let first = Intersection { t, alpha: c / t, beta: c, bracket_width: width, non_simple: true };
            if t < 1.0 {
                intersections.push(Intersection { t: 1.0 / t, alpha: c, beta: c / t, ..first.clone() });
            }
            intersections.insert(0, first);
        }
    }

    Ok(SpectrumClassification {
        kind,
        inradius: r,
        twin_radius: twin,
        trivial_level: level,
        lambda2: 1.0 / twin,
        intersections,
        ball_defect,
        tol,
        inscribed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point2, Shape};
    use crate::DomainSpec;

    fn opts() -> SolverOptions {
        SolverOptions::default()
    }

    #[test]
    fn trivial_levels() {
        let ball = Domain::ball(Point2::ORIGIN, 1.0).unwrap();
        assert!((trivial_lines(&ball, &opts()).unwrap() - 1.0).abs() < 1e-6);
        assert!((trivial_lines(&Domain::unit_square(), &opts()).unwrap() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn ball_curve_point_at_one() {
        let ball = Domain::ball(Point2::ORIGIN, 1.0).unwrap();
        let c = c_infinity(&ball, 1.0, &opts()).unwrap();
        assert!((c - 2.0).abs() < 1e-4);
    }

    #[test]
    fn log_spacing() {
        let ts = log_spaced(0.25, 4.0, 5).unwrap();
        assert_eq!(ts.first(), Some(&0.25));
        assert_eq!(ts.last(), Some(&4.0));
        assert!((ts[2] - 1.0).abs() < 1e-15);
        assert!(log_spaced(1.0, 1.0, 5).is_err());
        assert!(log_spaced(0.5, 2.0, 1).is_err());
    }

    #[test]
    fn interval_curve_is_closed_form() {
        let d = Domain::interval(0.0, 1.0).unwrap();
        let curve = curve_c2(&d, 0.25, 4.0, 5, &opts()).unwrap();
        for s in &curve.samples {
            assert_eq!(s.source, SampleSource::Oracle);
            assert!((s.beta - 2.0 * (1.0 + s.t)).abs() < 1e-12);
        }
        assert!(curve.symmetry_defect().unwrap() < 1e-12);
    }

    #[test]
    fn square_curve_shape() {
        let d = Domain::unit_square();
        let curve = curve_c2(&d, 0.125, 8.0, 7, &opts()).unwrap();
        assert!(curve.failures.is_empty());
        for s in &curve.samples {
            let o = oracle_square(s.t).unwrap();
            assert!((s.beta - o.beta).abs() <= 1e-3 * o.beta, "t={}: {} vs {}", s.t, s.beta, o.beta);
            assert!((s.beta - s.t * s.alpha).abs() < 1e-12);
        }
        assert!(curve.symmetry_defect().unwrap() < 1e-3);
    }

    #[test]
    fn classifies_ball_and_square() {
        let ball = Domain::ball(Point2::new(0.3, -1.0), 1.0).unwrap();
        let c = classify(&ball, &ClassifyOptions::default(), &opts()).unwrap();
        assert_eq!(c.kind, DomainKind::TypeI);
        assert!(c.intersections.is_empty());

        let sq = classify(&Domain::unit_square(), &ClassifyOptions::default(), &opts()).unwrap();
        assert_eq!(sq.kind, DomainKind::TypeIIA);
        assert_eq!(sq.intersections.len(), 2);
        let first = &sq.intersections[0];
        assert!((first.t - square_branch_point()).abs() < 5e-3, "{first:?}");
        assert!((first.alpha - (6.0 + 4.0 * std::f64::consts::SQRT_2)).abs() < 2e-2, "{first:?}");
        assert!((first.beta - 2.0).abs() < 1e-3);
        let second = &sq.intersections[1];
        assert_eq!((second.alpha, second.beta), (first.beta, first.alpha));
        assert!(sq.lambda2 >= sq.trivial_level);
    }

    #[test]
    fn stadium_lies_on_the_trivial_lines() {
        let d = Domain::new(DomainSpec::new(vec![Shape::Stadium {
            a: Point2::ORIGIN,
            b: Point2::new(3.0, 0.0),
            half_width: 0.5,
        }]))
        .unwrap();
        let c = classify(&d, &ClassifyOptions::default(), &opts()).unwrap();
        assert_eq!(c.kind, DomainKind::TypeIIB);
        assert_eq!(c.intersections.len(), 1);
        assert!((c.intersections[0].alpha - 2.0).abs() < 1e-3);
    }

    #[test]
    fn interval_is_type_one() {
        let c = classify(&Domain::interval(0.0, 1.0).unwrap(), &ClassifyOptions::default(), &opts()).unwrap();
        assert_eq!(c.kind, DomainKind::TypeI);
        assert_eq!((c.trivial_level, c.lambda2), (2.0, 4.0));
    }
}
