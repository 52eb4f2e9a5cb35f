//! Closed-form points of the first nontrivial curve for the ball, the unit
//! square and two linked balls.

use serde::{Deserialize, Serialize};

use super::SpectrumError;

/// Which closed-form piece produced an oracle point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleBranch {
    /// The ball: `c = (1 + t)/R` for every `t`.
    Ball,
    /// `t` small: `β` sits on the trivial level.
    TrivialLow,
    /// `t` large: `α` sits on the trivial level.
    TrivialHigh,
    /// Unit square: balls on the diagonal, `c = τ(1 + t)`.
    Diagonal,
    /// Linked balls: the weighted ball in the small ball, `c = t/R₁`.
    Rising,
    /// Linked balls: the unweighted ball in the small ball, `c = 1/R₁`.
    Flat,
    /// Linked balls: both balls inside the large ball, `c = (1 + t)/R₂`.
    SharedBall,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OraclePoint {
    pub t: f64,
    pub alpha: f64,
    pub beta: f64,
    pub branch: OracleBranch,
}

impl OraclePoint {
    fn from_c(t: f64, c: f64, branch: OracleBranch) -> Self {
        Self { t, alpha: c / t, beta: c, branch }
    }

    pub fn c(&self) -> f64 {
        self.beta
    }
}

fn check_t(t: f64) -> Result<(), SpectrumError> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(SpectrumError::Invalid(format!("weight t must be finite and > 0, got {t}")))
    }
}

fn check_radius(r: f64) -> Result<(), SpectrumError> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(SpectrumError::Invalid(format!("radius must be finite and > 0, got {r}")))
    }
}

/// `τ = 1 + √2/2`: the square's diagonal branch is `c = τ(1 + t)`.
pub const SQUARE_TAU: f64 = 1.0 + std::f64::consts::FRAC_1_SQRT_2;

/// Weight `3 - 2√2` below which the square's curve is flat at `β = 2`.
pub fn square_branch_point() -> f64 {
    3.0 - 2.0 * std::f64::consts::SQRT_2
}

pub fn oracle_ball(radius: f64, t: f64) -> Result<OraclePoint, SpectrumError> {
    check_radius(radius)?;
    check_t(t)?;
    Ok(OraclePoint::from_c(t, (1.0 + t) / radius, OracleBranch::Ball))
}

/// The unit square `[0, 1]²`.
pub fn oracle_square(t: f64) -> Result<OraclePoint, SpectrumError> {
    check_t(t)?;
    let ts = square_branch_point();
    Ok(if t <= ts {
        OraclePoint::from_c(t, 2.0, OracleBranch::TrivialLow)
    } else if t >= 1.0 / ts {
        OraclePoint::from_c(t, 2.0 * t, OracleBranch::TrivialHigh)
    } else {
        OraclePoint::from_c(t, SQUARE_TAU * (1.0 + t), OracleBranch::Diagonal)
    })
}

/// Two balls of radii `r1 <= r2` joined by a thin tube, in the thin-tube limit.
///
/// `ρ(t)` is the best of three placements: the weighted ball in the small
/// ball and the other in the large one, the reverse, or both in the large one.
pub fn oracle_linked(r1: f64, r2: f64, t: f64) -> Result<OraclePoint, SpectrumError> {
    check_radius(r1)?;
    check_radius(r2)?;
    check_t(t)?;
    if r1 > r2 {
        return Err(SpectrumError::Invalid(format!("linked balls need r1 <= r2, got {r1} > {r2}")));
    }
    // (rho, branch) per placement; ties resolved in this order
    let small_first = if r1 / t <= r2 {
        (r1 / t, OracleBranch::Rising)
    } else {
        (r2, OracleBranch::TrivialLow)
    };
    let large_first = if r2 / t <= r1 {
        (r2 / t, OracleBranch::TrivialHigh)
    } else {
        (r1, OracleBranch::Flat)
    };
    let shared = (r2 / (1.0 + t), OracleBranch::SharedBall);
    let (rho, branch) = [small_first, large_first, shared]
        .into_iter()
        .fold((f64::NEG_INFINITY, OracleBranch::SharedBall), |best, c| if c.0 > best.0 { c } else { best });
    Ok(OraclePoint::from_c(t, 1.0 / rho, branch))
}
