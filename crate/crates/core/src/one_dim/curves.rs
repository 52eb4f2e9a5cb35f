//! Fučík curves of the unit interval for finite `p` and their `p → ∞` limits.
//!
//! Finite-`p` quantities are carried as `p`-th roots (`α^{1/p}`, `β^{1/p}`,
//! `λ^{1/p}`), which stay of order one while `α`, `β` and `λ` overflow.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::trig::{check_p, pi_p};
use super::OneDimError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Even,
    OddPlus,
    OddMinus,
}

impl Branch {
    /// The branches that exist for index `k`.
    pub fn for_index(k: u32) -> &'static [Branch] {
        if k.is_multiple_of(2) {
            &[Branch::Even]
        } else {
            &[Branch::OddPlus, Branch::OddMinus]
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Even => "even",
            Branch::OddPlus => "odd_plus",
            Branch::OddMinus => "odd_minus",
        })
    }
}

impl FromStr for Branch {
    type Err = OneDimError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "even" => Ok(Branch::Even),
            "odd_plus" | "plus" | "+" => Ok(Branch::OddPlus),
            "odd_minus" | "minus" | "-" => Ok(Branch::OddMinus),
            other => Err(OneDimError::Invalid(format!("unknown branch '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

/// One curve of the interval spectrum: index `k`, branch and exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveFamily1D {
    pub k: u32,
    pub branch: Branch,
    pub p: Exponent,
}

impl CurveFamily1D {
    pub fn new(k: u32, branch: Branch, p: Exponent) -> Result<Self, OneDimError> {
        check_parity(k, branch)?;
        if let Exponent::Finite(p) = p {
            check_p(p)?;
        }
        Ok(Self { k, branch, p })
    }
}

/// A point `(α, β)`. For finite `p` the curve functions return `p`-th roots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FucikPair {
    pub alpha: f64,
    pub beta: f64,
}

impl FucikPair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, OneDimError> {
        if alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite() {
            Ok(Self { alpha, beta })
        } else {
            Err(OneDimError::Invalid(format!("Fučík pair must be positive, got ({alpha}, {beta})")))
        }
    }

    pub fn distance(&self, other: &FucikPair) -> f64 {
        (self.alpha - other.alpha).hypot(self.beta - other.beta)
    }
}

fn check_parity(k: u32, branch: Branch) -> Result<(), OneDimError> {
    if k == 0 {
        return Err(OneDimError::Invalid("curve index k must be >= 1".into()));
    }
    let even = k.is_multiple_of(2);
    if even == (branch == Branch::Even) {
        Ok(())
    } else {
        Err(OneDimError::Invalid(format!("branch {branch} does not exist for k = {k}")))
    }
}

fn check_slope(s: f64) -> Result<(), OneDimError> {
    if s.is_finite() && s > 0.0 {
        Ok(())
    } else {
        Err(OneDimError::Invalid(format!("slope parameter s must be > 0, got {s}")))
    }
}

/// `λ_{k,p} = (kπ_p)^p`, kept in log space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue1D {
    pub k: u32,
    pub p: f64,
    /// `λ^{1/p} = kπ_p`.
    pub root: f64,
    /// `ln λ = p ln(kπ_p)`.
    pub log_value: f64,
    /// `λ` itself, `None` when it overflows `f64`.
    pub value: Option<f64>,
}

impl Eigenvalue1D {
    pub fn overflowed(&self) -> bool {
        self.value.is_none()
    }
}

pub fn lambda_kp(k: u32, p: f64) -> Result<Eigenvalue1D, OneDimError> {
    if k == 0 {
        return Err(OneDimError::Invalid("eigenvalue index k must be >= 1".into()));
    }
    let root = k as f64 * pi_p(p)?;
    let log_value = p * root.ln();
    let value = Some(log_value.exp()).filter(|v| v.is_finite());
    Ok(Eigenvalue1D { k, p, root, log_value, value })
}

/// Coefficients `(a, b)` with `α^{1/p} = π_p (a + b/s)` and `β^{1/p} = π_p (a s + b)`.
fn coefficients(k: u32, branch: Branch) -> (f64, f64) {
    let k = k as f64;
    match branch {
        Branch::Even => (0.5 * k, 0.5 * k),
        Branch::OddPlus => (0.5 * (k - 1.0), 0.5 * (k + 1.0)),
        Branch::OddMinus => (0.5 * (k + 1.0), 0.5 * (k - 1.0)),
    }
}

/// Intersection of a finite-`p` curve with the ray `β = s^p α`, returned as
/// `(α^{1/p}, β^{1/p})`. The curve is
/// `a α^{-1/p} + b β^{-1/p} = 1/π_p` with `(a, b)` from the branch.
pub fn curve_1d_finite(family: &CurveFamily1D, s: f64) -> Result<FucikPair, OneDimError> {
    check_parity(family.k, family.branch)?;
    check_slope(s)?;
    let p = match family.p {
        Exponent::Finite(p) => p,
        Exponent::Infinity => return curve_1d_infinity(family.k, family.branch, s),
    };
    let pp = pi_p(p)?;
    let (a, b) = coefficients(family.k, family.branch);
    Ok(FucikPair { alpha: pp * (a + b / s), beta: pp * (a * s + b) })
}

/// Limit curve as `p → ∞`; the `π_p → 2` limit of [`curve_1d_finite`].
pub fn curve_1d_infinity(k: u32, branch: Branch, s: f64) -> Result<FucikPair, OneDimError> {
    check_parity(k, branch)?;
    check_slope(s)?;
    let (a, b) = coefficients(k, branch);
    Ok(FucikPair { alpha: 2.0 * (a + b / s), beta: 2.0 * (a * s + b) })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub p: f64,
    pub alpha_root: f64,
    pub beta_root: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub k: u32,
    pub branch: Branch,
    pub s: f64,
    pub limit: FucikPair,
    pub rows: Vec<ConvergenceRow>,
    /// Distances strictly decrease over the rows with `p >= 16` (all rows if fewer than two).
    pub monotone_tail: bool,
    /// Aitken Δ² extrapolation of the last three distances.
    pub extrapolated_limit: Option<f64>,
}

/// Distance from the finite-`p` curve point to its limit for each `p`.
pub fn converge_check(k: u32, branch: Branch, s: f64, p_list: &[f64]) -> Result<ConvergenceTable, OneDimError> {
    let limit = curve_1d_infinity(k, branch, s)?;
    if p_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(OneDimError::Invalid("p list must be strictly increasing".into()));
    }
    let rows = p_list
        .iter()
        .map(|&p| {
            let pt = curve_1d_finite(&CurveFamily1D::new(k, branch, Exponent::Finite(p))?, s)?;
            Ok(ConvergenceRow { p, alpha_root: pt.alpha, beta_root: pt.beta, distance: pt.distance(&limit) })
        })
        .collect::<Result<Vec<_>, OneDimError>>()?;
    let tail: Vec<f64> = {
        let t: Vec<f64> = rows.iter().filter(|r| r.p >= 16.0).map(|r| r.distance).collect();
        if t.len() >= 2 {
            t
        } else {
            rows.iter().map(|r| r.distance).collect()
        }
    };
    let monotone_tail = tail.windows(2).all(|w| w[1] < w[0]);
    let extrapolated_limit = match rows.as_slice() {
        [.., a, b, c] => {
            let (d0, d1, d2) = (a.distance, b.distance, c.distance);
            let denom = d2 - 2.0 * d1 + d0;
            (denom.abs() > 0.0).then(|| d2 - (d2 - d1).powi(2) / denom)
        }
        _ => None,
    };
    Ok(ConvergenceTable { k, branch, s, limit, rows, monotone_tail, extrapolated_limit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn fam(k: u32, branch: Branch, p: f64) -> CurveFamily1D {
        CurveFamily1D::new(k, branch, Exponent::Finite(p)).unwrap()
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_kp(1, 2.0).unwrap();
        assert!((l.value.unwrap() - PI * PI).abs() < 1e-10);
        let l = lambda_kp(2, 7.0).unwrap();
        assert_eq!(l.root, 2.0 * pi_p(7.0).unwrap());
        let big = lambda_kp(3, 2000.0).unwrap();
        assert!(big.overflowed());
        assert!((big.root - 6.0).abs() < 0.05);
        assert!(big.log_value.is_finite());
    }

    #[test]
    fn even_curve_hits_the_diagonal_eigenvalue() {
        for p in [1.5, 2.0, 5.0, 40.0] {
            let pt = curve_1d_finite(&fam(2, Branch::Even, p), 1.0).unwrap();
            let root = lambda_kp(2, p).unwrap().root;
            assert!((pt.alpha - root).abs() < 1e-12 && (pt.beta - root).abs() < 1e-12);
        }
    }

    #[test]
    fn first_odd_curve_is_the_trivial_line() {
        for s in [0.2, 1.0, 3.0] {
            let pt = curve_1d_finite(&fam(1, Branch::OddPlus, 3.0), s).unwrap();
            assert!((pt.beta - pi_p(3.0).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn third_curve_at_p_two() {
        // λ_{1,2}^{1/2} + λ_{2,2}^{1/2} = π + 2π
        let pt = curve_1d_finite(&fam(3, Branch::OddPlus, 2.0), 1.0).unwrap();
        assert!((pt.alpha - 3.0 * PI).abs() < 1e-10 && (pt.beta - 3.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn limit_curve_formulas() {
        assert_eq!(curve_1d_infinity(2, Branch::Even, 1.0).unwrap(), FucikPair { alpha: 4.0, beta: 4.0 });
        let s = 0.7;
        let t = curve_1d_infinity(1, Branch::OddPlus, s).unwrap();
        assert!((t.alpha - 2.0 / s).abs() < 1e-15 && t.beta == 2.0);
        assert_eq!(curve_1d_infinity(3, Branch::OddMinus, 1.0).unwrap(), FucikPair { alpha: 6.0, beta: 6.0 });
    }

    #[test]
    fn parity_is_enforced() {
        assert!(curve_1d_infinity(2, Branch::OddPlus, 1.0).is_err());
        assert!(curve_1d_infinity(3, Branch::Even, 1.0).is_err());
        assert!(CurveFamily1D::new(0, Branch::Even, Exponent::Infinity).is_err());
        assert!(curve_1d_infinity(2, Branch::Even, 0.0).is_err());
    }

    #[test]
    fn convergence_table_even_diagonal() {
        let t = converge_check(2, Branch::Even, 1.0, &[4.0, 8.0, 16.0, 32.0]).unwrap();
        for r in &t.rows {
            let expect = 2f64.sqrt() * (2.0 * pi_p(r.p).unwrap() - 4.0).abs();
            assert!((r.distance - expect).abs() < 1e-12);
        }
        assert!(t.rows.windows(2).all(|w| w[1].distance < w[0].distance));
        assert!(t.monotone_tail);
    }

    #[test]
    fn convergence_table_trivial_branch() {
        let s = 0.5;
        let t = converge_check(1, Branch::OddPlus, s, &[4.0, 8.0, 16.0, 32.0, 64.0]).unwrap();
        for r in &t.rows {
            let expect = (pi_p(r.p).unwrap() - 2.0).abs() * (1.0 + s.powi(-2)).sqrt();
            assert!((r.distance - expect).abs() < 1e-12);
        }
        assert!(t.monotone_tail);
        assert!(t.extrapolated_limit.unwrap().abs() < t.rows.last().unwrap().distance);
    }
}
