//! `π_p` and the generalized sine `sin_p`.
//!
//! With `F(y) = (p-1)^{1/p} ∫₀^y (1 - s^p)^{-1/p} ds` on `[0, 1]`, `sin_p` is
//! the inverse of `F` on `[0, π_p/2]`, extended by `sin_p(π_p - x) = sin_p(x)`,
//! oddness and `2π_p`-periodicity. Then `(p-1)|sin_p'|^p + |sin_p|^p = 1` and
//! `u(x) = sin_p(π_p x)` solves `-(|u'|^{p-2}u')' = π_p^p |u|^{p-2}u` on `(0, 1)`.
//!
//! The integrand is singular at `s = 1`. Substituting `s = 1 - v^{p'}` with the
//! conjugate exponent `p' = p/(p-1)` turns it into a bounded integrand on
//! `v ∈ [0, 1]`, which adaptive Gauss-Kronrod handles to machine precision.

use super::quadrature::integrate;
use super::OneDimError;

const QUAD_TOL: f64 = 1e-14;
const QUAD_MAX_INTERVALS: usize = 4000;

pub(crate) fn check_p(p: f64) -> Result<(), OneDimError> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        Err(OneDimError::Exponent(p))
    }
}

/// `∫₀^y (1 - s^p)^{-1/p} ds` for `y ∈ [0, 1]`.
fn base_integral(p: f64, y: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    let k = p / (p - 1.0);
    let lower = if y >= 1.0 { 0.0 } else { (1.0 - y).powf(1.0 / k) };
    let integrand = |v: f64| {
        let w = v.powf(k);
        // 1 - (1 - w)^p without cancellation for small w
        let gap = -(p * (-w).ln_1p()).exp_m1();
        k * v.powf(k - 1.0) * gap.powf(-1.0 / p)
    };
    integrate(integrand, lower, 1.0, QUAD_TOL, QUAD_MAX_INTERVALS).value
}

/// `π_p = 2 (p-1)^{1/p} ∫₀¹ (1 - s^p)^{-1/p} ds`; equals π at `p = 2` and tends to 2.
pub fn pi_p(p: f64) -> Result<f64, OneDimError> {
    check_p(p)?;
    Ok(2.0 * ((p - 1.0).ln() / p).exp() * base_integral(p, 1.0))
}

/// Generalized sine for a fixed exponent, with `π_p` cached.
#[derive(Debug, Clone, Copy)]
pub struct SinP {
    p: f64,
    pi_p: f64,
    scale: f64,
}

impl SinP {
    pub fn new(p: f64) -> Result<Self, OneDimError> {
        check_p(p)?;
        let scale = ((p - 1.0).ln() / p).exp();
        Ok(Self { p, pi_p: 2.0 * scale * base_integral(p, 1.0), scale })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn pi_p(&self) -> f64 {
        self.pi_p
    }

    fn quarter(&self, y: f64) -> f64 {
        self.scale * base_integral(self.p, y)
    }

    /// Inverse of the quarter-period map on `[0, π_p/2]`.
    fn inverse_quarter(&self, x: f64) -> f64 {
        let half = 0.5 * self.pi_p;
        if x <= 0.0 {
            return 0.0;
        }
        if x >= half {
            return 1.0;
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        // initial guess from the p = 2 shape
        let mut y = (x / half * std::f64::consts::FRAC_PI_2).sin().clamp(0.0, 1.0);
        for _ in 0..100 {
            let g = self.quarter(y) - x;
            if g.abs() <= 1e-15 * half {
                break;
            }
            if g > 0.0 {
                hi = y;
            } else {
                lo = y;
            }
            let slope = self.scale * (1.0 - y.powf(self.p)).powf(-1.0 / self.p);
            let newton = y - g / slope;
            y = if newton > lo && newton < hi && slope.is_finite() { newton } else { 0.5 * (lo + hi) };
            if hi - lo < 1e-16 {
                break;
            }
        }
        y
    }

    pub fn eval(&self, x: f64) -> f64 {
        let period = 2.0 * self.pi_p;
        let mut r = x.rem_euclid(period);
        let mut sign = 1.0;
        if r > self.pi_p {
            r -= self.pi_p;
            sign = -1.0;
        }
        if r > 0.5 * self.pi_p {
            r = self.pi_p - r;
        }
        sign * self.inverse_quarter(r)
    }
}

/// `sin_p(x)`; see [`SinP`] to reuse `π_p` across many evaluations.
pub fn sin_p(p: f64, x: f64) -> Result<f64, OneDimError> {
    Ok(SinP::new(p)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Beta-function closed form `2π (p-1)^{1/p} / (p sin(π/p))`.
    fn pi_p_closed_form(p: f64) -> f64 {
        2.0 * PI * (p - 1.0).powf(1.0 / p) / (p * (PI / p).sin())
    }

    #[test]
    fn pi_2_is_pi() {
        assert!((pi_p(2.0).unwrap() - PI).abs() < 1e-12);
    }

    #[test]
    fn pi_p_matches_closed_form() {
        for p in [1.1, 1.5, 3.0, 4.0, 7.5, 20.0, 100.0, 1000.0, 1e4] {
            let got = pi_p(p).unwrap();
            assert!((got - pi_p_closed_form(p)).abs() < 1e-10, "p={p}: {got} vs {}", pi_p_closed_form(p));
        }
        let four = 2.0 * PI * 3f64.powf(0.25) / (4.0 * (PI / 4.0).sin());
        assert!((pi_p(4.0).unwrap() - four).abs() < 1e-9);
    }

    #[test]
    fn pi_p_tends_to_two() {
        assert!((pi_p(1e4).unwrap() - 2.0).abs() < 5e-3);
    }

    #[test]
    fn rejects_small_exponents() {
        assert!(pi_p(1.0).is_err());
        assert!(pi_p(0.5).is_err());
        assert!(sin_p(f64::NAN, 0.1).is_err());
    }

    #[test]
    fn sin_2_is_sine() {
        let s = SinP::new(2.0).unwrap();
        for i in -40..=40 {
            let x = 0.37 * i as f64;
            assert!((s.eval(x) - x.sin()).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn normalization_symmetry_and_period() {
        for p in [1.5, 3.0, 6.0] {
            let s = SinP::new(p).unwrap();
            let pp = s.pi_p();
            assert_eq!(s.eval(0.5 * pp), 1.0);
            assert_eq!(s.eval(0.0), 0.0);
            for i in 1..20 {
                let x = 0.29 * i as f64;
                assert!((s.eval(-x) + s.eval(x)).abs() < 1e-9);
                assert!((s.eval(x + 2.0 * pp) - s.eval(x)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn first_integral_holds() {
        // (p-1)|u'|^p + |u|^p = 1 checked with a centered difference
        let p = 3.0;
        let s = SinP::new(p).unwrap();
        let h = 1e-5;
        for i in 1..10 {
            let x = 0.15 * i as f64;
            let du = (s.eval(x + h) - s.eval(x - h)) / (2.0 * h);
            let e = (p - 1.0) * du.abs().powf(p) + s.eval(x).abs().powf(p);
            assert!((e - 1.0).abs() < 1e-7, "x={x}: {e}");
        }
    }

    #[test]
    fn p_laplacian_eigen_residual() {
        // -(|u'|^{p-2}u')' - λ|u|^{p-2}u with λ = π_p^p for u = sin_p(π_p x),
        // flux-form finite differences, scaled by λ, away from u' = 0 and
        // from the boundary where the right-hand side is not smooth for p < 2
        for p in [1.5, 3.0, 4.0] {
            let s = SinP::new(p).unwrap();
            let pp = s.pi_p();
            let lambda = pp.powf(p);
            let n = 2000;
            let h = 1.0 / n as f64;
            let u: Vec<f64> = (0..=n).map(|i| s.eval(pp * i as f64 * h)).collect();
            let flux = |a: f64, b: f64| {
                let d = (b - a) / h;
                d.abs().powf(p - 2.0) * d
            };
            for i in 1..n {
                let x = i as f64 * h;
                if (x - 0.5).abs() < 0.1 || !(0.05..=0.95).contains(&x) {
                    continue;
                }
                let r = -(flux(u[i], u[i + 1]) - flux(u[i - 1], u[i])) / h - lambda * u[i].abs().powf(p - 2.0) * u[i];
                assert!((r / lambda).abs() < 1e-5, "p={p} x={x}: {}", r / lambda);
            }
        }
    }
}
