//! First-curve eigenfunction profiles on the unit interval.

use crate::exec::{map_indexed, Execution};

use super::trig::SinP;
use super::OneDimError;

fn check_ell(ell: f64) -> Result<(), OneDimError> {
    if ell > 0.0 && ell < 1.0 {
        Ok(())
    } else {
        Err(OneDimError::Invalid(format!("nodal point ell must lie in (0, 1), got {ell}")))
    }
}

fn check_x(x: f64) -> Result<(), OneDimError> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(OneDimError::Invalid(format!("x must lie in [0, 1], got {x}")))
    }
}

/// Piecewise-linear limit profile with a positive bump on `(0, ℓ)` and a
/// negative one on `(ℓ, 1)`; solves the limit equation with `(2/ℓ, 2/(1-ℓ))`.
pub fn eigenfunction_infinity(ell: f64, x: f64) -> Result<f64, OneDimError> {
    check_ell(ell)?;
    check_x(x)?;
    Ok(if x <= 0.5 * ell {
        x
    } else if x <= 0.5 * (ell + 1.0) {
        ell - x
    } else {
        x - 1.0
    })
}

/// The Fučík pair `(2/ℓ, 2/(1-ℓ))` of [`eigenfunction_infinity`].
pub fn pair_infinity(ell: f64) -> Result<super::FucikPair, OneDimError> {
    check_ell(ell)?;
    super::FucikPair::new(2.0 / ell, 2.0 / (1.0 - ell))
}

/// Two half-waves of `sin_p` glued at `ℓ`, each of unit amplitude.
#[derive(Debug, Clone, Copy)]
pub struct ProfileP {
    ell: f64,
    sin: SinP,
    matched: bool,
}

impl ProfileP {
    /// Unit-amplitude bumps: `sin_p(π_p x/ℓ)` and `-sin_p(π_p (x-ℓ)/(1-ℓ))`.
    pub fn new(ell: f64, p: f64) -> Result<Self, OneDimError> {
        check_ell(ell)?;
        Ok(Self { ell, sin: SinP::new(p)?, matched: false })
    }

    /// Bumps scaled by `ℓ/π_p` and `(1-ℓ)/π_p`, so the one-sided slopes at
    /// `ℓ` agree and the profile tends to [`eigenfunction_infinity`].
    pub fn matched(ell: f64, p: f64) -> Result<Self, OneDimError> {
        Ok(Self { matched: true, ..Self::new(ell, p)? })
    }

    pub fn eval(&self, x: f64) -> Result<f64, OneDimError> {
        check_x(x)?;
        let pp = self.sin.pi_p();
        let (ell, rest) = (self.ell, 1.0 - self.ell);
        Ok(if x <= ell {
            let amp = if self.matched { ell / pp } else { 1.0 };
            amp * self.sin.eval(pp * x / ell)
        } else {
            let amp = if self.matched { rest / pp } else { 1.0 };
            -amp * self.sin.eval(pp * (x - ell) / rest)
        })
    }
}

/// `eigenfunction_p` with unit-amplitude bumps.
pub fn eigenfunction_p(ell: f64, p: f64, x: f64) -> Result<f64, OneDimError> {
    ProfileP::new(ell, p)?.eval(x)
}

/// Samples `f` at `x_i = i/n`, `i = 0..=n`.
pub fn sample<F>(n: usize, mode: Execution, f: F) -> Result<Vec<f64>, OneDimError>
where
    F: Fn(f64) -> Result<f64, OneDimError> + Sync + Send,
{
    if n == 0 {
        return Err(OneDimError::Invalid("grid size must be positive".into()));
    }
    map_indexed(n + 1, mode, |i| f(i as f64 / n as f64)).into_iter().collect()
}

/// Rescales to `max |u| = 1`; the zero vector is left unchanged.
pub fn normalize_sup(values: &mut [f64]) {
    let m = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if m > 0.0 {
        values.iter_mut().for_each(|v| *v /= m);
    }
}

/// `max_i |û_p(x_i) - û_∞(x_i)|` for the sup-normalized matched profile and limit.
pub fn profile_distance(ell: f64, p: f64, n: usize, mode: Execution) -> Result<f64, OneDimError> {
    let prof = ProfileP::matched(ell, p)?;
    let mut up = sample(n, mode, |x| prof.eval(x))?;
    let mut ui = sample(n, mode, |x| eigenfunction_infinity(ell, x))?;
    normalize_sup(&mut up);
    normalize_sup(&mut ui);
    Ok(up.iter().zip(&ui).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn limit_profile_branches() {
        assert_eq!(eigenfunction_infinity(0.5, 0.25).unwrap(), 0.25);
        let ell = 0.3;
        let x = 0.5 * (ell + 1.0);
        assert!((eigenfunction_infinity(ell, x).unwrap() - 0.5 * (ell - 1.0)).abs() < 1e-15);
        assert!((eigenfunction_infinity(ell, x + 1e-12).unwrap() - 0.5 * (ell - 1.0)).abs() < 1e-11);
        assert_eq!(eigenfunction_infinity(ell, ell).unwrap(), 0.0);
        assert_eq!(eigenfunction_infinity(ell, 1.0).unwrap(), 0.0);
        assert!(eigenfunction_infinity(1.0, 0.5).is_err());
        assert!(eigenfunction_infinity(0.5, 1.5).is_err());
        let pair = pair_infinity(0.4).unwrap();
        assert!((pair.alpha - 5.0).abs() < 1e-15 && (pair.beta - 10.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn unit_amplitude_profile() {
        for p in [1.5, 2.0, 7.0] {
            let u = ProfileP::new(0.3, p).unwrap();
            assert!((u.eval(0.15).unwrap() - 1.0).abs() < 1e-12);
            assert!((u.eval(0.65).unwrap() + 1.0).abs() < 1e-12);
            assert!(u.eval(0.3).unwrap().abs() < 1e-12);
            assert!(u.eval(1.0).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn p_two_half_split_is_a_sine() {
        for i in 0..=40 {
            let x = i as f64 / 40.0;
            let got = eigenfunction_p(0.5, 2.0, x).unwrap();
            assert!((got - (2.0 * PI * x).sin()).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn matched_profile_slopes_agree_at_the_node() {
        let u = ProfileP::matched(0.3, 4.0).unwrap();
        let h = 1e-6;
        let left = (u.eval(0.3).unwrap() - u.eval(0.3 - h).unwrap()) / h;
        let right = (u.eval(0.3 + h).unwrap() - u.eval(0.3).unwrap()) / h;
        assert!((left - right).abs() < 1e-4, "{left} {right}");
    }

    #[test]
    fn normalized_profiles_converge_uniformly() {
        let d: Vec<f64> = [2.0, 4.0, 8.0, 16.0, 32.0, 64.0]
            .iter()
            .map(|&p| profile_distance(0.3, p, 400, Execution::default()).unwrap())
            .collect();
        assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
        assert!(d[5] < 0.1, "{d:?}");
    }

    #[test]
    fn normalize_handles_zero() {
        let mut z = vec![0.0; 4];
        normalize_sup(&mut z);
        assert_eq!(z, vec![0.0; 4]);
        let mut v = vec![0.0, -2.0, 1.0];
        normalize_sup(&mut v);
        assert_eq!(v, vec![0.0, -1.0, 0.5]);
    }
}
