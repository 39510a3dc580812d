//! Isotropic moduli, body-wave speeds and the flat Rayleigh root.

use crate::error::invalid;
use crate::numerics::bisect_newton;
use crate::{Error, Result};

/// Lame constants and density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticModuli {
    pub lambda: f64,
    pub mu: f64,
    pub rho: f64,
}

impl ElasticModuli {
    /// Validates `mu > 0`, `rho > 0` and plane-strain ellipticity
    /// `lambda + 2 mu > 0` together with `-1 < nu < 1/2`.
    pub fn new(lambda: f64, mu: f64, rho: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(invalid(format!("mu must be positive, got {mu}")));
        }
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(invalid(format!("rho must be positive, got {rho}")));
        }
        if !(lambda + 2.0 * mu > 0.0) || !lambda.is_finite() {
            return Err(invalid("lambda + 2 mu must be positive"));
        }
        let m = ElasticModuli { lambda, mu, rho };
        let nu = m.poisson();
        if !(nu > -1.0 && nu < 0.5) {
            return Err(invalid(format!("Poisson ratio {nu} outside (-1, 1/2)")));
        }
        Ok(m)
    }

    /// Moduli with a given shear modulus and Poisson ratio, unit density.
    pub fn from_poisson(mu: f64, nu: f64) -> Result<Self> {
        if !(nu > -1.0 && nu < 0.5) {
            return Err(invalid(format!("Poisson ratio {nu} outside (-1, 1/2)")));
        }
        ElasticModuli::new(2.0 * mu * nu / (1.0 - 2.0 * nu), mu, 1.0)
    }

    pub fn poisson(&self) -> f64 {
        self.lambda / (2.0 * (self.lambda + self.mu))
    }

    /// Plane-strain Kolosov constant `3 - 4 nu`.
    pub fn kolosov(&self) -> f64 {
        3.0 - 4.0 * self.poisson()
    }

    /// P-wave modulus `lambda + 2 mu`.
    pub fn p_modulus(&self) -> f64 {
        self.lambda + 2.0 * self.mu
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeeds {
    pub c_p: f64,
    pub c_s: f64,
    pub c_r: f64,
}

/// Depth decay rates of the Rayleigh mode, relative to the wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRates {
    pub p: f64,
    pub beta: f64,
}

/// Radical-free Rayleigh polynomial in `x = c^2 / cS^2`, with `g = cS^2 / cP^2`,
/// after removing the trivial root `x = 0`:
/// `x^3 - 8 x^2 + (24 - 16 g) x - 16 (1 - g)`.
pub fn rayleigh_polynomial(x: f64, g: f64) -> (f64, f64) {
    let f = ((x - 8.0) * x + (24.0 - 16.0 * g)) * x - 16.0 * (1.0 - g);
    let df = (3.0 * x - 16.0) * x + (24.0 - 16.0 * g);
    (f, df)
}

/// Left side minus right side of the Rayleigh equation with radicals.
pub fn rayleigh_residual(w: &WaveSpeeds) -> f64 {
    let x = (w.c_r / w.c_s).powi(2);
    let y = (w.c_r / w.c_p).powi(2);
    (2.0 - x).powi(2) - 4.0 * (1.0 - y).sqrt() * (1.0 - x).sqrt()
}

/// Body-wave speeds and the Rayleigh speed `0 < cR < cS`.
pub fn wave_speeds(m: &ElasticModuli) -> Result<WaveSpeeds> {
    let c_p = (m.p_modulus() / m.rho).sqrt();
    let c_s = (m.mu / m.rho).sqrt();
    let g = (c_s / c_p).powi(2);
    let x = bisect_newton(|x| rayleigh_polynomial(x, g), 0.0, 1.0, 1e-16)
        .map_err(|_| Error::NoRoot { lo: 0.0, hi: c_s })?;
    // 2 - x > 0 on (0, 1), so the squared form introduced no spurious root here.
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::NoRoot { lo: 0.0, hi: c_s });
    }
    Ok(WaveSpeeds {
        c_p,
        c_s,
        c_r: c_s * x.sqrt(),
    })
}

pub fn decay_rates(w: &WaveSpeeds) -> DecayRates {
    DecayRates {
        p: (1.0 - (w.c_r / w.c_p).powi(2)).sqrt(),
        beta: (1.0 - (w.c_r / w.c_s).powi(2)).sqrt(),
    }
}

pub fn kolosov(m: &ElasticModuli) -> f64 {
    m.kolosov()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: plain bisection on the equation with radicals.
    fn bisect_radical(c_s: f64, c_p: f64) -> f64 {
        let f = |c: f64| {
            (2.0 - (c / c_s).powi(2)).powi(2)
                - 4.0 * (1.0 - (c / c_p).powi(2)).sqrt() * (1.0 - (c / c_s).powi(2)).sqrt()
        };
        let (mut a, mut b) = (1e-3 * c_s, c_s);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if f(a).signum() == f(m).signum() {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn poisson_quarter_ratio() {
        let m = ElasticModuli::new(1.0, 1.0, 1.0).unwrap();
        let w = wave_speeds(&m).unwrap();
        let oracle = bisect_radical(w.c_s, w.c_p);
        assert!((w.c_r - oracle).abs() < 1e-13);
        assert!((w.c_r / w.c_s - 0.919402).abs() < 1e-6);
        // sign change on a dense grid happens once, at the root
        let n = 1_000_000;
        let mut changes = 0;
        let mut prev = rayleigh_residual(&WaveSpeeds { c_r: 1e-6, ..w });
        for i in 1..n {
            let c = w.c_s * i as f64 / n as f64;
            let r = rayleigh_residual(&WaveSpeeds { c_r: c, ..w });
            if r.signum() != prev.signum() {
                changes += 1;
                assert!((c - w.c_r).abs() <= 2.0 * w.c_s / n as f64);
            }
            prev = r;
        }
        assert_eq!(changes, 1);
    }

    #[test]
    fn lambda_two_normalization() {
        let m = ElasticModuli::new(2.0, 1.0, 1.0).unwrap();
        let w = wave_speeds(&m).unwrap();
        assert_eq!(w.c_s, 1.0);
        assert_eq!(w.c_p, 2.0);
        assert!((w.c_r - bisect_radical(1.0, 2.0)).abs() < 1e-13);
        let x = w.c_r * w.c_r;
        assert!(rayleigh_polynomial(x, 0.25).0.abs() < 1e-12);
        let d = decay_rates(&w);
        assert!(((1.0 + d.beta * d.beta).powi(2) - 4.0 * d.p * d.beta).abs() < 1e-10);
        assert!(d.beta <= d.p && d.p < 1.0 && d.beta > 0.0);
    }

    #[test]
    fn density_scaling_halves_speeds() {
        let a = wave_speeds(&ElasticModuli::new(2.0, 1.0, 1.0).unwrap()).unwrap();
        let b = wave_speeds(&ElasticModuli::new(2.0, 1.0, 4.0).unwrap()).unwrap();
        assert!((b.c_p - 0.5 * a.c_p).abs() < 1e-15);
        assert!((b.c_s - 0.5 * a.c_s).abs() < 1e-15);
        assert!((b.c_r - 0.5 * a.c_r).abs() < 1e-14);
    }

    #[test]
    fn slow_limit_of_decay_rates() {
        let w = WaveSpeeds {
            c_p: 2.0,
            c_s: 1.0,
            c_r: 1e-9,
        };
        let d = decay_rates(&w);
        assert!((d.p - 1.0).abs() < 1e-15 && (d.beta - 1.0).abs() < 1e-15);
    }

    #[test]
    fn kolosov_values() {
        assert!((ElasticModuli::from_poisson(1.0, 0.0).unwrap().kolosov() - 3.0).abs() < 1e-15);
        assert!((ElasticModuli::from_poisson(1.0, 0.25).unwrap().kolosov() - 2.0).abs() < 1e-14);
        assert!((ElasticModuli::from_poisson(1.0, 0.3).unwrap().kolosov() - 1.8).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(ElasticModuli::new(1.0, 0.0, 1.0).is_err());
        assert!(ElasticModuli::new(1.0, 1.0, -1.0).is_err());
        assert!(ElasticModuli::new(-3.0, 1.0, 1.0).is_err());
    }

    proptest::proptest! {
        #[test]
        fn ordering_and_residuals(nu in -0.9f64..0.49, mu in 0.1f64..10.0, rho in 0.1f64..10.0) {
            let mut m = ElasticModuli::from_poisson(mu, nu).unwrap();
            m.rho = rho;
            let w = wave_speeds(&m).unwrap();
            proptest::prop_assert!(0.0 < w.c_r && w.c_r < w.c_s && w.c_s < w.c_p);
            let g = (w.c_s / w.c_p).powi(2);
            proptest::prop_assert!(rayleigh_polynomial((w.c_r / w.c_s).powi(2), g).0.abs() < 1e-12);
            let d = decay_rates(&w);
            proptest::prop_assert!(((1.0 + d.beta * d.beta).powi(2) - 4.0 * d.p * d.beta).abs() < 1e-10);
            // residual with radicals changes sign across the root
            let lo = rayleigh_residual(&WaveSpeeds { c_r: w.c_r * (1.0 - 1e-6), ..w });
            let hi = rayleigh_residual(&WaveSpeeds { c_r: w.c_r * (1.0 + 1e-6), ..w });
            proptest::prop_assert!(lo * hi < 0.0);
        }
    }
}
