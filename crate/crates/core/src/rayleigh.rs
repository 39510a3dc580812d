//! The flat half-space Rayleigh eigenmode and its phasor.

use crate::error::invalid;
use crate::material::{decay_rates, wave_speeds, ElasticModuli, WaveSpeeds};
use crate::numerics::{ExpPoly, ExpPoly2};
use crate::{Result, C64};

/// Right-going Rayleigh mode `W0 = e^{iqs} Phi(n)` on the half-space `n > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RayleighMode {
    pub moduli: ElasticModuli,
    pub speeds: WaveSpeeds,
    pub q: f64,
    pub p: f64,
    pub beta: f64,
    pub amplitude: C64,
}

impl RayleighMode {
    /// Unit-amplitude mode at wavenumber `q`.
    pub fn new(moduli: ElasticModuli, q: f64) -> Result<Self> {
        if !(q > 0.0) || !q.is_finite() {
            return Err(invalid(format!("wavenumber must be positive, got {q}")));
        }
        let speeds = wave_speeds(&moduli)?;
        let d = decay_rates(&speeds);
        Ok(RayleighMode {
            moduli,
            speeds,
            q,
            p: d.p,
            beta: d.beta,
            amplitude: C64::new(1.0, 0.0),
        })
    }

    /// Mode at `q = 2 pi`, the unit-wavelength normalization.
    pub fn unit_wavelength(moduli: ElasticModuli) -> Result<Self> {
        RayleighMode::new(moduli, 2.0 * std::f64::consts::PI)
    }

    pub fn with_amplitude(mut self, amplitude: C64) -> Self {
        self.amplitude = amplitude;
        self
    }

    /// Inertial coefficient `rho cR^2 q^2`, so that `L0 W0 = 0` at any `q`.
    pub fn omega_r(&self) -> f64 {
        self.moduli.rho * self.speeds.c_r.powi(2) * self.q * self.q
    }

    /// Depth profile as exponential polynomials (unit phasor).
    pub fn profile_expoly(&self) -> ExpPoly2 {
        let (p, b, q) = (self.p, self.beta, self.q);
        let c = 1.0 + b * b;
        let i = C64::new(0.0, 1.0);
        [
            ExpPoly::term(i, 0, p * q) + ExpPoly::term(-i * (2.0 * p * b / c), 0, b * q),
            ExpPoly::term(C64::new(-p, 0.0), 0, p * q)
                + ExpPoly::term(C64::new(2.0 * p / c, 0.0), 0, b * q),
        ]
    }

    /// `Phi(n)`.
    pub fn profile(&self, n: f64) -> [C64; 2] {
        let (p, b, q) = (self.p, self.beta, self.q);
        let c = 1.0 + b * b;
        let ep = (-p * q * n).exp();
        let eb = (-b * q * n).exp();
        [
            C64::new(0.0, ep - 2.0 * p * b / c * eb),
            C64::new(-p * ep + 2.0 * p / c * eb, 0.0),
        ]
    }

    /// `e^{iqs} Phi(n)`, for the unit phasor.
    pub fn phasor_field(&self, s: f64, n: f64) -> [C64; 2] {
        let e = C64::from_polar(1.0, self.q * s);
        let f = self.profile(n);
        [e * f[0], e * f[1]]
    }

    fn physical_sum(&self, s: f64, n: f64, t: f64, omega: f64) -> [C64; 2] {
        let e = self.amplitude * C64::from_polar(1.0, self.q * s - omega * t);
        let f = self.profile(n);
        [
            0.5 * (e * f[0] + (e * f[0]).conj()),
            0.5 * (e * f[1] + (e * f[1]).conj()),
        ]
    }

    /// Real displacement components `(1/2)(A e^{i(qs - wt)} Phi + c.c.)`.
    pub fn physical_field(&self, s: f64, n: f64, t: f64, omega: f64) -> [f64; 2] {
        let w = self.physical_sum(s, n, t, omega);
        [w[0].re, w[1].re]
    }

    /// `L0 W0 / e^{iqs}` as a function of depth, from the exact profile.
    pub fn interior_residual(&self) -> ExpPoly2 {
        let [u, v] = self.profile_expoly();
        let (l, m) = (self.moduli.lambda, self.moduli.mu);
        let q = self.q;
        let iq = C64::new(0.0, q);
        let om = self.omega_r();
        let r1 = u.clone() * (-(l + 2.0 * m) * q * q + om)
            + u.deriv().deriv() * m
            + v.deriv().scale(iq * (l + m));
        let r2 = v.clone() * (-m * q * q + om)
            + v.deriv().deriv() * (l + 2.0 * m)
            + u.deriv().scale(iq * (l + m));
        [r1, r2]
    }

    /// `B0 W0 / e^{iqs}` at the free surface.
    pub fn boundary_residual(&self) -> [C64; 2] {
        let [u, v] = self.profile_expoly();
        let (l, m) = (self.moduli.lambda, self.moduli.mu);
        let iq = C64::new(0.0, self.q);
        [
            (u.deriv().eval(0.0) + iq * v.eval(0.0)) * m,
            iq * u.eval(0.0) * l + v.deriv().eval(0.0) * (l + 2.0 * m),
        ]
    }
}
