//! The gorge as a zero-opening notch: plane-strain Williams field, the cusp
//! correction and the rounding cut-off.

use std::f64::consts::PI;

use crate::error::invalid;
use crate::fit::{fit_loglog, local_slopes, ScalingFit};
use crate::geometry::CuspShape;
use crate::tensor::Stress2;
use crate::Result;

/// Leading crack-tip field with intensity factors `K_I`, `K_II`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilliamsField {
    pub k1: f64,
    pub k2: f64,
    pub nu: f64,
    pub mu: f64,
}

impl WilliamsField {
    pub fn new(k1: f64, k2: f64, nu: f64, mu: f64) -> Result<Self> {
        if !(mu > 0.0) || !(nu > -1.0 && nu < 0.5) {
            return Err(invalid(format!(
                "need mu > 0 and -1 < nu < 1/2 (mu={mu}, nu={nu})"
            )));
        }
        Ok(WilliamsField { k1, k2, nu, mu })
    }

    pub fn kolosov(&self) -> f64 {
        3.0 - 4.0 * self.nu
    }

    /// `(K_I^2 + K_II^2)^(1/2)`.
    pub fn k_magnitude(&self) -> f64 {
        self.k1.hypot(self.k2)
    }
}

fn check_angle(theta: f64) -> Result<()> {
    if !(theta.abs() <= PI) {
        return Err(invalid(format!("angle must lie in [-pi, pi], got {theta}")));
    }
    Ok(())
}

/// Intensity-factor part of the displacement; rigid motions are excluded.
pub fn williams_displacement(f: &WilliamsField, r: f64, theta: f64) -> Result<[f64; 2]> {
    if !(r >= 0.0) {
        return Err(invalid("radius must be >= 0"));
    }
    check_angle(theta)?;
    let g = (r / (2.0 * PI)).sqrt() / (2.0 * f.mu);
    let k = f.kolosov();
    let (s, c) = half_angle(theta);
    let ux = f.k1 * c * (k - 1.0 + 2.0 * s * s) + f.k2 * s * (k + 1.0 + 2.0 * c * c);
    let uy = f.k1 * s * (k + 1.0 - 2.0 * c * c) - f.k2 * c * (k - 1.0 - 2.0 * s * s);
    Ok([g * ux, g * uy])
}

// Half-angle sine and cosine, with the cosine exactly zero on the crack faces.
fn half_angle(theta: f64) -> (f64, f64) {
    if theta.abs() == PI {
        (theta.signum(), 0.0)
    } else {
        (theta / 2.0).sin_cos()
    }
}

/// Mode-I angular stress shape (the stress at `K / sqrt(2 pi r) = 1`).
pub fn mode_one_shape(theta: f64) -> Stress2 {
    let (s, c) = half_angle(theta);
    let (s3, c3) = (1.5 * theta).sin_cos();
    Stress2::new(c * (1.0 - s * s3), c * (1.0 + s * s3), c * s * c3)
}

/// Mode-II angular stress shape.
pub fn mode_two_shape(theta: f64) -> Stress2 {
    let (s, c) = half_angle(theta);
    let (s3, c3) = (1.5 * theta).sin_cos();
    Stress2::new(-s * (2.0 + c * c3), s * c * c3, c * (1.0 - s * s3))
}

pub fn williams_stress(f: &WilliamsField, r: f64, theta: f64) -> Result<Stress2> {
    if !(r > 0.0) {
        return Err(invalid("stress is singular at r = 0"));
    }
    check_angle(theta)?;
    let a = 1.0 / (2.0 * PI * r).sqrt();
    Ok(mode_one_shape(theta)
        .scale(a * f.k1)
        .add(&mode_two_shape(theta).scale(a * f.k2)))
}

/// Plane-strain strain-energy density of a stress state.
pub fn energy_density(f: &WilliamsField, s: &Stress2) -> f64 {
    let tr = s.xx + s.yy;
    (s.xx * s.xx + s.yy * s.yy - f.nu * tr * tr) / (4.0 * f.mu) + s.xy * s.xy / (2.0 * f.mu)
}

/// Correction amplitude making the correction 10% of the leading term at `r = 0.1`.
pub fn default_correction_amplitude(f: &WilliamsField, shape: &CuspShape) -> f64 {
    let k = if f.k1 != 0.0 {
        f.k1.abs()
    } else {
        f.k_magnitude()
    };
    let r0: f64 = 0.1;
    0.1 * k / ((2.0 * PI).sqrt() * r0.powf(shape.m() - 1.0))
}

/// Williams stress plus the model cusp correction `C r^(m - 3/2)` with the
/// mode-I angular shape.
pub fn cusp_corrected_stress(
    f: &WilliamsField,
    shape: &CuspShape,
    r: f64,
    theta: f64,
    c_corr: f64,
) -> Result<Stress2> {
    let lead = williams_stress(f, r, theta)?;
    Ok(lead.add(&mode_one_shape(theta).scale(c_corr * r.powf(shape.m() - 1.5))))
}

/// `|sigma|` of the corrected model along the symmetry line `theta = 0`.
pub fn model_profile(
    f: &WilliamsField,
    shape: &CuspShape,
    c_corr: f64,
    radii: &[f64],
) -> Result<Vec<(f64, f64)>> {
    radii
        .iter()
        .map(|&r| Ok((r, cusp_corrected_stress(f, shape, r, 0.0, c_corr)?.norm())))
        .collect()
}

/// Local slopes of `log value` against `log r`, and a least-squares slope,
/// within an optional window.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSlope {
    pub slopes: Vec<(f64, f64)>,
    pub fit: ScalingFit,
}

impl LocalSlope {
    /// Local slope at the smallest sampled radius.
    pub fn at_smallest(&self) -> f64 {
        self.slopes[0].1
    }
}

pub fn local_slope(samples: &[(f64, f64)], window: Option<(f64, f64)>) -> Result<LocalSlope> {
    let mut used: Vec<(f64, f64)> = samples
        .iter()
        .copied()
        .filter(|(x, _)| window.is_none_or(|(lo, hi)| *x >= lo && *x <= hi))
        .collect();
    used.sort_by(|a, b| a.0.total_cmp(&b.0));
    let fit = fit_loglog(&used, None)?;
    Ok(LocalSlope {
        slopes: local_slopes(&used)?,
        fit,
    })
}

/// Rounded-bottom stress level `|K| / sqrt(rho_delta)`.
pub fn rounding_cutoff(f: &WilliamsField, shape: &CuspShape, delta: f64) -> Result<f64> {
    let rho = shape.tip_radius(delta)?;
    Ok(f.k_magnitude() / rho.sqrt())
}
