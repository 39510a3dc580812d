//! Experiment settings with their defaults and validation.

use cusp_fem::GorgeResolution;

use crate::error::{config, Result};

/// Smallest sweep length accepted for a scaling fit.
pub const MIN_SWEEP: usize = 5;

/// Sweeps must be strictly monotone, positive, and close to geometric: every
/// log-step within 25% of the mean log-step.
pub fn check_sweep(name: &str, values: &[f64]) -> Result<()> {
    if values.len() < MIN_SWEEP {
        return Err(config(format!(
            "{name}: {} values, need at least {MIN_SWEEP}",
            values.len()
        )));
    }
    if values.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(config(format!(
            "{name}: values must be positive and finite"
        )));
    }
    let steps: Vec<f64> = values.windows(2).map(|w| (w[1] / w[0]).ln()).collect();
    let mean = steps.iter().sum::<f64>() / steps.len() as f64;
    if mean == 0.0
        || steps
            .iter()
            .any(|s| s * mean <= 0.0 || ((s - mean) / mean).abs() > 0.25)
    {
        return Err(config(format!(
            "{name}: values are not geometrically spaced"
        )));
    }
    Ok(())
}

fn check_m(m: f64) -> Result<()> {
    if !(m > 1.0 && m.is_finite()) {
        return Err(config(format!("horn exponent must exceed 1, got {m}")));
    }
    Ok(())
}

/// Truncated-horn studies: the free tip and the forced terminal section.
#[derive(Debug, Clone, PartialEq)]
pub struct RidgeConfig {
    pub m: f64,
    pub b: f64,
    pub ell: f64,
    /// Truncation lengths.
    pub rhos: Vec<f64>,
    /// Axial cells per doubling of `s`.
    pub per_octave: usize,
    /// Cells across the section.
    pub n_eta: usize,
    /// Measurement zone `(lo, hi) * rho`.
    pub zone: (f64, f64),
    pub percentile: f64,
    /// Axial body force for the free-tip study.
    pub body_force: f64,
    /// Terminal resultant for the forced study.
    pub tip_force: f64,
    /// Refine once and require the zone stress to move by less than this.
    pub refinement_tolerance: Option<f64>,
}

impl RidgeConfig {
    pub fn free_tip() -> Self {
        RidgeConfig {
            m: 2.4,
            b: 1.0,
            ell: 1.0,
            rhos: vec![0.02, 0.014, 0.01, 0.007, 0.005],
            per_octave: 4,
            n_eta: 8,
            zone: (2.0, 4.0),
            percentile: 95.0,
            body_force: 1.0,
            tip_force: 0.0,
            refinement_tolerance: Some(0.05),
        }
    }

    pub fn forced() -> Self {
        RidgeConfig {
            zone: (1.0, 2.0),
            body_force: 0.0,
            tip_force: 1.0,
            refinement_tolerance: None,
            ..Self::free_tip()
        }
    }

    pub fn with_m(mut self, m: f64) -> Self {
        self.m = m;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_m(self.m)?;
        check_sweep("rho", &self.rhos)?;
        if !(self.b > 0.0 && self.ell > 0.0) {
            return Err(config("need B > 0 and ell > 0"));
        }
        let top = self.rhos.iter().fold(0.0f64, |a, &b| a.max(b));
        if !(self.zone.0 >= 1.0 && self.zone.1 > self.zone.0 && self.zone.1 * top < self.ell) {
            return Err(config("measurement zone must lie inside [rho, ell)"));
        }
        if self.per_octave < 1 || self.n_eta < 1 {
            return Err(config("need per_octave >= 1 and n_eta >= 1"));
        }
        if !(0.0..=100.0).contains(&self.percentile) {
            return Err(config("percentile must lie in [0, 100]"));
        }
        if let Some(t) = self.refinement_tolerance {
            if !(t > 0.0) {
                return Err(config("refinement tolerance must be positive"));
            }
        }
        Ok(())
    }
}

/// Notch under remote strain.
#[derive(Debug, Clone, PartialEq)]
pub struct GorgeConfig {
    pub m: f64,
    /// Graph coefficient `A` of `z = A |x|^alpha`.
    pub a_coef: f64,
    pub r_out: f64,
    pub depth: f64,
    pub resolution: GorgeResolution,
    pub rings: usize,
    /// Innermost ring radius in element layers above the innermost mesh ring.
    pub inner_layers: u32,
    /// Outermost ring radius relative to `r_out`.
    pub outer_fraction: f64,
    pub percentile: f64,
    pub strain: f64,
}

impl Default for GorgeConfig {
    fn default() -> Self {
        GorgeConfig {
            m: 2.4,
            a_coef: 1.0,
            r_out: 0.5,
            depth: 0.5,
            resolution: GorgeResolution::default(),
            rings: 8,
            inner_layers: 3,
            outer_fraction: 0.25,
            percentile: 95.0,
            strain: 1e-3,
        }
    }
}

impl GorgeConfig {
    pub fn with_m(mut self, m: f64) -> Self {
        self.m = m;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_m(self.m)?;
        if self.rings < MIN_SWEEP {
            return Err(config(format!("need at least {MIN_SWEEP} rings")));
        }
        if !(self.a_coef > 0.0 && self.r_out > 0.0 && self.depth > 0.0) {
            return Err(config("need A, r_out, depth > 0"));
        }
        if !(self.outer_fraction > 0.0 && self.outer_fraction < 1.0) {
            return Err(config("outer ring fraction must lie in (0, 1)"));
        }
        if !(0.0..=100.0).contains(&self.percentile)
            || !(self.strain != 0.0 && self.strain.is_finite())
        {
            return Err(config(
                "need a percentile in [0, 100] and a finite nonzero strain",
            ));
        }
        Ok(())
    }
}

/// Small-parameter study of the scalar horn equation.
#[derive(Debug, Clone, PartialEq)]
pub struct HornConfig {
    pub m: f64,
    pub b: f64,
    pub k: f64,
    pub ell: f64,
    pub eps: Vec<f64>,
}

impl Default for HornConfig {
    fn default() -> Self {
        HornConfig {
            m: 2.4,
            b: 1.0,
            k: 1.0,
            ell: 1.0,
            eps: vec![0.4, 0.2, 0.1, 0.05, 0.025],
        }
    }
}

impl HornConfig {
    pub fn validate(&self) -> Result<()> {
        check_m(self.m)?;
        check_sweep("eps", &self.eps)
    }
}

/// Williams field with the cusp correction along the symmetry line.
#[derive(Debug, Clone, PartialEq)]
pub struct GorgeModelConfig {
    pub k1: f64,
    pub k2: f64,
    pub nu: f64,
    pub m: f64,
    /// Correction amplitude; the library default when `None`.
    pub c_corr: Option<f64>,
    pub r_min: f64,
    pub r_max: f64,
    pub samples: usize,
}

impl Default for GorgeModelConfig {
    fn default() -> Self {
        GorgeModelConfig {
            k1: 1.0,
            k2: 0.0,
            nu: 0.25,
            m: 2.4,
            c_corr: None,
            r_min: 1e-3,
            r_max: 1e-1,
            samples: 41,
        }
    }
}

impl GorgeModelConfig {
    pub fn validate(&self) -> Result<()> {
        check_m(self.m)?;
        if !(self.r_min > 0.0 && self.r_max > self.r_min) || self.samples < MIN_SWEEP {
            return Err(config("need 0 < r_min < r_max and enough samples"));
        }
        Ok(())
    }
}

/// Bounded inner correction against its common tail.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapConfig {
    pub m: f64,
    /// Offset `c` in the inner model `(r + c)^(alpha - 2)`.
    pub offset: f64,
    pub radii: Vec<f64>,
}

impl Default for OverlapConfig {
    fn default() -> Self {
        OverlapConfig {
            m: 2.4,
            offset: 1.0,
            radii: vec![1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0],
        }
    }
}

impl OverlapConfig {
    pub fn validate(&self) -> Result<()> {
        check_m(self.m)?;
        if !(self.offset > 0.0) {
            return Err(config("inner model offset must be positive"));
        }
        check_sweep("r", &self.radii)
    }
}
