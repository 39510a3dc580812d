//! Reduced-model checks: the horn small-parameter study, the corrected
//! crack-tip profile and the overlap mismatch.

use cusp_core::fit::logspace;
use cusp_core::gorge::{default_correction_amplitude, local_slope, model_profile, WilliamsField};
use cusp_core::horn::{eps_expansion_error, EpsExpansionResult, EpsStudy, HornProblem};
use cusp_core::CuspShape;

use crate::config::{GorgeModelConfig, HornConfig, OverlapConfig};
use crate::error::{Error, Result};

/// Maximum error of the first correction of the regular horn branch per
/// `eps`, with the fitted exponent.
pub fn run_horn_study(cfg: &HornConfig) -> Result<EpsExpansionResult> {
    cfg.validate()?;
    let problem = HornProblem::new(cfg.b, cfg.m, cfg.k, cfg.ell)?;
    Ok(eps_expansion_error(
        &problem,
        &cfg.eps,
        &EpsStudy::default(),
    )?)
}

/// One point of the corrected crack-tip profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub r: f64,
    pub stress: f64,
    pub local_slope: f64,
}

/// `|sigma|` of the Williams field plus cusp correction on the symmetry line,
/// with local log-log slopes.
pub fn run_gorge_model(cfg: &GorgeModelConfig) -> Result<Vec<ProfilePoint>> {
    cfg.validate()?;
    let field = WilliamsField::new(cfg.k1, cfg.k2, cfg.nu, 1.0)?;
    let shape = CuspShape::from_horn(1.0, cfg.m)?;
    let c = cfg
        .c_corr
        .unwrap_or_else(|| default_correction_amplitude(&field, &shape));
    let prof = model_profile(
        &field,
        &shape,
        c,
        &logspace(cfg.r_min, cfg.r_max, cfg.samples),
    )?;
    let slopes = local_slope(&prof, None)?.slopes;
    Ok(prof
        .iter()
        .zip(slopes)
        .map(|(&(r, stress), (_, local_slope))| ProfilePoint {
            r,
            stress,
            local_slope,
        })
        .collect())
}

/// Relative mismatch `|f_in - tail| / tail` between the bounded inner model
/// `(r + c)^(alpha - 2)` and the common tail `r^(alpha - 2)`.
pub fn overlap_mismatch(alpha: f64, offset: f64, r: f64) -> f64 {
    // 1 - (1 + c/r)^(alpha - 2) without cancellation at large r
    -((alpha - 2.0) * (offset / r).ln_1p()).exp_m1()
}

/// Mismatch table over the configured radii; it must decrease strictly.
pub fn run_overlap_demo(cfg: &OverlapConfig) -> Result<Vec<(f64, f64)>> {
    cfg.validate()?;
    let mut radii = cfg.radii.clone();
    radii.sort_by(f64::total_cmp);
    let table: Vec<(f64, f64)> = radii
        .iter()
        .map(|&r| (r, overlap_mismatch(1.0 / cfg.m, cfg.offset, r)))
        .collect();
    if table.windows(2).any(|w| !(w[1].1 < w[0].1)) {
        return Err(Error::Table(
            "overlap mismatch is not strictly decreasing".into(),
        ));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mismatch_decays_like_inverse_r() {
        // leading term (2 - alpha) c / r
        let alpha = 1.0 / 2.4;
        for r in [1e3, 1e4, 1e5] {
            let lead = (2.0 - alpha) / r;
            assert!((overlap_mismatch(alpha, 1.0, r) / lead - 1.0).abs() < 2.0 / r);
        }
        assert!(overlap_mismatch(alpha, 1.0, 1e300) < 1e-299);
    }

    #[test]
    fn model_profile_tends_to_half() {
        let p = run_gorge_model(&GorgeModelConfig::default()).unwrap();
        assert_eq!(p.len(), 41);
        assert!((p[0].local_slope + 0.4993).abs() < 0.002);
    }

    proptest! {
        #[test]
        fn mismatch_monotone(alpha in 0.05f64..0.95, c in 0.1f64..5.0, r in 0.5f64..1e4) {
            let a = overlap_mismatch(alpha, c, r);
            let b = overlap_mismatch(alpha, c, 1.1 * r);
            prop_assert!(a > b && b > 0.0 && a < 1.0);
        }
    }
}
