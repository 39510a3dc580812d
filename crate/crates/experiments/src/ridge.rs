//! Truncated-horn FEM studies: free tip under a body load and a fixed
//! resultant on the terminal section.

use rayon::prelude::*;

use cusp_core::fit::{fit_loglog, MIN_R_SQUARED};
use cusp_core::{CuspShape, ElasticModuli, ScalingFit};
use cusp_fem::generate::{generate_ridge_mesh_on, octave_points};
use cusp_fem::post::region_energy;
use cusp_fem::{solve_static, stress_percentile, BoundaryTag, Dirichlet, Loads, Mesh};

use crate::config::{RidgeConfig, MIN_SWEEP};
use crate::error::{Error, Result};

/// One member of a truncation sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RidgeSample {
    pub rho: f64,
    pub percentile_stress: f64,
    /// Total elastic energy of the truncated horn.
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreeTipResult {
    pub samples: Vec<RidgeSample>,
    pub fit: ScalingFit,
    /// Relative zone-stress change under one refinement, per sample.
    pub refinement_change: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForcedResult {
    pub m: f64,
    pub samples: Vec<RidgeSample>,
    pub stress_fit: ScalingFit,
    pub energy_fit: ScalingFit,
}

/// Unit Lame constants used by every FEM study.
pub fn unit_moduli() -> ElasticModuli {
    ElasticModuli::new(1.0, 1.0, 1.0).expect("unit moduli are valid")
}

/// Horn `|n| < B s^m` on `[rho, ell]` with axial nodes at `rho 2^(i/k)`, so
/// zone edges at `2 rho` and `4 rho` are always nodes.
pub fn ridge_mesh(cfg: &RidgeConfig, rho: f64, per_octave: usize, n_eta: usize) -> Result<Mesh> {
    let shape = CuspShape::from_horn(cfg.b, cfg.m)?;
    let s = octave_points(rho, cfg.ell, per_octave);
    Ok(generate_ridge_mesh_on(&shape, &s, n_eta)?)
}

fn ridge_loads(cfg: &RidgeConfig, rho: f64) -> Loads {
    let mut loads = Loads {
        body_force: [cfg.body_force, 0.0],
        ..Loads::default()
    };
    if cfg.tip_force != 0.0 {
        // uniform axial traction carrying the resultant through the terminal section
        let t = cfg.tip_force / (2.0 * cfg.b * rho.powf(cfg.m));
        loads.tractions.push((BoundaryTag::Terminal, [-t, 0.0]));
    }
    loads
}

fn sample(cfg: &RidgeConfig, rho: f64, per_octave: usize, n_eta: usize) -> Result<RidgeSample> {
    let mesh = ridge_mesh(cfg, rho, per_octave, n_eta)?;
    let sol = solve_static(
        &mesh,
        &unit_moduli(),
        &[Dirichlet::fixed(BoundaryTag::Remote)],
        &ridge_loads(cfg, rho),
    )?;
    let (lo, hi) = (cfg.zone.0 * rho, cfg.zone.1 * rho);
    let percentile_stress =
        stress_percentile(&sol, &mesh, |c| c[0] > lo && c[0] < hi, cfg.percentile)?;
    let energy = region_energy(&sol, &mesh, |_| true);
    Ok(RidgeSample {
        rho,
        percentile_stress,
        energy,
    })
}

/// Zone percentile stress at the configured resolution and relative change
/// after doubling both mesh densities.
pub fn refinement_check(cfg: &RidgeConfig, rho: f64) -> Result<(RidgeSample, f64)> {
    let coarse = sample(cfg, rho, cfg.per_octave, cfg.n_eta)?;
    let fine = sample(cfg, rho, 2 * cfg.per_octave, 2 * cfg.n_eta)?;
    let change = (fine.percentile_stress - coarse.percentile_stress).abs() / fine.percentile_stress;
    Ok((coarse, change))
}

fn sweep(cfg: &RidgeConfig, gate: bool) -> Result<Vec<(RidgeSample, f64)>> {
    cfg.validate()?;
    let mut out: Vec<(RidgeSample, f64)> = cfg
        .rhos
        .par_iter()
        .map(|&rho| {
            if gate {
                refinement_check(cfg, rho)
            } else {
                Ok((sample(cfg, rho, cfg.per_octave, cfg.n_eta)?, 0.0))
            }
        })
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| a.0.rho.total_cmp(&b.0.rho));
    Ok(out)
}

fn fit(samples: &[RidgeSample], value: impl Fn(&RidgeSample) -> f64) -> Result<ScalingFit> {
    let pts: Vec<(f64, f64)> = samples.iter().map(|s| (s.rho, value(s))).collect();
    Ok(fit_loglog(&pts, None)?.require_quality(MIN_R_SQUARED, MIN_SWEEP)?)
}

/// Zone stress against truncation length with a distributed axial load and
/// the remote section fixed.
pub fn run_free_tip_ridge(cfg: &RidgeConfig) -> Result<FreeTipResult> {
    let runs = sweep(cfg, cfg.refinement_tolerance.is_some())?;
    if let Some(tol) = cfg.refinement_tolerance {
        if let Some((s, change)) = runs.iter().find(|(_, c)| *c >= tol) {
            return Err(Error::NotConverged {
                rho: s.rho,
                change: *change,
            });
        }
    }
    let (samples, refinement_change): (Vec<_>, Vec<_>) = runs.into_iter().unzip();
    let fit = fit(&samples, |s| s.percentile_stress)?;
    Ok(FreeTipResult {
        samples,
        fit,
        refinement_change,
    })
}

/// Near-tip stress and total energy against truncation length with a fixed
/// resultant on the terminal section.
pub fn run_forced_ridge(cfg: &RidgeConfig) -> Result<ForcedResult> {
    if cfg.tip_force == 0.0 {
        return Err(crate::error::config(
            "forced study needs a nonzero tip force",
        ));
    }
    let samples: Vec<RidgeSample> = sweep(cfg, false)?.into_iter().map(|r| r.0).collect();
    let stress_fit = fit(&samples, |s| s.percentile_stress)?;
    let energy_fit = fit(&samples, |s| s.energy)?;
    Ok(ForcedResult {
        m: cfg.m,
        samples,
        stress_fit,
        energy_fit,
    })
}

/// Forced study repeated over horn exponents, in input order.
pub fn run_forced_m_sweep(base: &RidgeConfig, ms: &[f64]) -> Result<Vec<ForcedResult>> {
    ms.par_iter()
        .map(|&m| run_forced_ridge(&base.clone().with_m(m)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_axial_stress_grows_linearly_in_zone() {
        // N_f(s) / A(s) with N_f = int_0^s 2 B x^m dx gives s / (m + 1)
        let cfg = RidgeConfig::free_tip();
        let mesh = ridge_mesh(&cfg, 0.01, 4, 8).unwrap();
        let sol = solve_static(
            &mesh,
            &unit_moduli(),
            &[Dirichlet::fixed(BoundaryTag::Remote)],
            &ridge_loads(&cfg, 0.01),
        )
        .unwrap();
        let m = cfg.m;
        let xs: Vec<f64> = octave_points(0.01, 1.0, 4);
        for s in [0.1, 0.2, 0.4] {
            let r = cusp_fem::sectional_resultants(&sol, &mesh, s).unwrap();
            // the resultants are averaged over the element layer around s
            let i = xs.iter().rposition(|&x| x <= s).unwrap();
            let (lo, hi) = (xs[i], xs[i + 1]);
            let mean_pow = (hi.powf(m + 2.0) - lo.powf(m + 2.0)) / ((m + 2.0) * (hi - lo));
            // load between the cut-off and s, pushed toward the fixed end
            let want = -2.0 * (mean_pow - 0.01f64.powf(m + 1.0)) / (m + 1.0);
            assert!(
                (r.n / want - 1.0).abs() < 0.02,
                "N({s}) = {} vs {want}",
                r.n
            );
            assert!((r.n / (2.0 * s.powf(m))).abs() < s);
        }
    }

    #[test]
    fn forced_load_totals_the_resultant() {
        let cfg = RidgeConfig::forced();
        let mesh = ridge_mesh(&cfg, 0.01, 4, 8).unwrap();
        let f = cusp_fem::solve::load_vector(&mesh, &ridge_loads(&cfg, 0.01));
        let fx: f64 = f.iter().step_by(2).sum();
        assert!((fx + cfg.tip_force).abs() < 1e-12);
    }

    #[test]
    fn forced_needs_a_load() {
        let cfg = RidgeConfig {
            tip_force: 0.0,
            ..RidgeConfig::forced()
        };
        assert!(run_forced_ridge(&cfg).is_err());
    }
}
