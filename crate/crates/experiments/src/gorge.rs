//! Notch under remote strain: ring percentiles around the bottom.

use rayon::prelude::*;

use cusp_core::fit::{fit_loglog, logspace, MIN_R_SQUARED};
use cusp_core::gorge::{williams_stress, WilliamsField};
use cusp_core::{CuspShape, ScalingFit};
use cusp_fem::generate::self_similar_count;
use cusp_fem::post::percentile;
use cusp_fem::{generate_gorge_mesh, solve_static, BoundaryTag, Dirichlet, Loads, Mesh};

use crate::config::{GorgeConfig, MIN_SWEEP};
use crate::error::Result;
use crate::ridge::unit_moduli;

#[derive(Debug, Clone, PartialEq)]
pub struct GorgeResult {
    pub m: f64,
    /// `(r, percentile_stress)` per ring, increasing in `r`.
    pub samples: Vec<(f64, f64)>,
    pub fit: ScalingFit,
    pub dofs: usize,
}

pub fn gorge_mesh(cfg: &GorgeConfig) -> Result<Mesh> {
    let shape = CuspShape::from_graph(cfg.a_coef, 1.0 / cfg.m)?;
    Ok(generate_gorge_mesh(
        &shape,
        cfg.r_out,
        cfg.depth,
        cfg.resolution,
    )?)
}

/// Ring centres. The annuli tile `[lo, outer_fraction * r_out]`
/// logarithmically, where `lo` lies `inner_layers` mesh rings outside the
/// innermost one; each centre is the geometric mean of its annulus edges.
pub fn ring_radii(cfg: &GorgeConfig) -> Vec<f64> {
    let res = &cfg.resolution;
    let n = self_similar_count(res.inner_ratio * cfg.r_out, cfg.r_out, res.grading);
    let innermost = cfg.r_out * res.grading.powi(n as i32);
    let lo = innermost / res.grading.powi(cfg.inner_layers as i32);
    let edges = logspace(lo, cfg.outer_fraction * cfg.r_out, cfg.rings + 1);
    edges.windows(2).map(|e| (e[0] * e[1]).sqrt()).collect()
}

/// `pct`-percentile of per-element values over annuli `[r / sqrt(q), r sqrt(q))`
/// by centroid distance, where `q` is the ratio of consecutive radii.
pub fn ring_profile(
    mesh: &Mesh,
    values: &[f64],
    radii: &[f64],
    pct: f64,
) -> Result<Vec<(f64, f64)>> {
    let q = if radii.len() > 1 {
        radii[1] / radii[0]
    } else {
        2.0
    };
    let half = q.sqrt();
    let dist: Vec<f64> = (0..mesh.triangles().len())
        .map(|t| mesh.centroid(t))
        .map(|c| c[0].hypot(c[1]))
        .collect();
    radii
        .iter()
        .map(|&r| {
            let mut v: Vec<f64> = dist
                .iter()
                .zip(values)
                .filter(|(d, _)| **d >= r / half && **d < r * half)
                .map(|(_, v)| *v)
                .collect();
            Ok((r, percentile(&mut v, pct)?))
        })
        .collect()
}

fn fit_rings(samples: &[(f64, f64)]) -> Result<ScalingFit> {
    Ok(fit_loglog(samples, None)?.require_quality(MIN_R_SQUARED, MIN_SWEEP)?)
}

/// Ring-percentile profile of the FEM stress under `u = (eps0 x, 0)` on the
/// outer boundary.
pub fn run_gorge(cfg: &GorgeConfig) -> Result<GorgeResult> {
    cfg.validate()?;
    let mesh = gorge_mesh(cfg)?;
    let bc = [Dirichlet::linear(
        BoundaryTag::Outer,
        [[cfg.strain, 0.0], [0.0, 0.0]],
    )];
    let sol = solve_static(&mesh, &unit_moduli(), &bc, &Loads::default())?;
    let mags: Vec<f64> = sol.element_stress.iter().map(|s| s.norm()).collect();
    let samples = ring_profile(&mesh, &mags, &ring_radii(cfg), cfg.percentile)?;
    let fit = fit_rings(&samples)?;
    Ok(GorgeResult {
        m: cfg.m,
        samples,
        fit,
        dofs: 2 * mesh.nodes().len(),
    })
}

pub fn run_gorge_m_sweep(base: &GorgeConfig, ms: &[f64]) -> Result<Vec<GorgeResult>> {
    ms.par_iter()
        .map(|&m| run_gorge(&base.clone().with_m(m)))
        .collect()
}

/// The ring pipeline applied to the exact mode-I Williams stress sampled at
/// element centroids. The notch opens along `+z`, so the angle is measured
/// from the `-z` axis.
pub fn williams_pipeline_check(cfg: &GorgeConfig) -> Result<ScalingFit> {
    cfg.validate()?;
    let mesh = gorge_mesh(cfg)?;
    let field = WilliamsField::new(1.0, 0.0, 0.25, 1.0)?;
    let mags: Vec<f64> = (0..mesh.triangles().len())
        .map(|t| {
            let c = mesh.centroid(t);
            Ok(williams_stress(&field, c[0].hypot(c[1]), c[0].atan2(-c[1]))?.norm())
        })
        .collect::<Result<_>>()?;
    fit_rings(&ring_profile(
        &mesh,
        &mags,
        &ring_radii(cfg),
        cfg.percentile,
    )?)
}
