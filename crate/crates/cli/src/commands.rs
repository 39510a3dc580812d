//! Subcommand bodies. Each returns its stdout text and the files to write
//! into the output directory; nothing here touches the filesystem except
//! `report`, which reads tables from the output directory.

use std::path::Path;

use cusp_core::geometry::CuspShape;
use cusp_core::material::wave_speeds;
use cusp_core::outer::{projection_constants, solve_m1};
use cusp_core::ElasticModuli;
use cusp_experiments::report::*;
use cusp_experiments::{
    run_forced_ridge, run_free_tip_ridge, run_gorge, run_gorge_model, run_horn_study,
    run_overlap_demo, GorgeConfig, GorgeModelConfig, HornConfig, OverlapConfig, RidgeConfig,
};

use crate::params::Params;
use crate::plot::render_svg;

#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    /// `(file name, contents)` relative to the output directory.
    pub files: Vec<(String, String)>,
}

impl Output {
    fn table_with_plot(&mut self, stem: &str, csv: String) -> Result<(), String> {
        let svg = render_svg(&csv, stem)?;
        self.files.push((format!("{stem}.csv"), csv));
        self.files.push((format!("{stem}.svg"), svg));
        Ok(())
    }
}

type Res = Result<Output, String>;

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

pub fn dispersion(p: &Params) -> Res {
    let m = ElasticModuli::new(p.get("lambda", 2.0)?, p.get("mu", 1.0)?, p.get("rho", 1.0)?)
        .map_err(e)?;
    let w = wave_speeds(&m).map_err(e)?;
    Ok(Output {
        stdout: format!("c_p,c_s,c_r\n{},{},{}\n", w.c_p, w.c_s, w.c_r),
        files: vec![],
    })
}

pub fn projections(p: &Params) -> Res {
    let m = ElasticModuli::new(p.get("lambda", 2.0)?, p.get("mu", 1.0)?, p.get("rho", 1.0)?)
        .map_err(e)?;
    let c = projection_constants(&m, p.get("q", 1.0)?).map_err(e)?;
    let shape = CuspShape::from_graph(p.get("a-coef", 1.0)?, p.get("alpha", 0.5)?).map_err(e)?;
    let w = solve_m1(&c, &shape, (p.get("delta", 0.01)?, p.get("r-max", 1.0)?)).map_err(e)?;
    let row = [
        c.c_kappa.re,
        c.c_kappa.im,
        c.c_kappa_prime.re,
        c.c_kappa_prime.im,
        c.d_m.re,
        c.d_m.im,
        w.m1,
    ];
    let text = write_table(
        &[
            "c_kappa_re",
            "c_kappa_im",
            "c_kappa_prime_re",
            "c_kappa_prime_im",
            "d_m_re",
            "d_m_im",
            "m1",
        ],
        &[row.to_vec()],
    )
    .map_err(e)?;
    Ok(Output {
        stdout: text,
        files: vec![],
    })
}

pub fn horn(p: &Params) -> Res {
    let d = HornConfig::default();
    let cfg = HornConfig {
        m: p.get("m", d.m)?,
        b: p.get("b", d.b)?,
        k: p.get("k", d.k)?,
        ell: p.get("ell", d.ell)?,
        eps: p.get_list("eps", &d.eps)?,
    };
    let r = run_horn_study(&cfg).map_err(e)?;
    let mut out = Output::default();
    out.table_with_plot(
        "horn",
        write_table(&HORN_HEADER, &pair_rows(&r.samples)).map_err(e)?,
    )?;
    out.stdout = match r.fit {
        Some(f) => format!("error slope {:.4} (r^2 {:.5})\n", f.slope, f.r_squared),
        None => "all errors vanish; no slope\n".into(),
    };
    Ok(out)
}

pub fn gorge_model(p: &Params) -> Res {
    let d = GorgeModelConfig::default();
    let cfg = GorgeModelConfig {
        k1: p.get("k1", d.k1)?,
        k2: p.get("k2", d.k2)?,
        nu: p.get("nu", d.nu)?,
        m: p.get("m", d.m)?,
        c_corr: p.get_opt("c-corr")?,
        r_min: p.get("r-min", d.r_min)?,
        r_max: p.get("r-max", d.r_max)?,
        samples: p.get("samples", d.samples)?,
    };
    let prof = run_gorge_model(&cfg).map_err(e)?;
    let rows: Vec<Vec<f64>> = prof
        .iter()
        .map(|q| vec![q.r, q.stress, q.local_slope])
        .collect();
    let mut out = Output::default();
    out.table_with_plot("gorge_model", write_table(&MODEL_HEADER, &rows).map_err(e)?)?;
    out.stdout = format!(
        "local slope at r = {:.3e}: {:.5}\n",
        prof[0].r, prof[0].local_slope
    );
    Ok(out)
}

pub fn overlap(p: &Params) -> Res {
    let d = OverlapConfig::default();
    let cfg = OverlapConfig {
        m: p.get("m", d.m)?,
        offset: p.get("offset", d.offset)?,
        radii: p.get_list("radii", &d.radii)?,
    };
    let table = run_overlap_demo(&cfg).map_err(e)?;
    let mut out = Output::default();
    out.table_with_plot(
        "overlap",
        write_table(&OVERLAP_HEADER, &pair_rows(&table)).map_err(e)?,
    )?;
    out.stdout = table
        .iter()
        .map(|(r, v)| format!("r = {r}: mismatch {v:.4e}\n"))
        .collect();
    Ok(out)
}

fn ridge_config(p: &Params, d: RidgeConfig) -> Result<RidgeConfig, String> {
    Ok(RidgeConfig {
        b: p.get("b", d.b)?,
        ell: p.get("ell", d.ell)?,
        rhos: p.get_list("rho", &d.rhos)?,
        per_octave: p.get("per-octave", d.per_octave)?,
        n_eta: p.get("n-eta", d.n_eta)?,
        percentile: p.get("percentile", d.percentile)?,
        ..d
    })
}

pub fn fem_ridge_free(p: &Params) -> Res {
    let d = RidgeConfig::free_tip();
    let tol = p.get("refine-tol", d.refinement_tolerance.unwrap_or(0.0))?;
    let cfg = RidgeConfig {
        m: p.get("m", d.m)?,
        body_force: p.get("body-force", d.body_force)?,
        refinement_tolerance: (tol > 0.0).then_some(tol),
        ..ridge_config(p, d)?
    };
    let r = run_free_tip_ridge(&cfg).map_err(e)?;
    let mut out = Output::default();
    out.table_with_plot(
        "ridge_free",
        write_table(&RIDGE_HEADER, &ridge_rows(&r.samples)).map_err(e)?,
    )?;
    out.stdout = format!(
        "m = {}: cut-off slope {:+.4} (r^2 {:.5})\n",
        cfg.m, r.fit.slope, r.fit.r_squared
    );
    Ok(out)
}

pub fn fem_ridge_forced(p: &Params) -> Res {
    let d = RidgeConfig::forced();
    let ms = p.get_list("m", &[1.8, 2.4, 2.8])?;
    let base = RidgeConfig {
        tip_force: p.get("tip-force", d.tip_force)?,
        ..ridge_config(p, d)?
    };
    let mut out = Output::default();
    for m in ms {
        let r = run_forced_ridge(&base.clone().with_m(m)).map_err(e)?;
        out.table_with_plot(
            &format!("ridge_forced_m{m}"),
            write_table(&RIDGE_HEADER, &ridge_rows(&r.samples)).map_err(e)?,
        )?;
        out.stdout += &format!(
            "m = {m}: stress slope {:.4}, energy slope {:.4}\n",
            r.stress_fit.slope, r.energy_fit.slope
        );
    }
    Ok(out)
}

pub fn fem_gorge(p: &Params) -> Res {
    let d = GorgeConfig::default();
    let ms = p.get_list("m", &[1.8, 2.4, 2.8])?;
    let mut res = d.resolution;
    res.inner_ratio = p.get("inner-ratio", res.inner_ratio)?;
    res.grading = p.get("grading", res.grading)?;
    res.n_quarter = p.get("n-quarter", res.n_quarter)?;
    let base = GorgeConfig {
        a_coef: p.get("a-coef", d.a_coef)?,
        r_out: p.get("r-out", d.r_out)?,
        depth: p.get("depth", d.depth)?,
        resolution: res,
        rings: p.get("rings", d.rings)?,
        inner_layers: p.get("inner-layers", d.inner_layers)?,
        outer_fraction: p.get("outer-fraction", d.outer_fraction)?,
        percentile: p.get("percentile", d.percentile)?,
        strain: p.get("strain", d.strain)?,
        ..d
    };
    let mut out = Output::default();
    let mut slopes = Vec::new();
    for m in ms {
        let r = run_gorge(&base.clone().with_m(m)).map_err(e)?;
        out.table_with_plot(
            &format!("gorge_m{m}"),
            write_table(&GORGE_HEADER, &pair_rows(&r.samples)).map_err(e)?,
        )?;
        out.stdout += &format!(
            "m = {m}: ring slope {:.4} (r^2 {:.5}, {} dofs)\n",
            r.fit.slope, r.fit.r_squared, r.dofs
        );
        slopes.push(r.fit.slope);
    }
    if slopes.len() > 1 {
        let spread = slopes.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
            - slopes.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        out.stdout += &format!("spread across m: {spread:.4}\n");
    }
    Ok(out)
}

fn read(dir: &Path, name: &str) -> Result<String, String> {
    std::fs::read_to_string(dir.join(name))
        .map_err(|err| format!("{}: {err}", dir.join(name).display()))
}

/// Comparison summary rebuilt from the sweep tables in `dir`.
pub fn report(p: &Params, dir: &Path) -> Res {
    let m = p.get("m", 2.4)?;
    let free = ridge_samples(&read_table(&read(dir, "ridge_free.csv")?, &RIDGE_HEADER).map_err(e)?);
    let forced = ridge_samples(
        &read_table(
            &read(dir, &format!("ridge_forced_m{m}.csv"))?,
            &RIDGE_HEADER,
        )
        .map_err(e)?,
    );
    let gorge: Vec<(f64, f64)> = read_table(&read(dir, &format!("gorge_m{m}.csv"))?, &GORGE_HEADER)
        .map_err(e)?
        .into_iter()
        .map(|r| (r[0], r[1]))
        .collect();
    let table = render_summary(&summary_rows(&free, &forced, &gorge).map_err(e)?);
    Ok(Output {
        stdout: table.clone(),
        files: vec![("summary.md".into(), table)],
    })
}
