//! `cusp`: run the cusp scaling studies and write CSV, SVG and manifests.

mod commands;
mod manifest;
mod params;
mod plot;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::commands::Output;
use crate::manifest::RunManifest;
use crate::params::{ConfigFile, Params};

#[derive(Parser)]
#[command(
    name = "cusp",
    version,
    about = "Local asymptotics and FEM scaling studies near cuspidal ridges and gorges"
)]
#[command(arg_required_else_help = true)]
struct Cli {
    /// Flat `key = value` config; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, env = "CUSP_OUT", default_value = "cusp-out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Body-wave and Rayleigh speeds as a CSV row.
    Dispersion(Material),
    /// Projection constants and the first wavelength correction as a CSV row.
    Projections(ProjectionArgs),
    /// Small-parameter error study of the scalar horn equation.
    Horn(HornArgs),
    /// Corrected crack-tip stress profile with local slopes.
    GorgeModel(GorgeModelArgs),
    /// Mismatch between a bounded inner correction and its common tail.
    Overlap(OverlapArgs),
    /// FEM free-tip ridge under a distributed axial load.
    FemRidgeFree(RidgeFreeArgs),
    /// FEM ridge with a fixed resultant on the terminal section.
    FemRidgeForced(RidgeForcedArgs),
    /// FEM gorge under remote strain.
    FemGorge(GorgeArgs),
    /// Comparison table rebuilt from existing CSV outputs.
    Report(ReportArgs),
}

fn s<T: ToString>(v: &Option<T>) -> Option<String> {
    v.as_ref().map(T::to_string)
}

#[derive(Args)]
struct Material {
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
}

impl Material {
    fn flags(&self) -> Vec<(&'static str, Option<String>)> {
        vec![
            ("lambda", s(&self.lambda)),
            ("mu", s(&self.mu)),
            ("rho", s(&self.rho)),
        ]
    }
}

#[derive(Args)]
struct ProjectionArgs {
    #[command(flatten)]
    material: Material,
    /// Wavenumber.
    #[arg(long)]
    q: Option<f64>,
    /// Graph coefficient `A`.
    #[arg(long)]
    a_coef: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Inner end of the interval `delta < |s| < R`.
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
}

#[derive(Args)]
struct HornArgs {
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    ell: Option<f64>,
    /// Comma-separated list.
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Args)]
struct GorgeModelArgs {
    #[arg(long)]
    k1: Option<f64>,
    #[arg(long)]
    k2: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c_corr: Option<f64>,
    #[arg(long)]
    r_min: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args)]
struct OverlapArgs {
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    offset: Option<f64>,
    /// Comma-separated list.
    #[arg(long)]
    radii: Option<String>,
}

#[derive(Args)]
struct RidgeMesh {
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    ell: Option<f64>,
    /// Comma-separated truncation lengths.
    #[arg(long)]
    rho: Option<String>,
    #[arg(long)]
    per_octave: Option<usize>,
    #[arg(long)]
    n_eta: Option<usize>,
    #[arg(long)]
    percentile: Option<f64>,
}

impl RidgeMesh {
    fn flags(&self) -> Vec<(&'static str, Option<String>)> {
        vec![
            ("b", s(&self.b)),
            ("ell", s(&self.ell)),
            ("rho", self.rho.clone()),
            ("per-octave", s(&self.per_octave)),
            ("n-eta", s(&self.n_eta)),
            ("percentile", s(&self.percentile)),
        ]
    }
}

#[derive(Args)]
struct RidgeFreeArgs {
    #[arg(long)]
    m: Option<f64>,
    #[command(flatten)]
    mesh: RidgeMesh,
    #[arg(long)]
    body_force: Option<f64>,
    /// Largest relative change under one refinement; 0 skips the check.
    #[arg(long)]
    refine_tol: Option<f64>,
}

#[derive(Args)]
struct RidgeForcedArgs {
    /// Comma-separated horn exponents.
    #[arg(long)]
    m: Option<String>,
    #[command(flatten)]
    mesh: RidgeMesh,
    #[arg(long, allow_negative_numbers = true)]
    tip_force: Option<f64>,
}

#[derive(Args)]
struct GorgeArgs {
    /// Comma-separated horn exponents.
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    a_coef: Option<f64>,
    #[arg(long)]
    r_out: Option<f64>,
    #[arg(long)]
    depth: Option<f64>,
    #[arg(long)]
    inner_ratio: Option<f64>,
    #[arg(long)]
    grading: Option<f64>,
    #[arg(long)]
    n_quarter: Option<usize>,
    #[arg(long)]
    rings: Option<usize>,
    #[arg(long)]
    inner_layers: Option<u32>,
    #[arg(long)]
    outer_fraction: Option<f64>,
    #[arg(long)]
    percentile: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    strain: Option<f64>,
}

#[derive(Args)]
struct ReportArgs {
    /// Horn exponent whose forced and gorge tables are summarised.
    #[arg(long)]
    m: Option<f64>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Dispersion(_) => "dispersion",
            Command::Projections(_) => "projections",
            Command::Horn(_) => "horn",
            Command::GorgeModel(_) => "gorge-model",
            Command::Overlap(_) => "overlap",
            Command::FemRidgeFree(_) => "fem-ridge-free",
            Command::FemRidgeForced(_) => "fem-ridge-forced",
            Command::FemGorge(_) => "fem-gorge",
            Command::Report(_) => "report",
        }
    }

    fn flags(&self) -> Vec<(&'static str, Option<String>)> {
        match self {
            Command::Dispersion(a) => a.flags(),
            Command::Projections(a) => {
                let mut f = a.material.flags();
                f.extend([
                    ("q", s(&a.q)),
                    ("a-coef", s(&a.a_coef)),
                    ("alpha", s(&a.alpha)),
                    ("delta", s(&a.delta)),
                    ("r-max", s(&a.r_max)),
                ]);
                f
            }
            Command::Horn(a) => vec![
                ("m", s(&a.m)),
                ("b", s(&a.b)),
                ("k", s(&a.k)),
                ("ell", s(&a.ell)),
                ("eps", a.eps.clone()),
            ],
            Command::GorgeModel(a) => vec![
                ("k1", s(&a.k1)),
                ("k2", s(&a.k2)),
                ("nu", s(&a.nu)),
                ("m", s(&a.m)),
                ("c-corr", s(&a.c_corr)),
                ("r-min", s(&a.r_min)),
                ("r-max", s(&a.r_max)),
                ("samples", s(&a.samples)),
            ],
            Command::Overlap(a) => vec![
                ("m", s(&a.m)),
                ("offset", s(&a.offset)),
                ("radii", a.radii.clone()),
            ],
            Command::FemRidgeFree(a) => {
                let mut f = a.mesh.flags();
                f.extend([
                    ("m", s(&a.m)),
                    ("body-force", s(&a.body_force)),
                    ("refine-tol", s(&a.refine_tol)),
                ]);
                f
            }
            Command::FemRidgeForced(a) => {
                let mut f = a.mesh.flags();
                f.extend([("m", a.m.clone()), ("tip-force", s(&a.tip_force))]);
                f
            }
            Command::FemGorge(a) => vec![
                ("m", a.m.clone()),
                ("a-coef", s(&a.a_coef)),
                ("r-out", s(&a.r_out)),
                ("depth", s(&a.depth)),
                ("inner-ratio", s(&a.inner_ratio)),
                ("grading", s(&a.grading)),
                ("n-quarter", s(&a.n_quarter)),
                ("rings", s(&a.rings)),
                ("inner-layers", s(&a.inner_layers)),
                ("outer-fraction", s(&a.outer_fraction)),
                ("percentile", s(&a.percentile)),
                ("strain", s(&a.strain)),
            ],
            Command::Report(a) => vec![("m", s(&a.m))],
        }
    }
}

fn write_outputs(
    dir: &Path,
    name: &str,
    params: &Params,
    out: &Output,
    started: Instant,
) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    for (file, text) in &out.files {
        std::fs::write(dir.join(file), text).map_err(|e| format!("{file}: {e}"))?;
    }
    let names: Vec<String> = out.files.iter().map(|f| f.0.clone()).collect();
    if let Some(missing) = names.iter().find(|n| !dir.join(n).is_file()) {
        return Err(format!("output {missing} was not written"));
    }
    let manifest = RunManifest::new(name, params.resolved(), names, started.elapsed());
    std::fs::write(dir.join(manifest.file_name()), manifest.to_text())
        .map_err(|e| format!("manifest: {e}"))
}

fn run(cli: &Cli) -> Result<String, String> {
    let started = Instant::now();
    let config = match &cli.config {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Some(ConfigFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?)
        }
        None => None,
    };
    let name = cli.command.name();
    let params = Params::new(config.as_ref(), name, cli.command.flags());
    let out = match &cli.command {
        Command::Dispersion(_) => commands::dispersion(&params),
        Command::Projections(_) => commands::projections(&params),
        Command::Horn(_) => commands::horn(&params),
        Command::GorgeModel(_) => commands::gorge_model(&params),
        Command::Overlap(_) => commands::overlap(&params),
        Command::FemRidgeFree(_) => commands::fem_ridge_free(&params),
        Command::FemRidgeForced(_) => commands::fem_ridge_forced(&params),
        Command::FemGorge(_) => commands::fem_gorge(&params),
        Command::Report(_) => commands::report(&params, &cli.out),
    }
    .map_err(|e| format!("{name}: {e}"))?;
    let unused = params.unused_section_keys();
    if !unused.is_empty() {
        return Err(format!("[{name}] has unknown keys: {}", unused.join(", ")));
    }
    if !out.files.is_empty() {
        write_outputs(&cli.out, name, &params, &out, started)?;
    }
    Ok(out.stdout)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
