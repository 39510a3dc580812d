//! The ridge as a vanishing-width elastic horn: sectional algebra, strength
//! cut-offs, tip-load branch scalings and the scalar horn equation.

use crate::error::invalid;
use crate::fit::{fit_loglog, ScalingFit};
use crate::geometry::CuspShape;
use crate::numerics::integrate;
use crate::numerics::ode::{self, Tolerance};
use crate::Result;

/// Tip resultants: axial force, shear force and the moment flux `sQ - M`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TipResultants {
    pub n0: f64,
    pub q0: f64,
    pub h0: f64,
}

impl TipResultants {
    pub fn is_free(&self) -> bool {
        self.n0 == 0.0 && self.q0 == 0.0 && self.h0 == 0.0
    }
}

/// Section area `2 B s^m` and second moment `(2/3) B^3 s^(3m)`.
pub fn section_properties(shape: &CuspShape, s: f64) -> Result<(f64, f64)> {
    if !(s >= 0.0) {
        return Err(invalid("section needs s >= 0"));
    }
    let (b, m) = (shape.b(), shape.m());
    Ok((2.0 * b * s.powf(m), 2.0 / 3.0 * b.powi(3) * s.powf(3.0 * m)))
}

/// Smallest truncation length at which the tip resultants can be carried
/// without exceeding the strength `sigma_star`. Zero for a free tip.
pub fn min_cutoff(shape: &CuspShape, sigma_star: f64, r: &TipResultants) -> Result<f64> {
    if !(sigma_star > 0.0) {
        return Err(invalid("strength must be positive"));
    }
    let (b, m) = (shape.b(), shape.m());
    let force = |f: f64| (f.abs() / (2.0 * b * sigma_star)).powf(1.0 / m);
    let mut d = force(r.n0).max(force(r.q0));
    if r.q0 == 0.0 {
        d = d.max((3.0 * r.h0.abs() / (2.0 * b * b * sigma_star)).powf(1.0 / (2.0 * m)));
    }
    Ok(d)
}

/// Load channel carried through the tip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Force,
    Shear,
    Moment,
}

/// Power-law exponents in `s` (energy in the truncation length).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchScalings {
    pub stress: f64,
    pub strain: f64,
    pub displacement: f64,
    pub energy: f64,
    /// Section rotation, bending only.
    pub rotation: Option<f64>,
}

pub fn branch_scalings(shape: &CuspShape, channel: Channel) -> BranchScalings {
    let m = shape.m();
    match channel {
        Channel::Force | Channel::Shear => BranchScalings {
            stress: -m,
            strain: -m,
            displacement: 1.0 - m,
            energy: 1.0 - m,
            rotation: None,
        },
        Channel::Moment => BranchScalings {
            stress: -2.0 * m,
            strain: -2.0 * m,
            displacement: 2.0 - 3.0 * m,
            energy: 1.0 - 3.0 * m,
            rotation: Some(1.0 - 3.0 * m),
        },
    }
}

/// Whether the tip-load branch has finite `s^beta`-weighted energy.
pub fn weighted_membership(shape: &CuspShape, channel: Channel, beta: f64) -> bool {
    let m = shape.m();
    match channel {
        Channel::Force | Channel::Shear => beta > m - 1.0,
        Channel::Moment => beta > 3.0 * m - 1.0,
    }
}

/// `int_delta^ell [N0^2/A + Q0^2/A + (s Q0 - H0)^2 / I] ds`.
pub fn resultant_energy_bound(
    shape: &CuspShape,
    r: &TipResultants,
    delta: f64,
    ell: f64,
) -> Result<f64> {
    if !(delta > 0.0 && delta < ell) {
        return Err(invalid("need 0 < delta < ell"));
    }
    let f = |s: f64| {
        let (a, i) = section_properties(shape, s).unwrap_or((f64::NAN, f64::NAN));
        (r.n0 * r.n0 + r.q0 * r.q0) / a + (s * r.q0 - r.h0).powi(2) / i
    };
    Ok(integrate(f, delta, ell, 1e-300, 1e-11)?.value)
}

/// Horn energy `int_delta^ell b(s) q'(s)^2 ds` of a profile with derivative `dq`.
pub fn horn_energy<F: Fn(f64) -> f64>(
    shape: &CuspShape,
    dq: F,
    delta: f64,
    ell: f64,
) -> Result<f64> {
    if !(delta > 0.0 && delta < ell) {
        return Err(invalid("need 0 < delta < ell"));
    }
    let (b, m) = (shape.b(), shape.m());
    Ok(integrate(|s| b * s.powf(m) * dq(s).powi(2), delta, ell, 1e-300, 1e-11)?.value)
}

/// Scalar horn problem `q'' + (m/s) q' + k^2 q = 0` on `(0, ell]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HornProblem {
    pub b: f64,
    pub m: f64,
    pub k: f64,
    pub ell: f64,
}

impl HornProblem {
    pub fn new(b: f64, m: f64, k: f64, ell: f64) -> Result<Self> {
        if !(b > 0.0) || !(m > 1.0) || !(k >= 0.0) || !(ell > 0.0) {
            return Err(invalid(format!(
                "horn problem needs B > 0, m > 1, k >= 0, ell > 0 (B={b}, m={m}, k={k}, ell={ell})"
            )));
        }
        Ok(HornProblem { b, m, k, ell })
    }
}

/// Coefficients of the regular branch `q = q0 sum_j c_j (k s)^(2j)`.
pub fn regular_series_coefficients(m: f64, terms: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(terms);
    let mut prev = 1.0;
    for j in 0..terms {
        if j > 0 {
            let jj = 2.0 * j as f64;
            prev = -prev / (jj * (jj + m - 1.0));
        }
        c.push(prev);
    }
    c
}

/// Truncated regular branch and its derivative at `s` for wavenumber `k`.
pub fn regular_series(m: f64, k: f64, q0: f64, s: f64, terms: usize) -> (f64, f64) {
    let c = regular_series_coefficients(m, terms);
    let x = k * s;
    let (mut q, mut dq) = (0.0, 0.0);
    for (j, cj) in c.iter().enumerate() {
        q += cj * x.powi(2 * j as i32);
        if j > 0 {
            dq += cj * (2 * j) as f64 * k * x.powi(2 * j as i32 - 1);
        }
    }
    (q0 * q, q0 * dq)
}

/// Sampled solution of the horn equation.
#[derive(Debug, Clone, PartialEq)]
pub struct HornSolution {
    pub s: Vec<f64>,
    pub q: Vec<f64>,
    pub dq: Vec<f64>,
}

const SERIES_TERMS: usize = 4;

/// Integrate the regular branch with wavenumber `eps * k` from `s_start` to
/// `ell`, reporting the solution at `outputs` (increasing, inside that range).
pub fn integrate_horn_at(
    problem: &HornProblem,
    eps: f64,
    s_start: f64,
    q0: f64,
    outputs: &[f64],
    tol: Tolerance,
) -> Result<HornSolution> {
    if !(s_start > 0.0 && s_start < problem.ell) {
        return Err(invalid("need 0 < s_start < ell"));
    }
    if outputs.iter().any(|&s| s < s_start || s > problem.ell) {
        return Err(invalid("output points must lie in [s_start, ell]"));
    }
    let kk = eps * problem.k;
    let (qs, dqs) = regular_series(problem.m, kk, q0, s_start, SERIES_TERMS);
    let m = problem.m;
    let k2 = kk * kk;
    let ys = ode::integrate(
        move |s, y: &[f64; 2]| [y[1], -m / s * y[1] - k2 * y[0]],
        s_start,
        [qs, dqs],
        outputs,
        tol,
    )?;
    Ok(HornSolution {
        s: outputs.to_vec(),
        q: ys.iter().map(|y| y[0]).collect(),
        dq: ys.iter().map(|y| y[1]).collect(),
    })
}

/// [`integrate_horn_at`] on 200 uniform points of `[s_start, ell]` with
/// relative tolerance `1e-10`.
pub fn integrate_horn(
    problem: &HornProblem,
    eps: f64,
    s_start: f64,
    q0: f64,
) -> Result<HornSolution> {
    let grid = uniform_grid(s_start, problem.ell, 200);
    integrate_horn_at(problem, eps, s_start, q0, &grid, Tolerance::default())
}

fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                b
            } else {
                a + (b - a) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Settings of the small-parameter study of the horn equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsStudy {
    pub s_start: f64,
    pub q0: f64,
    pub grid_points: usize,
    pub tol: Tolerance,
}

impl Default for EpsStudy {
    fn default() -> Self {
        EpsStudy {
            s_start: 1e-3,
            q0: 1.0,
            grid_points: 200,
            tol: Tolerance {
                rtol: 1e-13,
                atol: 1e-16,
                max_steps: 1_000_000,
            },
        }
    }
}

/// Per-`eps` maximum error and the fitted exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsExpansionResult {
    pub samples: Vec<(f64, f64)>,
    pub fit: Option<ScalingFit>,
    /// Largest `eps` dropped from the fit as an outlier.
    pub excluded: Option<f64>,
}

/// Maximum deviation of the integrated regular branch from its first
/// small-parameter correction `q0 (1 - eps^2 k^2 s^2 / (2(m+1)))`.
pub fn max_expansion_error(problem: &HornProblem, eps: f64, study: &EpsStudy) -> Result<f64> {
    let grid = uniform_grid(study.s_start, 1.0f64.min(problem.ell), study.grid_points);
    let sol = integrate_horn_at(problem, eps, study.s_start, study.q0, &grid, study.tol)?;
    let c = eps * eps * problem.k * problem.k / (2.0 * (problem.m + 1.0));
    Ok(sol
        .s
        .iter()
        .zip(&sol.q)
        .map(|(s, q)| (q - study.q0 * (1.0 - c * s * s)).abs())
        .fold(0.0, f64::max))
}

/// Error sweep over `eps_list` with a log-log fit. With `k = 0` every error
/// is zero and no fit is attempted.
pub fn eps_expansion_error(
    problem: &HornProblem,
    eps_list: &[f64],
    study: &EpsStudy,
) -> Result<EpsExpansionResult> {
    let mut samples = Vec::with_capacity(eps_list.len());
    for &e in eps_list {
        if !(e > 0.0) {
            return Err(invalid("eps values must be positive"));
        }
        samples.push((e, max_expansion_error(problem, e, study)?));
    }
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));
    if samples.iter().all(|s| s.1 == 0.0) {
        return Ok(EpsExpansionResult {
            samples,
            fit: None,
            excluded: None,
        });
    }
    let fit = fit_loglog(&samples, None)?;
    let rms = (samples
        .iter()
        .map(|&(x, y)| (y.ln() - fit.predict(x).ln()).powi(2))
        .sum::<f64>()
        / samples.len() as f64)
        .sqrt();
    let &(emax, ymax) = samples.last().expect("non-empty");
    let resid = (ymax.ln() - fit.predict(emax).ln()).abs();
    if samples.len() > crate::fit::MIN_POINTS && resid > 3.0 * rms {
        let fit = fit_loglog(&samples[..samples.len() - 1], None)?;
        return Ok(EpsExpansionResult {
            samples,
            fit: Some(fit),
            excluded: Some(emax),
        });
    }
    Ok(EpsExpansionResult {
        samples,
        fit: Some(fit),
        excluded: None,
    })
}

/// Energy of the singular branch `s^(1-m)` between `delta` and `ell`.
pub fn singular_branch_energy(shape: &CuspShape, delta: f64, ell: f64) -> Result<f64> {
    let m = shape.m();
    horn_energy(shape, |s| (1.0 - m) * s.powf(-m), delta, ell)
}
