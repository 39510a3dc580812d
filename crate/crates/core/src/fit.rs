//! Least-squares exponents on log-log data.

use crate::{Error, Result};

/// Minimum number of points for any fit.
pub const MIN_POINTS: usize = 4;

/// Minimum coefficient of determination for a fit reported as a result.
pub const MIN_R_SQUARED: f64 = 0.98;

/// Ordinary least-squares fit of `log(value)` on `log(abscissa)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Range of the abscissa actually used.
    pub window: (f64, f64),
    pub points: usize,
}

impl ScalingFit {
    /// Evaluate the fitted power law `exp(intercept) * x^slope`.
    pub fn predict(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }

    /// Reject fits that do not meet the reporting threshold.
    pub fn require_quality(self, min_r2: f64, min_points: usize) -> Result<Self> {
        if self.points < min_points {
            return Err(Error::Fit(format!(
                "{} points < {}",
                self.points, min_points
            )));
        }
        if !(self.r_squared >= min_r2) {
            return Err(Error::Fit(format!(
                "r^2 = {:.5} < {}",
                self.r_squared, min_r2
            )));
        }
        Ok(self)
    }
}

/// Fit `value ~ abscissa^slope` over the samples whose abscissa lies in the
/// inclusive `window` (all samples when `None`). Non-positive entries are an
/// error since they have no logarithm.
pub fn fit_loglog(samples: &[(f64, f64)], window: Option<(f64, f64)>) -> Result<ScalingFit> {
    let used: Vec<(f64, f64)> = samples
        .iter()
        .copied()
        .filter(|(x, _)| window.is_none_or(|(lo, hi)| *x >= lo && *x <= hi))
        .collect();
    if used.len() < MIN_POINTS {
        return Err(Error::Fit(format!(
            "{} points in window, need {}",
            used.len(),
            MIN_POINTS
        )));
    }
    if let Some(&(x, y)) = used.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(Error::Fit(format!("non-positive sample ({x}, {y})")));
    }
    let n = used.len() as f64;
    let lx: Vec<f64> = used.iter().map(|(x, _)| x.ln()).collect();
    let ly: Vec<f64> = used.iter().map(|(_, y)| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("abscissa has no spread".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    let lo = used.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = used.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    Ok(ScalingFit {
        slope,
        intercept,
        r_squared,
        window: (lo, hi),
        points: used.len(),
    })
}

/// Local log-log slopes: centered differences inside, one-sided at the ends.
/// Samples must be sorted by abscissa.
pub fn local_slopes(samples: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
    if samples.len() < 2 {
        return Err(Error::Fit(
            "need at least two samples for a local slope".into(),
        ));
    }
    let logs: Vec<(f64, f64)> = samples.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let last = logs.len() - 1;
    Ok((0..logs.len())
        .map(|i| {
            let (a, b) = match i {
                0 => (0, 1),
                i if i == last => (last - 1, last),
                i => (i - 1, i + 1),
            };
            (
                samples[i].0,
                (logs[b].1 - logs[a].1) / (logs[b].0 - logs[a].0),
            )
        })
        .collect())
}

/// `count` logarithmically spaced points on `[lo, hi]`, endpoints included.
pub fn logspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..count)
                .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
                .collect()
        }
    }
}
