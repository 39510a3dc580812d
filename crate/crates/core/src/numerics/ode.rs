//! Dormand-Prince 5(4) integrator with embedded error control.

use crate::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Tolerances and limits for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rtol: 1e-10,
            atol: 1e-14,
            max_steps: 200_000,
        }
    }
}

/// Integrate `y' = f(t, y)` from `(t0, y0)` and return the state at each of the
/// increasing `outputs` (all `>= t0`). Steps are clipped so every output time
/// is hit exactly.
pub fn integrate<const N: usize, F>(
    f: F,
    t0: f64,
    y0: [f64; N],
    outputs: &[f64],
    tol: Tolerance,
) -> Result<Vec<[f64; N]>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let mut out = Vec::with_capacity(outputs.len());
    let mut t = t0;
    let mut y = y0;
    let span = outputs.last().map_or(0.0, |&e| e - t0);
    let mut h = if span > 0.0 { span * 1e-3 } else { 0.0 };
    let mut steps = 0usize;
    let mut k = [[0.0; N]; 7];
    for &target in outputs {
        if target < t {
            return Err(Error::InvalidParameter(
                "output times must be increasing".into(),
            ));
        }
        while t < target {
            if steps >= tol.max_steps {
                return Err(Error::StepFailure { at: t, step: h });
            }
            let last = h >= target - t;
            let step = if last { target - t } else { h };
            k[0] = f(t, &y);
            for s in 1..7 {
                let mut ys = y;
                for (i, yi) in ys.iter_mut().enumerate() {
                    let mut acc = 0.0;
                    for j in 0..s {
                        acc += A[s][j] * k[j][i];
                    }
                    *yi += step * acc;
                }
                k[s] = f(t + C[s] * step, &ys);
            }
            let mut y_new = y;
            for (i, yi) in y_new.iter_mut().enumerate() {
                let mut acc = 0.0;
                for j in 0..6 {
                    acc += A[6][j] * k[j][i];
                }
                *yi += step * acc;
            }
            let mut err2 = 0.0;
            for i in 0..N {
                let mut e = 0.0;
                for j in 0..7 {
                    e += E[j] * k[j][i];
                }
                let sc = tol.atol + tol.rtol * y[i].abs().max(y_new[i].abs());
                err2 += (step * e / sc).powi(2);
            }
            let err = (err2 / N as f64).sqrt();
            steps += 1;
            if !err.is_finite() {
                return Err(Error::StepFailure { at: t, step });
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if err <= 1.0 {
                t = if last { target } else { t + step };
                y = y_new;
                if !last {
                    h = step * factor;
                }
            } else {
                h = step * factor.min(1.0);
                if h <= f64::EPSILON * t.abs().max(1.0) {
                    return Err(Error::StepFailure { at: t, step: h });
                }
            }
        }
        out.push(y);
    }
    Ok(out)
}
