//! Cusp shape algebra: branches, arclength, curvature, natural coordinates,
//! the anisotropic inner blow-up and the rounded cusp.

use crate::error::invalid;
use crate::numerics::{bisect_newton, integrate};
use crate::{Error, Result};

/// A cusp `z = A |x|^alpha`, equivalently of half-width `b(z) = B z^m`.
///
/// `a` is the wavelength-normalized coefficient `A * lambda_R^(alpha - 1)`;
/// with the default `lambda_R = 1` it equals `A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspShape {
    a_coef: f64,
    alpha: f64,
    a: f64,
}

impl CuspShape {
    /// Graph form. Requires `A > 0` and `0 < alpha < 1`.
    pub fn from_graph(a_coef: f64, alpha: f64) -> Result<Self> {
        if !(a_coef > 0.0) || !a_coef.is_finite() {
            return Err(invalid(format!("A must be positive, got {a_coef}")));
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(invalid(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        Ok(CuspShape {
            a_coef,
            alpha,
            a: a_coef,
        })
    }

    /// Horn form. Requires `B > 0` and `m > 1`.
    pub fn from_horn(b: f64, m: f64) -> Result<Self> {
        if !(b > 0.0) || !b.is_finite() {
            return Err(invalid(format!("B must be positive, got {b}")));
        }
        if !(m > 1.0) || !m.is_finite() {
            return Err(invalid(format!("m must exceed 1, got {m}")));
        }
        let alpha = 1.0 / m;
        CuspShape::from_graph(b.powf(-alpha), alpha)
    }

    /// Set the reference wavelength used for the dimensionless parameter `a`.
    pub fn with_wavelength(mut self, lambda_r: f64) -> Result<Self> {
        if !(lambda_r > 0.0) {
            return Err(invalid("reference wavelength must be positive"));
        }
        self.a = self.a_coef * lambda_r.powf(self.alpha - 1.0);
        Ok(self)
    }

    pub fn a_coef(&self) -> f64 {
        self.a_coef
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn m(&self) -> f64 {
        1.0 / self.alpha
    }
    pub fn b(&self) -> f64 {
        self.a_coef.powf(-1.0 / self.alpha)
    }
    /// Wavelength-normalized coefficient.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Half-width `B z^m`.
    pub fn half_width(&self, s: f64) -> Result<f64> {
        if !(s >= 0.0) {
            return Err(invalid(format!("half-width needs s >= 0, got {s}")));
        }
        Ok(self.b() * s.powf(self.m()))
    }

    /// Slenderness `b(z)/z = B z^(m-1)`.
    pub fn slenderness(&self, s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return Err(invalid("slenderness needs s > 0"));
        }
        Ok(self.b() * s.powf(self.m() - 1.0))
    }

    /// Graph slope `p(q) = A alpha q^(alpha-1)`.
    pub fn slope(&self, q: f64) -> f64 {
        self.a_coef * self.alpha * q.powf(self.alpha - 1.0)
    }

    /// Branch point `(delta q, A q^alpha)`.
    pub fn branch_point(&self, branch: Branch, q: f64) -> [f64; 2] {
        [branch.sign() * q, self.a_coef * q.powf(self.alpha)]
    }

    /// Integrand of the arclength after `eta = t^(1/alpha)`; smooth at `t = 0`.
    fn arclength_density(&self, t: f64) -> f64 {
        let aa = self.a_coef * self.alpha;
        (t.powf(2.0 / self.alpha - 2.0) + aa * aa).sqrt() / self.alpha
    }

    /// Arclength from the cusp point to the branch point at parameter `q`.
    pub fn arclength(&self, q: f64) -> Result<f64> {
        if !(q >= 0.0) {
            return Err(invalid(format!("arclength needs q >= 0, got {q}")));
        }
        if q == 0.0 {
            return Ok(0.0);
        }
        let t = q.powf(self.alpha);
        let r = integrate(|t| self.arclength_density(t), 0.0, t, 1e-300, 1e-13)?;
        Ok(r.value)
    }

    /// Two-term small-`q` expansion of the arclength.
    pub fn arclength_asymptotic(&self, q: f64) -> f64 {
        let (a, al) = (self.a_coef, self.alpha);
        a * q.powf(al) + q.powf(2.0 - al) / (2.0 * a * al * (2.0 - al))
    }

    /// Inverse of [`arclength`](Self::arclength), to about `1e-12` in `s`.
    pub fn q_of_s(&self, s: f64) -> Result<f64> {
        if !(s >= 0.0) {
            return Err(invalid(format!("arclength must be >= 0, got {s}")));
        }
        if s == 0.0 {
            return Ok(0.0);
        }
        // s >= max(q, A q^alpha) bounds the parameter from above.
        let q_hi = s.min((s / self.a_coef).powf(1.0 / self.alpha));
        let t_hi = q_hi.powf(self.alpha);
        let f = |t: f64| -> (f64, f64) {
            let q = t.max(0.0).powf(1.0 / self.alpha);
            let val = self.arclength(q).unwrap_or(f64::NAN) - s;
            (val, self.arclength_density(t))
        };
        let t = bisect_newton(f, 0.0, t_hi, 1e-15 * t_hi.max(1e-300))?;
        Ok(t.powf(1.0 / self.alpha))
    }

    /// Signed curvature at parameter `q`; negative and branch-independent.
    pub fn signed_curvature(&self, q: f64) -> Result<f64> {
        if !(q > 0.0) {
            return Err(invalid("curvature is singular at the cusp point"));
        }
        let (a, al) = (self.a_coef, self.alpha);
        let num = a * al * (al - 1.0) * q.powf(al - 2.0);
        let den = (1.0 + a * a * al * al * q.powf(2.0 * al - 2.0)).powf(1.5);
        Ok(num / den)
    }

    /// Leading small-`q` law of the curvature.
    pub fn curvature_asymptotic(&self, q: f64) -> f64 {
        let (a, al) = (self.a_coef, self.alpha);
        (al - 1.0) / (a * a * al * al) * q.powf(1.0 - 2.0 * al)
    }

    /// Unit tangent and normal at parameter `q`, oriented away from the cusp.
    pub fn frame(&self, branch: Branch, q: f64) -> ([f64; 2], [f64; 2]) {
        let d = branch.sign();
        let p = self.slope(q);
        let l = (1.0 + p * p).sqrt();
        ([d / l, p / l], [-d * p / l, 1.0 / l])
    }

    /// Cartesian point with natural coordinates `(s, n)` on a branch.
    pub fn natural_to_cartesian(&self, branch: Branch, s: f64, n: f64) -> Result<[f64; 2]> {
        let q = self.q_of_s(s)?;
        if q == 0.0 {
            return Err(invalid(
                "natural coordinates are undefined at the cusp point",
            ));
        }
        let h = 1.0 - self.signed_curvature(q)? * n;
        if !(h > 0.0) {
            return Err(Error::DegenerateMap { h });
        }
        let g = self.branch_point(branch, q);
        let (_, nu) = self.frame(branch, q);
        Ok([g[0] + n * nu[0], g[1] + n * nu[1]])
    }

    pub fn inner_scales(&self) -> InnerScales {
        let ell_a = self.a.powf(1.0 / (2.0 - self.alpha));
        InnerScales {
            ell_a,
            eps_a: 2.0 * std::f64::consts::PI * ell_a,
            u_ratio: ell_a,
        }
    }

    /// Anisotropic blow-up `(r, eta) -> (s, n) = (ell r, B ell^m r^m eta)`.
    pub fn blowup_map(&self, r: f64, eta: f64) -> [f64; 2] {
        let l = self.inner_scales().ell_a;
        let m = self.m();
        [l * r, self.b() * (l * r).powf(m) * eta]
    }

    /// Inverse of [`blowup_map`](Self::blowup_map) for `s > 0`.
    pub fn blowup_inverse(&self, s: f64, n: f64) -> Result<[f64; 2]> {
        if !(s > 0.0) {
            return Err(invalid("blow-up inverse needs s > 0"));
        }
        let l = self.inner_scales().ell_a;
        Ok([s / l, n / (self.b() * s.powf(self.m()))])
    }

    /// Coefficients of the flat Laplacian in blown-up variables.
    pub fn blowup_derivatives(&self, r: f64, eta: f64) -> Result<BlowupCoefficients> {
        if !(r > 0.0) {
            return Err(invalid("blow-up coefficients are singular at r = 0"));
        }
        if !(eta.abs() <= 1.0) {
            return Err(invalid(format!("|eta| must be <= 1, got {eta}")));
        }
        let l = self.inner_scales().ell_a;
        let m = self.m();
        let il2 = l.powi(-2);
        let b = self.b();
        Ok(BlowupCoefficients {
            w_rr: il2,
            w_reta: -il2 * 2.0 * m * eta / r,
            w_etaeta: il2 * m * m * eta * eta / (r * r),
            w_eta: il2 * m * (m + 1.0) * eta / (r * r),
            transverse: l.powf(-2.0 * m) / (b * b) * r.powf(-2.0 * m),
        })
    }

    /// Regularized graph `A (n^2 + delta^2)^(alpha/2) - A delta^alpha`.
    pub fn rounded_graph(&self, delta: f64, n: f64) -> Result<f64> {
        if !(delta > 0.0) {
            return Err(invalid("rounding parameter must be positive"));
        }
        let (a, al) = (self.a_coef, self.alpha);
        Ok(a * (n * n + delta * delta).powf(al / 2.0) - a * delta.powf(al))
    }

    /// Tip radius of curvature of the rounded graph, `delta^(2-alpha) / (A alpha)`.
    pub fn tip_radius(&self, delta: f64) -> Result<f64> {
        if !(delta > 0.0) {
            return Err(invalid("rounding parameter must be positive"));
        }
        Ok(delta.powf(2.0 - self.alpha) / (self.a_coef * self.alpha))
    }

    /// Outer expansion parameter `a |s|^(alpha-2)`; equals one at `|s| = ell_a`.
    pub fn outer_validity(&self, s: f64) -> f64 {
        let l = self.inner_scales().ell_a;
        (s.abs() / l).powf(self.alpha - 2.0)
    }
}

/// Branch index of the cusp: `x > 0` or `x < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Inner longitudinal scale and derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerScales {
    pub ell_a: f64,
    pub eps_a: f64,
    /// Inner-to-Rayleigh displacement ratio.
    pub u_ratio: f64,
}

/// `Delta w = w_rr W_rr + w_reta W_reta + (w_etaeta + transverse) W_etaeta + w_eta W_eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowupCoefficients {
    pub w_rr: f64,
    pub w_reta: f64,
    pub w_etaeta: f64,
    pub w_eta: f64,
    pub transverse: f64,
}

/// Neumann eigenpair `k` of `-phi'' = nu phi` on `[-1, 1]`.
pub fn neumann_mode(k: u32, eta: f64) -> (f64, f64) {
    let kk = k as f64 * std::f64::consts::PI;
    (kk * kk / 4.0, (kk * (eta + 1.0) / 2.0).cos())
}
