//! First-order outer correction: geometric and wavelength operators applied to
//! the Rayleigh mode, their projections onto the adjoint mode, and the first
//! wavelength correction `m1`.
//!
//! Every datum is `e^{iqs}` times a depth profile, so the depth parts are kept
//! as exponential polynomials and projected in closed form.

use crate::error::invalid;
use crate::geometry::CuspShape;
use crate::material::ElasticModuli;
use crate::numerics::{inner2, integrate, integrate_complex, ExpPoly2};
use crate::rayleigh::RayleighMode;
use crate::{Error, Result, C64};

/// Depth profiles of the first-order data, all for the unit phasor scaled by
/// the mode amplitude.
#[derive(Debug, Clone)]
pub struct FirstOrderData {
    /// Interior geometric datum per unit curvature.
    pub f_kappa: ExpPoly2,
    /// Interior geometric datum per unit curvature derivative.
    pub f_kappa_prime: ExpPoly2,
    /// Boundary geometric datum per unit curvature.
    pub g_kappa: [C64; 2],
    /// Interior wavelength datum per unit variation.
    pub p_m: ExpPoly2,
    /// Boundary wavelength datum per unit variation.
    pub q_m: [C64; 2],
    /// The profile itself.
    pub phi: ExpPoly2,
}

impl FirstOrderData {
    pub fn new(mode: &RayleighMode) -> Self {
        let [u0, v0] = mode.profile_expoly();
        let (u, v) = (u0.scale(mode.amplitude), v0.scale(mode.amplitude));
        let (l, mu) = (mode.moduli.lambda, mode.moduli.mu);
        let lp = l + 2.0 * mu;
        let q = mode.q;
        let iq = C64::new(0.0, q);
        let (du, dv) = (u.deriv(), v.deriv());
        let nu = u.times_n();
        let nv = v.times_n();
        let ndu = du.times_n();
        let ndv = dv.times_n();

        let f1 = (nu.clone() * (lp * q * q) - ndv.scale(iq * l))
            + (nu.clone() * (lp * q * q) + v.scale(iq * lp))
            - (v.scale(iq * mu) + ndv.scale(iq * mu) + du.clone() * mu)
            + (du.clone() * (2.0 * mu) + v.scale(iq * 2.0 * mu));
        let f2 = (nv.clone() * (mu * q * q) - ndu.scale(iq * mu))
            - (nv.clone() * (-mu * q * q) + u.scale(iq * mu))
            - (u.scale(iq * l) + ndu.scale(iq * l) - dv.clone() * l)
            - (u.scale(iq * 2.0 * mu) - dv.clone() * (2.0 * mu));
        let fp1 = (nu.scale(iq) - v.clone()) * -lp;
        let fp2 = (nv.scale(iq) + u.clone()) * -mu;

        let p1 = u.clone() * (-2.0 * lp * q * q) + dv.scale(iq * (l + mu));
        let p2 = du.scale(iq * (mu + l)) + v.clone() * (-2.0 * mu * q * q);

        let (u_0, v_0) = (u.eval(0.0), v.eval(0.0));
        FirstOrderData {
            f_kappa: [f1, f2],
            f_kappa_prime: [fp1, fp2],
            g_kappa: [-u_0 * mu, v_0 * l],
            p_m: [p1, p2],
            q_m: [iq * v_0 * mu, iq * u_0 * l],
            phi: [u, v],
        }
    }
}

fn dot_conj(a: &[C64; 2], b: &[C64; 2]) -> C64 {
    a[0] * b[0].conj() + a[1] * b[1].conj()
}

fn eval2(f: &ExpPoly2, n: f64) -> [C64; 2] {
    [f[0].eval(n), f[1].eval(n)]
}

impl FirstOrderData {
    fn l1_geom(&self, q: f64, k: f64, k_prime: f64, s: f64, n: f64) -> [C64; 2] {
        let e = C64::from_polar(1.0, q * s);
        let a = eval2(&self.f_kappa, n);
        let b = eval2(&self.f_kappa_prime, n);
        [
            e * (a[0] * k + b[0] * k_prime),
            e * (a[1] * k + b[1] * k_prime),
        ]
    }

    fn b1_geom(&self, q: f64, k: f64, s: f64) -> [C64; 2] {
        let e = C64::from_polar(1.0, q * s);
        [e * self.g_kappa[0] * k, e * self.g_kappa[1] * k]
    }

    fn p_q(&self, q: f64, nu: f64, s: f64, n: f64) -> ([C64; 2], [C64; 2]) {
        let e = C64::from_polar(1.0, q * s);
        let p = eval2(&self.p_m, n);
        (
            [e * p[0] * nu, e * p[1] * nu],
            [e * self.q_m[0] * nu, e * self.q_m[1] * nu],
        )
    }
}

/// Geometric interior datum `-L1geom W0` at `(s, n)`, with the curvature
/// coefficient and its derivative supplied as numbers.
pub fn apply_l1_geom(mode: &RayleighMode, k: f64, k_prime: f64, s: f64, n: f64) -> [C64; 2] {
    FirstOrderData::new(mode).l1_geom(mode.q, k, k_prime, s, n)
}

/// Geometric boundary datum `-B1geom W0 = (-mu k u0, lambda k v0)` at `n = 0`.
pub fn apply_b1_geom(mode: &RayleighMode, k: f64, s: f64) -> [C64; 2] {
    FirstOrderData::new(mode).b1_geom(mode.q, k, s)
}

/// Wavelength operators `(P_nu W0, Q_nu W0)`; the boundary part is at `n = 0`.
pub fn apply_p_q(mode: &RayleighMode, nu: f64, s: f64, n: f64) -> ([C64; 2], [C64; 2]) {
    FirstOrderData::new(mode).p_q(mode.q, nu, s, n)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    pub q: f64,
    pub mu: f64,
    pub lambda: f64,
    pub rho: f64,
}

/// Projections of the first-order data onto the adjoint Rayleigh mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionConstants {
    pub c_kappa: C64,
    pub c_kappa_prime: C64,
    pub d_m: C64,
    pub normalization: Normalization,
}

impl ProjectionConstants {
    /// Closed-form projections for the given mode, amplitude included.
    pub fn from_mode(mode: &RayleighMode) -> Self {
        let d = FirstOrderData::new(mode);
        let phi0 = eval2(&d.phi, 0.0);
        ProjectionConstants {
            c_kappa: inner2(&d.f_kappa, &d.phi) + dot_conj(&d.g_kappa, &phi0),
            c_kappa_prime: inner2(&d.f_kappa_prime, &d.phi),
            d_m: inner2(&d.p_m, &d.phi) + dot_conj(&d.q_m, &phi0),
            normalization: normalization(mode),
        }
    }
}

fn normalization(mode: &RayleighMode) -> Normalization {
    Normalization {
        q: mode.q,
        mu: mode.moduli.mu,
        lambda: mode.moduli.lambda,
        rho: mode.moduli.rho,
    }
}

/// Projection constants for the unit phasor at wavenumber `q`.
pub fn projection_constants(moduli: &ElasticModuli, q: f64) -> Result<ProjectionConstants> {
    Ok(ProjectionConstants::from_mode(&RayleighMode::new(
        *moduli, q,
    )?))
}

/// Depth cut-off of the numerical projections: `60 / (beta q)`.
pub fn quadrature_depth(mode: &RayleighMode) -> f64 {
    60.0 / (mode.beta * mode.q)
}

fn depth_integral<F: Fn(f64) -> C64>(f: F, h: f64) -> Result<C64> {
    let (v, err) = integrate_complex(f, 0.0, h, 1e-13, 1e-13)?;
    if !(err < 1e-9) {
        return Err(Error::Quadrature {
            value: v.norm(),
            error: err,
        });
    }
    Ok(v)
}

/// Numerical projections from pointwise operator evaluations, truncated at
/// [`quadrature_depth`]. Independent of the closed-form integration.
pub fn projection_constants_quadrature(mode: &RayleighMode) -> Result<ProjectionConstants> {
    let h = quadrature_depth(mode);
    let d = FirstOrderData::new(mode);
    let q = mode.q;
    let adj = |n: f64| {
        let f = mode.profile(n);
        [f[0] * mode.amplitude, f[1] * mode.amplitude]
    };
    let phi0 = adj(0.0);
    let ck = depth_integral(|n| dot_conj(&d.l1_geom(q, 1.0, 0.0, 0.0, n), &adj(n)), h)?
        + dot_conj(&d.b1_geom(q, 1.0, 0.0), &phi0);
    let ckp = depth_integral(|n| dot_conj(&d.l1_geom(q, 0.0, 1.0, 0.0, n), &adj(n)), h)?;
    let dm = depth_integral(|n| dot_conj(&d.p_q(q, 1.0, 0.0, n).0, &adj(n)), h)?
        + dot_conj(&d.p_q(q, 1.0, 0.0, 0.0).1, &phi0);
    Ok(ProjectionConstants {
        c_kappa: ck,
        c_kappa_prime: ckp,
        d_m: dm,
        normalization: normalization(mode),
    })
}

/// Leading curvature coefficient `k(s) = alpha (alpha - 1) |s|^(alpha - 2)`.
pub fn curvature_coefficient(alpha: f64, s: f64) -> f64 {
    alpha * (alpha - 1.0) * s.abs().powf(alpha - 2.0)
}

/// Its derivative `k'(s)`.
pub fn curvature_coefficient_derivative(alpha: f64, s: f64) -> f64 {
    alpha * (alpha - 1.0) * (alpha - 2.0) * s.signum() * s.abs().powf(alpha - 3.0)
}

/// First wavelength correction on the truncated interval `delta < |s| < R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavelengthCorrection {
    pub m1: f64,
    pub interval: (f64, f64),
    /// `int_I k ds`.
    pub curvature_integral: f64,
    /// Imaginary part of the projected data; left unconstrained.
    pub quadrature_part: f64,
}

impl WavelengthCorrection {
    /// `|I| = 2 (R - delta)`.
    pub fn interval_length(&self) -> f64 {
        2.0 * (self.interval.1 - self.interval.0)
    }

    /// `lambda_eff / lambda_R = 1 - a m1` to first order.
    pub fn effective_wavelength_ratio(&self, a: f64) -> f64 {
        1.0 - a * self.m1
    }
}

fn check_interval(interval: (f64, f64)) -> Result<()> {
    let (d, r) = interval;
    if !(d > 0.0 && d < r) || !r.is_finite() {
        return Err(invalid(format!("need 0 < delta < R, got ({d}, {r})")));
    }
    Ok(())
}

/// Solve `D_m m1 |I| = Re int_I (C_k k + C_k' k') ds`.
pub fn solve_m1(
    c: &ProjectionConstants,
    shape: &CuspShape,
    interval: (f64, f64),
) -> Result<WavelengthCorrection> {
    check_interval(interval)?;
    let dm = c.d_m.re;
    if dm.abs() <= 1e-12 * c.d_m.norm().max(1.0) {
        return Err(Error::Degenerate(
            "D_m vanishes; the wavelength channel is resonant".into(),
        ));
    }
    let (d, r) = interval;
    let al = shape.alpha();
    let kint = 2.0 * al * (r.powf(al - 1.0) - d.powf(al - 1.0));
    // k' is odd, so its integral over the symmetric interval is zero.
    let rhs = c.c_kappa * kint;
    let len = 2.0 * (r - d);
    Ok(WavelengthCorrection {
        m1: rhs.re / (dm * len),
        interval,
        curvature_integral: kint,
        quadrature_part: rhs.im,
    })
}

/// Full projected Fredholm integral for a given `m1`, built by nested
/// quadrature from pointwise operator evaluations.
pub fn fredholm_integral(
    mode: &RayleighMode,
    alpha: f64,
    m1: f64,
    interval: (f64, f64),
) -> Result<C64> {
    check_interval(interval)?;
    let h = quadrature_depth(mode);
    let data = FirstOrderData::new(mode);
    let q = mode.q;
    let adj = |s: f64, n: f64| {
        let w = mode.phasor_field(s, n);
        [w[0] * mode.amplitude, w[1] * mode.amplitude]
    };
    let density = |s: f64| -> C64 {
        let k = curvature_coefficient(alpha, s);
        let kp = curvature_coefficient_derivative(alpha, s);
        let interior = integrate_complex(
            |n| {
                let f = data.l1_geom(q, k, kp, s, n);
                let (p, _) = data.p_q(q, m1, s, n);
                dot_conj(&[f[0] - p[0], f[1] - p[1]], &adj(s, n))
            },
            0.0,
            h,
            1e-12 * (1.0 + k.abs() + kp.abs() + m1.abs()),
            1e-13,
        )
        .map(|r| r.0)
        .unwrap_or(C64::new(f64::NAN, f64::NAN));
        let g = data.b1_geom(q, k, s);
        let (_, qv) = data.p_q(q, m1, s, 0.0);
        interior + dot_conj(&[g[0] - qv[0], g[1] - qv[1]], &adj(s, 0.0))
    };
    let (d, r) = interval;
    let mut total = C64::new(0.0, 0.0);
    for (a, b) in [(-r, -d), (d, r)] {
        let re = integrate(|s| density(s).re, a, b, 1e-13, 1e-12)?;
        let im = integrate(|s| density(s).im, a, b, 1e-13, 1e-12)?;
        total += C64::new(re.value, im.value);
    }
    if !total.re.is_finite() {
        return Err(Error::Quadrature {
            value: total.re,
            error: f64::INFINITY,
        });
    }
    Ok(total)
}

/// `|Re|` of the projected Fredholm integral; vanishes at the solved `m1`.
pub fn fredholm_residual(
    mode: &RayleighMode,
    alpha: f64,
    m1: f64,
    interval: (f64, f64),
) -> Result<f64> {
    Ok(fredholm_integral(mode, alpha, m1, interval)?.re.abs())
}

/// Geometric rotation part of the first correction at `(s, n)`, for the
/// graph `f(s) = |s|^alpha`.
pub fn w1_singular_part(mode: &RayleighMode, alpha: f64, s: f64, n: f64) -> Result<[C64; 2]> {
    if s == 0.0 {
        return Err(invalid("singular part is unbounded at s = 0"));
    }
    let fp = alpha * s.signum() * s.abs().powf(alpha - 1.0);
    let w = mode.phasor_field(s, n);
    let iq = C64::new(0.0, mode.q);
    let (us, vs) = (iq * w[0], iq * w[1]);
    Ok([(w[1] - us * n) * fp, (-w[0] - vs * n) * fp])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::{fit_loglog, logspace};

    fn reference_mode() -> RayleighMode {
        RayleighMode::new(ElasticModuli::new(2.0, 1.0, 1.0).unwrap(), 1.0).unwrap()
    }

    #[test]
    fn constants_at_unit_wavenumber() {
        let c = projection_constants(&ElasticModuli::new(2.0, 1.0, 1.0).unwrap(), 1.0).unwrap();
        assert!((c.c_kappa.re - 5.920160973).abs() < 1e-6 * 5.92);
        assert!(c.c_kappa.im.abs() < 1e-6);
        assert!(c.c_kappa_prime.re.abs() < 1e-6);
        assert!((c.c_kappa_prime.im + 3.640899899).abs() < 1e-6 * 3.64);
        assert!((c.d_m.re + 2.976857206).abs() < 1e-6 * 2.98);
        assert!(c.d_m.im.abs() < 1e-6);
    }

    #[test]
    fn closed_form_matches_quadrature() {
        for (l, q) in [(2.0, 1.0), (1.0, 2.0 * std::f64::consts::PI), (3.5, 0.7)] {
            let md = RayleighMode::new(ElasticModuli::new(l, 1.0, 1.0).unwrap(), q).unwrap();
            let a = ProjectionConstants::from_mode(&md);
            let b = projection_constants_quadrature(&md).unwrap();
            let scale = a.c_kappa.norm().max(1.0);
            assert!((a.c_kappa - b.c_kappa).norm() < 1e-9 * scale);
            assert!((a.c_kappa_prime - b.c_kappa_prime).norm() < 1e-9 * scale);
            assert!((a.d_m - b.d_m).norm() < 1e-9 * scale);
        }
    }

    #[test]
    fn operators_are_linear() {
        let md = reference_mode();
        let z = apply_l1_geom(&md, 0.0, 0.0, 0.4, 0.3);
        assert_eq!(z, [C64::new(0.0, 0.0); 2]);
        let one = apply_l1_geom(&md, 1.0, 0.0, 0.4, 0.3);
        let two = apply_l1_geom(&md, 2.0, 0.0, 0.4, 0.3);
        assert!((two[0] - one[0] * 2.0).norm() < 1e-15 && (two[1] - one[1] * 2.0).norm() < 1e-15);
        let b = apply_b1_geom(&md, 0.0, 0.2);
        assert_eq!(b, [C64::new(0.0, 0.0); 2]);
        assert!(apply_b1_geom(&md, 1.0, 0.0)[0].norm() > 0.1);
        let (p0, q0) = apply_p_q(&md, 0.0, 0.1, 0.2);
        assert_eq!((p0, q0), ([C64::new(0.0, 0.0); 2], [C64::new(0.0, 0.0); 2]));
        let (p1, q1) = apply_p_q(&md, 1.0, 0.1, 0.2);
        let (p3, q3) = apply_p_q(&md, 3.0, 0.1, 0.2);
        for i in 0..2 {
            assert!((p3[i] - p1[i] * 3.0).norm() < 1e-14);
            assert!((q3[i] - q1[i] * 3.0).norm() < 1e-14);
        }
    }

    #[test]
    fn boundary_datum_transcription() {
        let md = reference_mode();
        let w = md.phasor_field(0.3, 0.0);
        let g = apply_b1_geom(&md, 0.7, 0.3);
        let (l, mu) = (md.moduli.lambda, md.moduli.mu);
        assert!((g[0] + w[0] * mu * 0.7).norm() < 1e-15);
        assert!((g[1] - w[1] * l * 0.7).norm() < 1e-15);
    }

    type Field = Box<dyn Fn(f64, f64) -> C64>;

    // Central differences in s and n of a pointwise complex field.
    fn ds(f: &dyn Fn(f64, f64) -> C64, s: f64, n: f64, h: f64) -> C64 {
        (f(s + h, n) - f(s - h, n)) / (2.0 * h)
    }
    fn dn(f: &dyn Fn(f64, f64) -> C64, s: f64, n: f64, h: f64) -> C64 {
        (f(s, n + h) - f(s, n - h)) / (2.0 * h)
    }

    // The displayed geometric operator applied by finite differences, with a
    // locally linear curvature k(s) = k0 + k1 (s - s0).
    fn fd_geom(md: &RayleighMode, k0: f64, k1: f64, s0: f64, n0: f64, h: f64) -> [C64; 2] {
        let (l, mu) = (md.moduli.lambda, md.moduli.mu);
        let lp = l + 2.0 * mu;
        let m1 = md.clone();
        let m2 = md.clone();
        let u: Field = Box::new(move |s, n| m1.phasor_field(s, n)[0]);
        let v: Field = Box::new(move |s, n| m2.phasor_field(s, n)[1]);
        let k = move |s: f64| k0 + k1 * (s - s0);
        let us = |s: f64, n: f64| ds(&*u, s, n, h);
        let un = |s: f64, n: f64| dn(&*u, s, n, h);
        let vs = |s: f64, n: f64| ds(&*v, s, n, h);
        let vn = |s: f64, n: f64| dn(&*v, s, n, h);
        let t1a = |s: f64, n: f64| us(s, n) * lp + vn(s, n) * l;
        let t1b = |s: f64, n: f64| (us(s, n) * n - v(s, n)) * (lp * k(s));
        let t1c = |s: f64, n: f64| (vs(s, n) * n + u(s, n)) * (mu * k(s));
        let t2a = |s: f64, n: f64| (un(s, n) + vs(s, n)) * mu;
        let t2c = |s: f64, n: f64| (us(s, n) * n - v(s, n)) * (l * k(s));
        let (s, n) = (s0, n0);
        let kk = k(s);
        let c1 = -ds(&t1a, s, n, h) * (n * kk) - ds(&t1b, s, n, h) - dn(&t1c, s, n, h)
            + (un(s, n) + vs(s, n)) * (2.0 * mu * kk);
        let c2 = -ds(&t2a, s, n, h) * (n * kk)
            - ds(&t1c, s, n, h)
            - dn(&t2c, s, n, h)
            - (us(s, n) - vn(s, n)) * (2.0 * mu * kk);
        [c1, c2]
    }

    #[test]
    fn geometric_operator_against_finite_differences() {
        let md = reference_mode();
        let (k0, k1) = (0.8, -1.7);
        let want = apply_l1_geom(&md, k0, k1, 0.0, 0.3);
        let mut prev = f64::INFINITY;
        for h in [4e-3, 2e-3, 1e-3] {
            let got = fd_geom(&md, k0, k1, 0.0, 0.3, h);
            let err = (got[0] - want[0]).norm() + (got[1] - want[1]).norm();
            assert!(err < prev);
            prev = err;
        }
        assert!(prev < 1e-5, "finite-difference error {prev}");
    }

    #[test]
    fn wavelength_operator_against_finite_differences() {
        let md = reference_mode();
        let (l, mu) = (md.moduli.lambda, md.moduli.mu);
        let lp = l + 2.0 * mu;
        let h = 1e-3;
        let u = |s: f64, n: f64| md.phasor_field(s, n)[0];
        let v = |s: f64, n: f64| md.phasor_field(s, n)[1];
        let us = |s: f64, n: f64| ds(&u, s, n, h);
        let vs = |s: f64, n: f64| ds(&v, s, n, h);
        let un = |s: f64, n: f64| dn(&u, s, n, h);
        let vn = |s: f64, n: f64| dn(&v, s, n, h);
        let a1 = |s: f64, n: f64| us(s, n) * lp + vn(s, n) * l;
        let a2 = |s: f64, n: f64| us(s, n) * lp;
        let a3 = |s: f64, n: f64| vs(s, n) * mu;
        let b1 = |s: f64, n: f64| (un(s, n) + vs(s, n)) * mu;
        let b3 = |s: f64, n: f64| us(s, n) * l;
        let (s, n) = (0.2, 0.3);
        let p1 = ds(&a1, s, n, h) + ds(&a2, s, n, h) + dn(&a3, s, n, h);
        let p2 = ds(&b1, s, n, h) + ds(&a3, s, n, h) + dn(&b3, s, n, h);
        let (p, _) = apply_p_q(&md, 1.0, s, n);
        assert!((p[0] - p1).norm() < 1e-5 && (p[1] - p2).norm() < 1e-5);
        let (_, qv) = apply_p_q(&md, 1.0, s, 0.0);
        assert!((qv[0] - vs(s, 0.0) * mu).norm() < 1e-6);
        assert!((qv[1] - us(s, 0.0) * l).norm() < 1e-6);
    }

    #[test]
    fn m1_closed_form_and_wedge_limit() {
        let c = projection_constants(&ElasticModuli::new(2.0, 1.0, 1.0).unwrap(), 1.0).unwrap();
        let shape = CuspShape::from_graph(1.0, 0.5).unwrap();
        let (d, r) = (0.1, 2.0);
        let w = solve_m1(&c, &shape, (d, r)).unwrap();
        let al = 0.5;
        let want = c.c_kappa.re * al * (r.powf(al - 1.0) - d.powf(al - 1.0)) / (c.d_m.re * (r - d));
        assert!((w.m1 - want).abs() < 1e-14 * want.abs());
        // numerical integral of k over the interval
        let num = 2.0
            * integrate(|s| curvature_coefficient(al, s), d, r, 1e-300, 1e-13)
                .unwrap()
                .value;
        assert!((num / w.curvature_integral - 1.0).abs() < 1e-10);
        let wedge = CuspShape::from_graph(1.0, 1.0 - 1e-15).unwrap();
        assert!(solve_m1(&c, &wedge, (d, r)).unwrap().m1.abs() < 1e-12);
        assert!((w.effective_wavelength_ratio(0.01) - (1.0 - 0.01 * w.m1)).abs() < 1e-16);
        assert!(solve_m1(&c, &shape, (0.5, 0.5)).is_err());
    }

    #[test]
    fn degenerate_dm_rejected() {
        let mut c = projection_constants(&ElasticModuli::new(2.0, 1.0, 1.0).unwrap(), 1.0).unwrap();
        c.d_m = C64::new(0.0, 0.0);
        let shape = CuspShape::from_graph(1.0, 0.5).unwrap();
        assert!(matches!(
            solve_m1(&c, &shape, (0.1, 1.0)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn m1_invariant_under_amplitude() {
        let shape = CuspShape::from_graph(1.0, 0.6).unwrap();
        let base = solve_m1(
            &ProjectionConstants::from_mode(&reference_mode()),
            &shape,
            (0.05, 1.5),
        )
        .unwrap();
        for amp in [
            C64::new(0.0, 1.0),
            C64::new(-2.5, 0.3),
            C64::new(1e-3, -1e-3),
        ] {
            let md = reference_mode().with_amplitude(amp);
            let c = ProjectionConstants::from_mode(&md);
            let w = solve_m1(&c, &shape, (0.05, 1.5)).unwrap();
            assert!((w.m1 - base.m1).abs() < 1e-12 * base.m1.abs());
        }
    }

    #[test]
    fn fredholm_condition_at_solved_m1() {
        let md = reference_mode();
        let c = ProjectionConstants::from_mode(&md);
        let al = 0.5;
        let shape = CuspShape::from_graph(1.0, al).unwrap();
        let iv = (0.1, 1.0);
        let w = solve_m1(&c, &shape, iv).unwrap();
        let res = fredholm_residual(&md, al, w.m1, iv).unwrap();
        assert!(res < 1e-8, "residual {res}");
        let off = fredholm_residual(&md, al, w.m1 + 0.1, iv).unwrap();
        let want = c.d_m.norm() * 0.1 * w.interval_length();
        assert!((off / want - 1.0).abs() < 1e-6);
        assert!(fredholm_residual(&md, al, w.m1, (0.3, 0.3)).is_err());
    }

    #[test]
    fn singular_part_grows_like_slope() {
        let md = RayleighMode::unit_wavelength(ElasticModuli::new(2.0, 1.0, 1.0).unwrap()).unwrap();
        for al in [0.3, 0.5, 0.8] {
            let samples: Vec<(f64, f64)> = logspace(1e-8, 1e-4, 9)
                .into_iter()
                .map(|s| {
                    let w = w1_singular_part(&md, al, s, 0.05).unwrap();
                    (s, (w[0].norm_sqr() + w[1].norm_sqr()).sqrt())
                })
                .collect();
            let f = fit_loglog(&samples, None).unwrap();
            assert!(
                (f.slope - (al - 1.0)).abs() < 0.02,
                "alpha {al}: slope {}",
                f.slope
            );
        }
        assert!(w1_singular_part(&md, 0.5, 0.0, 0.1).is_err());
    }

    proptest::proptest! {
        #[test]
        fn linearity_in_coefficients(k in -5.0f64..5.0, kp in -5.0f64..5.0, c in -3.0f64..3.0,
                                     s in -2.0f64..2.0, n in 0.0f64..3.0) {
            let md = reference_mode();
            let a = apply_l1_geom(&md, k, kp, s, n);
            let b = apply_l1_geom(&md, c * k, c * kp, s, n);
            for i in 0..2 {
                proptest::prop_assert!((b[i] - a[i] * c).norm() <= 1e-12 * (1.0 + a[i].norm() * c.abs()));
            }
            let (p, qv) = apply_p_q(&md, k, s, n);
            let (pc, qc) = apply_p_q(&md, c * k, s, n);
            for i in 0..2 {
                proptest::prop_assert!((pc[i] - p[i] * c).norm() <= 1e-12 * (1.0 + p[i].norm() * c.abs()));
                proptest::prop_assert!((qc[i] - qv[i] * c).norm() <= 1e-12 * (1.0 + qv[i].norm() * c.abs()));
            }
        }
    }
}
