//! Finite sums `sum_j c_j n^{k_j} exp(-a_j n)` with complex `c_j` and `a_j > 0`.
//!
//! The Rayleigh profile and every first-order datum built from it belong to
//! this class, so their half-line integrals reduce to `k! / a^{k+1}`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub coef: C64,
    pub power: u32,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExpPoly {
    terms: Vec<ExpTerm>,
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly { terms: Vec::new() }
    }

    pub fn term(coef: C64, power: u32, rate: f64) -> Self {
        ExpPoly {
            terms: vec![ExpTerm { coef, power, rate }],
        }
        .simplified()
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    /// Merge terms with identical `(power, rate)` and drop exact zeros.
    fn simplified(mut self) -> Self {
        let mut merged: Vec<ExpTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged
                .iter_mut()
                .find(|m| m.power == t.power && m.rate == t.rate)
            {
                Some(m) => m.coef += t.coef,
                None => merged.push(t),
            }
        }
        merged.retain(|t| t.coef != C64::new(0.0, 0.0));
        merged.sort_by(|a, b| a.rate.total_cmp(&b.rate).then(a.power.cmp(&b.power)));
        ExpPoly { terms: merged }
    }

    pub fn eval(&self, n: f64) -> C64 {
        self.terms
            .iter()
            .map(|t| t.coef * n.powi(t.power as i32) * (-t.rate * n).exp())
            .sum()
    }

    pub fn scale(&self, c: C64) -> Self {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|t| ExpTerm {
                    coef: t.coef * c,
                    ..*t
                })
                .collect(),
        }
        .simplified()
    }

    /// Multiply by the depth variable `n`.
    pub fn times_n(&self) -> Self {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|t| ExpTerm {
                    power: t.power + 1,
                    ..*t
                })
                .collect(),
        }
    }

    /// Derivative in `n`.
    pub fn deriv(&self) -> Self {
        let mut out = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            if t.power > 0 {
                out.push(ExpTerm {
                    coef: t.coef * f64::from(t.power),
                    power: t.power - 1,
                    rate: t.rate,
                });
            }
            out.push(ExpTerm {
                coef: -t.coef * t.rate,
                power: t.power,
                rate: t.rate,
            });
        }
        ExpPoly { terms: out }.simplified()
    }

    pub fn conj(&self) -> Self {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|t| ExpTerm {
                    coef: t.coef.conj(),
                    ..*t
                })
                .collect(),
        }
    }

    /// `int_0^inf self(n) dn`, exact.
    pub fn integral(&self) -> C64 {
        self.terms
            .iter()
            .map(|t| t.coef * factorial(t.power) / t.rate.powi(t.power as i32 + 1))
            .sum()
    }

    /// `int_0^inf self(n) * conj(other(n)) dn`, exact.
    pub fn inner(&self, other: &ExpPoly) -> C64 {
        (self.clone() * other.conj()).integral()
    }

    pub fn max_abs_coef(&self) -> f64 {
        self.terms.iter().map(|t| t.coef.norm()).fold(0.0, f64::max)
    }
}

impl Add for ExpPoly {
    type Output = ExpPoly;
    fn add(mut self, rhs: ExpPoly) -> ExpPoly {
        self.terms.extend(rhs.terms);
        self.simplified()
    }
}

impl Sub for ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: ExpPoly) -> ExpPoly {
        self + (-rhs)
    }
}

impl Neg for ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: ExpPoly) -> ExpPoly {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                out.push(ExpTerm {
                    coef: a.coef * b.coef,
                    power: a.power + b.power,
                    rate: a.rate + b.rate,
                });
            }
        }
        ExpPoly { terms: out }.simplified()
    }
}

impl Mul<C64> for ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: C64) -> ExpPoly {
        self.scale(rhs)
    }
}

impl Mul<f64> for ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: f64) -> ExpPoly {
        self.scale(C64::new(rhs, 0.0))
    }
}

/// Pair `(u(n), v(n))` of exponential polynomials.
pub type ExpPoly2 = [ExpPoly; 2];

/// `int_0^inf f . conj(g) dn` for vector profiles.
pub fn inner2(f: &ExpPoly2, g: &ExpPoly2) -> C64 {
    f[0].inner(&g[0]) + f[1].inner(&g[1])
}
