//! Small numerical kernels: adaptive quadrature, an embedded Runge-Kutta
//! integrator, safeguarded root finding and exponential-polynomial algebra.

pub mod expoly;
pub mod ode;
pub mod quad;
pub mod roots;

pub use expoly::{inner2, ExpPoly, ExpPoly2, ExpTerm};
pub use quad::{integrate, integrate_complex, integrate_semi_infinite, QuadResult};
pub use roots::bisect_newton;
