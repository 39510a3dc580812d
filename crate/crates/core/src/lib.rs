//! Local asymptotics of Rayleigh-wave fields near cuspidal ridges and gorges.
//!
//! The crate works in dimensionless units with the flat half-space Rayleigh
//! wavelength normalized to one. It provides:
//!
//! - [`material`]: elastic moduli, wave speeds and the Rayleigh root;
//! - [`geometry`]: cusp branches, arclength, curvature, natural coordinates,
//!   inner scales, the anisotropic blow-up and the rounded cusp;
//! - [`rayleigh`]: the flat Rayleigh eigenmode and its phasor;
//! - [`outer`]: first-order outer operators, projection constants and the
//!   wavelength correction;
//! - [`horn`]: the ridge as a vanishing-width elastic horn;
//! - [`gorge`]: the gorge as a crack-like notch (Williams field);
//! - [`fit`]: log-log scaling fits shared by the studies.

pub mod error;
pub mod fit;
pub mod geometry;
pub mod gorge;
pub mod horn;
pub mod material;
pub mod numerics;
pub mod outer;
pub mod rayleigh;
pub mod tensor;

pub use error::{Error, Result};
pub use fit::{fit_loglog, ScalingFit};
pub use geometry::{CuspShape, InnerScales};
pub use material::{ElasticModuli, WaveSpeeds};
pub use tensor::Stress2;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
