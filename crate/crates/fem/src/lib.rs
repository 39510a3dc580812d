//! Plane-strain finite elements with constant-strain triangles.
//!
//! Structured meshes for the truncated horn (ridge) and the cuspidal notch
//! (gorge), stiffness assembly, Dirichlet elimination, a sparse direct
//! solver with a conjugate-gradient fallback, and stress post-processing.

pub mod assembly;
pub mod error;
pub mod generate;
pub mod io;
pub mod mesh;
pub mod post;
pub mod solve;
pub mod sparse;

pub use assembly::assemble;
pub use error::{Error, Result};
pub use generate::{generate_gorge_mesh, generate_rectangle, generate_ridge_mesh, GorgeResolution};
pub use mesh::{BoundaryTag, Mesh, MeshQuality};
pub use post::{sectional_resultants, stress_percentile, Resultants};
pub use solve::{apply_bc_and_solve, solve_static, Affine, Dirichlet, FieldSolution, Loads};
pub use sparse::{CsrMatrix, SolverChoice};
