//! Local discontinuous Galerkin methods for the Helmholtz equation
//! `-Δu - k²u = f` with the absorbing boundary condition `∂u/∂n + iku = g`
//! on the unit square, using linear elements.
//!
//! The crate provides two mixed LDG schemes, the primal interior-penalty form
//! of the first one, and a conforming P1 baseline, together with the error
//! analysis and the batch studies used to examine them.

pub mod analysis;
pub mod assembly;
pub mod error;
pub mod linalg;
pub mod mesh;
pub mod problem;
pub mod quadrature;
pub mod solve;
pub mod special;
pub mod study;

pub use analysis::{error_norms, ErrorReport, StabilityAudit};
pub use assembly::{AssembledSystem, DofMap, FluxParams, Method, Scaling};
pub use error::{Error, Result};
pub use linalg::CsrMatrix;
pub use mesh::{build_structured_mesh, EdgeInfo, Mesh};
pub use problem::{HelmholtzProblem, LinearProblem, RadialProblem, ZeroProblem, C64};
pub use solve::{solve, DiscreteSolution};
