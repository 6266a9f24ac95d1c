//! Shared fixtures for the benchmarks.

use ldg_helmholtz::{build_structured_mesh, FluxParams, Mesh, RadialProblem};

/// Mesh sizes used across the benchmarks.
pub const SIZES: [usize; 3] = [10, 20, 40];

/// Structured mesh, radial problem at `k = 10` and the default parameters.
pub fn fixture(m: usize) -> (Mesh, RadialProblem, FluxParams) {
    (
        build_structured_mesh(m).expect("m >= 1"),
        RadialProblem::new(10.0).expect("k > 0"),
        FluxParams::default(),
    )
}
