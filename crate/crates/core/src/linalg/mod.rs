//! Complex sparse storage and direct solves.

mod lu;
mod sparse;

pub use lu::{relative_residual, sparse_lu_solve, SparseLu, RESIDUAL_TOLERANCE};
pub use sparse::{matvec, norm2, CsrMatrix, TripletBuilder};
