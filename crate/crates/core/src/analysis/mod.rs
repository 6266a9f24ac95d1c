//! Error norms, DG norms, stability constants and audits, convergence
//! orders, traces and interpolation baselines.

mod norms;
mod rates;
mod stability;
mod trace;

pub use norms::{
    difference_norms, discrete_norms, discrete_sample, error_norms, exact_norms, field_norms,
    interpolation_baseline, ErrorPair, ErrorReport, FieldNorms, Sample,
};
pub use rates::{convergence_rates, observed_order, Order, RateRow};
pub use stability::{
    data_functional, gamma_from_edges, stability_audit, stability_constants, EdgePenalty,
    StabilityAudit, StabilityConstants,
};
pub use trace::{trace_sample, TraceField};
