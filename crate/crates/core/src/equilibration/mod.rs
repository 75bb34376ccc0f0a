//! Exact-diagonalization tools for equilibration: effective dimension, gap statistics,
//! finite-time averages, the expectation/measurement/subsystem bounds and the models used
//! to probe them.
//!
//! Time averages over `[0, T]` are uniform unless a filter weight says otherwise. Degenerate
//! energies are grouped within `1e−9·‖H‖`.

mod bounds;
mod dynamics;
mod filter;
mod gap_model;
mod gaps;
mod quadrature;
mod slow;
mod state;
mod system;
mod toy;

pub use bounds::{
    bound_expectation, bound_subsystem, bound_system, verify_bound, BoundInputs, BoundReport,
    BoundTarget, SUBSYSTEM_NODES,
};
pub use dynamics::{
    averaged_fluctuation, evolve_expectation, fluctuation_by_quadrature, running_average, GapVector,
};
pub use filter::{energy_filter, FilterWeight};
pub use gap_model::{exponential_gap_model, sample_exponential_spectrum, GapModelReport};
pub use gaps::{gap_stats, gap_stats_from_levels, GapStats};
pub use quadrature::GaussLegendre;
pub use slow::{slow_equilibration_construct, SlowEquilibration};
pub use state::{
    distinguishability, effective_dimension, partial_trace, purify, pure_state,
    time_average_state, trace_distance, validate_state, Horizon, Measurement, MeasurementSet,
};
pub use system::{heisenberg_chain, heisenberg_chain_with, heisenberg_couplings, SpectralSystem, MAX_SPINS};
pub use toy::{qubit_oscillator_model, ToyModel};

use thiserror::Error;

/// Largest Hilbert-space dimension handled densely.
pub const DENSE_DIM_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EquilibrationError {
    #[error("{spins} spins exceed the limit of {max}")]
    TooManySpins { spins: usize, max: usize },
    #[error("dimension {dim} exceeds the dense limit of {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("the state is an energy eigenstate (σ_E = 0)")]
    ZeroEnergySpread,
    #[error("coupling λ = 0 leaves every block degenerate")]
    ZeroCoupling,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64, EquilibrationError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(EquilibrationError::NonPositive { name, value })
    }
}
