//! Coined quantum walks on periodic cubic lattices.

mod decompose;
mod lattice;
mod presets;
mod state;
mod unitarity;
#[allow(clippy::module_inception)]
mod walk;

pub use decompose::{decompose_1d, WalkDecomposition};
pub use lattice::Lattice;
pub use presets::{build_preset, spin1_generators, Preset, PresetParams};
pub use state::{evolve, step, step_momentum, Evolution, WaveState};
pub use unitarity::{mass_decompose, verify_unitarity, MassDecomposition, UnitarityReport};
pub use walk::{CoinedWalk, Factor, Offset};

/// Inverse multi-axis DFT (`e^{+i…}`, unscaled) of site-major, coin-minor amplitudes.
pub fn fft_sites_inverse(data: &mut [crate::linalg::C64], extents: &[usize], coin_dim: usize) {
    state::fft_sites(data, extents, coin_dim, true);
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("extent {extent} on axis {axis} must be a positive even integer")]
    OddExtent { axis: usize, extent: usize },
    #[error("expected {expected} dimensions, got {got}")]
    DimsMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("walk is not unitary (deviation {0:.3e})")]
    NonUnitary(f64),
    #[error("decomposition failed to shrink the neighbourhood at step {0}")]
    DecompositionStalled(usize),
}
