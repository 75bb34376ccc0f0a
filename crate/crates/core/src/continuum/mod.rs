//! Continuum limits of coined walks: Hamiltonian extraction, relativistic normal
//! form, convergence rates, state embedding and lattice rotation symmetry.

mod canonical;
mod convergence;
mod embed;
mod hamiltonian;
mod rotation;

pub use canonical::{canonicalize, is_relativistic, CanonicalForm, Classification, RelativisticCheck};
pub use convergence::{convergence_error, preset_family, ConvergenceReport};
pub use embed::{embed_discrete_state, Embedding, Mapping};
pub use hamiltonian::{continuum_hamiltonian, ContinuumHamiltonian};
pub use rotation::{lattice_rotation_invariance, RotationReport};

use thiserror::Error;

use crate::walk::WalkError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContinuumError {
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("mass coin has an eigenvalue within {distance:.2e} of −1; the logarithm branch is ambiguous")]
    BranchAmbiguity { distance: f64 },
    #[error("canonical form needs a two-dimensional coin, got {0}")]
    CoinDim(usize),
    #[error("momentum coefficient is not Hermitian (defect {0:.3e})")]
    NonHermitian(f64),
    #[error("t/(step·a) = {steps} is not an integer for a = {a}")]
    NonIntegerSteps { a: f64, steps: f64 },
    #[error("cutoff {cutoff} exceeds the Brillouin-zone bound π/a = {max}")]
    CutoffOutOfRange { cutoff: f64, max: f64 },
    #[error("no grid momentum lies inside the cutoff")]
    EmptyTruncation,
    #[error("need at least two spacings, got {0}")]
    TooFewSpacings(usize),
    #[error("expected a {expected}D walk, got {got}D")]
    WrongDims { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
