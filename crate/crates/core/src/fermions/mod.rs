//! Fermionic operator algebra: normal-ordered polynomials, Jordan–Wigner images under
//! arbitrary mode orderings, fermionic swaps, Majorana link encodings with their
//! invariant state, the doubled-system local decomposition and the discrete Dirac vacuum.
//!
//! Dense qubit vectors use bit `k` of the basis index for qubit `k`, with `1` meaning occupied.

mod doubled;
mod jw;
mod majorana;
mod pauli;
mod polynomial;
mod swap;
mod vacuum;

pub use doubled::{doubled_local_decomposition, second_quantize, DoubledReport, DOUBLED_MODE_CAP};
pub use jw::{
    fock_matrix, jordan_wigner, jw_annihilation, jw_creation, vacuum_state, ModeOrdering,
};
pub use majorana::{
    invariant_sector_spectrum, invariant_state, invariant_state_circuit, majorana_localize,
    simulate, Circuit, Gate, LocalizedModel, MajoranaLayout, TermAudit,
};
pub use pauli::{PauliString, PauliSum};
pub use polynomial::{FermionOp, FermionPolynomial};
pub use swap::{encode_qubit_ops, fermionic_swap, QubitEncoding};
pub use vacuum::{
    discrete_vacuum, vacuum_convergence, vacuum_overlap, EnergyBranch, VacuumConvergence,
    VacuumMode, VacuumReport,
};

use thiserror::Error;

/// Largest number of modes given a dense Fock-space representation.
pub const DENSE_MODE_CAP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FermionError {
    #[error("mode {0} is outside the ordering")]
    UnknownMode(usize),
    #[error("mode ordering is not a bijection")]
    NotBijective,
    #[error("{modes} modes exceed the limit of {max}")]
    TooManyModes { modes: usize, max: usize },
    #[error("a swap needs two distinct modes, got {0} twice")]
    SameMode(usize),
    #[error("operator has odd-parity terms")]
    OddParity,
    #[error("operator is not Hermitian")]
    NotHermitian,
    #[error("no path of links joins site {from} to site {to}")]
    NoPath { from: usize, to: usize },
    #[error("m·a = {ma} is at or beyond π/2; energy branches are no longer separated")]
    MassTooLarge { ma: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
