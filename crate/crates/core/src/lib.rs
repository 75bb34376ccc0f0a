//! Discrete-spacetime quantum models at desk scale.
//!
//! * [`walk`]: translation-invariant coined quantum walks, their momentum symbols and
//!   evolution, and the shift/coin decomposition of 1D walks.
//! * [`continuum`]: continuum-limit Hamiltonians, relativistic normal forms and
//!   convergence measurements.
//! * [`spectral`]: quasi-energy bands, fermion doublers, sublattice projection and
//!   U(1) gauge coupling.
//! * [`fermions`]: fermionic operator algebra, Jordan-Wigner and Majorana encodings,
//!   fermionic swaps and the discrete Dirac vacuum.
//! * [`equilibration`]: exact-diagonalization checks of equilibration bounds.
//! * [`cli`]: the batch front end used by the `qlattice` binary.
//!
//! Units are ħ = c = 1. A shift by `q` lattice vectors acts on momentum states as
//! `e^{-i q·p a}`.

pub mod cli;
pub mod continuum;
pub mod equilibration;
pub mod fermions;
pub mod linalg;
pub mod spectral;
pub mod walk;
