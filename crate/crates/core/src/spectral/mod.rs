//! Quasi-energy spectra, fermion doublers, body-centred-cubic sublattice projection,
//! U(1) gauge coupling and the local decomposition of sublattice walks.

mod bcc;
mod bcc_local;
mod dispersion;
mod doublers;
mod gauge;

pub use bcc::{bcc_project, in_reduced_zone, BccProjection};
pub use bcc_local::{bcc_local_decomposition_check, bcc_local_decomposition_with, BccLocalReport};
pub use dispersion::{dispersion, naive_fermion_energy, quasi_energy, trace_map, DispersionData};
pub use doublers::{find_doublers, DoublerReport, DEFAULT_THRESHOLD};
pub use gauge::{apply_gauge, gauge_transform_state, GaugeField, GaugedWalk};

use thiserror::Error;

use crate::walk::WalkError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("offset {0} mixes parities and leaves the sublattice")]
    LeavesSublattice(String),
    #[error("sublattice projection needs a 2D or 3D walk, got {0}D")]
    BccDims(usize),
    #[error("shift by {0} is not along a single axis; gauge phases need single-axis moves")]
    NotSingleAxis(String),
    #[error("gauge field lattice {field:?} does not match walk lattice {walk:?}")]
    LatticeMismatch { field: Vec<usize>, walk: Vec<usize> },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
