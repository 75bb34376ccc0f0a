use crate::linalg::{eigenphases, C64};
use crate::walk::CoinedWalk;

/// Eigenphases of `U(p)` divided by the time step, sorted, in `(−π/(fa), π/(fa)]`.
pub fn quasi_energy(walk: &CoinedWalk, p: &[f64]) -> Vec<f64> {
    let dt = walk.time_step();
    eigenphases(&walk.symbol(p))
        .into_iter()
        .map(|t| t / dt)
        .collect()
}

#[derive(Debug, Clone)]
pub struct DispersionData {
    pub momenta: Vec<Vec<f64>>,
    pub bands: Vec<Vec<f64>>,
}

/// Quasi-energy bands on every grid momentum of the walk's lattice.
pub fn dispersion(walk: &CoinedWalk) -> DispersionData {
    let momenta = walk.lattice().momentum_grid();
    let bands = momenta.iter().map(|p| quasi_energy(walk, p)).collect();
    DispersionData { momenta, bands }
}

pub fn trace_map(walk: &CoinedWalk, grid: &[Vec<f64>]) -> Vec<C64> {
    grid.iter().map(|p| walk.symbol(p).trace()).collect()
}

/// Positive branch of the naive lattice fermion dispersion `√(sin²(ka)/a² + m²)`.
pub fn naive_fermion_energy(m: f64, k: f64, a: f64) -> f64 {
    ((k * a).sin().powi(2) / (a * a) + m * m).sqrt()
}
