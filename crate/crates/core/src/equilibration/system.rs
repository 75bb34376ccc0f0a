use std::ops::Range;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{EquilibrationError, DENSE_DIM_CAP};
use crate::linalg::{c, hermitian_eigen, hermiticity_defect, CMat, CVec, ZERO};

/// Largest chain handled by [`heisenberg_chain`].
pub const MAX_SPINS: usize = 12;

const DEGENERACY_SCALE: f64 = 1e-9;

/// A diagonalized Hamiltonian with its energies grouped into degenerate levels.
#[derive(Debug, Clone)]
pub struct SpectralSystem {
    hamiltonian: CMat,
    energies: Vec<f64>,
    vectors: CMat,
    tolerance: f64,
    levels: Vec<Range<usize>>,
}

impl SpectralSystem {
    pub fn new(hamiltonian: CMat) -> Result<Self, EquilibrationError> {
        let d = hamiltonian.nrows();
        if hamiltonian.ncols() != d {
            return Err(EquilibrationError::DimensionMismatch { expected: d, got: hamiltonian.ncols() });
        }
        check_dim(d)?;
        let scale = crate::linalg::max_abs(&hamiltonian).max(1.0);
        let defect = hermiticity_defect(&hamiltonian);
        if defect > 1e-10 * scale {
            return Err(EquilibrationError::NotHermitian(defect));
        }
        let (energies, vectors) = hermitian_eigen(&hamiltonian);
        Ok(Self::assemble(hamiltonian, energies, vectors))
    }

    /// Diagonal Hamiltonian with the given energies.
    pub fn from_energies(energies: &[f64]) -> Result<Self, EquilibrationError> {
        let h = CMat::from_diagonal(&CVec::from_iterator(
            energies.len(),
            energies.iter().map(|&e| c(e, 0.0)),
        ));
        Self::new(h)
    }

    fn assemble(hamiltonian: CMat, energies: Vec<f64>, vectors: CMat) -> Self {
        let norm = energies.iter().fold(0.0_f64, |m, e| m.max(e.abs()));
        let tolerance = DEGENERACY_SCALE * norm;
        let mut levels = Vec::new();
        let mut start = 0;
        for k in 1..=energies.len() {
            if k == energies.len() || energies[k] - energies[k - 1] > tolerance {
                levels.push(start..k);
                start = k;
            }
        }
        Self { hamiltonian, energies, vectors, tolerance, levels }
    }

    pub fn dimension(&self) -> usize {
        self.energies.len()
    }

    pub fn hamiltonian(&self) -> &CMat {
        &self.hamiltonian
    }

    /// Eigenvalues in ascending order.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Orthonormal eigenvectors as columns, matching [`energies`](Self::energies).
    pub fn eigenvectors(&self) -> &CMat {
        &self.vectors
    }

    /// `‖H‖`, the largest absolute eigenvalue.
    pub fn norm(&self) -> f64 {
        self.energies.iter().fold(0.0, |m, e| m.max(e.abs()))
    }

    /// Energies closer than this are one level.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Index ranges of each degenerate level into the eigenvalue list.
    pub fn levels(&self) -> &[Range<usize>] {
        &self.levels
    }

    /// Number of distinct energies `d_E`.
    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    /// Mean energy of each level.
    pub fn level_energies(&self) -> Vec<f64> {
        self.levels
            .iter()
            .map(|r| self.energies[r.clone()].iter().sum::<f64>() / r.len() as f64)
            .collect()
    }

    /// Level index of every eigenvector.
    pub fn level_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.dimension()];
        for (n, r) in self.levels.iter().enumerate() {
            for k in r.clone() {
                idx[k] = n;
            }
        }
        idx
    }

    /// Projector onto one degenerate level.
    pub fn projector(&self, level: usize) -> CMat {
        let r = self.levels[level].clone();
        let cols = self.vectors.columns(r.start, r.len());
        cols * cols.adjoint()
    }

    pub fn to_eigenbasis(&self, m: &CMat) -> CMat {
        self.vectors.adjoint() * m * &self.vectors
    }

    pub fn from_eigenbasis(&self, m: &CMat) -> CMat {
        &self.vectors * m * self.vectors.adjoint()
    }

    /// Largest residual `‖H v_n − E_n v_n‖`.
    pub fn eigen_residual(&self) -> f64 {
        let hv = &self.hamiltonian * &self.vectors;
        (0..self.dimension())
            .map(|k| (hv.column(k) - self.vectors.column(k) * c(self.energies[k], 0.0)).norm())
            .fold(0.0, f64::max)
    }

    /// `H ⊗ 1_r`, sharing this diagonalization.
    pub fn with_ancilla(&self, r: usize) -> Result<Self, EquilibrationError> {
        let d = self.dimension();
        check_dim(d * r)?;
        let id = CMat::identity(r, r);
        let hamiltonian = self.hamiltonian.kronecker(&id);
        let vectors = self.vectors.kronecker(&id);
        let energies = self.energies.iter().flat_map(|&e| std::iter::repeat_n(e, r)).collect();
        Ok(Self::assemble(hamiltonian, energies, vectors))
    }
}

pub(crate) fn check_dim(d: usize) -> Result<(), EquilibrationError> {
    if d > DENSE_DIM_CAP {
        Err(EquilibrationError::DimensionTooLarge { dim: d, max: DENSE_DIM_CAP })
    } else {
        Ok(())
    }
}

/// Uniform `[0, 1)` couplings for an `n`-spin open chain, drawn from a seeded ChaCha8 stream.
pub fn heisenberg_couplings(n_spins: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_spins.saturating_sub(1)).map(|_| rng.random::<f64>()).collect()
}

/// Open Heisenberg chain `Σ J_i (X_iX_{i+1} + Y_iY_{i+1} + Z_iZ_{i+1})` with random couplings.
pub fn heisenberg_chain(n_spins: usize, seed: u64) -> Result<SpectralSystem, EquilibrationError> {
    if n_spins > MAX_SPINS {
        return Err(EquilibrationError::TooManySpins { spins: n_spins, max: MAX_SPINS });
    }
    heisenberg_chain_with(&heisenberg_couplings(n_spins, seed))
}

/// Heisenberg chain with explicit couplings; `couplings.len() + 1` spins.
///
/// Spin 0 is the leftmost tensor factor. Each bond acts as `J(2·SWAP − 1)`, so the
/// Hamiltonian is real and conserves total `S_z`; every magnetization sector is
/// diagonalized separately.
pub fn heisenberg_chain_with(couplings: &[f64]) -> Result<SpectralSystem, EquilibrationError> {
    let n = couplings.len() + 1;
    if n < 2 {
        return Err(EquilibrationError::InvalidParameter("a chain needs at least 2 spins".into()));
    }
    if n > MAX_SPINS {
        return Err(EquilibrationError::TooManySpins { spins: n, max: MAX_SPINS });
    }
    let dim = 1usize << n;
    check_dim(dim)?;
    let bit = |site: usize| 1usize << (n - 1 - site);

    let mut hamiltonian = CMat::zeros(dim, dim);
    let mut pairs: Vec<(f64, CVec)> = Vec::with_capacity(dim);
    for up in 0..=n {
        let states: Vec<usize> = (0..dim).filter(|s| s.count_ones() as usize == up).collect();
        let index = |s: usize| states.binary_search(&s).unwrap();
        let m = states.len();
        let mut block = DMatrix::<f64>::zeros(m, m);
        for (a, &s) in states.iter().enumerate() {
            for (i, &j) in couplings.iter().enumerate() {
                let (bi, bj) = (bit(i), bit(i + 1));
                if ((s & bi) != 0) == ((s & bj) != 0) {
                    block[(a, a)] += j;
                } else {
                    block[(a, a)] -= j;
                    block[(index(s ^ bi ^ bj), a)] += 2.0 * j;
                }
            }
        }
        for (a, &s) in states.iter().enumerate() {
            for (b, &t) in states.iter().enumerate() {
                hamiltonian[(t, s)] = c(block[(b, a)], 0.0);
            }
        }
        let eig = block.symmetric_eigen();
        for k in 0..m {
            let mut v = CVec::from_element(dim, ZERO);
            for (a, &s) in states.iter().enumerate() {
                v[s] = c(eig.eigenvectors[(a, k)], 0.0);
            }
            pairs.push((eig.eigenvalues[k], v));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let energies = pairs.iter().map(|p| p.0).collect();
    let mut vectors = CMat::zeros(dim, dim);
    for (k, (_, v)) in pairs.iter().enumerate() {
        vectors.set_column(k, v);
    }
    Ok(SpectralSystem::assemble(hamiltonian, energies, vectors))
}
