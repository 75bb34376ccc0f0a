use crate::linalg::{c, eigenphases, hermitian_part, hermiticity_defect, unitary_log, CMat};
use crate::walk::{mass_decompose, CoinedWalk, Factor};

use super::ContinuumError;

const BRANCH_TOL: f64 = 1e-8;
const HERMITIAN_TOL: f64 = 1e-9;

/// `H(p) = Σ_i B_i p_i + M`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuumHamiltonian {
    pub b: Vec<CMat>,
    pub m: CMat,
}

impl ContinuumHamiltonian {
    pub fn new(b: Vec<CMat>, m: CMat) -> Self {
        Self { b, m }
    }

    pub fn dims(&self) -> usize {
        self.b.len()
    }

    pub fn coin_dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn symbol(&self, p: &[f64]) -> CMat {
        let mut h = self.m.clone();
        for (bi, &pi) in self.b.iter().zip(p) {
            h += bi * c(pi, 0.0);
        }
        h
    }
}

/// Continuum Hamiltonian of a walk.
///
/// The momentum coefficients are `B_i = Σ_q q_i A′_q` divided by the step factor. For
/// walks stored as a product of coins and conditional shifts the same coefficients are
/// read off factor by factor, which keeps them independent of the spacing when coins
/// sit between the shifts. The mass term is the principal logarithm
/// `M = (i/(f a)) log W` with `W = Σ_q A_q`.
pub fn continuum_hamiltonian(walk: &CoinedWalk) -> Result<ContinuumHamiltonian, ContinuumError> {
    let md = mass_decompose(walk, 0.0)?;
    let d = walk.coin_dim();
    let dims = walk.dims();
    let f = walk.step_factor() as f64;
    let mut b = vec![CMat::zeros(d, d); dims];
    match walk.factors() {
        Some(factors) => {
            for fac in factors {
                if let Factor::Shift(branches) = fac {
                    for (v, proj) in branches {
                        for (i, bi) in b.iter_mut().enumerate() {
                            *bi += proj * c(v.0[i] as f64, 0.0);
                        }
                    }
                }
            }
        }
        None => {
            for (q, a) in &md.primed {
                for (i, bi) in b.iter_mut().enumerate() {
                    *bi += a * c(q.0[i] as f64, 0.0);
                }
            }
        }
    }
    for bi in b.iter_mut() {
        let defect = hermiticity_defect(bi);
        if defect > HERMITIAN_TOL {
            return Err(ContinuumError::NonHermitian(defect));
        }
        *bi = hermitian_part(bi) * c(1.0 / f, 0.0);
    }
    let distance = eigenphases(&md.w)
        .iter()
        .map(|&t| (std::f64::consts::PI - t.abs()).abs())
        .fold(f64::INFINITY, f64::min);
    if distance < BRANCH_TOL {
        return Err(ContinuumError::BranchAmbiguity { distance });
    }
    let (log, _) = unitary_log(&md.w);
    let m = log * c(1.0 / (f * walk.spacing()), 0.0);
    Ok(ContinuumHamiltonian::new(b, m))
}
