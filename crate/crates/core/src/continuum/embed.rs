use std::f64::consts::PI;
use std::str::FromStr;

use crate::linalg::{C64, ZERO};
use crate::walk::{Lattice, WaveState};

use super::ContinuumError;

/// How continuum momentum states are identified with lattice states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mapping {
    /// Position-space blocks of width `a`; momentum amplitudes pick up `sinc(pa/2)`.
    Block,
    /// Grid momentum states identified directly with continuum momenta.
    Momentum,
}

impl FromStr for Mapping {
    type Err = ContinuumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "block" => Ok(Mapping::Block),
            "momentum" => Ok(Mapping::Momentum),
            _ => Err(ContinuumError::InvalidParameter(format!("unknown mapping `{s}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Embedding {
    pub state: WaveState,
    /// `α = (Σ_{|p_k| ≤ Λ} |ψ(p_k)|² Δp/2π)^{1/2}`.
    pub alpha: f64,
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Samples a momentum-space spinor `ψ(p)` (normalised with measure `dp/2π`) onto a
/// 1D lattice, truncated at `|p| ≤ Λ`.
pub fn embed_discrete_state<F>(
    psi: F,
    lattice: &Lattice,
    coin_dim: usize,
    cutoff: f64,
    mapping: Mapping,
) -> Result<Embedding, ContinuumError>
where
    F: Fn(f64) -> Vec<C64>,
{
    if lattice.dims() != 1 {
        return Err(ContinuumError::WrongDims {
            expected: 1,
            got: lattice.dims(),
        });
    }
    let a = lattice.spacing();
    if !(cutoff > 0.0) || cutoff > PI / a + 1e-12 {
        return Err(ContinuumError::CutoffOutOfRange {
            cutoff,
            max: PI / a,
        });
    }
    let n = lattice.sites();
    let weight = 1.0 / (n as f64 * a);
    let mut momentum = vec![ZERO; n * coin_dim];
    let mut mass = 0.0;
    for bin in 0..n {
        let p = lattice.bin_momentum(0, bin);
        if p.abs() > cutoff + 1e-12 {
            continue;
        }
        let v = psi(p);
        if v.len() != coin_dim {
            return Err(ContinuumError::InvalidParameter(format!(
                "ψ(p) has {} components, coin dimension is {coin_dim}",
                v.len()
            )));
        }
        let factor = match mapping {
            Mapping::Momentum => 1.0,
            Mapping::Block => sinc(p * a / 2.0),
        } * weight.sqrt();
        for (k, z) in v.iter().enumerate() {
            mass += z.norm_sqr() * weight;
            momentum[bin * coin_dim + k] = z * factor;
        }
    }
    if momentum.iter().all(|z| z.norm() == 0.0) {
        return Err(ContinuumError::EmptyTruncation);
    }
    crate::walk::fft_sites_inverse(&mut momentum, lattice.extents(), coin_dim);
    let state = WaveState::from_amplitudes(lattice, coin_dim, momentum)?.normalized();
    Ok(Embedding {
        state,
        alpha: mass.sqrt(),
    })
}
