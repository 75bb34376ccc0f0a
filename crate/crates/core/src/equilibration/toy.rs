use super::state::time_average_state;
use super::{partial_trace, positive, pure_state, EquilibrationError, Horizon, SpectralSystem};
use crate::linalg::{c, CMat, CVec};

/// A qubit with levels `0, ν` coupled to a truncated oscillator with levels `nν`.
///
/// Basis index `s·n_max + n` for qubit state `s ∈ {|0⟩, |ν⟩}` and oscillator level `n`. The
/// coupling `λ(|0⟩⟨ν| ⊗ |n+1⟩⟨n| + h.c.)` pairs `|0, n+1⟩` with `|ν, n⟩` for
/// `n = 0..n_max−2`, splitting each pair to `(n+1)ν ± λ`.
#[derive(Debug, Clone)]
pub struct ToyModel {
    pub nu: f64,
    pub lambda: f64,
    pub n_max: usize,
    pub system: SpectralSystem,
}

impl ToyModel {
    /// `((n+1)ν − λ, (n+1)ν + λ)` for each coupled pair.
    pub fn block_energies(&self) -> Vec<(f64, f64)> {
        (0..self.n_max - 1)
            .map(|n| {
                let e = (n + 1) as f64 * self.nu;
                (e - self.lambda.abs(), e + self.lambda.abs())
            })
            .collect()
    }

    /// Infinite-time average of the qubit for the product state `|φ_S⟩ ⊗ |φ_E⟩`.
    pub fn subsystem_average(
        &self,
        qubit: &CVec,
        environment: &CVec,
    ) -> Result<CMat, EquilibrationError> {
        if qubit.len() != 2 || environment.len() != self.n_max {
            return Err(EquilibrationError::DimensionMismatch {
                expected: 2 * self.n_max,
                got: qubit.len() * environment.len(),
            });
        }
        let rho = pure_state(&qubit.kronecker(environment))?;
        let omega = time_average_state(&rho, &self.system, Horizon::Infinite)?;
        Ok(partial_trace(&omega, 2, self.n_max))
    }
}

pub fn qubit_oscillator_model(nu: f64, lambda: f64, n_max: usize) -> Result<ToyModel, EquilibrationError> {
    positive("ν", nu)?;
    if lambda == 0.0 {
        return Err(EquilibrationError::ZeroCoupling);
    }
    if !lambda.is_finite() {
        return Err(EquilibrationError::InvalidParameter(format!("λ = {lambda}")));
    }
    if n_max < 4 {
        return Err(EquilibrationError::InvalidParameter(format!(
            "n_max = {n_max}; at least 4 oscillator levels are needed"
        )));
    }
    let dim = 2 * n_max;
    let mut h = CMat::zeros(dim, dim);
    for n in 0..n_max {
        h[(n, n)] = c(n as f64 * nu, 0.0);
        h[(n_max + n, n_max + n)] = c((n + 1) as f64 * nu, 0.0);
    }
    for n in 0..n_max - 1 {
        let (a, b) = (n + 1, n_max + n);
        h[(a, b)] = c(lambda, 0.0);
        h[(b, a)] = c(lambda, 0.0);
    }
    Ok(ToyModel { nu, lambda, n_max, system: SpectralSystem::new(h)? })
}
