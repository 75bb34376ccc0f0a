use super::{positive, pure_state, EquilibrationError, GapVector, Horizon, SpectralSystem};
use crate::linalg::{cis, orthonormalize, CMat, CVec};

/// A projector tracking the early trajectory, and how far the state stays from `ω` under it.
#[derive(Debug, Clone)]
pub struct SlowEquilibration {
    pub k: usize,
    pub epsilon: f64,
    /// Energy spread `σ_E` of the state.
    pub sigma_e: f64,
    /// Snapshot spacing `τ = ε/σ_E`; snapshots sit at `(2j + 1)τ`.
    pub tau: f64,
    pub d_eff: f64,
    /// Orthonormal basis of the snapshot span, one column per vector.
    pub basis: CMat,
    /// `tr[Pω]`.
    pub p_omega: f64,
    pub times: Vec<f64>,
    /// `D_𝓜(ρ(t), ω) = |tr[P(ρ(t) − ω)]|` at each sample time.
    pub distances: Vec<f64>,
    /// `1 − ε² − √(K/d_eff)`.
    pub lower_bound: f64,
    /// `√⟨D_𝓜²⟩_∞` from the exact infinite-time fluctuation; an upper estimate of `⟨D_𝓜⟩_∞`.
    pub infinite_average: f64,
    /// `2√(K/d_eff)`.
    pub infinite_bound: f64,
}

impl SlowEquilibration {
    /// Window length `2εK/σ_E`.
    pub fn window(&self) -> f64 {
        2.0 * self.epsilon * self.k as f64 / self.sigma_e
    }

    pub fn window_holds(&self) -> bool {
        self.distances.iter().all(|&d| d >= self.lower_bound)
    }

    pub fn infinite_holds(&self) -> bool {
        self.infinite_average <= self.infinite_bound
    }
}

/// Builds `P` onto the span of `|ψ((2j+1)τ)⟩`, `j < K`, and samples `D_𝓜(ρ(t), ω)` for the
/// measurement `{P, 1 − P}` at `samples` evenly spaced times across the window.
pub fn slow_equilibration_construct(
    sys: &SpectralSystem,
    psi: &CVec,
    k: usize,
    epsilon: f64,
    samples: usize,
) -> Result<SlowEquilibration, EquilibrationError> {
    positive("ε", epsilon)?;
    if k == 0 || samples < 2 {
        return Err(EquilibrationError::InvalidParameter(
            "K must be positive and at least two samples are needed".into(),
        ));
    }
    pure_state(psi)?;
    let d = sys.dimension();
    if psi.len() != d {
        return Err(EquilibrationError::DimensionMismatch { expected: d, got: psi.len() });
    }
    let v = sys.eigenvectors();
    let e = sys.energies();
    let coeffs = v.adjoint() * psi;
    let probs: Vec<f64> = coeffs.iter().map(|z| z.norm_sqr()).collect();
    let mean: f64 = probs.iter().zip(e).map(|(p, x)| p * x).sum();
    let var: f64 = probs.iter().zip(e).map(|(p, x)| p * (x - mean) * (x - mean)).sum();
    let sigma_e = var.max(0.0).sqrt();
    if sigma_e <= 1e-12 * sys.norm().max(1.0) {
        return Err(EquilibrationError::ZeroEnergySpread);
    }
    let tau = epsilon / sigma_e;

    let in_eigenbasis =
        |t: f64| CVec::from_iterator(d, coeffs.iter().zip(e).map(|(a, &x)| a * cis(-x * t)));
    let snapshots: Vec<CVec> =
        (0..k).map(|j| in_eigenbasis((2 * j + 1) as f64 * tau)).collect();
    let q = CMat::from_columns(&orthonormalize(&snapshots, 1e-12));

    let weights: Vec<f64> = sys
        .levels()
        .iter()
        .map(|r| probs[r.clone()].iter().sum::<f64>())
        .collect();
    let d_eff = 1.0 / weights.iter().map(|w| w * w).sum::<f64>();

    let p_omega: f64 = sys
        .levels()
        .iter()
        .map(|r| (q.rows(r.start, r.len()).adjoint() * coeffs.rows(r.start, r.len())).norm_squared())
        .sum();

    let window = 2.0 * epsilon * k as f64 / sigma_e;
    let times: Vec<f64> =
        (0..samples).map(|s| window * s as f64 / (samples - 1) as f64).collect();
    let distances = times
        .iter()
        .map(|&t| ((q.adjoint() * in_eigenbasis(t)).norm_squared() - p_omega).abs())
        .collect();

    let basis = v * &q;
    let fluctuation = GapVector::from_pure_gram(psi, sys, &basis)?.mean_square(Horizon::Infinite);

    Ok(SlowEquilibration {
        k,
        epsilon,
        sigma_e,
        tau,
        d_eff,
        p_omega,
        times,
        distances,
        lower_bound: 1.0 - epsilon * epsilon - (k as f64 / d_eff).sqrt(),
        infinite_average: fluctuation.sqrt(),
        infinite_bound: 2.0 * (k as f64 / d_eff).sqrt(),
        basis,
    })
}
