use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{gap_stats_from_levels, positive, EquilibrationError};

/// Empirical gap statistics of an exponential level density against their predictions.
#[derive(Debug, Clone)]
pub struct GapModelReport {
    pub energies: Vec<f64>,
    pub mean_gap: f64,
    pub sigma_gap: f64,
    /// `1/β`, the large-`βΔ` mean gap.
    pub predicted_mean_gap: f64,
    /// `1/β`, the large-`βΔ` gap width.
    pub predicted_sigma_gap: f64,
    pub eps: f64,
    pub n_eps: usize,
    /// `d_E² βε / 2`.
    pub predicted_n_eps: f64,
    /// Set when `βΔ < 10`, outside the regime of the predictions.
    pub weak_separation: bool,
}

/// Sorted i.i.d. energies with density `∝ e^{βE}` on `[0, Δ]`, by inverse transform.
pub fn sample_exponential_spectrum<R: Rng + ?Sized>(
    beta: f64,
    delta: f64,
    d_e: usize,
    rng: &mut R,
) -> Vec<f64> {
    let span = (beta * delta).exp_m1();
    let mut e: Vec<f64> =
        (0..d_e).map(|_| (rng.random::<f64>() * span).ln_1p() / beta).collect();
    e.sort_unstable_by(f64::total_cmp);
    e
}

/// Samples `d_e` levels and compares mean gap, gap width and `N(ε)` with their predictions.
pub fn exponential_gap_model(
    beta: f64,
    delta: f64,
    d_e: usize,
    eps: f64,
    seed: u64,
) -> Result<GapModelReport, EquilibrationError> {
    positive("β", beta)?;
    positive("Δ", delta)?;
    positive("ε", eps)?;
    if d_e < 2 {
        return Err(EquilibrationError::InvalidParameter("d_E must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let energies = sample_exponential_spectrum(beta, delta, d_e, &mut rng);

    let n = d_e as f64;
    let pairs = n * (n - 1.0) / 2.0;
    let abs_sum: f64 =
        energies.iter().enumerate().map(|(j, e)| e * (2.0 * j as f64 - n + 1.0)).sum();
    let (s1, s2) = energies.iter().fold((0.0, 0.0), |(a, b), e| (a + e, b + e * e));
    let sq_sum = n * s2 - s1 * s1;
    let mean_gap = abs_sum / pairs;
    let sigma_gap = (sq_sum / pairs - mean_gap * mean_gap).max(0.0).sqrt();

    let stats = gap_stats_from_levels(&energies, &[eps], 0.0);
    Ok(GapModelReport {
        mean_gap,
        sigma_gap,
        predicted_mean_gap: 1.0 / beta,
        predicted_sigma_gap: 1.0 / beta,
        eps,
        n_eps: stats.counts()[0],
        predicted_n_eps: n * n * beta * eps / 2.0,
        weak_separation: beta * delta < 10.0,
        energies,
    })
}
