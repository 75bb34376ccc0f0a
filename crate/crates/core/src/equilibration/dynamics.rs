use super::state::{mean_phase, validate_state};
use super::{EquilibrationError, GaussLegendre, Horizon, SpectralSystem};
use crate::linalg::{cis, CMat, CVec, C64, ZERO};

/// The oscillating part of `tr[ρ(t)A]` written as `Σ_α v_α e^{−iG_α t}` over gaps between
/// distinct levels, together with the constant `tr[ωA]`.
#[derive(Debug, Clone)]
pub struct GapVector {
    gaps: Vec<f64>,
    amplitudes: Vec<C64>,
    mean: C64,
    cluster_tol: f64,
}

impl GapVector {
    /// Pure-state path: each level is represented by the single vector `P_n|ψ⟩`, so
    /// `v_(i,j) = ⟨ψ|P_j A P_i|ψ⟩`.
    pub fn from_pure(psi: &CVec, sys: &SpectralSystem, a: &CMat) -> Result<Self, EquilibrationError> {
        check_operator(a, sys)?;
        let (level_e, phi) = level_vectors(psi, sys)?;
        let m = phi.adjoint() * a * &phi;
        Ok(Self::from_level_matrix(&level_e, &m, sys.tolerance()))
    }

    /// Pure-state path for `A = BB†`, avoiding the dense `A`.
    pub(crate) fn from_pure_gram(
        psi: &CVec,
        sys: &SpectralSystem,
        b: &CMat,
    ) -> Result<Self, EquilibrationError> {
        if b.nrows() != sys.dimension() {
            return Err(EquilibrationError::DimensionMismatch {
                expected: sys.dimension(),
                got: b.nrows(),
            });
        }
        let (level_e, phi) = level_vectors(psi, sys)?;
        let f = b.adjoint() * &phi;
        Ok(Self::from_level_matrix(&level_e, &(f.adjoint() * f), sys.tolerance()))
    }

    /// General path: `v_(i,j) = tr[P_i ρ P_j A]`.
    pub fn from_density(rho: &CMat, sys: &SpectralSystem, a: &CMat) -> Result<Self, EquilibrationError> {
        check_operator(a, sys)?;
        validate_state(rho, sys.dimension())?;
        let r = sys.to_eigenbasis(rho);
        let at = sys.to_eigenbasis(a);
        let levels = sys.levels();
        let n = levels.len();
        let mut m = CMat::zeros(n, n);
        for (i, ri) in levels.iter().enumerate() {
            for (j, rj) in levels.iter().enumerate() {
                let mut s = ZERO;
                for k in ri.clone() {
                    for l in rj.clone() {
                        s += r[(k, l)] * at[(l, k)];
                    }
                }
                m[(j, i)] = s;
            }
        }
        Ok(Self::from_level_matrix(&sys.level_energies(), &m, sys.tolerance()))
    }

    /// `m[(j, i)]` is the amplitude of `e^{−i(E_i − E_j)t}`.
    fn from_level_matrix(energies: &[f64], m: &CMat, tol: f64) -> Self {
        let n = energies.len();
        let mut gaps = Vec::with_capacity(n * n.saturating_sub(1));
        let mut amplitudes = Vec::with_capacity(gaps.capacity());
        let mut mean = ZERO;
        for i in 0..n {
            mean += m[(i, i)];
            for j in 0..n {
                if i != j {
                    gaps.push(energies[i] - energies[j]);
                    amplitudes.push(m[(j, i)]);
                }
            }
        }
        Self { gaps, amplitudes, mean, cluster_tol: 2.0 * tol }
    }

    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// `tr[ωA]`.
    pub fn mean(&self) -> C64 {
        self.mean
    }

    /// `tr[ρ(t)A] − tr[ωA]`.
    pub fn value(&self, t: f64) -> C64 {
        self.gaps.iter().zip(&self.amplitudes).map(|(g, v)| v * cis(-g * t)).sum()
    }

    /// Largest `|G_α|`.
    pub fn bandwidth(&self) -> f64 {
        self.gaps.iter().fold(0.0, |m, g| m.max(g.abs()))
    }

    /// `⟨|tr[ρ(t)A] − tr[ωA]|²⟩` in closed form.
    ///
    /// Finite `T` uses `M_αβ = (e^{i(G_α−G_β)T} − 1)/(i(G_α−G_β)T)`; the infinite limit keeps
    /// only pairs of equal gaps.
    pub fn mean_square(&self, horizon: Horizon) -> f64 {
        match horizon {
            Horizon::Finite(t) => {
                let (g, v) = (&self.gaps, &self.amplitudes);
                let mut total = 0.0;
                for a in 0..g.len() {
                    if v[a] == ZERO {
                        continue;
                    }
                    total += v[a].norm_sqr();
                    let mut cross = ZERO;
                    for b in a + 1..g.len() {
                        cross += v[b] * mean_phase((g[a] - g[b]) * t);
                    }
                    total += 2.0 * (v[a].conj() * cross).re;
                }
                total.max(0.0)
            }
            Horizon::Infinite => {
                let mut order: Vec<usize> = (0..self.gaps.len()).collect();
                order.sort_by(|&a, &b| self.gaps[a].total_cmp(&self.gaps[b]));
                let mut total = 0.0;
                let mut k = 0;
                while k < order.len() {
                    let mut sum = self.amplitudes[order[k]];
                    let mut last = self.gaps[order[k]];
                    k += 1;
                    while k < order.len() && self.gaps[order[k]] - last <= self.cluster_tol {
                        last = self.gaps[order[k]];
                        sum += self.amplitudes[order[k]];
                        k += 1;
                    }
                    total += sum.norm_sqr();
                }
                total
            }
        }
    }
}

/// Energies and vectors `P_n|ψ⟩` of the levels the state occupies.
fn level_vectors(psi: &CVec, sys: &SpectralSystem) -> Result<(Vec<f64>, CMat), EquilibrationError> {
    let d = sys.dimension();
    if psi.len() != d {
        return Err(EquilibrationError::DimensionMismatch { expected: d, got: psi.len() });
    }
    super::pure_state(psi)?;
    let v = sys.eigenvectors();
    let coeffs = v.adjoint() * psi;
    let energies = sys.level_energies();
    let mut cols = Vec::new();
    let mut level_e = Vec::new();
    for (n, r) in sys.levels().iter().enumerate() {
        let block = coeffs.rows(r.start, r.len());
        if block.norm_squared() == 0.0 {
            continue;
        }
        cols.push(v.columns(r.start, r.len()) * block);
        level_e.push(energies[n]);
    }
    Ok((level_e, CMat::from_columns(&cols)))
}

fn check_operator(a: &CMat, sys: &SpectralSystem) -> Result<(), EquilibrationError> {
    let d = sys.dimension();
    if a.nrows() != d || a.ncols() != d {
        return Err(EquilibrationError::DimensionMismatch { expected: d, got: a.nrows() });
    }
    Ok(())
}

/// `Re tr[ρ(t)A]` at each time.
pub fn evolve_expectation(
    rho: &CMat,
    sys: &SpectralSystem,
    a: &CMat,
    times: &[f64],
) -> Result<Vec<f64>, EquilibrationError> {
    weighted_series(rho, sys, a, times, |x, t| cis(x * t))
}

/// Running average `(1/t)∫_0^t Re tr[ρ(s)A] ds` at each time; `t = 0` gives the initial value.
pub fn running_average(
    rho: &CMat,
    sys: &SpectralSystem,
    a: &CMat,
    times: &[f64],
) -> Result<Vec<f64>, EquilibrationError> {
    weighted_series(rho, sys, a, times, |x, t| mean_phase(x * t))
}

/// `Re Σ_ij ρ_ij A_ji k(E_j − E_i, t)` in the eigenbasis.
fn weighted_series(
    rho: &CMat,
    sys: &SpectralSystem,
    a: &CMat,
    times: &[f64],
    kernel: impl Fn(f64, f64) -> C64,
) -> Result<Vec<f64>, EquilibrationError> {
    check_operator(a, sys)?;
    validate_state(rho, sys.dimension())?;
    let r = sys.to_eigenbasis(rho);
    let at = sys.to_eigenbasis(a);
    let e = sys.energies();
    let d = e.len();
    let w = CMat::from_fn(d, d, |i, j| r[(i, j)] * at[(j, i)]);
    Ok(times
        .iter()
        .map(|&t| {
            let mut s = ZERO;
            for i in 0..d {
                for j in 0..d {
                    if w[(i, j)] != ZERO {
                        s += w[(i, j)] * kernel(e[j] - e[i], t);
                    }
                }
            }
            s.re
        })
        .collect())
}

/// Exact `⟨|tr[ρ(t)A] − tr[ωA]|²⟩` over `[0, T]` or the infinite-time limit.
pub fn averaged_fluctuation(
    rho: &CMat,
    sys: &SpectralSystem,
    a: &CMat,
    horizon: Horizon,
) -> Result<f64, EquilibrationError> {
    let horizon = horizon.validate()?;
    Ok(GapVector::from_density(rho, sys, a)?.mean_square(horizon))
}

/// `(1/T)∫_0^T |tr[ρ(t)A] − tr[ωA]|² dt` by composite Gauss–Legendre quadrature.
pub fn fluctuation_by_quadrature(
    rho: &CMat,
    sys: &SpectralSystem,
    a: &CMat,
    t: f64,
    rule: &GaussLegendre,
) -> Result<f64, EquilibrationError> {
    super::positive("T", t)?;
    let gv = GapVector::from_density(rho, sys, a)?;
    let panels = rule.panels_for(2.0 * gv.bandwidth(), t);
    let integral = rule.integrate_composite(0.0, t, panels, |s| gv.value(s).norm_sqr());
    Ok(integral / t)
}
