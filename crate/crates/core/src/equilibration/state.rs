use super::{EquilibrationError, SpectralSystem};
use crate::linalg::{c, hermitian_eigen, hermiticity_defect, max_abs, CMat, CVec, C64};

const STATE_TOL: f64 = 1e-10;

/// Length of a time average: the interval `[0, T]` or the infinite-time limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Horizon {
    Finite(f64),
    Infinite,
}

impl Horizon {
    pub(crate) fn validate(self) -> Result<Self, EquilibrationError> {
        if let Horizon::Finite(t) = self {
            super::positive("T", t)?;
        }
        Ok(self)
    }
}

/// `(e^{ix} − 1)/(ix)`, the mean of `e^{ixs}` over `s ∈ [0, 1]`.
pub(crate) fn mean_phase(x: f64) -> C64 {
    if x.abs() < 1e-4 {
        c(1.0 - x * x / 6.0, x / 2.0 - x * x * x / 24.0)
    } else {
        c(x.sin() / x, (1.0 - x.cos()) / x)
    }
}

/// Checks that `rho` is a density operator of dimension `dim`.
pub fn validate_state(rho: &CMat, dim: usize) -> Result<(), EquilibrationError> {
    if rho.nrows() != dim || rho.ncols() != dim {
        return Err(EquilibrationError::DimensionMismatch { expected: dim, got: rho.nrows() });
    }
    let herm = hermiticity_defect(rho);
    if herm > STATE_TOL {
        return Err(EquilibrationError::InvalidState(format!("not Hermitian (defect {herm:e})")));
    }
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > STATE_TOL {
        return Err(EquilibrationError::InvalidState(format!("trace {tr} ≠ 1")));
    }
    let (vals, _) = hermitian_eigen(rho);
    if vals[0] < -STATE_TOL {
        return Err(EquilibrationError::InvalidState(format!("negative eigenvalue {}", vals[0])));
    }
    Ok(())
}

/// `|ψ⟩⟨ψ|` for a normalized vector.
pub fn pure_state(psi: &CVec) -> Result<CMat, EquilibrationError> {
    let n = psi.norm();
    if (n - 1.0).abs() > STATE_TOL {
        return Err(EquilibrationError::InvalidState(format!("vector norm {n} ≠ 1")));
    }
    Ok(psi * psi.adjoint())
}

/// Occupation `tr[P_n ρ]` of every level.
pub(crate) fn level_weights(rho: &CMat, sys: &SpectralSystem) -> Vec<f64> {
    let v = sys.eigenvectors();
    let diag: Vec<f64> = (0..sys.dimension())
        .map(|k| {
            let col = v.column(k);
            (col.adjoint() * rho * col)[(0, 0)].re
        })
        .collect();
    sys.levels().iter().map(|r| diag[r.clone()].iter().sum()).collect()
}

/// `1 / Σ_n (tr[P_n ρ])²`.
pub fn effective_dimension(rho: &CMat, sys: &SpectralSystem) -> Result<f64, EquilibrationError> {
    validate_state(rho, sys.dimension())?;
    let w = level_weights(rho, sys);
    Ok(1.0 / w.iter().map(|x| x * x).sum::<f64>())
}

/// Uniform time average of `e^{−iHt} ρ e^{iHt}`.
///
/// The infinite-time limit dephases between levels and keeps coherences inside each level.
pub fn time_average_state(
    rho: &CMat,
    sys: &SpectralSystem,
    horizon: Horizon,
) -> Result<CMat, EquilibrationError> {
    validate_state(rho, sys.dimension())?;
    let horizon = horizon.validate()?;
    let e = sys.energies();
    let level = sys.level_index();
    let mut r = sys.to_eigenbasis(rho);
    for i in 0..e.len() {
        for j in 0..e.len() {
            if level[i] == level[j] {
                continue;
            }
            r[(i, j)] *= match horizon {
                Horizon::Infinite => c(0.0, 0.0),
                Horizon::Finite(t) => mean_phase(-(e[i] - e[j]) * t),
            };
        }
    }
    Ok(sys.from_eigenbasis(&r))
}

/// `½ tr|ρ − σ|`.
pub fn trace_distance(rho: &CMat, sigma: &CMat) -> f64 {
    let (vals, _) = hermitian_eigen(&(rho - sigma));
    0.5 * vals.iter().map(|v| v.abs()).sum::<f64>()
}

/// A complete family of orthogonal projectors.
#[derive(Debug, Clone)]
pub struct Measurement {
    projectors: Vec<CMat>,
}

impl Measurement {
    pub fn new(projectors: Vec<CMat>) -> Result<Self, EquilibrationError> {
        let bad = |msg: String| Err(EquilibrationError::InvalidMeasurement(msg));
        let Some(first) = projectors.first() else {
            return bad("no outcomes".into());
        };
        let d = first.nrows();
        let mut sum = CMat::zeros(d, d);
        for (k, p) in projectors.iter().enumerate() {
            if p.nrows() != d || p.ncols() != d {
                return bad(format!("outcome {k} has the wrong shape"));
            }
            if hermiticity_defect(p) > STATE_TOL {
                return bad(format!("outcome {k} is not Hermitian"));
            }
            if max_abs(&(p * p - p)) > STATE_TOL {
                return bad(format!("outcome {k} is not idempotent"));
            }
            sum += p;
        }
        if max_abs(&(sum - CMat::identity(d, d))) > STATE_TOL {
            return bad("outcomes do not sum to the identity".into());
        }
        Ok(Self { projectors })
    }

    /// `{P, 1 − P}`.
    pub fn binary(p: CMat) -> Result<Self, EquilibrationError> {
        let d = p.nrows();
        let q = CMat::identity(d, d) - &p;
        Self::new(vec![p, q])
    }

    /// Eigenprojectors of a Hermitian matrix, grouping eigenvalues within `tol`.
    pub fn eigenprojectors(h: &CMat, tol: f64) -> Result<Self, EquilibrationError> {
        let (vals, vecs) = hermitian_eigen(h);
        let mut out = Vec::new();
        let mut start = 0;
        for k in 1..=vals.len() {
            if k == vals.len() || vals[k] - vals[k - 1] > tol {
                let cols = vecs.columns(start, k - start);
                out.push(cols * cols.adjoint());
                start = k;
            }
        }
        Self::new(out)
    }

    pub fn projectors(&self) -> &[CMat] {
        &self.projectors
    }

    pub fn dimension(&self) -> usize {
        self.projectors[0].nrows()
    }

    /// `½ Σ_i |tr P_i(ρ − σ)|`.
    pub fn distinguishability(&self, rho: &CMat, sigma: &CMat) -> f64 {
        let diff = rho - sigma;
        0.5 * self.projectors.iter().map(|p| (p * &diff).trace().norm()).sum::<f64>()
    }
}

/// A set of measurements `𝓜` available to an observer.
#[derive(Debug, Clone)]
pub struct MeasurementSet {
    measurements: Vec<Measurement>,
}

impl MeasurementSet {
    pub fn new(measurements: Vec<Measurement>) -> Result<Self, EquilibrationError> {
        let Some(first) = measurements.first() else {
            return Err(EquilibrationError::InvalidMeasurement("empty measurement set".into()));
        };
        let d = first.dimension();
        if let Some(m) = measurements.iter().find(|m| m.dimension() != d) {
            return Err(EquilibrationError::DimensionMismatch { expected: d, got: m.dimension() });
        }
        Ok(Self { measurements })
    }

    pub fn measurements(&self) -> &[Measurement] {
        &self.measurements
    }

    /// Total number of outcomes `S(𝓜)`.
    pub fn outcomes(&self) -> usize {
        self.measurements.iter().map(|m| m.projectors.len()).sum()
    }
}

/// `D_𝓜(ρ, σ)`: the best distinguishing probability over the measurement set.
pub fn distinguishability(
    rho: &CMat,
    sigma: &CMat,
    set: &MeasurementSet,
) -> Result<f64, EquilibrationError> {
    let d = set.measurements[0].dimension();
    for m in [rho, sigma] {
        if m.nrows() != d {
            return Err(EquilibrationError::DimensionMismatch { expected: d, got: m.nrows() });
        }
    }
    Ok(set
        .measurements
        .iter()
        .map(|m| m.distinguishability(rho, sigma))
        .fold(0.0, f64::max))
}

/// Traces out the right factor of a `d_keep × d_env` bipartition.
pub fn partial_trace(rho: &CMat, d_keep: usize, d_env: usize) -> CMat {
    CMat::from_fn(d_keep, d_keep, |i, j| {
        (0..d_env).map(|k| rho[(i * d_env + k, j * d_env + k)]).sum()
    })
}

/// Purification `Σ_k √p_k |k⟩|k⟩` with an ancilla as large as the rank of `rho`.
///
/// Returns the vector on `system ⊗ ancilla` and the ancilla dimension.
pub fn purify(rho: &CMat) -> Result<(CVec, usize), EquilibrationError> {
    validate_state(rho, rho.nrows())?;
    let d = rho.nrows();
    let (vals, vecs) = hermitian_eigen(rho);
    let kept: Vec<usize> = (0..d).filter(|&k| vals[k] > STATE_TOL * 1e-2).collect();
    let r = kept.len();
    let mut psi = CVec::zeros(d * r);
    for (a, &k) in kept.iter().enumerate() {
        let w = vals[k].sqrt();
        for i in 0..d {
            psi[i * r + a] += vecs[(i, k)] * w;
        }
    }
    let n = psi.norm();
    Ok((psi / c(n, 0.0), r))
}
