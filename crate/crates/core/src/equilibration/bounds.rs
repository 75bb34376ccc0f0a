use std::f64::consts::PI;

use super::state::{level_weights, time_average_state};
use super::{
    gap_stats, partial_trace, positive, pure_state, trace_distance, EquilibrationError,
    GapVector, GaussLegendre, Horizon, SpectralSystem,
};
use crate::linalg::{cis, op_norm, CMat, CVec};

/// Node count per panel for the subsystem-distance quadrature.
pub const SUBSYSTEM_NODES: usize = 64;

/// `(5π/2)[3/4 + 1/(εT)]`, or `15π/8` at infinite `T`.
fn time_factor(eps: f64, horizon: Horizon) -> Result<f64, EquilibrationError> {
    positive("ε", eps)?;
    Ok(match horizon.validate()? {
        Horizon::Finite(t) => 2.5 * PI * (0.75 + 1.0 / (eps * t)),
        Horizon::Infinite => 15.0 * PI / 8.0,
    })
}

fn count(name: &'static str, n: usize) -> Result<f64, EquilibrationError> {
    positive(name, n as f64)
}

/// Bound on `⟨|tr[ρ(t)A] − tr[ωA]|²⟩_T / ‖A‖²`: `(N(ε)/d_eff)(5π/2)[3/4 + 1/(εT)]`.
pub fn bound_expectation(
    d_eff: f64,
    n_eps: usize,
    eps: f64,
    horizon: Horizon,
) -> Result<f64, EquilibrationError> {
    positive("d_eff", d_eff)?;
    Ok(count("N(ε)", n_eps)? / d_eff * time_factor(eps, horizon)?)
}

/// Bound on `⟨D_𝓜(ρ(t), ω)⟩_T` for a measurement set with `outcomes` outcomes in total.
pub fn bound_system(
    outcomes: usize,
    d_eff: f64,
    n_eps: usize,
    eps: f64,
    horizon: Horizon,
) -> Result<f64, EquilibrationError> {
    positive("d_eff", d_eff)?;
    let s = count("S(M)", outcomes)?;
    Ok(s / (4.0 * d_eff.sqrt()) * (count("N(ε)", n_eps)? * time_factor(eps, horizon)?).sqrt())
}

/// Bound on `⟨D(ρ_S(t), ω_S)⟩_T` for a subsystem of dimension `d_s`.
pub fn bound_subsystem(
    d_s: usize,
    d_eff: f64,
    n_eps: usize,
    eps: f64,
    horizon: Horizon,
) -> Result<f64, EquilibrationError> {
    positive("d_eff", d_eff)?;
    let ds = count("d_S", d_s)?;
    Ok(0.5 * (ds * ds / d_eff * count("N(ε)", n_eps)? * time_factor(eps, horizon)?).sqrt())
}

/// What a bound is checked against.
#[derive(Debug, Clone)]
pub enum BoundTarget {
    /// Fluctuations of one observable, normalized by `‖A‖²`.
    Observable(CMat),
    /// Trace distance of the leftmost tensor factor of dimension `d_s`.
    Subsystem { d_s: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundInputs {
    pub d_eff: f64,
    pub n_eps: usize,
    pub eps: f64,
    pub horizon: Horizon,
    pub d_s: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub inputs: BoundInputs,
    pub holds: bool,
    /// Quadrature nodes used for a subsystem average.
    pub quadrature_nodes: Option<usize>,
}

/// Compares an exactly computed time average with its bound.
///
/// Observables use the closed-form average. Subsystems need the time average of a trace
/// distance, which is integrated with composite Gauss–Legendre panels of
/// [`SUBSYSTEM_NODES`] nodes sized to the largest gap.
pub fn verify_bound(
    sys: &SpectralSystem,
    psi: &CVec,
    target: &BoundTarget,
    eps: f64,
    horizon: Horizon,
) -> Result<BoundReport, EquilibrationError> {
    positive("ε", eps)?;
    let horizon = horizon.validate()?;
    let rho = pure_state(psi)?;
    let d_eff = 1.0 / level_weights(&rho, sys).iter().map(|w| w * w).sum::<f64>();
    let n_eps = gap_stats(sys, &[eps], sys.tolerance()).counts()[0];
    let mut inputs = BoundInputs { d_eff, n_eps, eps, horizon, d_s: None };
    let (lhs, rhs, nodes) = match target {
        BoundTarget::Observable(a) => {
            let norm = op_norm(a);
            let gv = GapVector::from_pure(psi, sys, a)?;
            let lhs = if norm > 0.0 { gv.mean_square(horizon) / (norm * norm) } else { 0.0 };
            (lhs, bound_expectation(d_eff, n_eps, eps, horizon)?, None)
        }
        &BoundTarget::Subsystem { d_s } => {
            let d = sys.dimension();
            if d_s == 0 || !d.is_multiple_of(d_s) {
                return Err(EquilibrationError::InvalidParameter(format!(
                    "subsystem dimension {d_s} does not divide {d}"
                )));
            }
            let Horizon::Finite(t) = horizon else {
                return Err(EquilibrationError::InvalidParameter(
                    "the subsystem average needs a finite T".into(),
                ));
            };
            inputs.d_s = Some(d_s);
            let (lhs, nodes) = subsystem_average(sys, psi, &rho, d_s, t)?;
            (lhs, bound_subsystem(d_s, d_eff, n_eps, eps, horizon)?, Some(nodes))
        }
    };
    Ok(BoundReport { lhs, rhs, inputs, holds: lhs <= rhs, quadrature_nodes: nodes })
}

fn subsystem_average(
    sys: &SpectralSystem,
    psi: &CVec,
    rho: &CMat,
    d_s: usize,
    t: f64,
) -> Result<(f64, usize), EquilibrationError> {
    let d = sys.dimension();
    let d_env = d / d_s;
    let omega_s = partial_trace(&time_average_state(rho, sys, Horizon::Infinite)?, d_s, d_env);
    let v = sys.eigenvectors();
    let coeffs = v.adjoint() * psi;
    let e = sys.energies();
    let bandwidth = e.last().unwrap() - e.first().unwrap();
    let rule = GaussLegendre::new(SUBSYSTEM_NODES);
    let panels = rule.panels_for(bandwidth, t);
    let integral = rule.integrate_composite(0.0, t, panels, |s| {
        let evolved = CVec::from_iterator(d, coeffs.iter().zip(e).map(|(a, &x)| a * cis(-x * s)));
        let state = v * evolved;
        let m = CMat::from_fn(d_s, d_env, |i, k| state[i * d_env + k]);
        trace_distance(&(&m * m.adjoint()), &omega_s)
    });
    Ok((integral / t, panels * rule.len()))
}
