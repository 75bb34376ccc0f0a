use std::collections::BTreeMap;

use crate::linalg::{eye, max_abs, CMat};

use super::{CoinedWalk, Offset, WalkError};

/// Deviations of the unitarity conditions, measured as the largest absolute entry.
#[derive(Debug, Clone)]
pub struct UnitarityReport {
    /// `Σ_q A_q†A_q − 1`.
    pub identity_deviation: f64,
    /// `Σ_{p−q=d} A_q†A_p` for every displacement `d ≠ 0`.
    pub cross_deviations: BTreeMap<Offset, f64>,
    pub tol: f64,
}

impl UnitarityReport {
    pub fn max_cross(&self) -> f64 {
        self.cross_deviations.values().fold(0.0, |a, &b| a.max(b))
    }

    pub fn max_deviation(&self) -> f64 {
        self.identity_deviation.max(self.max_cross())
    }

    pub fn passes(&self) -> bool {
        self.max_deviation() <= self.tol
    }
}

pub fn verify_unitarity(walk: &CoinedWalk, tol: f64) -> UnitarityReport {
    let d = walk.coin_dim();
    let mut diag = CMat::zeros(d, d);
    let mut cross: BTreeMap<Offset, CMat> = BTreeMap::new();
    for (q, aq) in walk.terms() {
        let aqd = aq.adjoint();
        for (p, ap) in walk.terms() {
            let prod = &aqd * ap;
            let disp = p.sub(q);
            if disp.is_zero() {
                diag += prod;
            } else {
                *cross.entry(disp).or_insert_with(|| CMat::zeros(d, d)) += prod;
            }
        }
    }
    UnitarityReport {
        identity_deviation: max_abs(&(diag - eye(d))),
        cross_deviations: cross.into_iter().map(|(k, m)| (k, max_abs(&m))).collect(),
        tol,
    }
}

/// `U = W Σ_q A′_q S_q` with `W = Σ_q A_q`.
#[derive(Debug, Clone)]
pub struct MassDecomposition {
    pub w: CMat,
    pub primed: BTreeMap<Offset, CMat>,
    pub massless: bool,
}

pub const UNITARITY_TOL: f64 = 1e-10;

pub fn mass_decompose(walk: &CoinedWalk, tol: f64) -> Result<MassDecomposition, WalkError> {
    let report = verify_unitarity(walk, UNITARITY_TOL);
    if !report.passes() {
        return Err(WalkError::NonUnitary(report.max_deviation()));
    }
    let w = walk.coin_sum();
    let wd = w.adjoint();
    let primed = walk
        .terms()
        .iter()
        .map(|(q, a)| (q.clone(), &wd * a))
        .collect();
    let massless = max_abs(&(&w - eye(walk.coin_dim()))) <= tol;
    Ok(MassDecomposition { w, primed, massless })
}
