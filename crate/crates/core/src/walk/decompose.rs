use std::collections::BTreeMap;

use crate::linalg::{cis, eye, frob_dist, max_abs, CMat};

use super::unitarity::UNITARITY_TOL;
use super::{verify_unitarity, CoinedWalk, WalkError};

const RANK_TOL: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-8;

/// `U = W · Π_k (P_k S_{q_k} + P_k^⊥)` with the product taken left to right.
#[derive(Debug, Clone)]
pub struct WalkDecomposition {
    pub factors: Vec<(CMat, i64)>,
    pub coin: CMat,
    spacing: f64,
}

impl WalkDecomposition {
    /// Factors whose projector is not the identity.
    pub fn conditional_count(&self) -> usize {
        let d = self.coin.nrows();
        self.factors
            .iter()
            .filter(|(p, _)| frob_dist(p, &eye(d)) > RANK_TOL)
            .count()
    }

    pub fn symbol(&self, p: f64) -> CMat {
        let d = self.coin.nrows();
        let mut u = self.coin.clone();
        for (proj, q) in &self.factors {
            let f = proj * cis(-(*q as f64) * p * self.spacing) + (eye(d) - proj);
            u *= f;
        }
        u
    }
}

/// Projector onto the row space of `a`.
fn row_space_projector(a: &CMat) -> CMat {
    let d = a.ncols();
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let smax = svd.singular_values.iter().fold(0.0f64, |m, &s| m.max(s));
    let mut p = CMat::zeros(d, d);
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s > RANK_TOL * smax {
            let row = v_t.row(i);
            p += row.adjoint() * row;
        }
    }
    p
}

/// Splits a unitary 1D walk into conditional shifts and a final coin by repeatedly
/// peeling the projector of the highest-offset term.
pub fn decompose_1d(walk: &CoinedWalk) -> Result<WalkDecomposition, WalkError> {
    if walk.dims() != 1 {
        return Err(WalkError::DimsMismatch {
            expected: 1,
            got: walk.dims(),
        });
    }
    let report = verify_unitarity(walk, UNITARITY_TOL);
    if !report.passes() {
        return Err(WalkError::NonUnitary(report.max_deviation()));
    }
    let d = walk.coin_dim();
    let mut terms: BTreeMap<i64, CMat> = walk
        .terms()
        .iter()
        .filter(|(_, a)| max_abs(a) > 1e-13)
        .map(|(q, a)| (q.0[0], a.clone()))
        .collect();
    let mut peeled: Vec<CMat> = Vec::new();
    let mut step = 0;
    while terms.len() > 1 {
        let qmin = *terms.keys().next().unwrap();
        let qmax = *terms.keys().next_back().unwrap();
        let p = row_space_projector(&terms[&qmax]);
        let pc = eye(d) - &p;
        let mut next: BTreeMap<i64, CMat> = BTreeMap::new();
        for (q, a) in &terms {
            *next.entry(q - 1).or_insert_with(|| CMat::zeros(d, d)) += a * &p;
            *next.entry(*q).or_insert_with(|| CMat::zeros(d, d)) += a * &pc;
        }
        for edge in [qmax, qmin - 1] {
            if let Some(a) = next.remove(&edge) {
                if max_abs(&a) > RESIDUAL_TOL {
                    return Err(WalkError::DecompositionStalled(step));
                }
            }
        }
        next.retain(|_, a| max_abs(a) > 1e-13);
        if next.is_empty() {
            return Err(WalkError::DecompositionStalled(step));
        }
        terms = next;
        peeled.push(p);
        step += 1;
    }
    let (&q0, w) = terms.iter().next().ok_or(WalkError::DecompositionStalled(step))?;
    let mut factors: Vec<(CMat, i64)> = Vec::new();
    if q0 != 0 {
        factors.push((eye(d), q0));
    }
    for p in peeled.into_iter().rev() {
        match factors.last_mut() {
            Some((last, q)) if frob_dist(last, &p) <= RANK_TOL => *q += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(WalkDecomposition {
        factors,
        coin: w.clone(),
        spacing: walk.spacing(),
    })
}
