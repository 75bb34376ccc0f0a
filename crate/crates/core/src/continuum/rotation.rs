use std::f64::consts::PI;

use crate::linalg::{c, eye, op_norm, polar_unitary, CMat, CVec};
use crate::walk::CoinedWalk;

use super::ContinuumError;

const SAMPLES: usize = 32;
const NULL_TOL: f64 = 1e-7;
const INVARIANCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct RotationReport {
    pub invariant: bool,
    /// Coin unitary `R` with `R† U_rot(p) R = U(p)` when one exists.
    pub witness: Option<CMat>,
    /// `max_p ‖R† U_rot(p) R − U(p)‖` for the best candidate over the grid.
    pub residual: f64,
}

fn sample_momenta(a: f64) -> Vec<[f64; 2]> {
    let g1 = 0.754_877_666_246_692_7;
    let g2 = 0.569_840_290_998_053_3;
    (0..SAMPLES)
        .map(|k| {
            let u = (0.5 + g1 * (k + 1) as f64).fract();
            let v = (0.5 + g2 * (k + 1) as f64).fract();
            [(2.0 * u - 1.0) * PI / a, (2.0 * v - 1.0) * PI / a]
        })
        .collect()
}

/// Searches for a fixed coin unitary relating the walk to its 90°-rotated copy.
///
/// The intertwining equations `U_rot(p) R = R U(p)` at 32 sampled momenta are stacked
/// and their null space computed; with several solutions the identity is projected onto
/// the null space before taking the unitary polar factor.
pub fn lattice_rotation_invariance(walk: &CoinedWalk) -> Result<RotationReport, ContinuumError> {
    if walk.dims() != 2 {
        return Err(ContinuumError::WrongDims {
            expected: 2,
            got: walk.dims(),
        });
    }
    let d = walk.coin_dim();
    let dd = d * d;
    let momenta = sample_momenta(walk.spacing());
    let mut stack = CMat::zeros(SAMPLES * dd, dd);
    for (k, p) in momenta.iter().enumerate() {
        let u = walk.symbol(p);
        let ur = walk.rotated_symbol(p);
        let block = eye(d).kronecker(&ur) - u.transpose().kronecker(&eye(d));
        stack.view_mut((k * dd, 0), (dd, dd)).copy_from(&block);
    }
    let svd = stack.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let smax = svd.singular_values.iter().fold(0.0f64, |m, &s| m.max(s));
    let null: Vec<CVec> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= NULL_TOL * smax.max(1.0))
        .map(|i| v_t.row(i).adjoint())
        .collect();
    let mut candidates: Vec<CVec> = Vec::new();
    if null.is_empty() {
        let mut best = 0;
        for i in 0..svd.singular_values.len() {
            if svd.singular_values[i] < svd.singular_values[best] {
                best = i;
            }
        }
        candidates.push(v_t.row(best).adjoint());
    } else {
        let id = CVec::from_column_slice(eye(d).as_slice());
        let mut proj = CVec::zeros(dd);
        for v in &null {
            proj += v * v.dotc(&id);
        }
        if proj.norm() > 1e-6 {
            candidates.push(proj);
        }
        // A generic combination of intertwiners is invertible whenever any of them is.
        let mut generic = CVec::zeros(dd);
        for (k, v) in null.iter().enumerate() {
            let t = 1.0 + 0.618_033_988_749_895 * (k as f64 + 1.0);
            generic += v * c(t.cos(), t.sin());
        }
        candidates.push(generic);
    }
    let grid: Vec<Vec<f64>> = walk
        .lattice()
        .momentum_grid()
        .into_iter()
        .chain(momenta.iter().map(|p| p.to_vec()))
        .collect();
    let mut best: Option<(CMat, f64)> = None;
    for cand in candidates {
        let r = polar_unitary(&CMat::from_column_slice(d, d, cand.as_slice()));
        let rd = r.adjoint();
        let mut residual: f64 = 0.0;
        for p in &grid {
            let diff = &rd * walk.rotated_symbol(p) * &r - walk.symbol(p);
            residual = residual.max(op_norm(&diff));
        }
        if best.as_ref().is_none_or(|(_, b)| residual < *b) {
            best = Some((r, residual));
        }
    }
    let (r, residual) = best.expect("at least one candidate");
    let invariant = residual < INVARIANCE_TOL;
    Ok(RotationReport {
        invariant,
        witness: invariant.then_some(r),
        residual,
    })
}
