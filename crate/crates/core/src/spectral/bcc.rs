use std::f64::consts::PI;

use crate::linalg::wrap_centered;
use crate::walk::CoinedWalk;

use super::doublers::periodic_distance;
use super::{find_doublers, DoublerReport, SpectralError};

/// A walk restricted to the sublattice of sites whose coordinates share parity, with its
/// doublers folded into the reduced zone.
#[derive(Debug, Clone)]
pub struct BccProjection {
    /// The restricted walk; its symbol on the reduced zone is the original symbol.
    pub walk: CoinedWalk,
    pub doublers: DoublerReport,
    /// Number of full-zone doublers before folding.
    pub full_zone_count: usize,
}

/// Reciprocal vectors identifying momenta on the sublattice, in units of `1/a`.
fn generators(dims: usize) -> Vec<Vec<f64>> {
    match dims {
        2 => vec![vec![PI, PI]],
        _ => vec![
            vec![PI, PI, 0.0],
            vec![PI, 0.0, PI],
            vec![0.0, PI, PI],
        ],
    }
}

fn combos(n: usize) -> Vec<Vec<i32>> {
    (0..3usize.pow(n as u32))
        .map(|mut m| {
            (0..n)
                .map(|_| {
                    let d = (m % 3) as i32 - 1;
                    m /= 3;
                    d
                })
                .collect()
        })
        .collect()
}

fn shifted(p: &[f64], gens: &[Vec<f64>], k: &[i32], a: f64) -> Vec<f64> {
    let period = 2.0 * PI / a;
    p.iter()
        .enumerate()
        .map(|(i, &x)| {
            let s: f64 = gens.iter().zip(k).map(|(g, &ki)| ki as f64 * g[i] / a).sum();
            wrap_centered(x + s, period)
        })
        .collect()
}

/// The reduced zone: `(−π/a, π/a] × (−π/2a, π/2a]` in 2D; in 3D every component lies in
/// `(−π/a, π/a]` and the point is the shortest member of its class.
pub fn in_reduced_zone(p: &[f64], a: f64) -> bool {
    match p.len() {
        2 => p[0] > -PI / a && p[0] <= PI / a && p[1] > -PI / (2.0 * a) && p[1] <= PI / (2.0 * a),
        _ => {
            let n: f64 = p.iter().map(|x| x * x).sum();
            let gens = generators(p.len());
            combos(gens.len())
                .iter()
                .all(|k| shifted(p, &gens, k, a).iter().map(|x| x * x).sum::<f64>() >= n - 1e-12)
        }
    }
}

fn fold(p: &[f64], a: f64) -> Vec<f64> {
    let gens = generators(p.len());
    let cands: Vec<Vec<f64>> = combos(gens.len())
        .iter()
        .map(|k| shifted(p, &gens, k, a))
        .collect();
    if p.len() == 2 {
        if let Some(q) = cands.iter().find(|q| in_reduced_zone(q, a)) {
            return q.clone();
        }
    }
    cands
        .into_iter()
        .min_by(|x, y| {
            let nx: f64 = x.iter().map(|v| v * v).sum();
            let ny: f64 = y.iter().map(|v| v * v).sum();
            nx.total_cmp(&ny)
        })
        .expect("non-empty")
}

fn folded_distance(p: &[f64], q: &[f64], a: f64) -> f64 {
    let gens = generators(p.len());
    let period = 2.0 * PI / a;
    combos(gens.len())
        .iter()
        .map(|k| periodic_distance(&shifted(p, &gens, k, a), q, period))
        .fold(f64::INFINITY, f64::min)
}

/// Restricts a 2D/3D walk to the sublattice and counts doublers on the reduced zone.
pub fn bcc_project(
    walk: &CoinedWalk,
    threshold: f64,
    n_grid: usize,
) -> Result<BccProjection, SpectralError> {
    let dims = walk.dims();
    if !(dims == 2 || dims == 3) {
        return Err(SpectralError::BccDims(dims));
    }
    for q in walk.terms().keys() {
        let parity = q.0[0].rem_euclid(2);
        if q.0.iter().any(|x| x.rem_euclid(2) != parity) {
            return Err(SpectralError::LeavesSublattice(q.to_string()));
        }
    }
    let full = find_doublers(walk, threshold, n_grid)?;
    let a = walk.spacing();
    let h = 2.0 * PI / (a * n_grid as f64);
    let mut reps: Vec<(Vec<f64>, f64)> = Vec::new();
    for (p, e) in full.momenta.iter().zip(&full.min_quasi_energy) {
        let f = fold(p, a);
        match reps.iter_mut().find(|(q, _)| folded_distance(q, &f, a) <= 2.0 * h) {
            Some(entry) => {
                if *e < entry.1 {
                    *entry = (f, *e);
                }
            }
            None => reps.push((f, *e)),
        }
    }
    Ok(BccProjection {
        walk: walk.clone(),
        doublers: DoublerReport {
            momenta: reps.iter().map(|r| r.0.clone()).collect(),
            min_quasi_energy: reps.iter().map(|r| r.1).collect(),
            threshold,
            grid: n_grid,
        },
        full_zone_count: full.count(),
    })
}
