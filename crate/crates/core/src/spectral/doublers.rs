use std::f64::consts::PI;

use crate::linalg::{op_norm, wrap_centered};
use crate::walk::CoinedWalk;

use super::{quasi_energy, SpectralError};

/// Default acceptance threshold in units of `1/a`.
pub const DEFAULT_THRESHOLD: f64 = 0.05;

const SWEEPS: usize = 8;
const GOLDEN_ITERS: usize = 48;

#[derive(Debug, Clone)]
pub struct DoublerReport {
    /// Refined momenta with every band below threshold, one per cluster.
    pub momenta: Vec<Vec<f64>>,
    /// Largest band `|E|` at each refined momentum.
    pub min_quasi_energy: Vec<f64>,
    pub threshold: f64,
    pub grid: usize,
}

impl DoublerReport {
    pub fn count(&self) -> usize {
        self.momenta.len()
    }
}

pub(crate) fn objective(walk: &CoinedWalk, p: &[f64]) -> f64 {
    quasi_energy(walk, p)
        .into_iter()
        .fold(0.0, |m, e| m.max(e.abs()))
}

pub(crate) fn periodic_distance(p: &[f64], q: &[f64], period: f64) -> f64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| wrap_centered(a - b, period).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn golden_min(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_ITERS {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        x1
    } else {
        x2
    }
}

fn refine(walk: &CoinedWalk, start: &[f64], h: f64) -> (Vec<f64>, f64) {
    let mut p = start.to_vec();
    let mut best = objective(walk, &p);
    let mut width = h;
    for _ in 0..SWEEPS {
        for axis in 0..p.len() {
            let center = p[axis];
            let eval = |x: f64| {
                let mut q = p.clone();
                q[axis] = x;
                objective(walk, &q)
            };
            let x = golden_min(center - width, center + width, eval);
            let fx = eval(x);
            if fx < best {
                best = fx;
                p[axis] = x;
            }
        }
        width *= 0.5;
    }
    (p, best)
}

/// Scans a `n_grid^d` momentum grid for points where every band has small quasi-energy,
/// refines each candidate by coordinate golden-section search and merges nearby hits.
pub fn find_doublers(
    walk: &CoinedWalk,
    threshold: f64,
    n_grid: usize,
) -> Result<DoublerReport, SpectralError> {
    if n_grid < 16 {
        return Err(SpectralError::InvalidParameter(format!(
            "doubler grid needs at least 16 points per axis, got {n_grid}"
        )));
    }
    if !(threshold > 0.0) {
        return Err(SpectralError::InvalidParameter(format!(
            "threshold must be positive, got {threshold}"
        )));
    }
    let a = walk.spacing();
    let dims = walk.dims();
    let period = 2.0 * PI / a;
    let h = period / n_grid as f64;
    let axis: Vec<f64> = (0..n_grid)
        .map(|k| (k as f64 - (n_grid / 2) as f64 + 1.0) * h)
        .collect();
    let total = n_grid.pow(dims as u32);
    let coords = |mut idx: usize| {
        let mut c = vec![0usize; dims];
        for slot in c.iter_mut().rev() {
            *slot = idx % n_grid;
            idx /= n_grid;
        }
        c
    };
    let values: Vec<f64> = (0..total)
        .map(|i| {
            let p: Vec<f64> = coords(i).iter().map(|&k| axis[k]).collect();
            objective(walk, &p)
        })
        .collect();

    let lipschitz: f64 = walk
        .terms()
        .iter()
        .map(|(q, aq)| {
            q.0.iter().map(|&x| (x * x) as f64).sum::<f64>().sqrt() * op_norm(aq)
        })
        .sum();
    let slack = 0.5 * PI * lipschitz * h * (dims as f64).sqrt() / (2.0 * walk.step_factor() as f64);

    let neighbours: Vec<Vec<i64>> = (0..3usize.pow(dims as u32))
        .map(|mut m| {
            (0..dims)
                .map(|_| {
                    let d = (m % 3) as i64 - 1;
                    m /= 3;
                    d
                })
                .collect()
        })
        .filter(|d: &Vec<i64>| d.iter().any(|&x| x != 0))
        .collect();

    let mut found: Vec<(Vec<f64>, f64)> = Vec::new();
    for i in 0..total {
        let v = values[i];
        if v > threshold + slack {
            continue;
        }
        let c = coords(i);
        let is_min = neighbours.iter().all(|d| {
            let mut j = 0usize;
            for (k, &ck) in c.iter().enumerate() {
                j = j * n_grid + (ck as i64 + d[k]).rem_euclid(n_grid as i64) as usize;
            }
            values[j] >= v
        });
        if !is_min {
            continue;
        }
        let start: Vec<f64> = c.iter().map(|&k| axis[k]).collect();
        let (p, fp) = refine(walk, &start, h);
        if fp > threshold {
            continue;
        }
        let p: Vec<f64> = p.iter().map(|&x| wrap_centered(x, period)).collect();
        match found
            .iter_mut()
            .find(|(q, _)| periodic_distance(q, &p, period) <= 2.0 * h)
        {
            Some(entry) => {
                if fp < entry.1 {
                    *entry = (p, fp);
                }
            }
            None => found.push((p, fp)),
        }
    }
    found.sort_by(|a, b| {
        let na: f64 = a.0.iter().map(|x| x * x).sum();
        let nb: f64 = b.0.iter().map(|x| x * x).sum();
        na.total_cmp(&nb).then_with(|| a.0.partial_cmp(&b.0).unwrap())
    });
    Ok(DoublerReport {
        momenta: found.iter().map(|f| f.0.clone()).collect(),
        min_quasi_energy: found.iter().map(|f| f.1).collect(),
        threshold,
        grid: n_grid,
    })
}
