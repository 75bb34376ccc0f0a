use super::SpectralSystem;

/// Statistics of the gap multiset `{G_α = E_i − E_j : i ≠ j}` over distinct levels.
#[derive(Debug, Clone)]
pub struct GapStats {
    gaps: Vec<f64>,
    tolerance: f64,
    epsilons: Vec<f64>,
    counts: Vec<usize>,
    d_g: usize,
    eps_min: Option<f64>,
}

impl GapStats {
    /// Sorted gaps, both signs included.
    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// The requested window widths and their `N(ε)`.
    pub fn table(&self) -> impl Iterator<Item = (f64, usize)> + '_ {
        self.epsilons.iter().copied().zip(self.counts.iter().copied())
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Degeneracy of the most degenerate gap.
    pub fn d_g(&self) -> usize {
        self.d_g
    }

    /// Smallest separation between distinct gaps; `None` with fewer than two distinct gaps.
    pub fn eps_min(&self) -> Option<f64> {
        self.eps_min
    }

    /// `N(ε)`: the most gaps in any half-open window `[E, E + ε)`.
    pub fn n_eps(&self, eps: f64) -> usize {
        window_max(&self.gaps, eps, self.tolerance)
    }

    /// Mean and standard deviation of `|G_α|`.
    pub fn abs_moments(&self) -> (f64, f64) {
        let n = self.gaps.len() as f64;
        if n == 0.0 {
            return (0.0, 0.0);
        }
        let mean = self.gaps.iter().map(|g| g.abs()).sum::<f64>() / n;
        let second = self.gaps.iter().map(|g| g * g).sum::<f64>() / n;
        (mean, (second - mean * mean).max(0.0).sqrt())
    }

    /// Counts in `bins` equal-width bins spanning the gaps; returns `(left edge, count)`.
    pub fn histogram(&self, bins: usize) -> Vec<(f64, usize)> {
        let (Some(&lo), Some(&hi)) = (self.gaps.first(), self.gaps.last()) else {
            return Vec::new();
        };
        let bins = bins.max(1);
        let width = ((hi - lo) / bins as f64).max(f64::MIN_POSITIVE);
        let mut out: Vec<(f64, usize)> = (0..bins).map(|k| (lo + k as f64 * width, 0)).collect();
        for g in &self.gaps {
            let k = (((g - lo) / width) as usize).min(bins - 1);
            out[k].1 += 1;
        }
        out
    }
}

/// Gap statistics of a diagonalized system.
pub fn gap_stats(sys: &SpectralSystem, epsilons: &[f64], degeneracy_tol: f64) -> GapStats {
    gap_stats_from_levels(&sys.level_energies(), epsilons, degeneracy_tol)
}

/// Gap statistics of a list of distinct levels.
pub fn gap_stats_from_levels(levels: &[f64], epsilons: &[f64], degeneracy_tol: f64) -> GapStats {
    let n = levels.len();
    let mut gaps = Vec::with_capacity(n * n.saturating_sub(1));
    for (i, a) in levels.iter().enumerate() {
        for (j, b) in levels.iter().enumerate() {
            if i != j {
                gaps.push(a - b);
            }
        }
    }
    gaps.sort_unstable_by(f64::total_cmp);

    let mut d_g = 0;
    let mut eps_min: Option<f64> = None;
    let mut k = 0;
    let mut prev_last: Option<f64> = None;
    while k < gaps.len() {
        let first = gaps[k];
        let mut last = first;
        let mut size = 1;
        k += 1;
        while k < gaps.len() && gaps[k] - last <= degeneracy_tol {
            last = gaps[k];
            size += 1;
            k += 1;
        }
        d_g = d_g.max(size);
        if let Some(p) = prev_last {
            let sep = first - p;
            eps_min = Some(eps_min.map_or(sep, |m| m.min(sep)));
        }
        prev_last = Some(last);
    }

    let counts = epsilons.iter().map(|&e| window_max(&gaps, e, degeneracy_tol)).collect();
    GapStats {
        gaps,
        tolerance: degeneracy_tol,
        epsilons: epsilons.to_vec(),
        counts,
        d_g,
        eps_min,
    }
}

/// Gaps within `tol` of the far edge count as lying on it, so rounding never splits a
/// degenerate gap across the boundary.
fn window_max(sorted: &[f64], eps: f64, tol: f64) -> usize {
    let width = (eps - tol).max(tol);
    let mut best = 0;
    let mut hi = 0;
    for lo in 0..sorted.len() {
        if hi < lo {
            hi = lo;
        }
        while hi < sorted.len() && sorted[hi] < sorted[lo] + width {
            hi += 1;
        }
        best = best.max(hi - lo);
    }
    best
}
