use std::f64::consts::PI;

use super::state::mean_phase;
use super::SpectralSystem;
use crate::linalg::{c, cis, CMat, C64};

/// Normalized time weights `f(t)` for energy filtering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FilterWeight {
    /// `1/T` on `[0, T]`.
    TopHat(f64),
    /// `(T/π) / (T² + (t − T/2)²)`, the Lorentzian centred on the same window.
    Lorentzian(f64),
}

impl FilterWeight {
    pub fn density(self, t: f64) -> f64 {
        match self {
            FilterWeight::TopHat(w) => {
                if (0.0..=w).contains(&t) {
                    1.0 / w
                } else {
                    0.0
                }
            }
            FilterWeight::Lorentzian(w) => {
                let s = t - 0.5 * w;
                w / (PI * (w * w + s * s))
            }
        }
    }

    /// `∫ f(t) e^{iGt} dt`.
    pub fn transform(self, gap: f64) -> C64 {
        match self {
            FilterWeight::TopHat(w) => mean_phase(gap * w),
            FilterWeight::Lorentzian(w) => cis(0.5 * gap * w) * c((-gap.abs() * w).exp(), 0.0),
        }
    }
}

/// `∫ f(t) e^{iHt} A e^{−iHt} dt`, evaluated in the eigenbasis as `A_ij f̂(E_i − E_j)`.
///
/// Elements inside one degenerate level are left unchanged.
pub fn energy_filter(a: &CMat, sys: &SpectralSystem, weight: FilterWeight) -> CMat {
    let e = sys.energies();
    let level = sys.level_index();
    let mut at = sys.to_eigenbasis(a);
    for i in 0..e.len() {
        for j in 0..e.len() {
            if level[i] != level[j] {
                at[(i, j)] *= weight.transform(e[i] - e[j]);
            }
        }
    }
    sys.from_eigenbasis(&at)
}
