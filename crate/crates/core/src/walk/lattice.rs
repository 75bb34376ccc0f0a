use std::f64::consts::PI;

use super::WalkError;

/// Periodic cubic lattice with `dims` axes, even extents and spacing `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    extents: Vec<usize>,
    spacing: f64,
}

impl Lattice {
    pub fn new(extents: Vec<usize>, spacing: f64) -> Result<Self, WalkError> {
        if extents.is_empty() || extents.len() > 3 {
            return Err(WalkError::InvalidParameter(format!(
                "lattice must have 1 to 3 axes, got {}",
                extents.len()
            )));
        }
        for (axis, &extent) in extents.iter().enumerate() {
            if extent == 0 || extent % 2 != 0 {
                return Err(WalkError::OddExtent { axis, extent });
            }
        }
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(WalkError::InvalidParameter(format!(
                "spacing must be positive, got {spacing}"
            )));
        }
        Ok(Self { extents, spacing })
    }

    pub fn dims(&self) -> usize {
        self.extents.len()
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn sites(&self) -> usize {
        self.extents.iter().product()
    }

    /// Row-major site index of (wrapped) integer coordinates; the last axis varies fastest.
    pub fn index(&self, coords: &[i64]) -> usize {
        let mut idx = 0usize;
        for (&c, &n) in coords.iter().zip(&self.extents) {
            idx = idx * n + c.rem_euclid(n as i64) as usize;
        }
        idx
    }

    pub fn coords(&self, mut idx: usize) -> Vec<i64> {
        let mut out = vec![0i64; self.dims()];
        for axis in (0..self.dims()).rev() {
            let n = self.extents[axis];
            out[axis] = (idx % n) as i64;
            idx /= n;
        }
        out
    }

    /// Site reached from `idx` by moving `offset` lattice vectors.
    pub fn translate(&self, idx: usize, offset: &[i64]) -> usize {
        let c: Vec<i64> = self
            .coords(idx)
            .iter()
            .zip(offset)
            .map(|(a, b)| a + b)
            .collect();
        self.index(&c)
    }

    /// Momenta `2πk/(Na)` for `k ∈ (−N/2, N/2]` along one axis, in ascending order.
    pub fn axis_momenta(&self, axis: usize) -> Vec<f64> {
        let n = self.extents[axis] as i64;
        ((-n / 2 + 1)..=(n / 2))
            .map(|k| 2.0 * PI * k as f64 / (n as f64 * self.spacing))
            .collect()
    }

    /// Momentum of FFT bin `bin` (0-based, wrapped into the grid convention).
    pub fn bin_momentum(&self, axis: usize, bin: usize) -> f64 {
        let n = self.extents[axis] as i64;
        let mut k = bin as i64;
        if k > n / 2 {
            k -= n;
        }
        2.0 * PI * k as f64 / (n as f64 * self.spacing)
    }

    /// Every grid momentum, last axis fastest.
    pub fn momentum_grid(&self) -> Vec<Vec<f64>> {
        let axes: Vec<Vec<f64>> = (0..self.dims()).map(|a| self.axis_momenta(a)).collect();
        let mut out = vec![Vec::new()];
        for ax in &axes {
            let mut next = Vec::with_capacity(out.len() * ax.len());
            for prefix in &out {
                for &p in ax {
                    let mut v = prefix.clone();
                    v.push(p);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }
}
