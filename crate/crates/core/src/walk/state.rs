use rustfft::FftPlanner;

use crate::linalg::{c, CVec, C64, ZERO};

use super::{CoinedWalk, Lattice, WalkError};

/// Walker amplitudes indexed by `site · d_C + coin`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveState {
    extents: Vec<usize>,
    coin_dim: usize,
    amplitudes: Vec<C64>,
}

impl WaveState {
    pub fn zeros(lattice: &Lattice, coin_dim: usize) -> Self {
        Self {
            extents: lattice.extents().to_vec(),
            coin_dim,
            amplitudes: vec![ZERO; lattice.sites() * coin_dim],
        }
    }

    pub fn from_amplitudes(
        lattice: &Lattice,
        coin_dim: usize,
        amplitudes: Vec<C64>,
    ) -> Result<Self, WalkError> {
        if amplitudes.len() != lattice.sites() * coin_dim {
            return Err(WalkError::DimensionMismatch(format!(
                "{} amplitudes for {} sites × {coin_dim} coin states",
                amplitudes.len(),
                lattice.sites()
            )));
        }
        Ok(Self {
            extents: lattice.extents().to_vec(),
            coin_dim,
            amplitudes,
        })
    }

    /// Walker at `coords` with coin spinor `coin` (normalised here).
    pub fn localized(lattice: &Lattice, coords: &[i64], coin: &[C64]) -> Result<Self, WalkError> {
        if coords.len() != lattice.dims() {
            return Err(WalkError::DimsMismatch {
                expected: lattice.dims(),
                got: coords.len(),
            });
        }
        let mut s = Self::zeros(lattice, coin.len());
        let site = lattice.index(coords);
        let norm = coin.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(WalkError::InvalidParameter("zero coin spinor".into()));
        }
        for (i, z) in coin.iter().enumerate() {
            s.amplitudes[site * coin.len() + i] = z / norm;
        }
        Ok(s)
    }

    pub fn coin_dim(&self) -> usize {
        self.coin_dim
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn sites(&self) -> usize {
        self.extents.iter().product()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, site: usize, coin: usize) -> C64 {
        self.amplitudes[site * self.coin_dim + coin]
    }

    pub fn to_vector(&self) -> CVec {
        CVec::from_column_slice(&self.amplitudes)
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm();
        if n > 0.0 {
            for z in &mut self.amplitudes {
                *z /= n;
            }
        }
        self
    }

    /// Probability per site, summed over the coin.
    pub fn position_distribution(&self) -> Vec<f64> {
        self.amplitudes
            .chunks(self.coin_dim)
            .map(|ch| ch.iter().map(|z| z.norm_sqr()).sum())
            .collect()
    }

    /// Momentum-space amplitudes `⟨p|ψ⟩ = N^{-1/2} Σ_n e^{−i p·n a} ψ(n)`, FFT bin order.
    pub fn momentum_amplitudes(&self) -> Vec<C64> {
        let mut out = self.amplitudes.clone();
        fft_sites(&mut out, &self.extents, self.coin_dim, false);
        let scale = 1.0 / (self.sites() as f64).sqrt();
        out.iter_mut().for_each(|z| *z *= scale);
        out
    }

    fn check(&self, walk: &CoinedWalk) -> Result<(), WalkError> {
        if self.extents != walk.lattice().extents() || self.coin_dim != walk.coin_dim() {
            return Err(WalkError::DimensionMismatch(format!(
                "state on {:?}×{} does not match walk on {:?}×{}",
                self.extents,
                self.coin_dim,
                walk.lattice().extents(),
                walk.coin_dim()
            )));
        }
        Ok(())
    }
}

/// In-place multi-axis DFT of each coin component. `inverse` uses `e^{+i…}` without scaling.
pub(crate) fn fft_sites(data: &mut [C64], extents: &[usize], coin_dim: usize, inverse: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let sites: usize = extents.iter().product();
    let mut stride = sites;
    for &n in extents {
        stride /= n;
        let fft = if inverse {
            planner.plan_fft_inverse(n)
        } else {
            planner.plan_fft_forward(n)
        };
        let mut line = vec![ZERO; n];
        let blocks = sites / (n * stride);
        for coin in 0..coin_dim {
            for b in 0..blocks {
                for s in 0..stride {
                    let base = b * n * stride + s;
                    for (k, z) in line.iter_mut().enumerate() {
                        *z = data[(base + k * stride) * coin_dim + coin];
                    }
                    fft.process(&mut line);
                    for (k, z) in line.iter().enumerate() {
                        data[(base + k * stride) * coin_dim + coin] = *z;
                    }
                }
            }
        }
    }
}

/// One application of `U` in position space: `ψ'(n) = Σ_q A_q ψ(n − q)`.
pub fn step(walk: &CoinedWalk, state: &WaveState) -> Result<WaveState, WalkError> {
    state.check(walk)?;
    let lattice = walk.lattice();
    let d = walk.coin_dim();
    let neg: Vec<(Vec<i64>, &crate::linalg::CMat)> = walk
        .terms()
        .iter()
        .map(|(q, a)| (q.0.iter().map(|x| -x).collect(), a))
        .collect();
    let mut out = vec![ZERO; state.amplitudes.len()];
    for site in 0..lattice.sites() {
        for (back, aq) in &neg {
            let source = lattice.translate(site, back);
            let src = &state.amplitudes[source * d..(source + 1) * d];
            for i in 0..d {
                let mut acc = ZERO;
                for j in 0..d {
                    acc += aq[(i, j)] * src[j];
                }
                out[site * d + i] += acc;
            }
        }
    }
    Ok(WaveState {
        extents: state.extents.clone(),
        coin_dim: d,
        amplitudes: out,
    })
}

/// One application of `U` through momentum space: FFT, multiply by `U(p)`, inverse FFT.
pub fn step_momentum(walk: &CoinedWalk, state: &WaveState) -> Result<WaveState, WalkError> {
    state.check(walk)?;
    let lattice = walk.lattice();
    let d = walk.coin_dim();
    let mut data = state.amplitudes.clone();
    fft_sites(&mut data, &state.extents, d, false);
    let sites = lattice.sites();
    let mut p = vec![0.0; lattice.dims()];
    for site in 0..sites {
        for (axis, bin) in lattice.coords(site).into_iter().enumerate() {
            p[axis] = lattice.bin_momentum(axis, bin as usize);
        }
        let u = walk.symbol(&p);
        let v = CVec::from_column_slice(&data[site * d..(site + 1) * d]);
        let w = u * v;
        data[site * d..(site + 1) * d].copy_from_slice(w.as_slice());
    }
    fft_sites(&mut data, &state.extents, d, true);
    let scale = c(1.0 / sites as f64, 0.0);
    data.iter_mut().for_each(|z| *z *= scale);
    Ok(WaveState {
        extents: state.extents.clone(),
        coin_dim: d,
        amplitudes: data,
    })
}

/// Result of [`evolve`]: the final state and, when requested, the position
/// distribution at every step `0..=n`.
#[derive(Debug, Clone)]
pub struct Evolution {
    pub state: WaveState,
    pub distributions: Option<Vec<Vec<f64>>>,
}

/// Applies `U` `n_steps` times.
pub fn evolve(
    walk: &CoinedWalk,
    state: &WaveState,
    n_steps: usize,
    record: bool,
) -> Result<Evolution, WalkError> {
    state.check(walk)?;
    let mut cur = state.clone();
    let mut rows = record.then(|| vec![cur.position_distribution()]);
    for _ in 0..n_steps {
        cur = step(walk, &cur)?;
        if let Some(r) = rows.as_mut() {
            r.push(cur.position_distribution());
        }
    }
    Ok(Evolution {
        state: cur,
        distributions: rows,
    })
}
