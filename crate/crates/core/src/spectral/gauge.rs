use rand::Rng;

use crate::linalg::{cis, CMat, C64, ZERO};
use crate::walk::{CoinedWalk, Factor, Lattice, Offset, WaveState};

use super::SpectralError;

/// Link phases `A_b(n)·a`; entry `[b][n]` lives on the link from `n` to `n + e_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeField {
    lattice: Lattice,
    phases: Vec<Vec<f64>>,
}

impl GaugeField {
    pub fn zero(lattice: &Lattice) -> Self {
        Self::constant(lattice, &vec![0.0; lattice.dims()])
    }

    /// Same phase `values[b]` on every link along axis `b`.
    pub fn constant(lattice: &Lattice, values: &[f64]) -> Self {
        let phases = values
            .iter()
            .map(|&v| vec![v.rem_euclid(2.0 * std::f64::consts::PI); lattice.sites()])
            .collect();
        Self {
            lattice: lattice.clone(),
            phases,
        }
    }

    pub fn from_phases(lattice: &Lattice, phases: Vec<Vec<f64>>) -> Result<Self, SpectralError> {
        if phases.len() != lattice.dims() || phases.iter().any(|p| p.len() != lattice.sites()) {
            return Err(SpectralError::InvalidParameter(
                "gauge field needs one phase per site and axis".into(),
            ));
        }
        let phases = phases
            .into_iter()
            .map(|ax| {
                ax.into_iter()
                    .map(|v| v.rem_euclid(2.0 * std::f64::consts::PI))
                    .collect()
            })
            .collect();
        Ok(Self {
            lattice: lattice.clone(),
            phases,
        })
    }

    pub fn random<R: Rng + ?Sized>(lattice: &Lattice, rng: &mut R) -> Self {
        let tau = 2.0 * std::f64::consts::PI;
        let phases = (0..lattice.dims())
            .map(|_| (0..lattice.sites()).map(|_| rng.random::<f64>() * tau).collect())
            .collect();
        Self {
            lattice: lattice.clone(),
            phases,
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn phase(&self, axis: usize, site: usize) -> f64 {
        self.phases[axis][site]
    }

    /// Field after the gauge transformation `λ`: `A′_b(n)a = A_b(n)a + λ(n+e_b) − λ(n)`.
    pub fn transformed(&self, lambda: &[f64]) -> Self {
        let dims = self.lattice.dims();
        let phases = (0..dims)
            .map(|b| {
                let e = Offset::unit(dims, b, 1);
                (0..self.lattice.sites())
                    .map(|n| {
                        let next = self.lattice.translate(n, &e.0);
                        (self.phases[b][n] + lambda[next] - lambda[n])
                            .rem_euclid(2.0 * std::f64::consts::PI)
                    })
                    .collect()
            })
            .collect();
        Self {
            lattice: self.lattice.clone(),
            phases,
        }
    }

    /// Phase picked up moving from `site` by `k` links along `axis`.
    fn transport(&self, site: usize, axis: usize, k: i64) -> C64 {
        let dims = self.lattice.dims();
        let mut total = 0.0;
        let mut cur = site;
        if k > 0 {
            let e = Offset::unit(dims, axis, 1);
            for _ in 0..k {
                total -= self.phases[axis][cur];
                cur = self.lattice.translate(cur, &e.0);
            }
        } else {
            let e = Offset::unit(dims, axis, -1);
            for _ in 0..(-k) {
                cur = self.lattice.translate(cur, &e.0);
                total += self.phases[axis][cur];
            }
        }
        cis(total)
    }
}

/// `Gψ` with `G = diag(e^{−iλ_n})`.
pub fn gauge_transform_state(state: &WaveState, lattice: &Lattice, lambda: &[f64]) -> WaveState {
    let d = state.coin_dim();
    let amps: Vec<C64> = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, z)| z * cis(-lambda[i / d]))
        .collect();
    WaveState::from_amplitudes(lattice, d, amps).expect("same shape")
}

/// Position-dependent walk with every move dressed by the link phases it traverses.
#[derive(Debug, Clone)]
pub struct GaugedWalk {
    field: GaugeField,
    coin_dim: usize,
    layers: Vec<Vec<(Offset, CMat)>>,
}

impl GaugedWalk {
    pub fn field(&self) -> &GaugeField {
        &self.field
    }

    pub fn apply(&self, state: &WaveState) -> WaveState {
        let lat = &self.field.lattice;
        let d = self.coin_dim;
        let mut cur: Vec<C64> = state.amplitudes().to_vec();
        for layer in &self.layers {
            let mut next = vec![ZERO; cur.len()];
            for site in 0..lat.sites() {
                let src = &cur[site * d..(site + 1) * d];
                for (v, m) in layer {
                    let (target, phase) = match v.0.iter().position(|&x| x != 0) {
                        None => (site, C64::new(1.0, 0.0)),
                        Some(axis) => (
                            lat.translate(site, &v.0),
                            self.field.transport(site, axis, v.0[axis]),
                        ),
                    };
                    for i in 0..d {
                        let mut acc = ZERO;
                        for j in 0..d {
                            acc += m[(i, j)] * src[j];
                        }
                        next[target * d + i] += acc * phase;
                    }
                }
            }
            cur = next;
        }
        WaveState::from_amplitudes(lat, d, cur).expect("same shape")
    }

    /// Dense matrix, index `site · d_C + coin`; intended for small verification lattices.
    pub fn dense(&self) -> CMat {
        let lat = &self.field.lattice;
        let dim = lat.sites() * self.coin_dim;
        let mut out = CMat::zeros(dim, dim);
        for col in 0..dim {
            let mut amps = vec![ZERO; dim];
            amps[col] = C64::new(1.0, 0.0);
            let s = WaveState::from_amplitudes(lat, self.coin_dim, amps).expect("shape");
            let img = self.apply(&s);
            for (row, z) in img.amplitudes().iter().enumerate() {
                out[(row, col)] = *z;
            }
        }
        out
    }
}

/// Couples a walk to a U(1) field. Walks stored as products are gauged factor by factor
/// so that every move runs along a single axis.
pub fn apply_gauge(walk: &CoinedWalk, field: &GaugeField) -> Result<GaugedWalk, SpectralError> {
    if field.lattice.extents() != walk.lattice().extents() {
        return Err(SpectralError::LatticeMismatch {
            field: field.lattice.extents().to_vec(),
            walk: walk.lattice().extents().to_vec(),
        });
    }
    let dims = walk.dims();
    let layers: Vec<Vec<(Offset, CMat)>> = match walk.factors() {
        Some(fs) => fs
            .iter()
            .map(|f| match f {
                Factor::Coin(c) => vec![(Offset::zero(dims), c.clone())],
                Factor::Shift(br) => br.clone(),
            })
            .collect(),
        None => vec![walk
            .terms()
            .iter()
            .map(|(q, a)| (q.clone(), a.clone()))
            .collect()],
    };
    for layer in &layers {
        for (v, _) in layer {
            if v.0.iter().filter(|&&x| x != 0).count() > 1 {
                return Err(SpectralError::NotSingleAxis(v.to_string()));
            }
        }
    }
    Ok(GaugedWalk {
        field: field.clone(),
        coin_dim: walk.coin_dim(),
        layers,
    })
}
