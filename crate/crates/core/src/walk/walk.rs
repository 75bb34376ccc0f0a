use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::{cis, eye, CMat, ZERO};

use super::{Lattice, WalkError};

/// Integer displacement in lattice units.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Offset(pub Vec<i64>);

impl Offset {
    pub fn zero(dims: usize) -> Self {
        Offset(vec![0; dims])
    }

    /// Unit vector `sign · e_axis`.
    pub fn unit(dims: usize, axis: usize, sign: i64) -> Self {
        let mut v = vec![0; dims];
        v[axis] = sign;
        Offset(v)
    }

    pub fn dims(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Offset) -> Offset {
        Offset(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Offset) -> Offset {
        Offset(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `q·p` in lattice units (multiply by `a` for the physical phase).
    pub fn dot(&self, p: &[f64]) -> f64 {
        self.0.iter().zip(p).map(|(&q, &x)| q as f64 * x).sum()
    }
}

impl fmt::Display for Offset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One factor of a walk written as a product of local unitaries.
#[derive(Debug, Clone)]
pub enum Factor {
    /// A site-independent coin unitary.
    Coin(CMat),
    /// Conditional shift `Σ_j S_{v_j} Π_j` with orthogonal projectors `Π_j` summing to 1.
    Shift(Vec<(Offset, CMat)>),
}

impl Factor {
    fn conjugated(&self, v: &CMat) -> Factor {
        let vd = v.adjoint();
        match self {
            Factor::Coin(c) => Factor::Coin(v * c * &vd),
            Factor::Shift(br) => {
                Factor::Shift(br.iter().map(|(o, p)| (o.clone(), v * p * &vd)).collect())
            }
        }
    }
}

/// Translation-invariant coined walk `U = Σ_q A_q S_q`.
///
/// One application of `U` advances time by `step_factor · a`.
#[derive(Debug, Clone)]
pub struct CoinedWalk {
    lattice: Lattice,
    coin_dim: usize,
    terms: BTreeMap<Offset, CMat>,
    factors: Option<Vec<Factor>>,
    step_factor: u32,
}

impl CoinedWalk {
    pub fn from_terms(
        lattice: Lattice,
        coin_dim: usize,
        terms: BTreeMap<Offset, CMat>,
    ) -> Result<Self, WalkError> {
        for (q, a) in &terms {
            if q.dims() != lattice.dims() {
                return Err(WalkError::DimsMismatch {
                    expected: lattice.dims(),
                    got: q.dims(),
                });
            }
            if a.nrows() != coin_dim || a.ncols() != coin_dim {
                return Err(WalkError::DimensionMismatch(format!(
                    "term at {q} is {}x{}, coin dimension is {coin_dim}",
                    a.nrows(),
                    a.ncols()
                )));
            }
        }
        Ok(Self {
            lattice,
            coin_dim,
            terms,
            factors: None,
            step_factor: 1,
        })
    }

    /// Builds the walk from factors listed in application order (first factor acts first).
    pub fn from_factors(
        lattice: Lattice,
        coin_dim: usize,
        factors: Vec<Factor>,
    ) -> Result<Self, WalkError> {
        let dims = lattice.dims();
        let mut terms: BTreeMap<Offset, CMat> = BTreeMap::new();
        terms.insert(Offset::zero(dims), eye(coin_dim));
        for f in &factors {
            let mut next: BTreeMap<Offset, CMat> = BTreeMap::new();
            match f {
                Factor::Coin(c) => {
                    for (q, a) in &terms {
                        next.insert(q.clone(), c * a);
                    }
                }
                Factor::Shift(branches) => {
                    for (v, proj) in branches {
                        if v.dims() != dims {
                            return Err(WalkError::DimsMismatch {
                                expected: dims,
                                got: v.dims(),
                            });
                        }
                        for (q, a) in &terms {
                            let entry = next
                                .entry(q.add(v))
                                .or_insert_with(|| CMat::zeros(coin_dim, coin_dim));
                            *entry += proj * a;
                        }
                    }
                }
            }
            next.retain(|_, a| a.iter().any(|z| z.norm() > 1e-15));
            terms = next;
        }
        let mut walk = Self::from_terms(lattice, coin_dim, terms)?;
        walk.factors = Some(factors);
        Ok(walk)
    }

    pub fn with_step_factor(mut self, f: u32) -> Self {
        self.step_factor = f.max(1);
        self
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dims(&self) -> usize {
        self.lattice.dims()
    }

    pub fn coin_dim(&self) -> usize {
        self.coin_dim
    }

    pub fn spacing(&self) -> f64 {
        self.lattice.spacing()
    }

    pub fn terms(&self) -> &BTreeMap<Offset, CMat> {
        &self.terms
    }

    pub fn factors(&self) -> Option<&[Factor]> {
        self.factors.as_deref()
    }

    /// Number of lattice timesteps `a` covered by one application of `U`.
    pub fn step_factor(&self) -> u32 {
        self.step_factor
    }

    /// Physical time advanced per application of `U`.
    pub fn time_step(&self) -> f64 {
        self.step_factor as f64 * self.spacing()
    }

    /// Same walk on a different lattice with the same number of axes.
    pub fn on_lattice(&self, lattice: Lattice) -> Result<Self, WalkError> {
        if lattice.dims() != self.dims() {
            return Err(WalkError::DimsMismatch {
                expected: self.dims(),
                got: lattice.dims(),
            });
        }
        let mut w = self.clone();
        w.lattice = lattice;
        Ok(w)
    }

    /// Walk in the coin basis rotated by `v`: `A_q ↦ V A_q V†`.
    pub fn conjugate_coin(&self, v: &CMat) -> Self {
        let vd = v.adjoint();
        let mut w = self.clone();
        w.terms = self
            .terms
            .iter()
            .map(|(q, a)| (q.clone(), v * a * &vd))
            .collect();
        w.factors = self
            .factors
            .as_ref()
            .map(|fs| fs.iter().map(|f| f.conjugated(v)).collect());
        w
    }

    /// The walk with its factors applied in the opposite order.
    pub fn reversed(&self) -> Option<Self> {
        let mut fs: Vec<Factor> = self.factors.clone()?;
        fs.reverse();
        Self::from_factors(self.lattice.clone(), self.coin_dim, fs)
            .ok()
            .map(|w| w.with_step_factor(self.step_factor))
    }

    /// Momentum symbol `U(p) = Σ_q A_q e^{−i q·p a}`.
    pub fn symbol(&self, p: &[f64]) -> CMat {
        let a = self.spacing();
        let mut u = CMat::from_element(self.coin_dim, self.coin_dim, ZERO);
        for (q, aq) in &self.terms {
            u += aq * cis(-q.dot(p) * a);
        }
        u
    }

    /// Symbol of the walk with every offset rotated by 90° in the (x, y) plane,
    /// `(q_x, q_y) ↦ (−q_y, q_x)`.
    pub fn rotated_symbol(&self, p: &[f64]) -> CMat {
        let a = self.spacing();
        let mut u = CMat::from_element(self.coin_dim, self.coin_dim, ZERO);
        for (q, aq) in &self.terms {
            let mut r = q.0.clone();
            r[0] = -q.0[1];
            r[1] = q.0[0];
            u += aq * cis(-Offset(r).dot(p) * a);
        }
        u
    }

    /// `Σ_q A_q`.
    pub fn coin_sum(&self) -> CMat {
        let mut w = CMat::zeros(self.coin_dim, self.coin_dim);
        for a in self.terms.values() {
            w += a;
        }
        w
    }

    /// Dense evolution operator on the full lattice; index `site · d_C + coin`.
    pub fn dense_matrix(&self) -> CMat {
        let n = self.lattice.sites();
        let d = self.coin_dim;
        let mut u = CMat::zeros(n * d, n * d);
        for site in 0..n {
            for (q, aq) in &self.terms {
                let target = self.lattice.translate(site, &q.0);
                for i in 0..d {
                    for j in 0..d {
                        u[(target * d + i, site * d + j)] += aq[(i, j)];
                    }
                }
            }
        }
        u
    }
}
