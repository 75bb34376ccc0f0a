use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::linalg::{CMat, C64, I, ONE, ZERO};

/// `Π_k X_k^{x_k} Z_k^{z_k}` with `X` to the left of `Z` on each qubit; bit `k` is qubit `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    pub x: u64,
    pub z: u64,
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0 };

    /// Product with its sign: `(X^{x1}Z^{z1})(X^{x2}Z^{z2}) = (−1)^{|z1∧x2|} X^{x1⊕x2} Z^{z1⊕z2}`.
    pub fn mul(self, other: PauliString) -> (f64, PauliString) {
        let sign = if (self.z & other.x).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        (
            sign,
            PauliString {
                x: self.x ^ other.x,
                z: self.z ^ other.z,
            },
        )
    }

    pub fn support(self) -> u64 {
        self.x | self.z
    }
}

/// Complex linear combination of Pauli strings on up to 64 qubits.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PauliSum {
    terms: BTreeMap<PauliString, C64>,
}

const DROP_TOL: f64 = 1e-14;

impl PauliSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::term(ONE, PauliString::IDENTITY)
    }

    pub fn term(c: C64, s: PauliString) -> Self {
        let mut out = Self::zero();
        out.terms.insert(s, c);
        out.prune();
        out
    }

    pub fn x(q: usize) -> Self {
        Self::term(ONE, PauliString { x: 1 << q, z: 0 })
    }

    pub fn z(q: usize) -> Self {
        Self::term(ONE, PauliString { x: 0, z: 1 << q })
    }

    /// `Y = iXZ`.
    pub fn y(q: usize) -> Self {
        Self::term(I, PauliString { x: 1 << q, z: 1 << q })
    }

    /// Product of `Z` over every qubit in `mask`.
    pub fn z_string(mask: u64) -> Self {
        Self::term(ONE, PauliString { x: 0, z: mask })
    }

    /// `σ⁻ = X(1+Z)/2 = |1⟩⟨0|`, the image of a creation operator.
    pub fn sigma_minus(q: usize) -> Self {
        let b = 1u64 << q;
        let h = C64::new(0.5, 0.0);
        Self::term(h, PauliString { x: b, z: 0 }) + Self::term(h, PauliString { x: b, z: b })
    }

    /// `σ⁺ = X(1−Z)/2 = |0⟩⟨1|`.
    pub fn sigma_plus(q: usize) -> Self {
        let b = 1u64 << q;
        let h = C64::new(0.5, 0.0);
        Self::term(h, PauliString { x: b, z: 0 }) + Self::term(-h, PauliString { x: b, z: b })
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() > DROP_TOL);
    }

    pub fn terms(&self) -> impl Iterator<Item = (PauliString, C64)> + '_ {
        self.terms.iter().map(|(s, c)| (*s, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, z: C64) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= z;
        }
        out.prune();
        out
    }

    pub fn adjoint(&self) -> Self {
        // (X^x Z^z)† = Z^z X^x = (−1)^{|x∧z|} X^x Z^z
        let mut out = Self::zero();
        for (s, c) in &self.terms {
            let sign = if (s.x & s.z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            out.terms.insert(*s, c.conj() * sign);
        }
        out
    }

    pub fn max_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Qubits acted on non-trivially by some term.
    pub fn support(&self) -> BTreeSet<usize> {
        let mask = self.terms.keys().fold(0u64, |m, s| m | s.support());
        (0..64).filter(|q| mask >> q & 1 == 1).collect()
    }

    /// Action on a state vector over `n` qubits; basis index bit `k` is qubit `k`, `1` occupied.
    pub fn apply(&self, state: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; state.len()];
        for (s, c) in &self.terms {
            for (b, amp) in state.iter().enumerate() {
                if *amp == ZERO {
                    continue;
                }
                let sign = if (s.z & b as u64).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                out[b ^ s.x as usize] += c * amp * sign;
            }
        }
        out
    }

    pub fn dense(&self, n_qubits: usize) -> CMat {
        let dim = 1usize << n_qubits;
        let mut m = CMat::zeros(dim, dim);
        for (s, c) in &self.terms {
            for b in 0..dim {
                let sign = if (s.z & b as u64).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                m[(b ^ s.x as usize, b)] += c * sign;
            }
        }
        m
    }
}

impl Add for PauliSum {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (s, c) in rhs.terms {
            *self.terms.entry(s).or_insert(ZERO) += c;
        }
        self.prune();
        self
    }
}

impl Sub for PauliSum {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for &PauliSum {
    type Output = PauliSum;
    fn mul(self, rhs: &PauliSum) -> PauliSum {
        let mut out = PauliSum::zero();
        for (s1, c1) in &self.terms {
            for (s2, c2) in &rhs.terms {
                let (sign, s) = s1.mul(*s2);
                *out.terms.entry(s).or_insert(ZERO) += c1 * c2 * sign;
            }
        }
        out.prune();
        out
    }
}

impl Mul for PauliSum {
    type Output = PauliSum;
    fn mul(self, rhs: PauliSum) -> PauliSum {
        &self * &rhs
    }
}

impl fmt::Display for PauliSum {
    /// One term per line, `coeff_re,coeff_im,site:P;site:P;...` with `Y` written out.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, c) in &self.terms {
            let mut coeff = *c;
            let mut sites = Vec::new();
            for q in 0..64 {
                let (xb, zb) = (s.x >> q & 1 == 1, s.z >> q & 1 == 1);
                let p = match (xb, zb) {
                    (false, false) => continue,
                    (true, false) => 'X',
                    (false, true) => 'Z',
                    (true, true) => {
                        coeff *= -I;
                        'Y'
                    }
                };
                sites.push(format!("{q}:{p}"));
            }
            writeln!(f, "{},{},{}", coeff.re + 0.0, coeff.im + 0.0, sites.join(";"))?;
        }
        Ok(())
    }
}
