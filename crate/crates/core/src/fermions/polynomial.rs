use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::FermionError;
use crate::linalg::{C64, ONE};

/// `a†_mode` when `dagger`, else `a_mode`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FermionOp {
    pub mode: usize,
    pub dagger: bool,
}

impl FermionOp {
    pub fn create(mode: usize) -> Self {
        Self { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        Self { mode, dagger: false }
    }

    fn rank(self) -> (u8, usize) {
        (u8::from(!self.dagger), self.mode)
    }
}

impl fmt::Display for FermionOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.mode, if self.dagger { "+" } else { "-" })
    }
}

const DROP_TOL: f64 = 1e-15;

/// Polynomial in creation and annihilation operators, kept normal ordered:
/// creators first, then annihilators, each group by ascending mode.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FermionPolynomial {
    terms: BTreeMap<Vec<FermionOp>, C64>,
}

impl FermionPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(ONE)
    }

    pub fn scalar(z: C64) -> Self {
        Self::monomial(z, &[])
    }

    pub fn create(mode: usize) -> Self {
        Self::monomial(ONE, &[FermionOp::create(mode)])
    }

    pub fn annihilate(mode: usize) -> Self {
        Self::monomial(ONE, &[FermionOp::annihilate(mode)])
    }

    pub fn number(mode: usize) -> Self {
        Self::create(mode) * Self::annihilate(mode)
    }

    /// Majorana operator `a + a†`.
    pub fn majorana(mode: usize) -> Self {
        Self::create(mode) + Self::annihilate(mode)
    }

    /// `a†_i a_j`.
    pub fn hop(i: usize, j: usize) -> Self {
        Self::create(i) * Self::annihilate(j)
    }

    /// Product of `ops` in the order given, with coefficient `coeff`, normal ordered.
    pub fn monomial(coeff: C64, ops: &[FermionOp]) -> Self {
        let mut out = Self::zero();
        let mut stack = vec![(coeff, ops.to_vec())];
        while let Some((c, mut word)) = stack.pop() {
            let Some(k) = (0..word.len().saturating_sub(1))
                .find(|&k| word[k].rank() >= word[k + 1].rank())
            else {
                out.accumulate(word, c);
                continue;
            };
            let (x, y) = (word[k], word[k + 1]);
            if x == y {
                continue;
            }
            if x.mode == y.mode {
                let mut contracted = word[..k].to_vec();
                contracted.extend_from_slice(&word[k + 2..]);
                stack.push((c, contracted));
            }
            word.swap(k, k + 1);
            stack.push((-c, word));
        }
        out.prune();
        out
    }

    fn accumulate(&mut self, word: Vec<FermionOp>, c: C64) {
        *self.terms.entry(word).or_insert(C64::new(0.0, 0.0)) += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() > DROP_TOL);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[FermionOp], C64)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), *v))
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
        let mut out = Self::zero();
        for (word, c) in &self.terms {
            let rev: Vec<FermionOp> = word
                .iter()
                .rev()
                .map(|o| FermionOp {
                    mode: o.mode,
                    dagger: !o.dagger,
                })
                .collect();
            out = out + Self::monomial(c.conj(), &rev);
        }
        out
    }

    /// Every term has an even number of operators.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|w| w.len() % 2 == 0)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (self.clone() - self.adjoint()).max_coeff() <= tol
    }

    pub fn max_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Modes appearing in any term, ascending.
    pub fn modes(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.terms.keys().flatten().map(|o| o.mode).collect();
        m.sort_unstable();
        m.dedup();
        m
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.clone() * other.clone() + other.clone() * self.clone()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.clone() * other.clone() - other.clone() * self.clone()
    }

    /// Relabels every mode through `map`.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero();
        for (word, c) in &self.terms {
            let ops: Vec<FermionOp> = word
                .iter()
                .map(|o| FermionOp {
                    mode: map(o.mode),
                    dagger: o.dagger,
                })
                .collect();
            out = out + Self::monomial(*c, &ops);
        }
        out
    }
}

impl Add for FermionPolynomial {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (w, c) in rhs.terms {
            self.accumulate(w, c);
        }
        self.prune();
        self
    }
}

impl Sub for FermionPolynomial {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FermionPolynomial {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for FermionPolynomial {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut word = w1.clone();
                word.extend_from_slice(w2);
                out = out + Self::monomial(c1 * c2, &word);
            }
        }
        out
    }
}

impl Mul<C64> for FermionPolynomial {
    type Output = Self;
    fn mul(self, rhs: C64) -> Self {
        self.scale(rhs)
    }
}

impl fmt::Display for FermionPolynomial {
    /// One term per line: `re,im:op op ...` with `3+` for `a†_3` and `3-` for `a_3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (word, c) in &self.terms {
            let ops: Vec<String> = word.iter().map(|o| o.to_string()).collect();
            writeln!(f, "{},{}:{}", c.re, c.im, ops.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for FermionOp {
    type Err = FermionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FermionError::InvalidParameter(format!("operator `{s}` is not of the form 3+ or 3-"));
        let (mode, dagger) = match s.as_bytes().last() {
            Some(b'+') => (&s[..s.len() - 1], true),
            Some(b'-') => (&s[..s.len() - 1], false),
            _ => return Err(bad()),
        };
        let mode = mode.parse().map_err(|_| bad())?;
        Ok(Self { mode, dagger })
    }
}

impl FromStr for FermionPolynomial {
    type Err = FermionError;

    /// Inverse of `Display`; terms may also be separated by `;` and a missing
    /// `re,im:` prefix means a unit coefficient.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Self::zero();
        for term in s.split(['\n', ';']).map(str::trim).filter(|t| !t.is_empty()) {
            let (coeff, word) = match term.split_once(':') {
                Some((c, w)) => (parse_coeff(c.trim())?, w),
                None => (ONE, term),
            };
            let ops = word
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<Vec<FermionOp>, _>>()?;
            out = out + Self::monomial(coeff, &ops);
        }
        Ok(out)
    }
}

fn parse_coeff(s: &str) -> Result<C64, FermionError> {
    let num = |x: &str| {
        x.trim()
            .parse::<f64>()
            .map_err(|_| FermionError::InvalidParameter(format!("coefficient `{s}` is not re or re,im")))
    };
    match s.split_once(',') {
        Some((re, im)) => Ok(C64::new(num(re)?, num(im)?)),
        None => Ok(C64::new(num(s)?, 0.0)),
    }
}
