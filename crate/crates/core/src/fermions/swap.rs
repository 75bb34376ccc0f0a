use crate::linalg::ONE;

use super::{FermionError, FermionPolynomial};

/// `exp[iπ/2 (b†−a†)(b−a)]`, written in closed form as `1 − (b†−a†)(b−a)`
/// since `(b†−a†)(b−a)/2` is the number operator of the mode `(b−a)/√2`.
pub fn fermionic_swap(a: usize, b: usize) -> Result<FermionPolynomial, FermionError> {
    if a == b {
        return Err(FermionError::SameMode(a));
    }
    Ok(swap_with(&FermionPolynomial::annihilate(a), &FermionPolynomial::annihilate(b)))
}

/// `1 − (b†−a†)(b−a)` for any pair of anticommuting fermion annihilators `a`, `b`.
pub(crate) fn swap_with(a: &FermionPolynomial, b: &FermionPolynomial) -> FermionPolynomial {
    let d = b.clone() - a.clone();
    FermionPolynomial::identity() - d.adjoint() * d
}

/// Qubit operators represented on a pair of modes `a`, `b`, with `|0⟩_Q = |0_F⟩`
/// and `|1⟩_Q = a†b†|0_F⟩`. `X` exchanges the two states with a `+` sign both ways.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitEncoding {
    pub identity: FermionPolynomial,
    /// `(a†−a)(b†+b)`
    pub x: FermionPolynomial,
    /// `aa† − a†a`
    pub z: FermionPolynomial,
}

pub fn encode_qubit_ops(a: usize, b: usize) -> Result<QubitEncoding, FermionError> {
    if a == b {
        return Err(FermionError::SameMode(a));
    }
    let (ad, an) = (FermionPolynomial::create(a), FermionPolynomial::annihilate(a));
    let (bd, bn) = (FermionPolynomial::create(b), FermionPolynomial::annihilate(b));
    Ok(QubitEncoding {
        identity: FermionPolynomial::scalar(ONE),
        x: (ad.clone() - an.clone()) * (bd + bn),
        z: an.clone() * ad.clone() - ad * an,
    })
}
