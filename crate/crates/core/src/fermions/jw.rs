use crate::linalg::{CMat, C64};

use super::{FermionError, FermionPolynomial, PauliSum};

/// Bijection from modes to qubit positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeOrdering {
    position: Vec<usize>,
}

impl ModeOrdering {
    /// Mode `m` on qubit `m`.
    pub fn linear(n_modes: usize) -> Self {
        Self {
            position: (0..n_modes).collect(),
        }
    }

    /// `position[m]` is the qubit of mode `m`.
    pub fn from_positions(position: Vec<usize>) -> Result<Self, FermionError> {
        let n = position.len();
        if n > 64 {
            return Err(FermionError::TooManyModes { modes: n, max: 64 });
        }
        let mut seen = vec![false; n];
        for &p in &position {
            if p >= n || seen[p] {
                return Err(FermionError::NotBijective);
            }
            seen[p] = true;
        }
        Ok(Self { position })
    }

    /// Orders modes by `(site_of_mode, mode)`, so modes on one site are consecutive.
    pub fn site_consecutive(site_of_mode: &[usize]) -> Result<Self, FermionError> {
        let mut modes: Vec<usize> = (0..site_of_mode.len()).collect();
        modes.sort_by_key(|&m| (site_of_mode[m], m));
        let mut position = vec![0; modes.len()];
        for (q, m) in modes.into_iter().enumerate() {
            position[m] = q;
        }
        Self::from_positions(position)
    }

    pub fn len(&self) -> usize {
        self.position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }

    pub fn position(&self, mode: usize) -> Option<usize> {
        self.position.get(mode).copied()
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }
}

fn qubit(mode: usize, ordering: &ModeOrdering) -> Result<usize, FermionError> {
    match ordering.position(mode) {
        None => Err(FermionError::UnknownMode(mode)),
        Some(q) if q >= 64 => Err(FermionError::TooManyModes { modes: q + 1, max: 64 }),
        Some(q) => Ok(q),
    }
}

/// Qubit image of `a†_m`: `σ⁻` on `π(m)` times `Z` on every earlier qubit.
pub fn jw_creation(mode: usize, ordering: &ModeOrdering) -> Result<PauliSum, FermionError> {
    let q = qubit(mode, ordering)?;
    Ok(PauliSum::z_string((1u64 << q) - 1) * PauliSum::sigma_minus(q))
}

pub fn jw_annihilation(mode: usize, ordering: &ModeOrdering) -> Result<PauliSum, FermionError> {
    let q = qubit(mode, ordering)?;
    Ok(PauliSum::z_string((1u64 << q) - 1) * PauliSum::sigma_plus(q))
}

/// Jordan–Wigner image under `ordering`.
pub fn jordan_wigner(
    op: &FermionPolynomial,
    ordering: &ModeOrdering,
) -> Result<PauliSum, FermionError> {
    let n = ordering.len();
    if n > 64 {
        return Err(FermionError::TooManyModes { modes: n, max: 64 });
    }
    let mut cre = Vec::with_capacity(n);
    let mut ann = Vec::with_capacity(n);
    for m in 0..n {
        cre.push(jw_creation(m, ordering)?);
        ann.push(jw_annihilation(m, ordering)?);
    }
    let mut out = PauliSum::zero();
    for (word, c) in op.terms() {
        let mut t = PauliSum::identity().scale(c);
        for o in word {
            if o.mode >= n {
                return Err(FermionError::UnknownMode(o.mode));
            }
            let f = if o.dagger { &cre[o.mode] } else { &ann[o.mode] };
            t = &t * f;
        }
        out = out + t;
    }
    Ok(out)
}

/// Dense Fock-space matrix of `op` on `n_modes` modes under the linear ordering.
pub fn fock_matrix(op: &FermionPolynomial, n_modes: usize) -> Result<CMat, FermionError> {
    if n_modes > super::DENSE_MODE_CAP {
        return Err(FermionError::TooManyModes {
            modes: n_modes,
            max: super::DENSE_MODE_CAP,
        });
    }
    Ok(jordan_wigner(op, &ModeOrdering::linear(n_modes))?.dense(n_modes))
}

/// Fock vacuum on `n_modes` modes.
pub fn vacuum_state(n_modes: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); 1 << n_modes];
    v[0] = C64::new(1.0, 0.0);
    v
}
