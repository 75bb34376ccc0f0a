use std::fmt;
use std::str::FromStr;

use crate::linalg::{c, eye, kron, CMat, Pauli, ONE, ZERO};

use super::{CoinedWalk, Factor, Lattice, Offset, WalkError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Hadamard1d,
    Dirac1d,
    Dirac2d,
    Weyl3dRight,
    Weyl3dLeft,
    Dirac3d,
    StrangDirac1d,
    Spin13d,
    Rotsym2d,
}

impl Preset {
    pub const ALL: [Preset; 9] = [
        Preset::Hadamard1d,
        Preset::Dirac1d,
        Preset::Dirac2d,
        Preset::Weyl3dRight,
        Preset::Weyl3dLeft,
        Preset::Dirac3d,
        Preset::StrangDirac1d,
        Preset::Spin13d,
        Preset::Rotsym2d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Hadamard1d => "hadamard1d",
            Preset::Dirac1d => "dirac1d",
            Preset::Dirac2d => "dirac2d",
            Preset::Weyl3dRight => "weyl3d_right",
            Preset::Weyl3dLeft => "weyl3d_left",
            Preset::Dirac3d => "dirac3d",
            Preset::StrangDirac1d => "strang_dirac1d",
            Preset::Spin13d => "spin1_3d",
            Preset::Rotsym2d => "rotsym2d",
        }
    }

    pub fn dims(self) -> usize {
        match self {
            Preset::Hadamard1d | Preset::Dirac1d | Preset::StrangDirac1d => 1,
            Preset::Dirac2d | Preset::Rotsym2d => 2,
            _ => 3,
        }
    }

    pub fn has_mass(self) -> bool {
        matches!(
            self,
            Preset::Dirac1d | Preset::Dirac2d | Preset::Dirac3d | Preset::StrangDirac1d
        )
    }

    pub fn default_extents(self) -> Vec<usize> {
        match self.dims() {
            1 => vec![64],
            2 => vec![16, 16],
            _ => vec![8, 8, 8],
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| WalkError::UnknownPreset(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PresetParams {
    pub mass: f64,
    pub spacing: f64,
    /// Lattice extents; `None` picks the preset default.
    pub extents: Option<Vec<usize>>,
}

impl Default for PresetParams {
    fn default() -> Self {
        Self {
            mass: 0.0,
            spacing: 1.0,
            extents: None,
        }
    }
}

impl PresetParams {
    pub fn new(mass: f64, spacing: f64) -> Self {
        Self {
            mass,
            spacing,
            extents: None,
        }
    }

    pub fn with_extents(mut self, extents: Vec<usize>) -> Self {
        self.extents = Some(extents);
        self
    }
}

/// `e^{−iθσ}` for a Pauli matrix σ.
pub(crate) fn pauli_exp(p: Pauli, theta: f64) -> CMat {
    eye(2) * c(theta.cos(), 0.0) + p.matrix() * c(0.0, -theta.sin())
}

/// Projectors `(1 ± σ)/2`.
pub(crate) fn pauli_projectors(p: Pauli) -> (CMat, CMat) {
    let s = p.matrix();
    let plus = (eye(2) + &s) * c(0.5, 0.0);
    let minus = (eye(2) - &s) * c(0.5, 0.0);
    (plus, minus)
}

pub(crate) fn p_r() -> CMat {
    CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO])
}

pub(crate) fn p_l() -> CMat {
    CMat::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, ONE])
}

fn hadamard() -> CMat {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMat::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)])
}

/// `T_b = S_b Π⁺_b + S_b† Π⁻_b`, or with the projectors exchanged when `left`.
pub(crate) fn pauli_shift(dims: usize, axis: usize, p: Pauli, left: bool) -> Factor {
    let (plus, minus) = pauli_projectors(p);
    let (fwd, back) = if left { (minus, plus) } else { (plus, minus) };
    Factor::Shift(vec![
        (Offset::unit(dims, axis, 1), fwd),
        (Offset::unit(dims, axis, -1), back),
    ])
}

/// Spin-1 generators `(J_i)_{jk} = −i ε_{ijk}`.
pub fn spin1_generators() -> [CMat; 3] {
    let mut out = [CMat::zeros(3, 3), CMat::zeros(3, 3), CMat::zeros(3, 3)];
    for (i, m) in out.iter_mut().enumerate() {
        for j in 0..3 {
            for k in 0..3 {
                let eps = levi_civita(i, j, k);
                if eps != 0 {
                    m[(j, k)] = c(0.0, -(eps as f64));
                }
            }
        }
    }
    out
}

fn levi_civita(i: usize, j: usize, k: usize) -> i32 {
    if i == j || j == k || i == k {
        0
    } else if (i, j, k) == (0, 1, 2) || (i, j, k) == (1, 2, 0) || (i, j, k) == (2, 0, 1) {
        1
    } else {
        -1
    }
}

fn spin1_shift(dims: usize, axis: usize, j: &CMat) -> Factor {
    let j2 = j * j;
    let zero = eye(3) - &j2;
    let plus = (&j2 + j) * c(0.5, 0.0);
    let minus = (&j2 - j) * c(0.5, 0.0);
    Factor::Shift(vec![
        (Offset::unit(dims, axis, 1), plus),
        (Offset::zero(dims), zero),
        (Offset::unit(dims, axis, -1), minus),
    ])
}

/// Builds one of the named walks. Presets without a mass term reject `mass ≠ 0`.
pub fn build_preset(preset: Preset, params: &PresetParams) -> Result<CoinedWalk, WalkError> {
    let dims = preset.dims();
    let extents = params
        .extents
        .clone()
        .unwrap_or_else(|| preset.default_extents());
    if extents.len() != dims {
        return Err(WalkError::DimsMismatch {
            expected: dims,
            got: extents.len(),
        });
    }
    let lattice = Lattice::new(extents, params.spacing)?;
    let (m, a) = (params.mass, params.spacing);
    if !(m >= 0.0 && m.is_finite()) {
        return Err(WalkError::InvalidParameter(format!("mass must be ≥ 0, got {m}")));
    }
    if m != 0.0 && !preset.has_mass() {
        return Err(WalkError::InvalidParameter(format!(
            "preset {preset} has no mass term"
        )));
    }
    let conditional_1d = |fwd: i64| {
        Factor::Shift(vec![
            (Offset(vec![fwd]), p_r()),
            (Offset(vec![-fwd]), p_l()),
        ])
    };
    let (coin_dim, factors, step_factor) = match preset {
        Preset::Hadamard1d => (2, vec![Factor::Coin(hadamard()), conditional_1d(1)], 1),
        Preset::Dirac1d => (
            2,
            vec![conditional_1d(1), Factor::Coin(pauli_exp(Pauli::X, m * a))],
            1,
        ),
        Preset::StrangDirac1d => {
            let w = pauli_exp(Pauli::X, m * a);
            (
                2,
                vec![Factor::Coin(w.clone()), conditional_1d(2), Factor::Coin(w)],
                2,
            )
        }
        Preset::Dirac2d => (
            2,
            vec![
                pauli_shift(2, 1, Pauli::Y, false),
                pauli_shift(2, 0, Pauli::X, false),
                Factor::Coin(pauli_exp(Pauli::Z, m * a)),
            ],
            1,
        ),
        Preset::Weyl3dRight | Preset::Weyl3dLeft => {
            let left = preset == Preset::Weyl3dLeft;
            (
                2,
                vec![
                    pauli_shift(3, 2, Pauli::Z, left),
                    pauli_shift(3, 1, Pauli::Y, left),
                    pauli_shift(3, 0, Pauli::X, left),
                ],
                1,
            )
        }
        Preset::Dirac3d => {
            let beta = kron(&Pauli::X.matrix(), &eye(2));
            let w = eye(4) * c((m * a).cos(), 0.0) + beta * c(0.0, -(m * a).sin());
            let mut factors: Vec<Factor> = [(2, Pauli::Z), (1, Pauli::Y), (0, Pauli::X)]
                .into_iter()
                .map(|(axis, p)| {
                    let (plus, minus) = pauli_projectors(p);
                    let fwd = kron(&p_r(), &plus) + kron(&p_l(), &minus);
                    let back = kron(&p_r(), &minus) + kron(&p_l(), &plus);
                    Factor::Shift(vec![
                        (Offset::unit(3, axis, 1), fwd),
                        (Offset::unit(3, axis, -1), back),
                    ])
                })
                .collect();
            factors.push(Factor::Coin(w));
            (4, factors, 1)
        }
        Preset::Spin13d => {
            let j = spin1_generators();
            (
                3,
                vec![
                    spin1_shift(3, 2, &j[2]),
                    spin1_shift(3, 1, &j[1]),
                    spin1_shift(3, 0, &j[0]),
                ],
                1,
            )
        }
        Preset::Rotsym2d => {
            // Coin space is spin ⊗ sector with sector index 0 = r.
            let branches = |first: (usize, Pauli), second: (usize, Pauli)| {
                let mut out = Vec::new();
                for ((axis, p), sector) in [(first, p_l()), (second, p_r())] {
                    let (plus, minus) = pauli_projectors(p);
                    out.push((Offset::unit(2, axis, 1), kron(&plus, &sector)));
                    out.push((Offset::unit(2, axis, -1), kron(&minus, &sector)));
                }
                Factor::Shift(out)
            };
            (
                4,
                vec![
                    branches((1, Pauli::Y), (0, Pauli::X)),
                    branches((0, Pauli::X), (1, Pauli::Y)),
                ],
                1,
            )
        }
    };
    Ok(CoinedWalk::from_factors(lattice, coin_dim, factors)?.with_step_factor(step_factor))
}
