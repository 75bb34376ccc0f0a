use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, Matrix3, Vector3};

use crate::linalg::{c, eye, op_norm, polar_unitary, CMat, Pauli};

use super::{ContinuumError, ContinuumHamiltonian};

const GAMMA_TOL: f64 = 1e-10;
const RELATIVISTIC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Relativistic3d,
    Relativistic2d,
    Relativistic1d,
    Trivial,
    NonRelativistic,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Relativistic3d => "relativistic_3d",
            Classification::Relativistic2d => "relativistic_2d",
            Classification::Relativistic1d => "relativistic_1d",
            Classification::Trivial => "trivial",
            Classification::NonRelativistic => "non_relativistic",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Normal form `H(p) = Σ_j γ_j k_j σ′_j + μ·σ + drift` of a two-level continuum Hamiltonian,
/// where `k = Rᵀp` and `σ′_j = Σ_k O_kj σ_k`.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    /// Singular values, descending, padded to three entries.
    pub gammas: [f64; 3],
    /// Orthogonal change of spatial axes `R` (`d×d`).
    pub axis_rotation: DMatrix<f64>,
    /// Proper rotation `O` of the Pauli vector.
    pub pauli_rotation: Matrix3<f64>,
    /// Coin unitary `V` with `V σ_j V† = σ′_j`.
    pub coin_rotation: CMat,
    /// Coefficients of the identity in each `B_i`; reported, not removed from the physics.
    pub drift: Vec<f64>,
    /// Identity part of the constant term.
    pub energy_offset: f64,
    /// Pauli components of the constant term.
    pub mass_vector: [f64; 3],
    pub classification: Classification,
    /// Deviation reported by [`is_relativistic`] on the rescaled, drift-free Hamiltonian.
    pub deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativisticCheck {
    pub relativistic: bool,
    pub deviation: f64,
    pub mass_sq: f64,
}

fn sample_directions(dims: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![vec![0.0; dims]];
    for axis in 0..dims {
        for s in [1.0, -1.0] {
            let mut v = vec![0.0; dims];
            v[axis] = s;
            out.push(v);
        }
    }
    for mask in 0..(1usize << dims) {
        let norm = (dims as f64).sqrt();
        out.push(
            (0..dims)
                .map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 } / norm)
                .collect(),
        );
    }
    let golden = PI * (3.0 - 5f64.sqrt());
    let n = 48;
    for k in 0..n {
        let v = match dims {
            1 => continue,
            2 => {
                let t = 2.0 * PI * (k as f64 + 0.5) / n as f64;
                vec![t.cos(), t.sin()]
            }
            _ => {
                let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
                let r = (1.0 - z * z).sqrt();
                let t = golden * k as f64;
                let mut v = vec![r * t.cos(), r * t.sin(), z];
                v.resize(dims, 0.0);
                v
            }
        };
        out.push(v);
    }
    out
}

/// Checks `H(p)² = (|p|² + m²)·1` on `p = 0` and a set of unit directions, with
/// `m² = tr(M²)/d`.
pub fn is_relativistic(h: &ContinuumHamiltonian) -> RelativisticCheck {
    let d = h.coin_dim();
    let mass_sq = (&h.m * &h.m).trace().re / d as f64;
    let mut deviation: f64 = 0.0;
    for p in sample_directions(h.dims()) {
        let hp = h.symbol(&p);
        let p2: f64 = p.iter().map(|x| x * x).sum();
        let diff = &hp * &hp - eye(d) * c(p2 + mass_sq, 0.0);
        deviation = deviation.max(op_norm(&diff));
    }
    RelativisticCheck {
        relativistic: deviation <= RELATIVISTIC_TOL,
        deviation,
        mass_sq,
    }
}

fn pauli_coeffs(m: &CMat) -> (f64, [f64; 3]) {
    let id = 0.5 * m.trace().re;
    let mut v = [0.0; 3];
    for (k, p) in Pauli::all().into_iter().enumerate() {
        v[k] = 0.5 * (m * p.matrix()).trace().re;
    }
    (id, v)
}

fn pauli_combination(v: &[f64]) -> CMat {
    let mut out = CMat::zeros(2, 2);
    for (k, p) in Pauli::all().into_iter().enumerate() {
        out += p.matrix() * c(v[k], 0.0);
    }
    out
}

/// Coin unitary `V` with `V σ_k V† = Σ_j O_jk σ_j`, found as the null vector of the
/// intertwining equations.
fn su2_from_rotation(o: &Matrix3<f64>) -> CMat {
    let mut stack = CMat::zeros(12, 4);
    for k in 0..3 {
        let target = pauli_combination(&[o[(0, k)], o[(1, k)], o[(2, k)]]);
        let sk = Pauli::all()[k].matrix();
        // vec(target V − V σ_k) = (1 ⊗ target − σ_kᵀ ⊗ 1) vec V
        let block = eye(2).kronecker(&target) - sk.transpose().kronecker(&eye(2));
        stack.view_mut((4 * k, 0), (4, 4)).copy_from(&block);
    }
    let svd = stack.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let mut best = 0;
    for i in 0..svd.singular_values.len() {
        if svd.singular_values[i] < svd.singular_values[best] {
            best = i;
        }
    }
    let row = v_t.row(best).adjoint();
    polar_unitary(&CMat::from_column_slice(2, 2, row.as_slice()))
}

/// Normal form of a two-level continuum Hamiltonian via the real SVD of its Pauli
/// coefficient matrix.
pub fn canonicalize(h: &ContinuumHamiltonian) -> Result<CanonicalForm, ContinuumError> {
    if h.coin_dim() != 2 {
        return Err(ContinuumError::CoinDim(h.coin_dim()));
    }
    let dims = h.dims();
    let mut n = DMatrix::<f64>::zeros(3, dims);
    let mut drift = Vec::with_capacity(dims);
    for (i, bi) in h.b.iter().enumerate() {
        let (id, v) = pauli_coeffs(bi);
        drift.push(id);
        for k in 0..3 {
            n[(k, i)] = v[k];
        }
    }
    let (energy_offset, mass_vector) = pauli_coeffs(&h.m);

    let svd = n.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V");
    let r = svd.singular_values.len();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));

    let mut gammas = [0.0; 3];
    let mut o_cols: Vec<Vector3<f64>> = Vec::new();
    let mut axis_rotation = DMatrix::<f64>::identity(dims, dims);
    for (j, &idx) in order.iter().enumerate() {
        gammas[j] = svd.singular_values[idx];
        o_cols.push(Vector3::new(u[(0, idx)], u[(1, idx)], u[(2, idx)]));
        for i in 0..dims {
            axis_rotation[(i, j)] = v_t[(idx, i)];
        }
    }
    for e in [Vector3::x(), Vector3::y(), Vector3::z()] {
        if o_cols.len() == 3 {
            break;
        }
        let mut w = e;
        for col in &o_cols {
            w -= col * col.dot(&w);
        }
        if w.norm() > 1e-6 {
            o_cols.push(w.normalize());
        }
    }
    let mut o = Matrix3::from_columns(&o_cols);
    if o.determinant() < 0.0 {
        o.set_column(2, &(-o.column(2)));
        if r == 3 {
            for i in 0..dims {
                axis_rotation[(i, 2)] = -axis_rotation[(i, 2)];
            }
        }
    }
    let coin_rotation = su2_from_rotation(&o);

    let active: Vec<usize> = (0..3).filter(|&j| gammas[j] > GAMMA_TOL).collect();
    let reduced = ContinuumHamiltonian::new(
        active
            .iter()
            .map(|&j| pauli_combination(&[o[(0, j)], o[(1, j)], o[(2, j)]]))
            .collect(),
        pauli_combination(&mass_vector),
    );
    let check = is_relativistic(&reduced);
    let classification = if active.is_empty() {
        Classification::Trivial
    } else if !check.relativistic {
        Classification::NonRelativistic
    } else {
        match active.len() {
            1 => Classification::Relativistic1d,
            2 => Classification::Relativistic2d,
            _ => Classification::Relativistic3d,
        }
    };
    Ok(CanonicalForm {
        gammas,
        axis_rotation,
        pauli_rotation: o,
        coin_rotation,
        drift,
        energy_offset,
        mass_vector,
        classification,
        deviation: check.deviation,
    })
}
