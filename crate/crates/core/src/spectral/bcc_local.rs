use crate::linalg::{c, cis, eye, max_abs, CMat, Pauli, ONE};
use crate::walk::Lattice;

use super::SpectralError;

pub const LOCAL_DECOMPOSITION_TOL: f64 = 1e-10;

/// Outcome of rebuilding a sublattice walk from local unitaries.
#[derive(Debug, Clone, PartialEq)]
pub struct BccLocalReport {
    pub passes: bool,
    pub residual: f64,
    /// Dimension of the sublattice-restricted Hilbert space.
    pub dimension: usize,
}

/// Default check: `e^{−iP_xσ_x a}e^{−iP_zσ_z a}` in 2D, `Π_b e^{−iP_bσ_b a}` in 3D.
pub fn bcc_local_decomposition_check(
    dims: usize,
    extent: usize,
) -> Result<BccLocalReport, SpectralError> {
    let axes: &[Pauli] = match dims {
        2 => &[Pauli::X, Pauli::Z],
        3 => &[Pauli::X, Pauli::Y, Pauli::Z],
        d => return Err(SpectralError::BccDims(d)),
    };
    bcc_local_decomposition_with(axes, dims, extent, 0.0)
}

/// Compares `V = T_1⋯T_d` restricted to the sublattice with the sequence
/// `K_1 · L_1⋯L_{d−1} · X·W · K_d†`, where `T_b = e^{−iP_bσ_{axes[b]}a}`, `W` swaps
/// `|0⟩|n⟩ ↔ |1⟩|n+(1,…,1)⟩` and each `L_b` superposes pairs of sublattice states.
/// `phase_error` corrupts the first superposer. An empty `axes` list checks the identity walk.
pub fn bcc_local_decomposition_with(
    axes: &[Pauli],
    dims: usize,
    extent: usize,
    phase_error: f64,
) -> Result<BccLocalReport, SpectralError> {
    if !(2..=3).contains(&dims) {
        return Err(SpectralError::BccDims(dims));
    }
    if extent < 2 || !extent.is_multiple_of(2) || extent > 6 {
        return Err(SpectralError::InvalidParameter(format!(
            "extent must be even and between 2 and 6, got {extent}"
        )));
    }
    if !axes.is_empty() && axes.len() != dims {
        return Err(SpectralError::InvalidParameter(format!(
            "{} shift axes for a {dims}D lattice",
            axes.len()
        )));
    }
    let lattice = Lattice::new(vec![extent; dims], 1.0)?;
    let sub: Vec<usize> = (0..lattice.sites())
        .filter(|&n| {
            let x = lattice.coords(n);
            x.iter().all(|v| v.rem_euclid(2) == x[0].rem_euclid(2))
        })
        .collect();
    let mut pos = vec![usize::MAX; lattice.sites()];
    for (i, &n) in sub.iter().enumerate() {
        pos[n] = i;
    }
    let dim = 2 * sub.len();

    let full = full_walk(&lattice, axes);
    let mut v = CMat::zeros(dim, dim);
    for (i, &ni) in sub.iter().enumerate() {
        for (j, &nj) in sub.iter().enumerate() {
            for a in 0..2 {
                for b in 0..2 {
                    v[(2 * i + a, 2 * j + b)] = full[(2 * ni + a, 2 * nj + b)];
                }
            }
        }
    }

    let seq = if axes.is_empty() {
        eye(dim)
    } else {
        let k: Vec<CMat> = axes.iter().map(|&p| eigenbasis(p)).collect();
        let mut prod = coin_op(&k[0], sub.len());
        let mut reach = vec![0i64; dims];
        for b in 0..dims - 1 {
            reach[b] = 1;
            let mut cb = k[b].adjoint() * &k[b + 1];
            if b == 0 && phase_error != 0.0 {
                cb = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![
                    ONE,
                    cis(phase_error),
                ])) * cb;
            }
            let shift: Vec<i64> = reach.iter().map(|r| -2 * r).collect();
            prod *= superposer(&lattice, &sub, &pos, &cb, &shift);
        }
        prod *= coin_op(&Pauli::X.matrix(), sub.len());
        prod *= sublattice_swap(&lattice, &sub, &pos);
        prod *= coin_op(&k[dims - 1].adjoint(), sub.len());
        prod
    };

    let residual = max_abs(&(&seq - &v));
    Ok(BccLocalReport {
        passes: residual <= LOCAL_DECOMPOSITION_TOL,
        residual,
        dimension: dim,
    })
}

/// Columns are the `+1` and `−1` eigenvectors of the Pauli matrix.
fn eigenbasis(p: Pauli) -> CMat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match p {
        Pauli::X => CMat::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]),
        Pauli::Y => CMat::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(0.0, h), c(0.0, -h)]),
        Pauli::Z => eye(2),
    }
}

fn full_walk(lattice: &Lattice, axes: &[Pauli]) -> CMat {
    let dim = 2 * lattice.sites();
    let mut u = eye(dim);
    for (b, &p) in axes.iter().enumerate() {
        let k = eigenbasis(p);
        let mut t_prime = CMat::zeros(dim, dim);
        let mut fwd = vec![0i64; lattice.dims()];
        fwd[b] = 1;
        let back: Vec<i64> = fwd.iter().map(|x| -x).collect();
        for n in 0..lattice.sites() {
            t_prime[(2 * lattice.translate(n, &fwd), 2 * n)] = ONE;
            t_prime[(2 * lattice.translate(n, &back) + 1, 2 * n + 1)] = ONE;
        }
        let kk = coin_op(&k, lattice.sites());
        u = u * &kk * t_prime * kk.adjoint();
    }
    u
}

fn coin_op(m: &CMat, sites: usize) -> CMat {
    let mut out = CMat::zeros(2 * sites, 2 * sites);
    for s in 0..sites {
        out.view_mut((2 * s, 2 * s), (2, 2)).copy_from(m);
    }
    out
}

/// Acts as `cb` on each pair `{|0⟩|s⟩, |1⟩|s + shift⟩}`.
fn superposer(lattice: &Lattice, sub: &[usize], pos: &[usize], cb: &CMat, shift: &[i64]) -> CMat {
    let dim = 2 * sub.len();
    let mut out = CMat::zeros(dim, dim);
    for (i, &s) in sub.iter().enumerate() {
        let j = pos[lattice.translate(s, shift)];
        let (r0, r1) = (2 * i, 2 * j + 1);
        out[(r0, r0)] = cb[(0, 0)];
        out[(r1, r0)] = cb[(1, 0)];
        out[(r0, r1)] = cb[(0, 1)];
        out[(r1, r1)] = cb[(1, 1)];
    }
    out
}

/// Swaps `|0⟩|n⟩ ↔ |1⟩|n+(1,…,1)⟩`.
fn sublattice_swap(lattice: &Lattice, sub: &[usize], pos: &[usize]) -> CMat {
    let dim = 2 * sub.len();
    let ones = vec![1i64; lattice.dims()];
    let mut out = CMat::zeros(dim, dim);
    for (i, &n) in sub.iter().enumerate() {
        let j = pos[lattice.translate(n, &ones)];
        out[(2 * j + 1, 2 * i)] = ONE;
        out[(2 * i, 2 * j + 1)] = ONE;
    }
    out
}

