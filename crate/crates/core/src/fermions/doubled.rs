use std::collections::BTreeSet;

use crate::linalg::{eye, expm_hermitian, max_abs, unitary_log, CMat};

use super::jw::fock_matrix;
use super::swap::fermionic_swap;
use super::{FermionError, FermionPolynomial};

/// Largest system handled; the doubled Fock space has `2^(2·5)` dimensions.
pub const DOUBLED_MODE_CAP: usize = 5;

/// Quadratic generator `H = Σ h_ij a†_i a_j` with `e^{−iH}` second-quantizing `u`.
pub fn second_quantize(u: &CMat) -> FermionPolynomial {
    let (h, _) = unitary_log(u);
    let mut out = FermionPolynomial::zero();
    for i in 0..h.nrows() {
        for j in 0..h.ncols() {
            if h[(i, j)].norm() > 1e-15 {
                out = out + FermionPolynomial::hop(i, j).scale(h[(i, j)]);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubledReport {
    /// Largest entry of `U_AU_B† − Π S_n Π V_m`.
    pub residual: f64,
    pub passes: bool,
    /// Sites touched by each conjugated swap `V_m = U_B S_m U_B†`.
    pub swap_sites: Vec<BTreeSet<usize>>,
    /// Site of mode `m` together with the sites of the copy modes in `U_B b_m U_B†`.
    pub neighbourhoods: Vec<BTreeSet<usize>>,
    pub localized: bool,
    /// Largest entry of any commutator `[V_m, V_n]`.
    pub commutator_defect: f64,
}

/// Checks `U_AU_B† = Π_n S_n Π_m U_B S_m U_B†` on the doubled Fock space, with
/// `U_A = e^{−iH}` acting on modes `a_k ↦ 2k` and its copy `U_B` on `b_k ↦ 2k+1`.
/// Each `U_B S_m U_B†` is built from `b′_m = U_B b_m U_B†` as `1 − (b′†−a†)(b′−a)`.
pub fn doubled_local_decomposition(
    generator: &FermionPolynomial,
    site_of_mode: &[usize],
) -> Result<DoubledReport, FermionError> {
    let n = site_of_mode.len();
    if n > DOUBLED_MODE_CAP {
        return Err(FermionError::TooManyModes {
            modes: n,
            max: DOUBLED_MODE_CAP,
        });
    }
    if !generator.is_even() {
        return Err(FermionError::OddParity);
    }
    if !generator.is_hermitian(1e-12) {
        return Err(FermionError::NotHermitian);
    }
    if let Some(&m) = generator.modes().iter().find(|&&m| m >= n) {
        return Err(FermionError::UnknownMode(m));
    }
    let total = 2 * n;
    let site = |mode: usize| site_of_mode[mode / 2];
    let ua = expm_hermitian(&fock_matrix(&generator.relabel(|k| 2 * k), total)?, 1.0);
    let ub = expm_hermitian(&fock_matrix(&generator.relabel(|k| 2 * k + 1), total)?, 1.0);
    let ub_dag = ub.adjoint();
    let lhs = &ua * &ub_dag;

    let ann: Vec<CMat> = (0..total)
        .map(|k| fock_matrix(&FermionPolynomial::annihilate(k), total))
        .collect::<Result<_, _>>()?;
    let dim = 1usize << total;
    let mut swaps = eye(dim);
    let mut conjugated = Vec::with_capacity(n);
    let mut neighbourhoods = Vec::with_capacity(n);
    for m in 0..n {
        swaps *= fock_matrix(&fermionic_swap(2 * m, 2 * m + 1)?, total)?;
        let b_prime = &ub * &ann[2 * m + 1] * &ub_dag;
        let d = &b_prime - &ann[2 * m];
        conjugated.push(eye(dim) - d.adjoint() * d);
        let mut hood: BTreeSet<usize> = [site_of_mode[m]].into();
        for k in (1..total).step_by(2) {
            let anti = &b_prime * ann[k].adjoint() + ann[k].adjoint() * &b_prime;
            if max_abs(&anti) > 1e-9 {
                hood.insert(site(k));
            }
        }
        neighbourhoods.push(hood);
    }
    let mut rhs = swaps;
    for v in &conjugated {
        rhs *= v;
    }
    let residual = max_abs(&(&lhs - &rhs));

    let swap_sites: Vec<BTreeSet<usize>> = conjugated
        .iter()
        .map(|v| {
            (0..total)
                .filter(|&k| max_abs(&(v * &ann[k] - &ann[k] * v)) > 1e-9)
                .map(site)
                .collect()
        })
        .collect();
    let localized = swap_sites
        .iter()
        .zip(&neighbourhoods)
        .all(|(s, h)| s.is_subset(h));
    let mut commutator_defect: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let c = &conjugated[i] * &conjugated[j] - &conjugated[j] * &conjugated[i];
            commutator_defect = commutator_defect.max(max_abs(&c));
        }
    }
    Ok(DoubledReport {
        residual,
        passes: residual <= 1e-10,
        swap_sites,
        neighbourhoods,
        localized,
        commutator_defect,
    })
}

