//! Small dense complex linear-algebra helpers shared by every module.

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e^{iθ}`
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

/// Pauli labels. `X`, `Y`, `Z` are also used as axis labels for conditional shifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> CMat {
        match self {
            Pauli::X => CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
            Pauli::Y => CMat::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
            Pauli::Z => CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        }
    }

    pub fn all() -> [Pauli; 3] {
        [Pauli::X, Pauli::Y, Pauli::Z]
    }
}

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn real_scale(m: &CMat, s: f64) -> CMat {
    m.map(|z| z * s)
}

/// Frobenius norm of `a - b`.
pub fn frob_dist(a: &CMat, b: &CMat) -> f64 {
    (a - b).norm()
}

/// Largest absolute entry.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Operator (spectral) norm.
pub fn op_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0, |acc: f64, &s| acc.max(s))
}

/// Deviation of `m` from Hermiticity, measured entrywise.
pub fn hermiticity_defect(m: &CMat) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()).map(|z| z * 0.5)
}

/// Deviation of `u` from unitarity, `‖U†U − 1‖_F`.
pub fn unitarity_defect(u: &CMat) -> f64 {
    frob_dist(&(u.adjoint() * u), &eye(u.ncols()))
}

/// Eigen-decomposition of a Hermitian matrix with ascending eigenvalues.
pub fn hermitian_eigen(h: &CMat) -> (Vec<f64>, CMat) {
    let n = h.nrows();
    let eig = hermitian_part(h).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &eig.eigenvectors.column(i));
    }
    (values, vecs)
}

/// `e^{-i h t}` for Hermitian `h`.
pub fn expm_hermitian(h: &CMat, t: f64) -> CMat {
    let (vals, vecs) = hermitian_eigen(h);
    let phases = CVec::from_iterator(vals.len(), vals.iter().map(|&e| cis(-e * t)));
    &vecs * CMat::from_diagonal(&phases) * vecs.adjoint()
}

/// Eigenphases in (−π, π] and eigenvectors of a unitary matrix.
pub fn unitary_eigen(u: &CMat) -> (Vec<f64>, CMat) {
    let (q, t) = u.clone().schur().unpack();
    let phases = (0..t.nrows()).map(|i| wrap_phase(t[(i, i)].arg())).collect();
    (phases, q)
}

/// Sorted eigenphases in (−π, π].
pub fn eigenphases(u: &CMat) -> Vec<f64> {
    if u.nrows() == 1 {
        return vec![wrap_phase(u[(0, 0)].arg())];
    }
    if u.nrows() == 2 {
        return eigenphases_2x2(u);
    }
    let mut p = unitary_eigen(u).0;
    p.sort_by(f64::total_cmp);
    p
}

fn eigenphases_2x2(u: &CMat) -> Vec<f64> {
    // U = e^{iφ}(a0 − i a·σ) with (a0, a) a unit four-vector; phases are φ ± atan2(|a|, a0).
    let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
    let phi = 0.5 * det.arg();
    let rot = cis(-phi);
    let v00 = u[(0, 0)] * rot;
    let v11 = u[(1, 1)] * rot;
    let v01 = u[(0, 1)] * rot;
    let v10 = u[(1, 0)] * rot;
    let a0 = 0.5 * (v00 + v11).re;
    let a = (0.25 * (v00 - v11).norm_sqr() + 0.5 * (v01.norm_sqr() + v10.norm_sqr())).sqrt();
    let theta = a.atan2(a0);
    let mut p = vec![wrap_phase(phi - theta), wrap_phase(phi + theta)];
    p.sort_by(f64::total_cmp);
    p
}

/// Maps an angle into (−π, π].
pub fn wrap_phase(theta: f64) -> f64 {
    use std::f64::consts::PI;
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Maps `x` into the half-open interval (−L/2, L/2].
pub fn wrap_centered(x: f64, period: f64) -> f64 {
    let half = period / 2.0;
    let mut t = (x + half).rem_euclid(period) - half;
    if t <= -half {
        t += period;
    }
    t
}

/// Hermitian `m` with `u = e^{-i m}` built from the principal eigenphases of `u`.
/// Returns the phases alongside so callers can inspect the branch.
pub fn unitary_log(u: &CMat) -> (CMat, Vec<f64>) {
    let (phases, q) = unitary_eigen(u);
    let d = CVec::from_iterator(phases.len(), phases.iter().map(|&t| c(-t, 0.0)));
    let m = &q * CMat::from_diagonal(&d) * q.adjoint();
    (hermitian_part(&m), phases)
}

/// Unitary factor of the polar decomposition.
pub fn polar_unitary(m: &CMat) -> CMat {
    let svd = m.clone().svd(true, true);
    svd.u.unwrap() * svd.v_t.unwrap()
}

/// Integer matrix power by repeated squaring.
pub fn matrix_power(m: &CMat, mut n: u64) -> CMat {
    let mut result = eye(m.nrows());
    let mut base = m.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = &result * &base;
        }
        n >>= 1;
        if n > 0 {
            base = &base * &base;
        }
    }
    result
}

/// Orthonormal basis for the span of the given columns (modified Gram–Schmidt).
pub fn orthonormalize(cols: &[CVec], tol: f64) -> Vec<CVec> {
    let mut basis: Vec<CVec> = Vec::new();
    for v in cols {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let proj = b.dotc(&w);
                w -= b * proj;
            }
        }
        let n = w.norm();
        if n > tol {
            basis.push(w / c(n, 0.0));
        }
    }
    basis
}

/// Haar-random unitary via QR of a complex Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    let g = CMat::from_fn(n, n, |_, _| {
        c(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut q = q;
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        let col = q.column(j) * ph;
        q.set_column(j, &col);
    }
    q
}

/// Random Hermitian matrix with Gaussian entries (GUE normalisation up to scale).
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    let g = CMat::from_fn(n, n, |_, _| {
        c(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    hermitian_part(&g)
}

/// Normalised complex Gaussian vector.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVec {
    let v = CVec::from_fn(n, |_, _| {
        c(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let norm = v.norm();
    v / c(norm, 0.0)
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Eigenvector of a 2×2 Hermitian matrix for its larger (`upper = true`) or smaller eigenvalue.
/// Diagonal input returns an exact basis vector.
pub fn hermitian_2x2_eigvec(h: &CMat, upper: bool) -> CVec {
    let a = h[(0, 0)].re;
    let d = h[(1, 1)].re;
    let b = h[(0, 1)];
    if b.norm() == 0.0 {
        let first = if upper { a >= d } else { a < d };
        return if first {
            CVec::from_vec(vec![ONE, ZERO])
        } else {
            CVec::from_vec(vec![ZERO, ONE])
        };
    }
    let mean = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let lam = if upper { mean + r } else { mean - r };
    let v = if (a - lam).abs() > (d - lam).abs() {
        CVec::from_vec(vec![b, c(lam - a, 0.0)])
    } else {
        CVec::from_vec(vec![c(lam - d, 0.0), b.conj()])
    };
    let n = v.norm();
    v / c(n, 0.0)
}
