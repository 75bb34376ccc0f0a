use std::f64::consts::{FRAC_PI_2, PI};

use crate::linalg::{c, cis, hermitian_2x2_eigvec, loglog_slope, CMat, CVec, Pauli, C64, ZERO};

use super::FermionError;

/// Which eigenvalue of `U(p)` a mode belongs to. `λ₋` (negative imaginary part) is
/// positive energy, since `e^{−iEa}` has negative imaginary part for `E ∈ (0, π/a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyBranch {
    Positive,
    Negative,
}

impl EnergyBranch {
    pub fn eigenvalue(self, m: f64, a: f64, p: f64) -> C64 {
        let re = (m * a).cos() * (p * a).cos();
        let im = (1.0 - re * re).max(0.0).sqrt();
        match self {
            EnergyBranch::Positive => c(re, -im),
            EnergyBranch::Negative => c(re, im),
        }
    }
}

/// One momentum of the discrete vacuum.
#[derive(Debug, Clone, PartialEq)]
pub struct VacuumMode {
    pub p: f64,
    /// `λ₊(p)`, the negative-energy eigenvalue.
    pub lambda_plus: C64,
    pub lambda_minus: C64,
    /// Negative-energy eigenvector of `U(p) = e^{−imσ_x a}e^{−ipσ_z a}`.
    pub w_negative: CVec,
    pub w_positive: CVec,
    /// `|⟨p_c|p_d⟩|` against the negative-energy eigenvector of `pσ_z + mσ_x`.
    pub overlap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VacuumReport {
    pub mass: f64,
    pub spacing: f64,
    pub modes: Vec<VacuumMode>,
    /// `‖Ω − Ω_d‖ = √(2 − 2Π overlaps)` over the reported modes.
    pub distance: f64,
}

impl VacuumReport {
    /// `p,lambda_plus_re,lambda_plus_im,overlap` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("p,lambda_plus_re,lambda_plus_im,overlap\n");
        for m in &self.modes {
            s.push_str(&format!(
                "{},{},{},{}\n",
                m.p, m.lambda_plus.re, m.lambda_plus.im, m.overlap
            ));
        }
        s
    }
}

fn symbol(m: f64, a: f64, p: f64) -> CMat {
    let coin = CMat::from_row_slice(
        2,
        2,
        &[
            c((m * a).cos(), 0.0),
            c(0.0, -(m * a).sin()),
            c(0.0, -(m * a).sin()),
            c((m * a).cos(), 0.0),
        ],
    );
    let shift = CMat::from_row_slice(2, 2, &[cis(-p * a), ZERO, ZERO, cis(p * a)]);
    coin * shift
}

fn mode(m: f64, a: f64, p: f64) -> VacuumMode {
    let u = symbol(m, a, p);
    // Im λ is the spectrum of (U − U†)/2i; its larger eigenvalue is λ₊.
    let k = (&u - u.adjoint()).map(|z| z * c(0.0, -0.5));
    let w_negative = hermitian_2x2_eigvec(&k, true);
    let w_positive = hermitian_2x2_eigvec(&k, false);
    let minus_h = (Pauli::Z.matrix() * c(p, 0.0) + Pauli::X.matrix() * c(m, 0.0)) * c(-1.0, 0.0);
    let continuum = hermitian_2x2_eigvec(&minus_h, true);
    let overlap = continuum.dotc(&w_negative).norm().min(1.0);
    VacuumMode {
        p,
        lambda_plus: EnergyBranch::Negative.eigenvalue(m, a, p),
        lambda_minus: EnergyBranch::Positive.eigenvalue(m, a, p),
        w_negative,
        w_positive,
        overlap,
    }
}

fn check(m: f64, a: f64) -> Result<(), FermionError> {
    if !(a > 0.0) {
        return Err(FermionError::InvalidParameter(format!("spacing must be positive, got {a}")));
    }
    if (m * a).abs() >= FRAC_PI_2 {
        return Err(FermionError::MassTooLarge { ma: m * a });
    }
    Ok(())
}

/// Discrete vacuum of the 1D Dirac walk on a ring of `n_sites` sites, over every grid momentum.
pub fn discrete_vacuum(m: f64, a: f64, n_sites: usize) -> Result<VacuumReport, FermionError> {
    vacuum_with_cutoff(m, a, n_sites, PI / a)
}

fn vacuum_with_cutoff(m: f64, a: f64, n_sites: usize, cutoff: f64) -> Result<VacuumReport, FermionError> {
    check(m, a)?;
    if n_sites < 2 {
        return Err(FermionError::InvalidParameter("ring needs at least 2 sites".into()));
    }
    let dp = 2.0 * PI / (n_sites as f64 * a);
    let half = n_sites as i64 / 2;
    let modes: Vec<VacuumMode> = (-(n_sites as i64 - 1) / 2..=half)
        .map(|k| k as f64 * dp)
        .filter(|p| p.abs() <= cutoff + 1e-12)
        .map(|p| mode(m, a, p))
        .collect();
    if modes.is_empty() {
        return Err(FermionError::InvalidParameter("no momenta below the cutoff".into()));
    }
    let product: f64 = modes.iter().map(|md| md.overlap).product();
    Ok(VacuumReport {
        mass: m,
        spacing: a,
        distance: (2.0 - 2.0 * product).max(0.0).sqrt(),
        modes,
    })
}

/// Vacuum distance restricted to `|p| ≤ cutoff` on a ring of physical length `length`.
pub fn vacuum_overlap(
    m: f64,
    a: f64,
    cutoff: f64,
    length: f64,
) -> Result<VacuumReport, FermionError> {
    check(m, a)?;
    if cutoff > PI / a {
        return Err(FermionError::InvalidParameter(format!(
            "cutoff {cutoff} exceeds π/a = {}",
            PI / a
        )));
    }
    let n_sites = (length / a).round() as usize;
    vacuum_with_cutoff(m, a, n_sites, cutoff)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VacuumConvergence {
    pub spacings: Vec<f64>,
    pub distances: Vec<f64>,
    pub slope: f64,
}

/// Log-log slope of the truncated vacuum distance against the spacing.
pub fn vacuum_convergence(
    m: f64,
    cutoff: f64,
    length: f64,
    spacings: &[f64],
) -> Result<VacuumConvergence, FermionError> {
    let distances = spacings
        .iter()
        .map(|&a| vacuum_overlap(m, a, cutoff, length).map(|r| r.distance))
        .collect::<Result<Vec<_>, _>>()?;
    let slope = if distances.iter().all(|&d| d > 0.0) && spacings.len() >= 2 {
        loglog_slope(spacings, &distances)
    } else {
        f64::NAN
    };
    Ok(VacuumConvergence {
        spacings: spacings.to_vec(),
        distances,
        slope,
    })
}
