use std::f64::consts::PI;

use crate::linalg::{expm_hermitian, loglog_slope, matrix_power, op_norm};
use crate::walk::{build_preset, CoinedWalk, Preset, PresetParams, WalkError};

use super::{ContinuumError, ContinuumHamiltonian};

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    /// `(a, error(a))` in the order the spacings were given.
    pub rows: Vec<(f64, f64)>,
    /// Least-squares slope of `log error` against `log a`.
    pub slope: f64,
}

/// Walk family on a ring of fixed physical length, with the site count rounded to an
/// even integer.
pub fn preset_family(
    preset: Preset,
    mass: f64,
    length: f64,
) -> impl Fn(f64) -> Result<CoinedWalk, WalkError> {
    move |a: f64| {
        let half = (length / a / 2.0).round().max(1.0) as usize;
        let extents = vec![2 * half; preset.dims()];
        build_preset(preset, &PresetParams::new(mass, a).with_extents(extents))
    }
}

/// `max_{|p| ≤ Λ} ‖U(p)^{t/(f a)} − e^{−iH(p)t}‖` over grid momenta, for each spacing.
pub fn convergence_error<F>(
    family: F,
    h: &ContinuumHamiltonian,
    t: f64,
    spacings: &[f64],
    cutoff: f64,
) -> Result<ConvergenceReport, ContinuumError>
where
    F: Fn(f64) -> Result<CoinedWalk, WalkError>,
{
    if spacings.len() < 2 {
        return Err(ContinuumError::TooFewSpacings(spacings.len()));
    }
    let amax = spacings.iter().cloned().fold(0.0, f64::max);
    if !(cutoff > 0.0) || cutoff > PI / amax + 1e-12 {
        return Err(ContinuumError::CutoffOutOfRange {
            cutoff,
            max: PI / amax,
        });
    }
    let mut rows = Vec::with_capacity(spacings.len());
    for &a in spacings {
        let walk = family(a)?;
        let steps = t / walk.time_step();
        let n = steps.round();
        if n < 1.0 || (steps - n).abs() > 1e-9 * steps.max(1.0) {
            return Err(ContinuumError::NonIntegerSteps { a, steps });
        }
        let mut err: f64 = 0.0;
        let mut any = false;
        for p in walk.lattice().momentum_grid() {
            let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > cutoff + 1e-12 {
                continue;
            }
            any = true;
            let u = matrix_power(&walk.symbol(&p), n as u64);
            let exact = expm_hermitian(&h.symbol(&p), t);
            err = err.max(op_norm(&(u - exact)));
        }
        if !any {
            return Err(ContinuumError::EmptyTruncation);
        }
        rows.push((a, err));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows.iter().cloned().unzip();
    let slope = if ys.iter().all(|&e| e > 0.0) {
        loglog_slope(&xs, &ys)
    } else {
        f64::NAN
    };
    Ok(ConvergenceReport { rows, slope })
}
