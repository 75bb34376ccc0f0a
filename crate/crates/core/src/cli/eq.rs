use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CliError, EqCommand, Report, RunConfig};
use crate::equilibration::{
    effective_dimension, evolve_expectation, exponential_gap_model, gap_stats, heisenberg_chain,
    pure_state, qubit_oscillator_model, running_average, slow_equilibration_construct,
    verify_bound, BoundTarget, FilterWeight, Horizon, SpectralSystem,
};
use crate::linalg::{eye, kron, max_abs, op_norm, random_hermitian, random_state, CMat, CVec, Pauli, ONE};

pub(super) fn run(cmd: EqCommand, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        EqCommand::Chain => chain(cfg),
        EqCommand::Deff => deff(cfg),
        EqCommand::Gaps => gaps(cfg),
        EqCommand::Bounds => bounds(cfg),
        EqCommand::Slow => slow(cfg),
        EqCommand::Filter => filter(cfg),
        EqCommand::Gapmodel => gapmodel(cfg),
        EqCommand::Toy => toy(cfg),
    }
}

/// `|↑↓↑↓…⟩` with spin 0 the leftmost factor.
fn neel(spins: usize) -> CVec {
    let index: usize = (0..spins).filter(|k| k % 2 == 1).map(|k| 1usize << (spins - 1 - k)).sum();
    let mut v = CVec::zeros(1 << spins);
    v[index] = ONE;
    v
}

/// `σ^z` on the leftmost spin.
fn first_spin_z(spins: usize) -> CMat {
    kron(&Pauli::Z.matrix(), &eye(1 << (spins - 1)))
}

fn chain(cfg: &RunConfig) -> Result<Report, CliError> {
    let spins: usize = cfg.get("spins")?;
    let sys = heisenberg_chain(spins, cfg.get("seed")?)?;
    let horizon: f64 = cfg.get("T")?;
    let points: usize = cfg.get("points")?;
    let times: Vec<f64> = (0..points).map(|k| horizon * k as f64 / (points - 1) as f64).collect();
    let rho = pure_state(&neel(spins))?;
    let a = first_spin_z(spins);
    let values = evolve_expectation(&rho, &sys, &a, &times)?;
    let averages = running_average(&rho, &sys, &a, &times)?;
    let mut out = Report::header("t,expectation,time_average");
    for ((t, v), m) in times.iter().zip(&values).zip(&averages) {
        out.row([t, v, m]);
    }
    Ok(out)
}

fn deff(cfg: &RunConfig) -> Result<Report, CliError> {
    let spins: usize = cfg.get("spins")?;
    let seed: u64 = cfg.get("seed")?;
    let sys = heisenberg_chain(spins, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ground = CVec::from(sys.eigenvectors().column(0));
    let mut out = Report::header("key,value");
    out.pair("dimension", sys.dimension());
    out.pair("levels", sys.n_levels());
    for (name, psi) in [
        ("d_eff_neel", neel(spins)),
        ("d_eff_random", random_state(&mut rng, sys.dimension())),
        ("d_eff_ground", ground),
    ] {
        out.pair(name, effective_dimension(&pure_state(&psi)?, &sys)?);
    }
    Ok(out)
}

fn gaps(cfg: &RunConfig) -> Result<Report, CliError> {
    let sys = heisenberg_chain(cfg.get("spins")?, cfg.get("seed")?)?;
    let eps: Vec<f64> = cfg.list("eps")?;
    let stats = gap_stats(&sys, &eps, sys.tolerance());
    let mut out = Report::header("eps,n_eps");
    for (e, n) in stats.table() {
        out.row([e.to_string(), n.to_string()]);
    }
    out.pair("d_g", stats.d_g());
    out.pair("eps_min", stats.eps_min().map_or("none".into(), |e| e.to_string()));
    Ok(out)
}

fn bounds(cfg: &RunConfig) -> Result<Report, CliError> {
    let spins: usize = cfg.get("spins")?;
    let horizons: Vec<f64> = cfg.list("T")?;
    let fixed_eps: Option<f64> = cfg.get_opt("eps")?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.get("seed")?);
    let mut out = Report::header("instance,T,target,lhs,rhs,holds");
    for i in 0..cfg.get::<usize>("instances")? {
        let sys = heisenberg_chain(spins, rng.random())?;
        let d = sys.dimension();
        let a = random_hermitian(&mut rng, d);
        let norm = op_norm(&a);
        let a = a.map(|z| z / norm);
        let psi = random_state(&mut rng, d);
        let eps = match fixed_eps {
            Some(e) => e,
            None => gap_stats(&sys, &[], sys.tolerance()).eps_min().ok_or_else(|| {
                CliError::invalid("eps", "the spectrum has fewer than two distinct gaps")
            })?,
        };
        for &t in &horizons {
            for (name, target) in [
                ("observable", BoundTarget::Observable(a.clone())),
                ("subsystem", BoundTarget::Subsystem { d_s: 2 }),
            ] {
                let r = verify_bound(&sys, &psi, &target, eps, Horizon::Finite(t))?;
                out.row([i.to_string(), t.to_string(), name.into(), r.lhs.to_string(), r.rhs.to_string(), r.holds.to_string()]);
                out.check(r.holds, || format!("instance {i}, T = {t}, {name}: {} > {}", r.lhs, r.rhs));
            }
        }
    }
    Ok(out)
}

fn slow(cfg: &RunConfig) -> Result<Report, CliError> {
    let d: usize = cfg.get("dim")?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.get("seed")?);
    let sys = SpectralSystem::new(random_hermitian(&mut rng, d))?;
    let psi = random_state(&mut rng, d);
    let s = slow_equilibration_construct(&sys, &psi, cfg.get("k")?, cfg.get("eps")?, cfg.get("samples")?)?;
    let mut out = Report::header("t,distance");
    for (t, x) in s.times.iter().zip(&s.distances) {
        out.row([t, x]);
    }
    out.pair("lower_bound", s.lower_bound);
    out.pair("infinite_average", s.infinite_average);
    out.pair("infinite_bound", s.infinite_bound);
    out.pair("d_eff", s.d_eff);
    out.check(s.window_holds(), || format!("a window sample falls below {}", s.lower_bound));
    out.check(s.infinite_holds(), || {
        format!("infinite average {} exceeds {}", s.infinite_average, s.infinite_bound)
    });
    Ok(out)
}

fn filter(cfg: &RunConfig) -> Result<Report, CliError> {
    let t: f64 = cfg.get("T")?;
    let points: usize = cfg.get("points")?;
    let span = 20.0 / t;
    let mut out = Report::header("gap,tophat_re,tophat_im,lorentzian_re,lorentzian_im");
    for k in 0..points {
        let g = -span + 2.0 * span * k as f64 / (points - 1) as f64;
        let a = FilterWeight::TopHat(t).transform(g);
        let b = FilterWeight::Lorentzian(t).transform(g);
        out.row([g, a.re, a.im, b.re, b.im]);
    }
    Ok(out)
}

fn gapmodel(cfg: &RunConfig) -> Result<Report, CliError> {
    let r = exponential_gap_model(
        cfg.get("beta")?,
        cfg.get("delta")?,
        cfg.get("levels")?,
        cfg.get("eps")?,
        cfg.get("seed")?,
    )?;
    let mut out = Report::header("key,value");
    out.pair("mean_gap", r.mean_gap);
    out.pair("predicted_mean_gap", r.predicted_mean_gap);
    out.pair("sigma_gap", r.sigma_gap);
    out.pair("predicted_sigma_gap", r.predicted_sigma_gap);
    out.pair("n_eps", r.n_eps);
    out.pair("predicted_n_eps", r.predicted_n_eps);
    out.pair("weak_separation", r.weak_separation);
    Ok(out)
}

fn toy(cfg: &RunConfig) -> Result<Report, CliError> {
    let n_max: usize = cfg.get("nmax")?;
    let model = qubit_oscillator_model(cfg.get("nu")?, cfg.get("lambda")?, n_max)?;
    let mut env = CVec::zeros(n_max);
    env[cfg.get::<usize>("env")?] = ONE;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.get("seed")?);
    let half = eye(2).map(|z| z * 0.5);
    let mut out = Report::header("sample,omega00,omega01_re,omega01_im,omega11,deviation");
    for k in 0..cfg.get::<usize>("samples")? {
        let q = random_state(&mut rng, 2);
        let w = model.subsystem_average(&q, &env)?;
        let dev = max_abs(&(&w - &half));
        out.row([k.to_string(), w[(0, 0)].re.to_string(), w[(0, 1)].re.to_string(), w[(0, 1)].im.to_string(), w[(1, 1)].re.to_string(), dev.to_string()]);
        out.check(dev <= 1e-10, || format!("sample {k}: ω_S deviates by {dev:e}"));
    }
    Ok(out)
}
