use super::{CliError, Report, RunConfig, WalkCommand};
use crate::continuum::{
    canonicalize, continuum_hamiltonian, convergence_error, is_relativistic,
    lattice_rotation_invariance, preset_family,
};
use crate::linalg::{max_abs, C64, ONE, ZERO};
use crate::spectral::{bcc_project, dispersion, find_doublers};
use crate::walk::{build_preset, decompose_1d, evolve, CoinedWalk, Preset, PresetParams, WaveState};

const AXES: [&str; 3] = ["x", "y", "z"];

pub(super) fn run(cmd: WalkCommand, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        WalkCommand::Evolve => evolve_cmd(cfg),
        WalkCommand::Spectrum => spectrum(cfg),
        WalkCommand::Doublers => doublers(cfg),
        WalkCommand::Converge => converge(cfg),
        WalkCommand::Decompose => decompose(cfg),
        WalkCommand::Canonical => canonical(cfg),
        WalkCommand::Rotsym => rotsym(cfg),
    }
}

fn walk_from(cfg: &RunConfig) -> Result<CoinedWalk, CliError> {
    let preset: Preset = cfg.get("preset")?;
    let mut params = PresetParams::new(cfg.get("mass")?, cfg.get("spacing")?);
    if cfg.has("extents") {
        params = params.with_extents(cfg.list("extents")?);
    }
    Ok(build_preset(preset, &params)?)
}

fn columns(prefix: &str, dims: usize) -> Vec<String> {
    AXES[..dims].iter().map(|a| format!("{prefix}{a}")).collect()
}

fn evolve_cmd(cfg: &RunConfig) -> Result<Report, CliError> {
    let walk = walk_from(cfg)?;
    let steps: usize = cfg.get("steps")?;
    let lattice = walk.lattice();
    let mut coin = vec![ZERO; walk.coin_dim()];
    coin[0] = ONE;
    let start = WaveState::localized(lattice, &vec![0; walk.dims()], &coin)?;
    let rows = evolve(&walk, &start, steps, true)?.distributions.unwrap_or_default();
    let mut head = vec!["step".to_string()];
    head.extend(columns("", walk.dims()));
    head.push("probability".into());
    let mut out = Report::header(&head.join(","));
    for (n, dist) in rows.iter().enumerate() {
        let total: f64 = dist.iter().sum();
        out.check((total - 1.0).abs() <= 1e-10, || format!("norm {total} at step {n}"));
        for (site, p) in dist.iter().enumerate() {
            let mut cells = vec![n.to_string()];
            cells.extend(lattice.coords(site).iter().map(|x| x.to_string()));
            cells.push(p.to_string());
            out.row(cells);
        }
    }
    Ok(out)
}

fn spectrum(cfg: &RunConfig) -> Result<Report, CliError> {
    let walk = walk_from(cfg)?;
    let data = dispersion(&walk);
    let mut head = columns("p", walk.dims());
    head.extend((0..walk.coin_dim()).map(|b| format!("omega{b}")));
    let mut out = Report::header(&head.join(","));
    for (p, bands) in data.momenta.iter().zip(&data.bands) {
        out.row(p.iter().chain(bands));
    }
    Ok(out)
}

fn doublers(cfg: &RunConfig) -> Result<Report, CliError> {
    let walk = walk_from(cfg)?;
    let threshold = cfg.get::<f64>("threshold")? / walk.spacing();
    let grid: usize = cfg.get("grid")?;
    let report = if cfg.get::<bool>("sublattice")? {
        bcc_project(&walk, threshold, grid)?.doublers
    } else {
        find_doublers(&walk, threshold, grid)?
    };
    let mut head = columns("p", walk.dims());
    head.push("max_quasi_energy".into());
    let mut out = Report::header(&head.join(","));
    for (p, e) in report.momenta.iter().zip(&report.min_quasi_energy) {
        out.row(p.iter().chain(std::iter::once(e)));
    }
    Ok(out)
}

fn converge(cfg: &RunConfig) -> Result<Report, CliError> {
    let preset: Preset = cfg.get("preset")?;
    let mass: f64 = cfg.get("mass")?;
    let a0: f64 = cfg.get("spacing")?;
    let halvings: i32 = cfg.get("halvings")?;
    let spacings: Vec<f64> = (0..=halvings).map(|k| a0 / 2f64.powi(k)).collect();
    let h = continuum_hamiltonian(&build_preset(preset, &PresetParams::new(mass, a0))?)?;
    let family = preset_family(preset, mass, cfg.get("length")?);
    let r = convergence_error(family, &h, cfg.get("t")?, &spacings, cfg.get("cutoff")?)?;
    let mut out = Report::header("a,error");
    for (a, e) in &r.rows {
        out.row([a, e]);
    }
    out.pair("slope", r.slope);
    Ok(out)
}

fn decompose(cfg: &RunConfig) -> Result<Report, CliError> {
    let walk = walk_from(cfg)?;
    let dec = decompose_1d(&walk)?;
    let mut out = Report::header("factor,shift,projector_rank");
    for (k, (p, shift)) in dec.factors.iter().enumerate() {
        let rank = p.trace().re.round();
        out.row([k.to_string(), shift.to_string(), rank.to_string()]);
    }
    let residual = walk
        .lattice()
        .momentum_grid()
        .iter()
        .map(|p| max_abs(&(dec.symbol(p[0]) - walk.symbol(p))))
        .fold(0.0, f64::max);
    out.pair("residual", residual);
    out.check(residual <= 1e-10, || format!("reconstruction residual {residual:e}"));
    Ok(out)
}

fn canonical(cfg: &RunConfig) -> Result<Report, CliError> {
    let walk = walk_from(cfg)?;
    let h = continuum_hamiltonian(&walk)?;
    let rel = is_relativistic(&h);
    let mut out = Report::header("key,value");
    out.pair("coin_dim", h.coin_dim());
    out.pair("relativistic", rel.relativistic);
    out.pair("deviation", rel.deviation);
    out.pair("mass_sq", rel.mass_sq);
    if h.coin_dim() == 2 {
        let form = canonicalize(&h)?;
        out.pair("classification", form.classification);
        for (j, g) in form.gammas.iter().enumerate() {
            out.pair(&format!("gamma{}", j + 1), g);
        }
        for (j, m) in form.mass_vector.iter().enumerate() {
            out.pair(&format!("mass_{}", AXES[j]), m);
        }
        out.pair("energy_offset", form.energy_offset);
        for (j, d) in form.drift.iter().enumerate() {
            out.pair(&format!("drift_{}", AXES[j]), d);
        }
    }
    for (i, b) in h.b.iter().enumerate() {
        let d = b.nrows();
        let entries: Vec<String> = (0..d * d).map(|k| fmt_c(&b[(k / d, k % d)])).collect();
        out.pair(&format!("b_{}", AXES[i]), entries.join(" "));
    }
    Ok(out)
}

fn fmt_c(z: &C64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

fn rotsym(cfg: &RunConfig) -> Result<Report, CliError> {
    let walk = walk_from(cfg)?;
    let r = lattice_rotation_invariance(&walk)?;
    let mut out = Report::header("key,value");
    out.pair("invariant", r.invariant);
    out.pair("residual", r.residual);
    Ok(out)
}
