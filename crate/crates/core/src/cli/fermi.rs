use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CliError, FermiCommand, Report, RunConfig};
use crate::fermions::{
    doubled_local_decomposition, fermionic_swap, fock_matrix, invariant_sector_spectrum,
    invariant_state, invariant_state_circuit, jordan_wigner, majorana_localize, second_quantize,
    simulate, vacuum_convergence, FermionPolynomial, MajoranaLayout, ModeOrdering,
};
use crate::linalg::{c, hermitian_eigen, max_abs, CMat, C64, ONE, ZERO};
use crate::walk::{build_preset, Preset, PresetParams};

pub(super) fn run(cmd: FermiCommand, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        FermiCommand::Jw => jw(cfg),
        FermiCommand::Localize => localize(cfg),
        FermiCommand::Swapcheck => swapcheck(cfg),
        FermiCommand::Doubledcheck => doubledcheck(cfg),
        FermiCommand::Vacuum => vacuum(cfg),
    }
}

fn jw(cfg: &RunConfig) -> Result<Report, CliError> {
    let expr: String = cfg.get("expr")?;
    let poly: FermionPolynomial = expr.parse()?;
    let needed = poly.modes().last().map_or(1, |m| m + 1);
    let ordering = if cfg.has("ordering") {
        ModeOrdering::from_positions(cfg.list("ordering")?)?
    } else {
        ModeOrdering::linear(cfg.get_opt("modes")?.unwrap_or(needed))
    };
    if ordering.len() < needed {
        return Err(CliError::invalid(
            "modes",
            format!("expression uses mode {} but only {} modes are ordered", needed - 1, ordering.len()),
        ));
    }
    let image = jordan_wigner(&poly, &ordering)?;
    let mut out = Report::header("re,im,paulis");
    out.body.push_str(&image.to_string());
    Ok(out)
}

fn localize(cfg: &RunConfig) -> Result<Report, CliError> {
    let extents: Vec<usize> = cfg.list("extents")?;
    let layout = MajoranaLayout::grid(&extents, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.get("seed")?);
    let mut h = FermionPolynomial::zero();
    for &(n, m) in layout.links() {
        let term = FermionPolynomial::hop(n, m).scale(c(rng.random_range(0.5..1.5), rng.random_range(-0.5..0.5)));
        h = h + term.clone() + term.adjoint();
    }
    for s in 0..layout.n_sites() {
        h = h + FermionPolynomial::number(s).scale(c(rng.random_range(-1.0..1.0), 0.0));
    }
    let model = majorana_localize(&h, &layout)?;
    let encoded = invariant_sector_spectrum(&model)?;
    let direct = hermitian_eigen(&fock_matrix(&h, layout.n_physical())?).0;
    let spectrum_dev = encoded.iter().zip(direct.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

    let state = invariant_state(&layout)?;
    let ordering = ModeOrdering::linear(layout.n_modes());
    let mut link_dev: f64 = 0.0;
    for l in 0..layout.links().len() {
        let m = jordan_wigner(&layout.link_operator(l), &ordering)?;
        let value: C64 = state.iter().zip(m.apply(&state)).map(|(x, y)| x.conj() * y).sum();
        link_dev = link_dev.max((value - ONE).norm());
    }
    let circuit = invariant_state_circuit(&layout);
    let simulated = simulate(&circuit)?;
    let overlap: C64 = state.iter().zip(&simulated).map(|(x, y)| x.conj() * y).sum();
    let fidelity = overlap.norm_sqr();

    let mut out = Report::header("key,value");
    out.pair("modes", layout.n_modes());
    out.pair("links", layout.links().len());
    out.pair("terms", model.audits.len());
    out.pair("local_terms", model.audits.iter().filter(|a| a.local).count());
    out.pair("spectrum_deviation", spectrum_dev);
    out.pair("link_deviation", link_dev);
    out.pair("circuit_gates", circuit.gates.len());
    out.pair("circuit_fidelity", fidelity);
    out.check(model.is_local(), || "an encoded term is not local".into());
    out.check(spectrum_dev <= 1e-9, || format!("spectrum deviation {spectrum_dev:e}"));
    out.check(link_dev <= 1e-12, || format!("link eigenvalue deviation {link_dev:e}"));
    out.check(fidelity >= 1.0 - 1e-10, || format!("circuit fidelity {fidelity}"));
    Ok(out)
}

fn swapcheck(cfg: &RunConfig) -> Result<Report, CliError> {
    let n: usize = cfg.get("modes")?;
    let ann: Vec<CMat> = (0..n)
        .map(|m| fock_matrix(&FermionPolynomial::annihilate(m), n))
        .collect::<Result<_, _>>()?;
    let mut out = Report::header("a,b,defect");
    for a in 0..n {
        for b in a + 1..n {
            let s = fock_matrix(&fermionic_swap(a, b)?, n)?;
            let defect = max_abs(&(&s * &ann[a] * s.adjoint() - &ann[b]))
                .max(max_abs(&(&s * &ann[b] * s.adjoint() - &ann[a])));
            out.row([a.to_string(), b.to_string(), defect.to_string()]);
            out.check(defect <= 1e-12, || format!("swap ({a},{b}) defect {defect:e}"));
        }
    }
    Ok(out)
}

fn doubledcheck(cfg: &RunConfig) -> Result<Report, CliError> {
    let sites: usize = cfg.get("sites")?;
    let (generator, site_of) = match cfg.get::<String>("generator")?.as_str() {
        "shift" => {
            let u = CMat::from_fn(sites, sites, |i, j| if i == (j + 1) % sites { ONE } else { ZERO });
            (second_quantize(&u), (0..sites).collect::<Vec<_>>())
        }
        _ => {
            let params = PresetParams::new(cfg.get("mass")?, 1.0).with_extents(vec![sites]);
            let walk = build_preset(Preset::Dirac1d, &params)?;
            (second_quantize(&walk.dense_matrix()), (0..2 * sites).map(|m| m / 2).collect())
        }
    };
    let r = doubled_local_decomposition(&generator, &site_of)?;
    let mut out = Report::header("key,value");
    out.pair("residual", r.residual);
    out.pair("passes", r.passes);
    out.pair("localized", r.localized);
    out.pair("commutator_defect", r.commutator_defect);
    out.pair("max_swap_support", r.swap_sites.iter().map(|s| s.len()).max().unwrap_or(0));
    out.check(r.passes, || format!("decomposition residual {:e}", r.residual));
    out.check(r.localized, || "conjugated swaps are not localized".into());
    Ok(out)
}

fn vacuum(cfg: &RunConfig) -> Result<Report, CliError> {
    let a0: f64 = cfg.get("spacing")?;
    let halvings: i32 = cfg.get("halvings")?;
    let spacings: Vec<f64> = (0..=halvings).map(|k| a0 / 2f64.powi(k)).collect();
    let conv = vacuum_convergence(cfg.get("mass")?, cfg.get("cutoff")?, cfg.get("length")?, &spacings)?;
    let mut out = Report::header("a,distance");
    for (a, d) in conv.spacings.iter().zip(&conv.distances) {
        out.row([a, d]);
    }
    out.pair("slope", conv.slope);
    Ok(out)
}
