use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use clap::Subcommand;

use super::CliError;
use crate::equilibration::{DENSE_DIM_CAP, MAX_SPINS};
use crate::fermions::{DENSE_MODE_CAP, DOUBLED_MODE_CAP};
use crate::walk::Preset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum WalkCommand {
    /// Position distribution of a walker started at the origin.
    Evolve,
    /// Quasi-energy bands on the lattice momentum grid.
    Spectrum,
    /// Momenta where every band has near-zero quasi-energy.
    Doublers,
    /// Continuum-limit error against spacing, with the fitted slope.
    Converge,
    /// Shift/coin factorization of a 1D walk.
    Decompose,
    /// Continuum Hamiltonian and its relativistic normal form.
    Canonical,
    /// Quarter-turn lattice symmetry of a 2D walk.
    Rotsym,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum FermiCommand {
    /// Jordan-Wigner image of a fermionic expression.
    Jw,
    /// Majorana-link encoding of a random hopping model.
    Localize,
    /// Fermionic swaps exchange every pair of modes.
    Swapcheck,
    /// Doubled-system local decomposition of a second-quantized walk.
    Doubledcheck,
    /// Distance between the discrete and continuum Dirac vacua.
    Vacuum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum EqCommand {
    /// Expectation value and its running average on a Heisenberg chain.
    Chain,
    /// Effective dimension of reference states.
    Deff,
    /// Gap degeneracy and N(ε).
    Gaps,
    /// Exact fluctuation averages against their bounds.
    Bounds,
    /// Slow-equilibration projector on a random Hamiltonian.
    Slow,
    /// Fourier transforms of the time filters.
    Filter,
    /// Gap statistics of an exponential level density.
    Gapmodel,
    /// Qubit-oscillator model subsystem averages.
    Toy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Walk(WalkCommand),
    Fermi(FermiCommand),
    Eq(EqCommand),
}

impl Command {
    pub fn name(self) -> &'static str {
        use EqCommand as E;
        use FermiCommand as F;
        use WalkCommand as W;
        match self {
            Command::Walk(W::Evolve) => "walk evolve",
            Command::Walk(W::Spectrum) => "walk spectrum",
            Command::Walk(W::Doublers) => "walk doublers",
            Command::Walk(W::Converge) => "walk converge",
            Command::Walk(W::Decompose) => "walk decompose",
            Command::Walk(W::Canonical) => "walk canonical",
            Command::Walk(W::Rotsym) => "walk rotsym",
            Command::Fermi(F::Jw) => "fermi jw",
            Command::Fermi(F::Localize) => "fermi localize",
            Command::Fermi(F::Swapcheck) => "fermi swapcheck",
            Command::Fermi(F::Doubledcheck) => "fermi doubledcheck",
            Command::Fermi(F::Vacuum) => "fermi vacuum",
            Command::Eq(E::Chain) => "eq chain",
            Command::Eq(E::Deff) => "eq deff",
            Command::Eq(E::Gaps) => "eq gaps",
            Command::Eq(E::Bounds) => "eq bounds",
            Command::Eq(E::Slow) => "eq slow",
            Command::Eq(E::Filter) => "eq filter",
            Command::Eq(E::Gapmodel) => "eq gapmodel",
            Command::Eq(E::Toy) => "eq toy",
        }
    }

    /// Keys the command reads, with their defaults.
    fn keys(self) -> &'static [(&'static str, Slot)] {
        use Slot::{Optional, Required, Value};
        use EqCommand as E;
        use FermiCommand as F;
        use WalkCommand as W;
        const WALK: [(&str, Slot); 4] = [
            ("preset", Value("dirac1d")),
            ("mass", Value("0")),
            ("spacing", Value("1")),
            ("extents", Optional),
        ];
        match self {
            Command::Walk(W::Evolve) => &[
                WALK[0], WALK[1], WALK[2], WALK[3],
                ("steps", Value("32")),
            ],
            Command::Walk(W::Spectrum | W::Decompose) => &WALK,
            Command::Walk(W::Doublers) => &[
                WALK[0], WALK[1], WALK[2],
                ("threshold", Value("0.05")),
                ("grid", Value("32")),
                ("sublattice", Value("false")),
            ],
            Command::Walk(W::Converge) => &[
                WALK[0],
                ("mass", Value("0.5")),
                ("spacing", Value("0.1")),
                ("cutoff", Value("1")),
                ("t", Value("1")),
                ("halvings", Value("5")),
                ("length", Value("25.6")),
            ],
            Command::Walk(W::Canonical) => &[
                ("preset", Value("weyl3d_right")),
                WALK[1], WALK[2],
            ],
            Command::Walk(W::Rotsym) => &[
                ("preset", Value("rotsym2d")),
                WALK[1], WALK[2],
            ],
            Command::Fermi(F::Jw) => &[
                ("expr", Required),
                ("modes", Optional),
                ("ordering", Optional),
            ],
            Command::Fermi(F::Localize) => &[
                ("extents", Value("2,2")),
                ("seed", Required),
            ],
            Command::Fermi(F::Swapcheck) => &[("modes", Value("4"))],
            Command::Fermi(F::Doubledcheck) => &[
                ("generator", Value("dirac1d")),
                ("sites", Value("2")),
                ("mass", Value("0.3")),
            ],
            Command::Fermi(F::Vacuum) => &[
                ("mass", Value("0.5")),
                ("spacing", Value("0.1")),
                ("cutoff", Value("1")),
                ("halvings", Value("5")),
                ("length", Value("25.6")),
            ],
            Command::Eq(E::Chain) => &[
                ("spins", Value("7")),
                ("seed", Required),
                ("T", Value("100")),
                ("points", Value("201")),
            ],
            Command::Eq(E::Deff) => &[("spins", Value("8")), ("seed", Required)],
            Command::Eq(E::Gaps) => &[
                ("spins", Value("6")),
                ("seed", Required),
                ("eps", Value("0.01,0.1,1")),
            ],
            Command::Eq(E::Bounds) => &[
                ("spins", Value("6")),
                ("seed", Required),
                ("instances", Value("10")),
                ("T", Value("1,10,100")),
                ("eps", Optional),
            ],
            Command::Eq(E::Slow) => &[
                ("dim", Value("1024")),
                ("seed", Required),
                ("k", Value("20")),
                ("eps", Value("0.1")),
                ("samples", Value("50")),
            ],
            Command::Eq(E::Filter) => &[("T", Value("1")), ("points", Value("101"))],
            Command::Eq(E::Gapmodel) => &[
                ("beta", Value("1")),
                ("delta", Value("30")),
                ("levels", Value("2000")),
                ("eps", Value("0.01")),
                ("seed", Required),
            ],
            Command::Eq(E::Toy) => &[
                ("nu", Value("1")),
                ("lambda", Value("0.01")),
                ("nmax", Value("8")),
                ("env", Value("3")),
                ("samples", Value("10")),
                ("seed", Required),
            ],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Value(&'static str),
    Optional,
    Required,
}

/// Every key any command understands.
pub const KNOWN_KEYS: [&str; 35] = [
    "beta", "cutoff", "delta", "dim", "env", "eps", "expr", "extents", "generator", "grid",
    "halvings", "instances", "k", "lambda", "length", "levels", "mass", "modes", "nmax", "nu",
    "ordering", "points", "preset", "samples", "seed", "sites", "spacing", "spins", "steps",
    "sublattice", "t", "T", "threshold", "output", "config",
];

/// A command with flat `key = value` parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    values: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self { command, values: BTreeMap::new() }
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.values.insert(key.to_string(), value.into());
    }

    pub fn values(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse_values(text: &str) -> Result<BTreeMap<String, String>, CliError> {
        let mut out = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::Config { line: n + 1, message: format!("`{line}` is not key = value") });
            };
            let (k, v) = (k.trim(), v.trim());
            if !KNOWN_KEYS.contains(&k) || k == "config" {
                return Err(CliError::Config { line: n + 1, message: format!("unknown key `{k}`") });
            }
            if out.insert(k.to_string(), v.to_string()).is_some() {
                return Err(CliError::Config { line: n + 1, message: format!("duplicate key `{k}`") });
            }
        }
        Ok(out)
    }

    /// One `key = value` line per parameter, readable by [`RunConfig::parse_values`].
    pub fn to_text(&self) -> String {
        self.values.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    /// `key=value` pairs on one line, for the output header.
    pub fn summary(&self) -> String {
        let pairs: Vec<String> = self.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        pairs.join(" ")
    }

    /// Rejects keys the command does not read, fills defaults and range-checks every value.
    pub fn validate(mut self) -> Result<Self, CliError> {
        let keys = self.command.keys();
        if let Some(k) = self.values.keys().find(|k| !keys.iter().any(|(n, _)| n == k)) {
            return Err(CliError::invalid(k, format!("not a parameter of `{}`", self.command)));
        }
        for &(name, default) in keys {
            if self.values.contains_key(name) {
                continue;
            }
            match default {
                Slot::Value(v) => self.set(name, v),
                Slot::Optional => {}
                Slot::Required if name == "seed" => {
                    return Err(CliError::invalid("seed", format!("`{}` is randomized and needs --seed", self.command)))
                }
                Slot::Required => return Err(CliError::invalid(name, "is required")),
            }
        }
        self.check_ranges()?;
        Ok(self)
    }

    fn check_ranges(&self) -> Result<(), CliError> {
        for key in ["spacing", "t", "cutoff", "length", "beta", "delta", "nu", "threshold"] {
            if self.has(key) {
                positive(key, self.get::<f64>(key)?)?;
            }
        }
        for key in ["T", "eps"] {
            if self.has(key) {
                for v in self.list::<f64>(key)? {
                    positive(key, v)?;
                }
            }
        }
        if self.has("mass") {
            let m: f64 = self.get("mass")?;
            if !m.is_finite() {
                return Err(CliError::invalid("mass", "must be finite"));
            }
        }
        if self.has("lambda") && self.get::<f64>("lambda")? == 0.0 {
            return Err(CliError::invalid("lambda", "must be nonzero"));
        }
        if self.has("seed") {
            self.get::<u64>("seed")?;
        }
        if self.has("sublattice") {
            self.get::<bool>("sublattice")?;
        }
        let preset = if self.has("preset") { Some(self.get::<Preset>("preset")?) } else { None };
        if self.has("extents") {
            let ext = self.list::<usize>("extents")?;
            for (axis, &e) in ext.iter().enumerate() {
                if e == 0 || e % 2 != 0 {
                    return Err(CliError::invalid(
                        "extents",
                        format!("extent {e} on axis {axis} must be a positive even integer"),
                    ));
                }
            }
            if let Some(p) = preset {
                if ext.len() != p.dims() {
                    return Err(CliError::invalid(
                        "extents",
                        format!("{} needs {} extents, got {}", p, p.dims(), ext.len()),
                    ));
                }
            }
            let sites: usize = ext.iter().product();
            if sites > 1 << 20 {
                return Err(CliError::invalid("extents", format!("{sites} sites exceed the budget of 2^20")));
            }
        }
        if self.has("cutoff") && self.has("spacing") {
            let (cutoff, a) = (self.get::<f64>("cutoff")?, self.get::<f64>("spacing")?);
            if cutoff > PI / a {
                return Err(CliError::invalid(
                    "cutoff",
                    format!("{cutoff} exceeds the Brillouin-zone bound π/a = {}", PI / a),
                ));
            }
        }
        self.bounded("steps", 0, 100_000)?;
        self.bounded("grid", 16, 256)?;
        self.bounded("halvings", 1, 12)?;
        self.bounded("spins", 2, MAX_SPINS)?;
        self.bounded("dim", 2, DENSE_DIM_CAP)?;
        self.bounded("instances", 1, 10_000)?;
        self.bounded("points", 2, 1_000_000)?;
        self.bounded("samples", 1, 100_000)?;
        self.bounded("levels", 2, 20_000)?;
        self.bounded("nmax", 4, DENSE_DIM_CAP / 2)?;
        self.bounded("k", 1, DENSE_DIM_CAP)?;
        match self.command {
            Command::Fermi(FermiCommand::Swapcheck) => self.bounded("modes", 2, DENSE_MODE_CAP)?,
            Command::Fermi(FermiCommand::Jw) => self.bounded("modes", 1, 64)?,
            _ => {}
        }
        if self.has("env") {
            let (env, nmax) = (self.get::<usize>("env")?, self.get::<usize>("nmax")?);
            if env == 0 || env >= nmax {
                return Err(CliError::invalid("env", format!("oscillator level must lie in 1..{nmax}")));
            }
        }
        if self.has("generator") {
            let sites: usize = self.get("sites")?;
            match self.get::<String>("generator")?.as_str() {
                "shift" if (2..=DOUBLED_MODE_CAP).contains(&sites) => {}
                "dirac1d" if sites.is_multiple_of(2) && (2..=DOUBLED_MODE_CAP / 2).contains(&sites) => {}
                "shift" | "dirac1d" => {
                    return Err(CliError::invalid(
                        "sites",
                        format!("{sites} sites do not fit the doubled budget of {DOUBLED_MODE_CAP} modes with an even ring"),
                    ))
                }
                g => return Err(CliError::invalid("generator", format!("`{g}` is not shift or dirac1d"))),
            }
        }
        if self.has("k") {
            let (k, d) = (self.get::<usize>("k")?, self.get::<usize>("dim")?);
            if k >= d {
                return Err(CliError::invalid("k", format!("{k} must be below the dimension {d}")));
            }
        }
        Ok(())
    }

    fn bounded(&self, key: &str, lo: usize, hi: usize) -> Result<(), CliError> {
        if !self.has(key) {
            return Ok(());
        }
        let v: usize = self.get(key)?;
        if v < lo {
            return Err(CliError::invalid(key, format!("{v} is below the minimum {lo}")));
        }
        if v > hi {
            return Err(CliError::invalid(key, format!("{v} exceeds the budget of {hi}")));
        }
        Ok(())
    }

    pub fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T, CliError> {
        let raw = self.values.get(key).ok_or_else(|| CliError::invalid(key, "is required"))?;
        raw.parse().map_err(|_| CliError::invalid(key, format!("cannot parse `{raw}`")))
    }

    pub fn get_opt<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        if self.has(key) {
            self.get(key).map(Some)
        } else {
            Ok(None)
        }
    }

    /// Comma-separated values.
    pub fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>, CliError> {
        let raw = self.values.get(key).ok_or_else(|| CliError::invalid(key, "is required"))?;
        raw.split(',')
            .map(|x| x.trim().parse().map_err(|_| CliError::invalid(key, format!("cannot parse `{raw}`"))))
            .collect()
    }
}

fn positive(key: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::invalid(key, format!("{v} must be positive and finite")))
    }
}
