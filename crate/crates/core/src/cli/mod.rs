//! Batch front end: argument and config-file parsing, validation, experiment drivers and
//! CSV emission.
//!
//! Every output starts with `#` comment lines carrying the tool version, the normalized
//! configuration and the seed, followed by a CSV body with `.` decimals and `\n` line
//! endings. Exit codes: 0 on success, 2 on invalid input, 3 when a numerical check fails.

mod config;
mod eq;
mod fermi;
mod walk;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use config::{Command, EqCommand, FermiCommand, RunConfig, WalkCommand, KNOWN_KEYS};

use crate::continuum::ContinuumError;
use crate::equilibration::EquilibrationError;
use crate::fermions::FermionError;
use crate::spectral::SpectralError;
use crate::walk::WalkError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    /// Help or version text requested by the user.
    #[error("{0}")]
    Info(String),
    #[error("{0}")]
    Usage(String),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Continuum(#[from] ContinuumError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Fermion(#[from] FermionError),
    #[error(transparent)]
    Equilibration(#[from] EquilibrationError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub(crate) fn invalid(field: &str, message: impl Into<String>) -> Self {
        CliError::Invalid { field: field.to_string(), message: message.into() }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qlattice", version, about = "Quantum walks, lattice fermions and equilibration checks")]
struct Cli {
    #[command(subcommand)]
    group: Group,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Subcommand)]
enum Group {
    /// Coined quantum walks.
    Walk {
        #[command(subcommand)]
        action: WalkCommand,
    },
    /// Fermionic encodings.
    Fermi {
        #[command(subcommand)]
        action: FermiCommand,
    },
    /// Equilibration of finite systems.
    Eq {
        #[command(subcommand)]
        action: EqCommand,
    },
}

/// Flags share names with config keys and override them.
#[derive(Debug, Args)]
struct Flags {
    /// Flat `key = value` file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output path; standard output when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    preset: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    mass: Option<String>,
    #[arg(long, global = true)]
    spacing: Option<String>,
    /// Comma-separated even lattice extents.
    #[arg(long, global = true)]
    extents: Option<String>,
    #[arg(long, global = true)]
    steps: Option<String>,
    /// Momentum cutoff Λ, at most π/a.
    #[arg(long, global = true)]
    cutoff: Option<String>,
    /// Physical evolution time.
    #[arg(long = "t", global = true)]
    t: Option<String>,
    #[arg(long, global = true)]
    length: Option<String>,
    #[arg(long, global = true)]
    halvings: Option<String>,
    #[arg(long, global = true)]
    threshold: Option<String>,
    #[arg(long, global = true)]
    grid: Option<String>,
    #[arg(long, global = true)]
    sublattice: Option<String>,
    /// Terms `re,im:3+ 1-` separated by `;`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    expr: Option<String>,
    #[arg(long, global = true)]
    modes: Option<String>,
    /// Comma-separated qubit position of each mode.
    #[arg(long, global = true)]
    ordering: Option<String>,
    #[arg(long, global = true)]
    sites: Option<String>,
    #[arg(long, global = true)]
    generator: Option<String>,
    #[arg(long, global = true)]
    spins: Option<String>,
    #[arg(long, global = true)]
    dim: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Averaging window; comma-separated where a list is accepted.
    #[arg(long = "T", global = true)]
    horizon: Option<String>,
    #[arg(long, global = true)]
    eps: Option<String>,
    #[arg(long, global = true)]
    instances: Option<String>,
    #[arg(long, global = true)]
    k: Option<String>,
    #[arg(long, global = true)]
    samples: Option<String>,
    #[arg(long, global = true)]
    points: Option<String>,
    #[arg(long, global = true)]
    beta: Option<String>,
    #[arg(long, global = true)]
    delta: Option<String>,
    #[arg(long, global = true)]
    levels: Option<String>,
    #[arg(long, global = true)]
    nu: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, global = true)]
    nmax: Option<String>,
    #[arg(long, global = true)]
    env: Option<String>,
}

impl Flags {
    fn values(&self) -> BTreeMap<&'static str, &String> {
        let pairs = [
            ("preset", &self.preset),
            ("mass", &self.mass),
            ("spacing", &self.spacing),
            ("extents", &self.extents),
            ("steps", &self.steps),
            ("cutoff", &self.cutoff),
            ("t", &self.t),
            ("length", &self.length),
            ("halvings", &self.halvings),
            ("threshold", &self.threshold),
            ("grid", &self.grid),
            ("sublattice", &self.sublattice),
            ("expr", &self.expr),
            ("modes", &self.modes),
            ("ordering", &self.ordering),
            ("sites", &self.sites),
            ("generator", &self.generator),
            ("spins", &self.spins),
            ("dim", &self.dim),
            ("seed", &self.seed),
            ("T", &self.horizon),
            ("eps", &self.eps),
            ("instances", &self.instances),
            ("k", &self.k),
            ("samples", &self.samples),
            ("points", &self.points),
            ("beta", &self.beta),
            ("delta", &self.delta),
            ("levels", &self.levels),
            ("nu", &self.nu),
            ("lambda", &self.lambda),
            ("nmax", &self.nmax),
            ("env", &self.env),
        ];
        pairs.into_iter().filter_map(|(k, v)| v.as_ref().map(|v| (k, v))).collect()
    }
}

/// CSV body plus any failed numerical checks.
#[derive(Debug, Default)]
pub struct Report {
    pub body: String,
    pub failures: Vec<String>,
}

impl Report {
    pub(crate) fn header(columns: &str) -> Self {
        Self { body: format!("{columns}\n"), failures: Vec::new() }
    }

    pub(crate) fn row(&mut self, fields: impl IntoIterator<Item = impl std::fmt::Display>) {
        let cells: Vec<String> = fields.into_iter().map(|f| f.to_string()).collect();
        let _ = writeln!(self.body, "{}", cells.join(","));
    }

    pub(crate) fn pair(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.body, "{key},{value}");
    }

    pub(crate) fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

/// A validated configuration and where its output goes.
#[derive(Debug, Clone)]
pub struct Invocation {
    pub config: RunConfig,
    pub output: Option<PathBuf>,
}

/// Parses arguments (program name first) and merges the config file under the flags.
pub fn parse<I, S>(args: I) -> Result<Invocation, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Info(e.to_string())
        }
        _ => CliError::Usage(e.to_string()),
    })?;
    let command = match cli.group {
        Group::Walk { action } => Command::Walk(action),
        Group::Fermi { action } => Command::Fermi(action),
        Group::Eq { action } => Command::Eq(action),
    };
    let mut values = match &cli.flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            RunConfig::parse_values(&text)?
        }
        None => BTreeMap::new(),
    };
    for (k, v) in cli.flags.values() {
        values.insert(k.to_string(), v.clone());
    }
    let output = values.remove("output").map(PathBuf::from).or(cli.flags.output);
    let mut config = RunConfig::new(command);
    for (k, v) in values {
        config.set(&k, v);
    }
    Ok(Invocation { config: config.validate()?, output })
}

/// Runs a validated configuration and returns the full output text.
pub fn execute(config: &RunConfig) -> Result<(String, Vec<String>), CliError> {
    let report = match config.command {
        Command::Walk(c) => walk::run(c, config)?,
        Command::Fermi(c) => fermi::run(c, config)?,
        Command::Eq(c) => eq::run(c, config)?,
    };
    let seed = config.get_opt::<u64>("seed")?.map_or("none".to_string(), |s| s.to_string());
    let mut text = String::new();
    let _ = writeln!(text, "# qlattice {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(text, "# config: {} {}", config.command, config.summary());
    let _ = writeln!(text, "# seed: {seed}");
    text.push_str(&report.body);
    Ok((text, report.failures))
}

/// Full command-line run; returns the process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let inv = match parse(args) {
        Ok(inv) => inv,
        Err(CliError::Info(msg)) => {
            print!("{msg}");
            return EXIT_OK;
        }
        Err(CliError::Usage(msg)) => {
            eprint!("{msg}");
            return EXIT_INVALID;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INVALID;
        }
    };
    let (text, failures) = match execute(&inv.config) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INVALID;
        }
    };
    match &inv.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_INVALID;
            }
        }
        None => print!("{text}"),
    }
    for f in &failures {
        eprintln!("check failed: {f}");
    }
    if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}
