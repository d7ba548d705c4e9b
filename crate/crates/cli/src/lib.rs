//! Command-line front end for the `mspace` verifier.
//!
//! Every command produces one [`Report`]. The exit status is 0 when no check
//! failed, 1 when one did, and 2 for usage, parse and precondition errors.

pub mod demo;
pub mod spec;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mspace::finite_quantale::{
    gelfand_class, is_inverse_quantal_frame, sided_elements, verify_quantale, FiniteInvolutiveQuantale, QuantaleJson,
};
use mspace::finite_space::{closure_join_witness, is_sober_lattice, sober_witness, FiniteTopSpace, SpaceJson};
use mspace::groupoid::{structure_report, verify_groupoid_axioms, FiniteGroupoid, GroupoidJson};
use mspace::observer::{build_canonical_observer, pseudogroup_correspondence, verify_observer, Suite, SweepConfig};
use mspace::{Check, Exec, FiniteQuantale, Report};
use serde::de::DeserializeOwned;
use serde_json::json;

/// Environment variable read for the worker thread count.
pub const THREADS_ENV: &str = "MSPACE_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] mspace::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "mspace", version, about = "Exact finite-scale verifier for measurement spaces and observer maps")]
pub struct Cli {
    /// Seed for every random population and sampled sweep.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random elements added to populations, and random tuples per oversized sweep.
    #[arg(long, global = true, default_value_t = 512)]
    pub samples: usize,
    /// Largest carrier enumerated exhaustively.
    #[arg(long, global = true, default_value_t = mspace::finite_quantale::DEFAULT_THRESHOLD)]
    pub threshold: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify a structure read from a JSON file.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Run observer suites on the canonical observer of a groupoid.
    Observer(ObserverArgs),
    /// Reproduce a worked example.
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// Quantale laws, Gelfand class and the inverse quantal frame clauses.
    Quantale { file: PathBuf },
    /// Sobriety, and with `--lattice` the sober-lattice conditions.
    Space {
        file: PathBuf,
        #[arg(long)]
        lattice: bool,
    },
    /// Groupoid axioms and structure.
    Groupoid { file: PathBuf },
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct GroupoidSource {
    /// Pair groupoid on N objects.
    #[arg(long, group = "source")]
    pub pair: Option<usize>,
    /// One-object groupoid of a named group: Z<n>, V4 or S3.
    #[arg(long, group = "source")]
    pub group: Option<String>,
    /// Terms `pair:N`, `group:NAME`, `z2-swap`, `file:PATH` joined by `+` (disjoint union).
    #[arg(long, group = "source")]
    pub groupoid: Option<String>,
    /// Explicit groupoid in the JSON wire form.
    #[arg(long, group = "source")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ObserverArgs {
    #[command(flatten)]
    pub source: GroupoidSource,
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    /// Every observer suite, plus the pseudogroup suite for principal groupoids.
    All,
    Axioms,
    Etale,
    Istable,
    Increasing,
    Persistency,
    Pseudogroup,
}

#[derive(Debug, Subcommand)]
pub enum DemoCommand {
    /// Spin measurements in Max M₂ and in ℂ².
    Spin,
    /// Schwinger's measurement symbols on N outcomes.
    Schwinger { n: usize },
    /// Two-slit lattice with K detector bins.
    Twoslit { k: u32 },
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.to_owned(), source })
}

impl Cli {
    pub fn sweep_config(&self) -> SweepConfig {
        SweepConfig { seed: self.seed, samples: self.samples, threshold: self.threshold, ..SweepConfig::default() }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let cfg = cli.sweep_config();
    match &cli.command {
        Command::Check(CheckCommand::Quantale { file }) => check_quantale(file, cfg.exec),
        Command::Check(CheckCommand::Space { file, lattice }) => check_space(file, *lattice),
        Command::Check(CheckCommand::Groupoid { file }) => check_groupoid(file, cfg.exec),
        Command::Observer(args) => observer(args, &cfg),
        Command::Demo(DemoCommand::Spin) => Ok(demo::spin(cli.seed)),
        Command::Demo(DemoCommand::Schwinger { n }) => demo::schwinger(*n, cli.seed),
        Command::Demo(DemoCommand::Twoslit { k }) => demo::twoslit(*k, cli.seed),
    }
}

fn check_quantale(file: &Path, exec: Exec) -> Result<Report, CliError> {
    let j: QuantaleJson = read_json(file)?;
    let q = FiniteInvolutiveQuantale::from_json(&j)?;
    let mut r = verify_quantale(&q, exec);
    if !r.passed() {
        return Ok(r);
    }
    let gelfand = gelfand_class(&q, exec);
    r.push(Check::from_witness("stably Gelfand", gelfand.stably_witness.map(|a| json!({ "element": a }))));
    r.note("class", gelfand.class.to_string());
    let iqf = is_inverse_quantal_frame(&q, exec);
    r.note(
        "inverse quantal frame",
        match iqf.failed_clause() {
            None => "holds".to_string(),
            Some(clause) => format!("fails: {clause}"),
        },
    );
    r.note("|ℐ|", json!(q.partial_units().len()));
    let sided = sided_elements(&q, exec);
    r.note(
        "sided elements",
        json!({ "right": sided.right.len(), "left": sided.left.len(), "two-sided": sided.two_sided.len() }),
    );
    Ok(r)
}

fn check_space(file: &Path, lattice: bool) -> Result<Report, CliError> {
    let j: SpaceJson = read_json(file)?;
    let s = FiniteTopSpace::from_json(&j)?;
    let mut r =
        Report::new("space", json!({ "kind": "exhaustive", "points": s.points(), "opens": s.opens().len() }), 0);
    r.push(Check::from_witness("sober", sober_witness(&s).map(|w| json!(w))));
    if lattice {
        let report = is_sober_lattice(&s);
        let holds = report.holds();
        r.push(Check::from_witness("sober lattice", report.witness));
        if holds {
            r.push(Check::from_witness("∨S = ∨S̄", closure_join_witness(&s).map(|m| json!({ "S": m }))));
        }
    }
    Ok(r)
}

fn check_groupoid(file: &Path, exec: Exec) -> Result<Report, CliError> {
    let j: GroupoidJson = read_json(file)?;
    let g = FiniteGroupoid::from_json_unchecked(&j)?;
    let mut r = verify_groupoid_axioms(&g, exec);
    if r.passed() {
        let st = structure_report(&g);
        r.note("principal", st.principal);
        r.note("orbits", json!(st.orbits));
    }
    Ok(r)
}

fn observer(args: &ObserverArgs, cfg: &SweepConfig) -> Result<Report, CliError> {
    let src = &args.source;
    let g = if let Some(n) = src.pair {
        FiniteGroupoid::pair(n)?
    } else if let Some(name) = &src.group {
        spec::parse_groupoid(&format!("group:{name}"))?
    } else if let Some(s) = &src.groupoid {
        spec::parse_groupoid(s)?
    } else if let Some(path) = &src.input {
        spec::load_groupoid(path)?
    } else {
        return Err(CliError::Usage("no groupoid given".into()));
    };
    let g = Arc::new(g);
    let suites: &[Suite] = match args.suite {
        SuiteArg::Pseudogroup => return Ok(pseudogroup_correspondence(g, cfg)?),
        SuiteArg::All => &Suite::ALL,
        SuiteArg::Axioms => &[Suite::Axioms],
        SuiteArg::Etale => &[Suite::Etale],
        SuiteArg::Istable => &[Suite::Istable],
        SuiteArg::Increasing => &[Suite::Increasing],
        SuiteArg::Persistency => &[Suite::Persistency],
    };
    let o = build_canonical_observer(g.clone());
    let mut r = verify_observer(&o, suites, cfg)?;
    if args.suite == SuiteArg::All {
        match pseudogroup_correspondence(g, cfg) {
            Ok(p) => {
                r.checks.extend(p.checks);
                r.notes.extend(p.notes);
                r.note("bisections", p.population["bisections"].clone());
            }
            Err(mspace::Error::NotPrincipal(x)) => {
                r.note("pseudogroup", format!("skipped: isotropy at object {x}"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(r)
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_string(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

/// Sizes the global rayon pool from [`THREADS_ENV`] when it is set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

pub fn main_with(cli: Cli) -> ExitCode {
    let outcome = configure_threads().and_then(|()| run(&cli));
    match outcome {
        Ok(report) => {
            let mut out = io::stdout().lock();
            // A closed pipe is not a verification failure.
            let _ = out.write_all(render(&report, cli.format).as_bytes());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
