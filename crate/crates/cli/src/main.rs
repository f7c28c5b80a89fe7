//! `fibtor`: command line front end for `fibered-torsion`.

mod compute;
mod grid;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fibered_torsion::fibered::{catalog, lookup, CatalogEntry, FiberedKnot, LiftSign};
use fibered_torsion::verify::{self, VerifyOptions, DEFAULT_SEED};
use fibered_torsion::Tolerances;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] fibered_torsion::Error),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "USAGE",
            CliError::Core(e) => e.code(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "fibtor",
    version,
    about = "Twisted Reidemeister torsion of fibered knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in knots.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Torsion at one representation.
    Compute(compute::ComputeArgs),
    /// Torsion over a grid of character points.
    Sweep(sweep::SweepArgs),
    /// Run the built-in verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct KnotArgs {
    /// Catalog name, e.g. `trefoil` or `torus_2_5`.
    #[arg(value_name = "KNOT")]
    name: Option<String>,
    /// Same as the positional KNOT.
    #[arg(long = "knot", value_name = "NAME")]
    knot: Option<String>,
    /// Fibered knot definition in JSON.
    #[arg(long, value_name = "PATH")]
    knot_file: Option<PathBuf>,
}

impl KnotArgs {
    pub fn resolve(&self) -> CliResult<CatalogEntry> {
        match (&self.name, &self.knot, &self.knot_file) {
            (Some(n), None, None) | (None, Some(n), None) => Ok(lookup(n)?),
            (None, None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| fibered_torsion::Error::Io(format!("{}: {e}", path.display())))?;
                Ok(CatalogEntry::Fibered(FiberedKnot::from_json_str(&text)?))
            }
            (None, None, None) => Err(CliError::Usage(
                "a knot is required (KNOT, --knot or --knot-file)".into(),
            )),
            _ => Err(CliError::Usage(
                "give exactly one of KNOT, --knot and --knot-file".into(),
            )),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    Plus,
    Minus,
}

impl From<Sign> for LiftSign {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Plus => LiftSign::Plus,
            Sign::Minus => LiftSign::Minus,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TextOrJson {
    Text,
    Json,
}

/// Override of the relator and exactness bounds.
pub fn tolerances(tol: Option<f64>) -> CliResult<Tolerances> {
    let mut t = Tolerances::default();
    if let Some(v) = tol {
        if !(v.is_finite() && v > 0.0) {
            return Err(CliError::Usage(format!(
                "--tol must be a positive number, got {v}"
            )));
        }
        t.relator = v;
        t.identity = v;
    }
    Ok(t)
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only checks whose id contains this text.
    #[arg(long)]
    filter: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Perturb every sampled meridian image by this amount (negative control).
    #[arg(long, value_name = "DELTA")]
    perturb: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
    format: TextOrJson,
}

fn cmd_list(json: bool) {
    let entries: Vec<_> = catalog().iter().map(CatalogEntry::listing).collect();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&entries).expect("listing serializes")
        );
        return;
    }
    for e in entries {
        println!(
            "{} genus={} methods={}",
            e.name,
            e.genus,
            e.methods.join(",")
        );
    }
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<bool> {
    if let Some(f) = &args.filter {
        if !verify::check_ids().iter().any(|id| id.contains(f.as_str())) {
            return Err(CliError::Usage(format!("no check id contains `{f}`")));
        }
    }
    let opts = VerifyOptions {
        seed: args.seed,
        filter: args.filter.clone(),
        perturbation: args.perturb,
        tol: tolerances(args.tol)?,
    };
    let results = verify::run(&opts);
    let passed = results.iter().filter(|r| r.passed).count();
    match args.format {
        TextOrJson::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&results).expect("results serialize")
            );
        }
        TextOrJson::Text => {
            for r in &results {
                let crit = r
                    .criterion
                    .map(|c| format!(" (criterion {c})"))
                    .unwrap_or_default();
                let status = if r.passed { "PASS" } else { "FAIL" };
                println!("{status} {}{crit}: {}", r.id, r.detail);
            }
            println!("{passed} of {} checks passed", results.len());
        }
    }
    Ok(passed == results.len())
}

fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::List { json } => {
            cmd_list(json);
            Ok(true)
        }
        Command::Compute(args) => compute::run(&args).map(|()| true),
        Command::Sweep(args) => sweep::run(&args).map(|()| true),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error {}: {e}", e.code());
            ExitCode::from(e.exit_code())
        }
    }
}
