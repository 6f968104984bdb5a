//! Command-line front end: analysis, resolutions, Hochschild tables and the
//! golden-file corpus.

mod commands;
mod corpus;
mod error;
mod input;
mod summary;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use recollement::FieldSpec;

#[derive(Parser)]
#[command(name = "recollement", version, about = "Homological transfer between an algebra and its idempotent corners")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of (Λ, a).
    Analyze(AnalyzeArgs),
    /// Minimal projective resolution of one module.
    Resolve(ResolveArgs),
    /// Hochschild cohomology dimensions, optionally compared with a corner.
    Hochschild(HochschildArgs),
    /// Verdicts for a triangular matrix algebra given as a JSON spec.
    Triangular(TriangularArgs),
    /// Runs the bundled fixtures against their golden reports.
    Corpus(CorpusArgs),
}

#[derive(Args)]
pub struct Source {
    /// A .qalg file, or the name of a bundled fixture (e.g. fix_b).
    pub file: String,
    /// Override the declared field: a prime, or Q.
    #[arg(long = "field-override", alias = "field", value_parser = parse_field)]
    pub field: Option<FieldSpec>,
    /// Maximal path length for the admissibility check.
    #[arg(long)]
    pub maxlen: Option<usize>,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub idempotent: String,
    #[arg(long, default_value_t = 30)]
    pub cutoff: usize,
    #[arg(long = "hh-degree", default_value_t = 6)]
    pub hh_degree: usize,
    #[arg(long = "no-hh")]
    pub no_hh: bool,
    /// Include wall-clock timings in the JSON (breaks byte stability).
    #[arg(long)]
    pub timings: bool,
    /// Write the canonical JSON report here ("-" for stdout).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args)]
pub struct ResolveArgs {
    #[command(flatten)]
    pub source: Source,
    /// simple:V, projective:V, injective:V or regular.
    #[arg(long)]
    pub module: String,
    #[arg(long, default_value_t = 6)]
    pub degree: usize,
}

#[derive(Args)]
pub struct HochschildArgs {
    /// A .qalg file, or the name of a bundled fixture.
    pub file: String,
    /// Fields to tabulate over; repeat for several. Defaults to the declared one.
    #[arg(long = "field", alias = "field-override", value_parser = parse_field)]
    pub fields: Vec<FieldSpec>,
    #[arg(long)]
    pub maxlen: Option<usize>,
    #[arg(long = "max-degree", default_value_t = 6)]
    pub max_degree: usize,
    /// Largest algebra dimension accepted for the enveloping algebra.
    #[arg(long = "dim-cap", default_value_t = recollement::hochschild::DEFAULT_DIM_CAP)]
    pub dim_cap: usize,
    /// Also compare with the corner of this idempotent.
    #[arg(long)]
    pub idempotent: Option<String>,
    #[arg(long, default_value_t = 30)]
    pub cutoff: usize,
}

#[derive(Args)]
pub struct TriangularArgs {
    /// A triangular-spec JSON file, or the name of a bundled one.
    pub spec: String,
    #[arg(long = "field-override", alias = "field", value_parser = parse_field)]
    pub field: Option<FieldSpec>,
    #[arg(long, default_value_t = 30)]
    pub cutoff: usize,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args)]
pub struct CorpusArgs {
    /// Run the fixtures concurrently.
    #[arg(long = "run-all")]
    pub run_all: bool,
    /// Rewrite the golden files instead of comparing.
    #[arg(long)]
    pub bless: bool,
    /// Use another cutoff; results are then checked for consistency with the
    /// goldens instead of byte equality.
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long, default_value = concat!(env!("CARGO_MANIFEST_DIR"), "/golden"))]
    pub golden: PathBuf,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    match s {
        "Q" | "q" | "QQ" | "0" => Ok(FieldSpec::Rational),
        _ => {
            let p: u64 = s.trim_start_matches("F_").parse().map_err(|_| format!("'{s}' is neither a prime nor Q"))?;
            FieldSpec::prime(p).map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => commands::analyze(&a),
        Command::Resolve(a) => commands::resolve(&a),
        Command::Hochschild(a) => commands::hochschild(&a),
        Command::Triangular(a) => commands::triangular(&a),
        Command::Corpus(a) => corpus::run(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
