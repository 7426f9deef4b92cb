//! `galilei`: scriptable verification reports for Galilei representations
//! and Galilean field systems.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use render::{Outcome, Report};

#[derive(Parser, Debug)]
#[command(
    name = "galilei",
    version,
    about = "Exact verification of Galilei representations and Galilean field systems"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The ten indecomposable representations of hg(1,3).
    #[command(subcommand)]
    Reps(RepsCmd),
    /// Inönü–Wigner contraction of a Lorentz representation.
    Contract(ContractArgs),
    /// Galilei boost and rotation covariance of a catalogued system.
    Covariance {
        /// System name, or `all`.
        system: String,
    },
    /// Reduce a system by zeroing components or dropping equations.
    Reduce(ReduceArgs),
    /// Check that strengths built from potentials satisfy the homogeneous equations.
    Potentials {
        /// magnetic_pot, electric_pot, relativistic or extended_pot.
        scheme: String,
    },
    /// Residuals of contracted relativistic plane waves in a Galilean target.
    Limits(LimitsArgs),
    /// Catalogue access.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Subcommand, Debug)]
enum RepsCmd {
    /// List labels, components and dimensions.
    List,
    /// Check the commutation relations for a label, or `all`.
    Check { label: String },
    /// Search the commutant for a nontrivial idempotent.
    Indecomposable { label: String },
}

#[derive(Args, Debug)]
struct ContractArgs {
    /// Built-in scheme.
    #[arg(long, value_parser = ["v1", "v2", "v3"], conflicts_with = "file", required_unless_present = "file")]
    scheme: Option<String>,
    /// Scheme matrix file: one row per line, entries like `eps^-1`, `1/2*eps`, `0`.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Lorentz representation; defaults to the one matching the scheme dimension.
    #[arg(long, value_enum)]
    rep: Option<LorentzChoice>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LorentzChoice {
    FourVector,
    #[value(name = "four-vector+scalar")]
    FourVectorScalar,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    system: String,
    /// Components to set to zero, comma separated (fields or currents).
    #[arg(
        long,
        value_delimiter = ',',
        conflicts_with = "drop",
        required_unless_present = "drop"
    )]
    zero: Vec<String>,
    /// Equations to drop, comma separated.
    #[arg(long, value_delimiter = ',')]
    drop: Vec<String>,
}

#[derive(Args, Debug)]
struct LimitsArgs {
    #[arg(long, value_parser = ["v1", "v2", "v3"])]
    scheme: String,
    #[arg(long)]
    target: String,
    /// Strictly decreasing ε values in (0, 1], comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.01,0.001")]
    eps: Vec<f64>,
    /// Print `log10 ε  log10 residual` lines instead of the table (text format only).
    #[arg(long)]
    loglog: bool,
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// Print a system in the plain-text catalogue format.
    Export { system: String },
}

fn run(cli: &Cli) -> Result<Report, String> {
    match &cli.command {
        Command::Reps(RepsCmd::List) => Ok(commands::reps_list()),
        Command::Reps(RepsCmd::Check { label }) => commands::reps_check(label),
        Command::Reps(RepsCmd::Indecomposable { label }) => commands::reps_indecomposable(label),
        Command::Contract(a) => commands::contract(a.scheme.as_deref(), a.file.as_deref(), a.rep),
        Command::Covariance { system } => commands::covariance(system),
        Command::Reduce(a) => commands::reduce(&a.system, &a.zero, &a.drop),
        Command::Potentials { scheme } => commands::potentials(scheme),
        Command::Limits(a) => commands::limits(&a.scheme, &a.target, &a.eps, a.loglog),
        Command::Catalog(CatalogCmd::Export { system }) => commands::export(system),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli) {
        Ok(report) => {
            let outcome = report.outcome;
            let out = match cli.format {
                Format::Json => report.to_json(argv) + "\n",
                Format::Text => report.text,
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            match outcome {
                Outcome::Pass => ExitCode::SUCCESS,
                Outcome::Fail => ExitCode::from(1),
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
