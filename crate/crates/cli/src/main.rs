mod commands;
mod input;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Report;

/// Exact Čech cohomology, abelian tower cocycles, spectral terms and long
/// exact sequences on finite simplicial complexes.
///
/// Exit status: 0 on success, 1 when a mathematical check fails, 2 on bad
/// input.
#[derive(Debug, Parser)]
#[command(name = "cechtower", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format. Commands that produce a document (`complex catalog
    /// NAME`, `tower extend`) default to json, everything else to text.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simplicial complexes.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Cochains and cohomology.
    #[command(subcommand)]
    Cech(CechCmd),
    /// Abelian tower cocycles.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// The spectral sequence of a stack of links.
    #[command(subcommand)]
    Spectral(SpectralCmd),
    /// Long exact sequences of coefficient sequences.
    #[command(subcommand)]
    Les(LesCmd),
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum ComplexCmd {
    /// Load a complex and summarize it.
    Validate {
        /// File path or `catalog:NAME`.
        complex: String,
    },
    /// Export a catalog complex, or list the catalog when no name is given.
    Catalog { name: Option<String> },
}

#[derive(Debug, Args)]
struct ComplexArg {
    /// File path or `catalog:NAME`.
    #[arg(long)]
    complex: String,
}

#[derive(Debug, Args)]
struct OptionalComplexArg {
    /// Complex for cochains that do not embed one (file or `catalog:NAME`).
    #[arg(long)]
    complex: Option<String>,
}

#[derive(Debug, Subcommand)]
enum CechCmd {
    /// Invariants of H^k(X; G).
    Cohomology {
        #[command(flatten)]
        complex: ComplexArg,
        /// File, inline JSON, or shorthand such as `Z/2`.
        #[arg(long)]
        group: String,
        /// A degree `k` or a range `a..b`.
        #[arg(long, visible_alias = "degrees")]
        degree: String,
        /// Also print a representative cocycle per generator.
        #[arg(long)]
        basis: bool,
    },
    /// Check that a cochain is a cocycle (default) or a coboundary.
    Verify {
        #[arg(long)]
        cochain: String,
        #[command(flatten)]
        complex: OptionalComplexArg,
        #[arg(long, conflicts_with = "coboundary")]
        cocycle: bool,
        #[arg(long)]
        coboundary: bool,
    },
    /// The Giraud 2-cocycle of 1-cochain transition data.
    Giraud {
        #[arg(long)]
        transitions: String,
        #[command(flatten)]
        complex: OptionalComplexArg,
    },
    /// A primitive of a cocycle on a cone.
    Contract {
        #[arg(long)]
        cochain: String,
        #[arg(long)]
        apex: u32,
        #[command(flatten)]
        complex: OptionalComplexArg,
    },
}

#[derive(Debug, Subcommand)]
enum TowerCmd {
    /// Check degrees, groups and the cocycle condition at every level.
    Validate { tower: String },
    /// The class of the top cocycle.
    Classify { tower: String },
    /// Whether the top cocycle is a coboundary.
    Trivial { tower: String },
    /// Append a level realizing a class.
    Extend {
        tower: String,
        /// The new link.
        #[arg(long)]
        link: String,
        /// Class coordinates in the canonical generators, e.g. "1" or "1,0".
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Whether two towers have the same class.
    Equivalent { first: String, second: String },
}

#[derive(Debug, Subcommand)]
enum SpectralCmd {
    /// Table of E^{p,q}_r invariants for r = 1..rmax and r = ∞.
    Pages {
        #[command(flatten)]
        complex: ComplexArg,
        /// File, inline JSON array, or comma-separated shorthand (`Z,Z/2`).
        #[arg(long)]
        stack: String,
        #[arg(long, default_value_t = 3)]
        rmax: usize,
        /// Total degrees p + q to tabulate (default: 0 up to the dimension).
        #[arg(long, visible_alias = "degree")]
        degrees: Option<String>,
    },
    /// The sequence H^i(L_n) → H^i(L) → H^i(L_0) → H^{i+1}(L_n) with
    /// exactness verdicts.
    #[command(name = "prop31", visible_alias = "two-link")]
    TwoLink {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        l0: String,
        #[arg(long)]
        ln: String,
        #[arg(long)]
        n: usize,
        #[arg(long, visible_alias = "degree")]
        degrees: String,
    },
}

#[derive(Debug, Subcommand)]
enum LesCmd {
    /// The long exact sequence of a short exact sequence of coefficients.
    Run {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        ses: String,
        #[arg(long, visible_alias = "degree")]
        degrees: String,
    },
    /// The Bockstein H^k(X; Z/p) → H^{k+1}(X; Z/p) of 0 → Z/p → Z/p² → Z/p → 0.
    Bockstein {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        degree: usize,
    },
    /// Whether δ: H^k(A'') → H^{k+1}(A') is bijective when the middle
    /// coefficients have no cohomology in degrees k and k+1.
    Acyclic {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        ses: String,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable, malformed or inconsistent input (exit 2).
    Input(String),
    /// A computation refused its input on mathematical grounds (exit 1).
    Math(String),
}

impl CliError {
    fn within(self, origin: &str) -> Self {
        match self {
            CliError::Input(m) => CliError::Input(format!("{origin}: {m}")),
            CliError::Math(m) => CliError::Math(format!("{origin}: {m}")),
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Math(_) => 1,
        }
    }
}

impl From<cechtower::Error> for CliError {
    fn from(e: cechtower::Error) -> Self {
        use cechtower::Error::*;
        match e {
            NotACocycle(_) | NotACone { .. } | InvalidTower(_) | Hypothesis(_) | InfiniteGroup(_)
            | EnumerationTooLarge(..) => CliError::Math(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Math(m) => f.write_str(m),
        }
    }
}

fn dispatch(command: Command) -> Result<(Report, Format), CliError> {
    use commands as c;
    let text = Format::Text;
    Ok(match command {
        Command::Complex(ComplexCmd::Validate { complex }) => (c::complex_validate(&complex)?, text),
        Command::Complex(ComplexCmd::Catalog { name: None }) => (c::catalog_list(), text),
        Command::Complex(ComplexCmd::Catalog { name: Some(n) }) => (c::catalog_export(&n)?, Format::Json),
        Command::Cech(CechCmd::Cohomology { complex, group, degree, basis }) => {
            (c::cech_cohomology(&complex.complex, &group, &degree, basis)?, text)
        }
        Command::Cech(CechCmd::Verify { cochain, complex, coboundary, .. }) => {
            (c::verify(&cochain, complex.complex.as_deref(), coboundary)?, text)
        }
        Command::Cech(CechCmd::Giraud { transitions, complex }) => {
            (c::giraud(&transitions, complex.complex.as_deref())?, text)
        }
        Command::Cech(CechCmd::Contract { cochain, apex, complex }) => {
            (c::contract(&cochain, apex, complex.complex.as_deref())?, text)
        }
        Command::Tower(TowerCmd::Validate { tower }) => (c::tower_validate(&tower)?, text),
        Command::Tower(TowerCmd::Classify { tower }) => (c::tower_classify(&tower)?, text),
        Command::Tower(TowerCmd::Trivial { tower }) => (c::tower_trivial(&tower)?, text),
        Command::Tower(TowerCmd::Extend { tower, link, class }) => (c::tower_extend(&tower, &link, &class)?, Format::Json),
        Command::Tower(TowerCmd::Equivalent { first, second }) => (c::tower_equivalent(&first, &second)?, text),
        Command::Spectral(SpectralCmd::Pages { complex, stack, rmax, degrees }) => {
            (c::spectral_pages(&complex.complex, &stack, rmax, degrees.as_deref())?, text)
        }
        Command::Spectral(SpectralCmd::TwoLink { complex, l0, ln, n, degrees }) => {
            (c::two_link(&complex.complex, &l0, &ln, n, &degrees)?, text)
        }
        Command::Les(LesCmd::Run { complex, ses, degrees }) => (c::les_run(&complex.complex, &ses, &degrees)?, text),
        Command::Les(LesCmd::Bockstein { complex, p, degree }) => (c::bockstein(&complex.complex, p, degree)?, text),
        Command::Les(LesCmd::Acyclic { complex, ses, degree }) => (c::acyclic(&complex.complex, &ses, degree)?, text),
        Command::Selftest { seed } => (c::selftest(seed), text),
    })
}

fn emit(body: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, body).map_err(|e| CliError::Input(format!("cannot write `{}`: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(body.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(cli.command).and_then(|(report, default_format)| {
        let body = match cli.format.unwrap_or(default_format) {
            Format::Text => report.text.clone(),
            Format::Json => cechtower::io::to_pretty(&report.json),
        };
        emit(&body, cli.out.as_ref())?;
        Ok(report.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
