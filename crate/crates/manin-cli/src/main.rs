//! `manin` — exact checks for Lie bialgebras, Drinfeld doubles, homogeneous
//! Poisson data, relative Lie algebra cohomology, and quasi-triple twists.
//!
//! Exit codes: 0 = all requested checks pass; 1 = a check failed (the report
//! carries witnesses); 2 = input could not be read or parsed; 3 = internal
//! convention error (independent computation routes disagreed).

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "manin", version, about)]
struct Cli {
    /// Output format for the report.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Directory searched for `<name>.json` when an input argument is not an
    /// existing file; built-in catalog names are always available.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Lie axioms and, via the double's Jacobi sweep, whether the
    /// cobracket makes the input a Lie bialgebra.
    Validate { input: String },
    /// Print the double's structure constants and pairing.
    Double { input: String },
    /// Run the homogeneous-space checks: the Lagrangian subalgebra, both
    /// Drinfeld conditions with witnesses, closure of the twisted bracket,
    /// the character identity residual, and the modular element.
    Drinfeld { input: String },
    /// Relative Lie algebra cohomology of the input algebra.
    Cohomology {
        input: String,
        /// Coefficient module file; the trivial module when omitted.
        #[arg(long)]
        module: Option<String>,
        /// Subalgebra override: indices like "0,2" or vectors like
        /// `"[1,0,0],[0,0,1]"`; defaults to the file's h, else zero.
        #[arg(long)]
        h: Option<String>,
        /// Only report these degrees (comma list).
        #[arg(long)]
        degrees: Option<String>,
        /// Top-degree functional for the induced pairing: "top" for the
        /// all-ones covector on the canonical top basis, or a comma list of
        /// rationals.
        #[arg(long)]
        nu: Option<String>,
        /// Degree for the induced pairing matrix (requires --nu).
        #[arg(long)]
        pair_degree: Option<usize>,
    },
    /// Quasi-triple twist data: g′, the trivector computed three ways, and
    /// the dual cobracket on g′.
    Twist { input: String },
    /// Pointwise checks at supplied frames: the transversality conditions,
    /// the rank of the pointwise bivector map, and the subgroup membership
    /// test for a covector.
    Point {
        input: String,
        /// Frame file with ad_g, pi_g and optional ad_d, ad_gd, xi.
        #[arg(long)]
        frame: String,
    },
    /// List the built-in fixture catalog, or write it out as JSON files.
    Fixtures {
        /// Write every fixture to this directory as `<name>.json`.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate { input } => commands::validate(&cli, input),
        Command::Double { input } => commands::double(&cli, input),
        Command::Drinfeld { input } => commands::drinfeld(&cli, input),
        Command::Cohomology {
            input,
            module,
            h,
            degrees,
            nu,
            pair_degree,
        } => commands::cohomology(
            &cli,
            input,
            module.as_deref(),
            h.as_deref(),
            degrees.as_deref(),
            nu.as_deref(),
            *pair_degree,
        ),
        Command::Twist { input } => commands::twist(&cli, input),
        Command::Point { input, frame } => commands::point(&cli, input, frame),
        Command::Fixtures { emit } => commands::fixtures(&cli, emit.as_deref()),
    };
    match outcome {
        Ok(report) => {
            // ignore broken pipes so `manin ... | head` exits quietly
            use std::io::Write;
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            let _ = match cli.format {
                Format::Json => writeln!(out, "{}", report.to_json()),
                Format::Text => write!(out, "{}", report.text),
            };
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
