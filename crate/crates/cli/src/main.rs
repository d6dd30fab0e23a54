//! `qmorse`: spectra, partition functions and thermodynamics of the
//! q-deformed Morse oscillator from the command line.

mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qmorse::{Differentiation, EndpointMode, MethodKind};

/// Exit statuses.
pub mod status {
    pub const OK: u8 = 0;
    pub const REGISTRY: u8 = 2;
    pub const UNKNOWN_MOLECULE: u8 = 3;
    pub const INVALID_ARGUMENT: u8 = 4;
    pub const NUMERICAL: u8 = 5;
}

#[derive(Parser, Debug)]
#[command(name = "qmorse", version, about = "Vibrational thermodynamics of the q-deformed Morse oscillator")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Molecule registry (CSV, or JSON when the extension is .json); builtin set otherwise
    #[arg(long, global = true, value_name = "PATH")]
    pub registry: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Euler-MacLaurin correction order
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub em_order: u8,
    /// Endpoint corrections: `paper` keeps the lower endpoint only, `full` adds the upper one
    #[arg(long, global = true, value_enum, default_value_t = Endpoints::Paper)]
    pub endpoints: Endpoints,
    /// How U and C are obtained; defaults to analytic for the direct sum and numeric otherwise
    #[arg(long, global = true, value_enum)]
    pub diff: Option<Diff>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Endpoints {
    Paper,
    Full,
}

impl From<Endpoints> for EndpointMode {
    fn from(e: Endpoints) -> Self {
        match e {
            Endpoints::Paper => EndpointMode::LowerOnly,
            Endpoints::Full => EndpointMode::Both,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Diff {
    Analytic,
    Numeric,
}

impl From<Diff> for Differentiation {
    fn from(d: Diff) -> Self {
        match d {
            Diff::Analytic => Differentiation::Analytic,
            Diff::Numeric => Differentiation::Numeric,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Em,
    Closed,
}

impl From<Method> for MethodKind {
    fn from(m: Method) -> Self {
        match m {
            Method::Direct => MethodKind::Direct,
            Method::Em => MethodKind::EulerMaclaurin,
            Method::Closed => MethodKind::ClosedForm,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct BetaGrid {
    /// Smallest beta in 1/eV [default: 0.1]
    #[arg(long)]
    pub beta_min: Option<f64>,
    /// Largest beta in 1/eV [default: 20 for zfun, 50 otherwise]
    #[arg(long)]
    pub beta_max: Option<f64>,
    /// Number of grid points
    #[arg(long, default_value_t = 200)]
    pub beta_steps: usize,
    /// Space the grid logarithmically instead of linearly
    #[arg(long)]
    pub log_beta: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the molecule registry
    Molecules,
    /// Bound levels of one molecule at one deformation
    Spectrum {
        #[arg(long)]
        molecule: String,
        #[arg(long, default_value_t = 1.0)]
        q: f64,
    },
    /// Deformed Morse potential curve
    Potential {
        #[arg(long)]
        molecule: String,
        /// Deformations, comma separated
        #[arg(long, value_delimiter = ',', default_value = "1")]
        q: Vec<f64>,
        /// Displacement range in Å
        #[arg(long, default_value_t = -0.5)]
        x_min: f64,
        #[arg(long, default_value_t = 3.0)]
        x_max: f64,
        #[arg(long, default_value_t = 200)]
        x_steps: usize,
    },
    /// Partition function by all three routes with relative deviations from the direct sum
    Zfun {
        #[arg(long)]
        molecule: String,
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        #[command(flatten)]
        grid: BetaGrid,
    },
    /// F, U, S and C over a beta grid at one deformation
    Thermo {
        #[arg(long)]
        molecule: String,
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
        #[command(flatten)]
        grid: BetaGrid,
    },
    /// Specific-heat peak temperatures
    Tc {
        /// Molecule; every registry entry when omitted
        #[arg(long)]
        molecule: Option<String>,
        /// Deformations, comma separated [default: 0.3,0.5,0.7,0.9,1]
        #[arg(long, value_delimiter = ',')]
        q: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
    },
    /// Thermodynamics over several deformations
    Sweep {
        #[arg(long)]
        molecule: String,
        /// Deformations, comma separated [default: 0.3,0.5,0.7,0.9,1]
        #[arg(long, value_delimiter = ',')]
        q: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
        #[command(flatten)]
        grid: BetaGrid,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { status::INVALID_ARGUMENT } else { status::OK });
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::from(status::OK),
        Err(failure) => {
            eprintln!("qmorse: {}", failure.message);
            ExitCode::from(failure.status)
        }
    }
}
