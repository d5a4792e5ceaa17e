use std::path::PathBuf;

use bellswitch_core::state::{BellLabel, RectLabel};
use bellswitch_core::C64;
use clap::{Args, Parser, Subcommand};

use crate::commands::{self, ScalingBase};
use crate::report::{Format, Render};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "bellswitch",
    version,
    about = "Bell-state creation and analysis with a pumped conditional-phase switch"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Epsilon {
    /// Real part of the pair amplitude ε.
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub epsilon: f64,
    /// Imaginary part of ε.
    #[arg(long = "epsilon-im", default_value_t = 0.0, allow_negative_numbers = true)]
    pub epsilon_im: f64,
}

impl Epsilon {
    pub fn value(self) -> C64 {
        C64::new(self.epsilon, self.epsilon_im)
    }
}

fn rect_label(s: &str) -> Result<RectLabel, String> {
    RectLabel::parse(s).ok_or_else(|| format!("expected one of HH, HV, VH, VV, got {s:?}"))
}

fn bell_label(s: &str) -> Result<BellLabel, String> {
    BellLabel::parse(s).ok_or_else(|| format!("expected psi-plus, psi-minus, phi-plus or phi-minus, got {s:?}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the creator on |0> + ε|label> and name the Bell state it makes.
    Create {
        #[arg(long, value_parser = rect_label)]
        input: RectLabel,
        #[command(flatten)]
        epsilon: Epsilon,
    },
    /// Run the analyzer on |0> - ε|bell> and report the rectilinear verdict.
    Analyze {
        #[arg(long, value_parser = bell_label)]
        bell: BellLabel,
        #[command(flatten)]
        epsilon: Epsilon,
    },
    /// Check both devices against their mapping tables.
    Tables {
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        epsilon: Epsilon,
    },
    /// Compare the first-order switch against exact Fock-space propagation.
    Validate {
        #[arg(long, value_delimiter = ',', default_values_t = [1e-2, 1e-3, 1e-4])]
        scales: Vec<f64>,
        #[arg(long, default_value_t = 2)]
        nmax: u8,
        #[arg(long, value_enum, default_value_t = ScalingBase::Generic)]
        base: ScalingBase,
    },
    /// Simulate detector counts behind the analyzer.
    Sample {
        #[arg(long, value_parser = bell_label)]
        bell: BellLabel,
        #[command(flatten)]
        epsilon: Epsilon,
        #[arg(long, default_value_t = 1_000_000)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Detector efficiency η.
        #[arg(long, default_value_t = 1.0)]
        efficiency: f64,
    },
    /// Execute a circuit description file.
    Run { path: PathBuf },
}

/// Rendered output and whether the command's check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub passed: bool,
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let f = cli.format;
    let ok = |body| Output { body, passed: true };
    Ok(match &cli.command {
        Command::Create { input, epsilon } => ok(commands::create(*input, epsilon.value())?.render(f)),
        Command::Analyze { bell, epsilon } => ok(commands::analyze(*bell, epsilon.value())?.render(f)),
        Command::Tables { tol, epsilon } => {
            let r = commands::tables(epsilon.value(), *tol)?;
            Output {
                body: r.render(f),
                passed: r.pass,
            }
        }
        Command::Validate { scales, nmax, base } => {
            let r = commands::validate(scales, *nmax, *base)?;
            Output {
                body: r.render(f),
                passed: r.pass,
            }
        }
        Command::Sample {
            bell,
            epsilon,
            shots,
            seed,
            efficiency,
        } => ok(commands::sample(*bell, epsilon.value(), *efficiency, *shots, *seed)?.render(f)),
        Command::Run { path } => ok(commands::run_file(path)?.render(f)),
    })
}
