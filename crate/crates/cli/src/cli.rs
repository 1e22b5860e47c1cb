use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ucoef::bounds::LambdaSpacing;
use ucoef::schwarz::DEFAULT_PHASES;
use ucoef::{Complex64, SearchConfig};

use crate::format::parse_complex;

#[derive(Parser, Debug)]
#[command(name = "ucoef", version, about = "Logarithmic coefficient bounds for the class U(alpha, lambda)")]
pub struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Output format; `--json` is shorthand for `--format json`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

impl Cli {
    pub fn wants_json(&self) -> bool {
        self.json || self.format == Format::Json
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve for the four regime thresholds in alpha.
    Roots,
    /// Sharp bounds for |gamma_1|..|gamma_3| at one (alpha, lambda).
    Bounds(Point),
    /// Regime map over a grid, as CSV (or JSON rows).
    Regimes(RegimesArgs),
    /// Brute-force max of |gamma_k| compared against the bound.
    Verify(VerifyCli),
    /// a_2..a_4 and gamma_1..gamma_3 for a given Schwarz function prefix.
    Expand(ExpandArgs),
}

#[derive(Args, Debug)]
pub struct Point {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub lambda: f64,
}

#[derive(Args, Debug)]
pub struct RegimesArgs {
    #[arg(long, default_value_t = 50)]
    pub alpha_steps: usize,
    #[arg(long, default_value_t = 50)]
    pub lambda_steps: usize,
    /// Space lambda linearly in (0, lambda_star] instead of geometrically.
    #[arg(long)]
    pub linear: bool,
}

impl RegimesArgs {
    pub fn spacing(&self) -> LambdaSpacing {
        if self.linear {
            LambdaSpacing::Linear
        } else {
            LambdaSpacing::Geometric
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyCli {
    #[command(flatten)]
    pub point: Point,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub k: u8,
    #[arg(long, default_value_t = 9)]
    pub density: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub rounds: usize,
    /// Also grid the phase of t_1.
    #[arg(long)]
    pub full_phase: bool,
    /// Extra seeded random Schur parameters.
    #[arg(long, default_value_t = 0)]
    pub random_samples: usize,
}

impl VerifyCli {
    pub fn config(&self) -> SearchConfig {
        SearchConfig {
            density: self.density,
            refine_rounds: self.rounds,
            phases: DEFAULT_PHASES,
            full_phase: self.full_phase,
            random_samples: self.random_samples,
            seed: self.seed,
            ..SearchConfig::default()
        }
    }
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub point: Point,
    /// Comma-separated c_1,c_2,c_3; entries like 0.5, -0.2+0.1i.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_complex, required = true)]
    pub c: Vec<Complex64>,
    #[arg(long, default_value_t = ucoef::series::DEFAULT_ORDER)]
    pub order: usize,
}
