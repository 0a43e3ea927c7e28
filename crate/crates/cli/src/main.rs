mod input;
mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use input::InputError;
use report::Outcome;

#[derive(Debug, Parser)]
#[command(name = "plank", version, about = "Zero-set distance verifiers and plank covering refuters")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Instance file (JSON); stdin when absent or "-".
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Report destination; stdout when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Slack allowed when comparing a distance with its bound.
    #[arg(long, global = true, default_value_t = 1e-6, value_parser = positive_f64)]
    tol: f64,

    /// Multi-start count for the optimizers.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    starts: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Zeros, maximizers and the π/(2n) certificate of a trigonometric polynomial.
    TrigVerify,
    /// Maximizers of |P| on the unit sphere.
    SphereMax,
    /// Angular distance from the maximizer of |P| on the sphere to Z(P).
    Theorem1,
    /// Distance from the maximizer of |P| on the complex sphere to Z(P).
    ComplexVerify,
    /// Weighted maximizer of a system of complex polynomials.
    WeightedVerify,
    /// Ball point from the doubled-sphere pair construction.
    BallPair,
    /// Ball point from the maximizer of |P G_n|.
    BallMultiplier,
    /// Uncovered point of the sphere for a family of spherical segments.
    RefuteSphere {
        /// Rounding margin for the width split; a share of the slack by default.
        #[arg(long)]
        margin: Option<f64>,
    },
    /// Uncovered point of the unit ball for a family of planks.
    RefuteBall {
        #[arg(long)]
        margin: Option<f64>,
    },
    /// Scaled Chebyshev values and multiplier functions on a grid.
    ChebTable {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 5.0)]
        x_max: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Latitudes of the lifted Chebyshev hyperplanes.
    LiftedDiag {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Sup errors of the scaled Chebyshev and multiplier limits.
    Convergence {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "20,40,100,200")]
        ks: Vec<usize>,
        #[arg(long, default_value_t = 5.0)]
        x_max: f64,
    },
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("{v} is not a positive number")),
        Err(e) => Err(e.to_string()),
    }
}

pub struct Settings {
    pub seed: u64,
    pub tol: f64,
    pub starts: usize,
    pub format: Format,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, InputError> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| InputError(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| InputError(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn dispatch(cli: &Cli, settings: &Settings) -> Result<Outcome, InputError> {
    let text = || read_input(&cli.input);
    match &cli.command {
        Command::TrigVerify => report::trig_verify(input::parse::<input::TrigIn>(&text()?)?.build()?, settings),
        Command::SphereMax => report::sphere_max(input::parse::<input::PolyIn>(&text()?)?.build()?, settings),
        Command::Theorem1 => report::theorem1(input::parse::<input::PolyIn>(&text()?)?.build()?, settings),
        Command::ComplexVerify => {
            report::complex_verify(input::parse::<input::ComplexIn>(&text()?)?.build()?, settings)
        }
        Command::WeightedVerify => {
            report::weighted_verify(input::parse::<input::WeightedIn>(&text()?)?.build()?, settings)
        }
        Command::BallPair => report::ball_pair(input::parse::<input::PolyIn>(&text()?)?.build()?, settings),
        Command::BallMultiplier => {
            report::ball_multiplier(input::parse::<input::PolyIn>(&text()?)?.build()?, settings)
        }
        Command::RefuteSphere { margin } => {
            report::refute_sphere(input::parse::<input::SegmentsIn>(&text()?)?.build()?, *margin, settings)
        }
        Command::RefuteBall { margin } => {
            report::refute_ball(input::parse::<input::PlanksIn>(&text()?)?.build()?, *margin, settings)
        }
        Command::ChebTable { n, k, x_max, points } => report::cheb_table(*n, *k, *x_max, *points, settings),
        Command::LiftedDiag { n, k } => report::lifted_diag(*n, *k, settings),
        Command::Convergence { n, ks, x_max } => report::convergence(*n, ks, *x_max, settings),
    }
}

fn write_output(path: &Option<PathBuf>, body: &[u8]) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, body),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body)?;
            out.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    let settings = Settings { seed: cli.seed, tol: cli.tol, starts: cli.starts as usize, format: cli.format };
    match dispatch(&cli, &settings) {
        Ok(outcome) => {
            if let Err(e) = write_output(&cli.output, &outcome.body) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(3);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
