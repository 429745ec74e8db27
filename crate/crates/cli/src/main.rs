use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use focal_geom_cli::{run, Command, RunConfig, DEFAULT_GRID_POINTS, DEFAULT_SEED};

/// Frenet frames, focal curves and slant helices of curves in E^n.
#[derive(Parser, Debug)]
#[command(name = "focal-geom", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Curvatures and speed along a grid, W-curve/ccr classification.
    Analyze(Opts),
    /// Focal curve, focal curvatures and the focal frame relations.
    Focal(Opts),
    /// Constant-angle test of every frame vector (or only V_k).
    Slant(Opts),
    /// Checks that the focal curve of a k-slant helix is slant with the predicted index.
    Verify(Opts),
    /// Integrates a curvatures spec into a samples spec.
    Synthesize(Opts),
}

#[derive(Args, Debug)]
struct Opts {
    /// Curve spec (JSON).
    #[arg(long, short)]
    input: PathBuf,
    /// Output directory.
    #[arg(long, short, default_value = "out")]
    output: PathBuf,
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    grid: usize,
    /// Classification tolerance (1e-6) or slant tolerance (1e-6 analytic, 1e-4 sampled).
    #[arg(long)]
    tolerance: Option<f64>,
    /// Slant tolerance for the focal curve in verify.
    #[arg(long, default_value_t = 1e-4)]
    focal_tolerance: f64,
    /// Axis agreement in radians for verify.
    #[arg(long, default_value_t = 1e-3)]
    axis_tolerance: f64,
    #[arg(long, short)]
    k: Option<usize>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match cli.command {
        Sub::Analyze(o) => (Command::Analyze, o),
        Sub::Focal(o) => (Command::Focal, o),
        Sub::Slant(o) => (Command::Slant, o),
        Sub::Verify(o) => (Command::Verify, o),
        Sub::Synthesize(o) => (Command::Synthesize, o),
    };
    let config = RunConfig {
        grid_points: opts.grid,
        tolerance: opts.tolerance,
        focal_tolerance: Some(opts.focal_tolerance),
        axis_tolerance: Some(opts.axis_tolerance),
        k: opts.k,
        dim: opts.dim,
        seed: opts.seed,
        ..RunConfig::new(command, opts.input, opts.output)
    };
    match run(&config) {
        Ok(outcome) => {
            for f in &outcome.files {
                println!("{}", f.display());
            }
            match outcome.exit_code {
                0 => {}
                1 => eprintln!("verification failed"),
                _ => eprintln!("numeric failure, see the report"),
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
