use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use xxz_teleport_cli::critical_table::{self, parse_values, GridAxis};
use xxz_teleport_cli::point::point_report;
use xxz_teleport_cli::sweep::{self, Range, SweepParam, SweepSpec};
use xxz_teleport_cli::verify::{self, VerifyOptions};
use xxz_teleport_cli::{CliError, Overrides, Result, Settings};

/// Teleportation through the thermal state of a two-qubit XXZ chain.
#[derive(Debug, Parser)]
#[command(name = "xxzport", version, allow_negative_numbers = true)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Exchange coupling J (nonzero)
    #[arg(long = "J", global = true)]
    coupling: Option<f64>,
    /// Anisotropy λ (positive)
    #[arg(long = "lambda", global = true)]
    anisotropy: Option<f64>,
    /// Uniform field B
    #[arg(long = "B", global = true)]
    field: Option<f64>,
    /// Inhomogeneous field b
    #[arg(long = "b", global = true)]
    inhomogeneity: Option<f64>,
    /// Temperature T (positive)
    #[arg(long = "T", global = true)]
    temperature: Option<f64>,
    /// Input angle θ in [0, π/2]
    #[arg(long, global = true)]
    theta: Option<f64>,
    /// Input phase φ in [0, 2π)
    #[arg(long, global = true)]
    phi: Option<f64>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// key=value file; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (0 = all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report every quantity at one parameter point
    #[command(allow_negative_numbers = true)]
    Point,
    /// CSV over a two-parameter grid
    #[command(allow_negative_numbers = true)]
    Sweep {
        /// One of B, b, T, theta, lambda, J
        #[arg(long)]
        x: String,
        /// start:stop:steps, ends included
        #[arg(long = "x-range")]
        x_range: String,
        #[arg(long)]
        y: String,
        #[arg(long = "y-range")]
        y_range: String,
    },
    /// CSV of B_c, b_c and T_max along a B or b grid
    #[command(allow_negative_numbers = true)]
    Critical {
        #[arg(long)]
        grid: String,
        /// Comma list or start:stop:steps; defaults to the current value
        #[arg(long)]
        values: Option<String>,
    },
    /// Closed forms against the matrix computations on random points
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long = "inject-fault", hide = true, default_value_t = 0.0)]
        inject_fault: f64,
    },
}

impl GlobalArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            coupling: self.coupling,
            anisotropy: self.anisotropy,
            field: self.field,
            inhomogeneity: self.inhomogeneity,
            temperature: self.temperature,
            theta: self.theta,
            phi: self.phi,
            out: self.out.clone(),
            seed: self.seed,
            jobs: self.jobs,
        }
    }
}

fn emit(out: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
    match out {
        Some(path) => {
            let io_err = |source| CliError::Io {
                path: path.to_owned(),
                source,
            };
            let mut file = std::fs::File::create(path).map_err(io_err)?;
            write(&mut file).map_err(io_err)
        }
        None => {
            let stdout = std::io::stdout();
            write(&mut stdout.lock()).map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })
        }
    }
}

fn run(command: Command, s: &Settings) -> Result<()> {
    let out = s.out.as_deref();
    match command {
        Command::Point => {
            let report = point_report(s)?;
            emit(out, |w| w.write_all(report.as_bytes()))
        }
        Command::Sweep { x, x_range, y, y_range } => {
            let spec = SweepSpec::new(
                x.parse::<SweepParam>()?,
                x_range.parse::<Range>()?,
                y.parse::<SweepParam>()?,
                y_range.parse::<Range>()?,
                s.clone(),
            )?;
            let rows = spec.rows()?;
            emit(out, |w| sweep::write_csv(&rows, &mut &mut *w))
        }
        Command::Critical { grid, values } => {
            let axis = grid.parse::<GridAxis>()?;
            let values = match values {
                Some(v) => parse_values(&v)?,
                None => vec![match axis {
                    GridAxis::Field => s.field,
                    GridAxis::Inhomogeneity => s.inhomogeneity,
                }],
            };
            let rows = critical_table::critical_rows(s, axis, &values)?;
            emit(out, |w| critical_table::write_csv(&rows, &mut &mut *w))
        }
        Command::Verify { points, inject_fault } => {
            let report = verify::run(&VerifyOptions {
                points,
                seed: s.seed,
                fault: inject_fault,
            })?;
            emit(out, |w| w.write_all(report.render().as_bytes()))?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::VerificationFailed)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = Settings::resolve(&cli.global.overrides(), cli.global.config.as_deref()).and_then(|s| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(s.jobs)
            .build()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
        pool.install(|| run(cli.command, &s))
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("xxzport: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
