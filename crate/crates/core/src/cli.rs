//! Command-line front end.
//!
//! Exit codes: 0 success, 1 unreadable or invalid input, 2 solver failure,
//! 3 a result that fails validation (point reconstruction error above
//! `1e-6`, or a `check` that does not pass).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::auctions::generate_instance;
use crate::dw::{self, DwOptions};
use crate::error::Error;
use crate::io::{
    check_result, load_instance, resolve_point, InstanceFile, Method, OracleKind, Problem,
    ResultFile,
};
use crate::oracle::{scale_polytope, setup_point_decomposition};
use crate::trace::TraceRenderer;
use crate::{benders, simplex::Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;
pub const EXIT_INVALID_RESULT: i32 = 3;

/// Largest reconstruction error `decompose-point` accepts.
pub const RECONSTRUCTION_LIMIT: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "intdw",
    version,
    about = "LP optimum plus convex decomposition into integer points"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct SolverArgs {
    /// Optimality tolerance on reduced costs and cut violations.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,
    /// Print per-iteration tableaus to stderr.
    #[arg(long)]
    pub trace: bool,
    /// Override the instance's oracle.
    #[arg(long, value_enum)]
    pub oracle: Option<OracleKind>,
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an auction or polytope instance.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Dw)]
        method: Method,
        /// Divide b by this factor (default 2 for auctions, 1 for polytopes).
        #[arg(long)]
        beta: Option<f64>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Decompose a given fractional point into integer points.
    DecomposePoint {
        point: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Write a pseudo-random auction instance.
    Generate {
        #[arg(long)]
        players: usize,
        #[arg(long)]
        units: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-validate a result file against its instance.
    Check {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        result: PathBuf,
        /// Defaults to the beta recorded in the result.
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn solver(e: Error) -> Self {
        Failure {
            code: EXIT_SOLVER,
            message: e.to_string(),
        }
    }
}

fn options(args: &SolverArgs) -> DwOptions {
    DwOptions {
        tol: Tolerances {
            optimality: args.tol,
            ..Tolerances::default()
        },
        max_iters: args.max_iters,
        ..DwOptions::default()
    }
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {}", path.display(), e))),
        None => writeln!(stdout, "{}", text.trim_end())
            .map_err(|e| Failure::input(format!("cannot write output: {}", e))),
    }
}

fn load(path: &Path) -> Result<InstanceFile, Failure> {
    load_instance(path).map_err(|e| Failure::input(e.to_string()))
}

/// Runs the CLI with the given arguments (first item is the program name)
/// and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e);
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e);
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(
    command: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    match command {
        Command::Solve {
            instance,
            method,
            beta,
            solver,
        } => {
            let file = load(&instance)?;
            if matches!(file, InstanceFile::Point(_)) {
                return Err(Failure::input("point files are handled by decompose-point"));
            }
            let problem = Problem::from_instance(&file, solver.oracle)
                .map_err(|e| Failure::input(e.to_string()))?;
            let beta = beta.unwrap_or(problem.default_beta);
            let polytope = scale_polytope(&problem.polytope, beta)
                .map_err(|e| Failure::input(e.to_string()))?;
            if problem.cost.iter().any(|&c| c < 0.0) {
                return Err(Failure::input("objective must be nonnegative"));
            }
            let opts = options(&solver);
            let renderer = {
                let coords = problem.coordinates.clone();
                TraceRenderer::with_keys(move |i| coords.key(i))
            };
            let result = match method {
                Method::Dw => {
                    if solver.trace {
                        let start = dw::init(&polytope).map_err(Failure::solver)?;
                        let _ = write!(stderr, "{}", renderer.initial(&start));
                    }
                    let sol = dw::solve_with_observer(
                        &polytope,
                        &*problem.oracle,
                        &problem.cost,
                        &opts,
                        |event, state| {
                            if solver.trace {
                                let _ = write!(stderr, "{}", renderer.iteration(event, state));
                            }
                        },
                    )
                    .map_err(Failure::solver)?;
                    ResultFile::new(
                        Method::Dw,
                        beta,
                        sol.iterations,
                        &sol.combination,
                        &problem.coordinates,
                    )
                }
                Method::Benders => {
                    let out = benders::solve_with_observer(
                        &polytope,
                        &*problem.oracle,
                        &problem.cost,
                        &opts,
                        |event| {
                            if solver.trace {
                                let _ = write!(stderr, "{}", renderer.benders_round(event));
                            }
                        },
                    )
                    .map_err(Failure::solver)?;
                    ResultFile::new(
                        Method::Benders,
                        beta,
                        out.rounds,
                        &out.combination,
                        &problem.coordinates,
                    )
                }
            };
            emit(solver.out.as_deref(), &result.to_json(), stdout)
        }
        Command::DecomposePoint { point, solver } => {
            let file = load(&point)?;
            let InstanceFile::Point(spec) = file else {
                return Err(Failure::input("expected a file of kind \"point\""));
            };
            let base = point.parent().unwrap_or_else(|| Path::new("."));
            let (x_star, problem) = resolve_point(&spec, base, solver.oracle)
                .map_err(|e| Failure::input(e.to_string()))?;
            let setup =
                setup_point_decomposition(x_star).map_err(|e| Failure::input(e.to_string()))?;
            let opts = options(&solver);
            let renderer = {
                let coords = problem.coordinates.clone();
                TraceRenderer::with_keys(move |i| coords.key(i))
            };
            if solver.trace {
                let start = dw::init(setup.polytope()).map_err(Failure::solver)?;
                let _ = write!(stderr, "{}", renderer.initial(&start));
            }
            let sol = dw::solve_with_observer(
                setup.polytope(),
                &*problem.oracle,
                setup.cost(),
                &opts,
                |event, state| {
                    if solver.trace {
                        let _ = write!(stderr, "{}", renderer.iteration(event, state));
                    }
                },
            )
            .map_err(Failure::solver)?;
            let error = setup.reconstruction_error(&sol.combination.combined_point);
            let mut result = ResultFile::new(
                Method::Dw,
                1.0,
                sol.iterations,
                &sol.combination,
                &problem.coordinates,
            );
            result.reconstruction_error = Some(error);
            emit(solver.out.as_deref(), &result.to_json(), stdout)?;
            if error > RECONSTRUCTION_LIMIT {
                return Err(Failure {
                    code: EXIT_INVALID_RESULT,
                    message: format!(
                        "reconstruction error {:e} exceeds {:e}; the oracle probably violates its contract for this point",
                        error, RECONSTRUCTION_LIMIT
                    ),
                });
            }
            Ok(())
        }
        Command::Generate {
            players,
            units,
            seed,
            out,
        } => {
            let inst = generate_instance(players, units, seed)
                .map_err(|e| Failure::input(e.to_string()))?;
            emit(
                out.as_deref(),
                &InstanceFile::Auction(inst).to_json(),
                stdout,
            )
        }
        Command::Check {
            instance,
            result,
            beta,
            tol,
        } => {
            let file = load(&instance)?;
            let text = std::fs::read_to_string(&result)
                .map_err(|e| Failure::input(format!("cannot read {}: {}", result.display(), e)))?;
            let res = ResultFile::from_json(&text).map_err(|e| Failure::input(e.to_string()))?;
            let (problem, beta) = match &file {
                InstanceFile::Point(spec) => {
                    let base = instance.parent().unwrap_or_else(|| Path::new("."));
                    let (x_star, inner) = resolve_point(spec, base, None)
                        .map_err(|e| Failure::input(e.to_string()))?;
                    let setup = setup_point_decomposition(x_star)
                        .map_err(|e| Failure::input(e.to_string()))?;
                    let problem = Problem {
                        polytope: setup.polytope().clone(),
                        cost: setup.cost().to_vec(),
                        oracle: inner.oracle,
                        coordinates: inner.coordinates,
                        default_beta: 1.0,
                    };
                    (problem, 1.0)
                }
                _ => {
                    let problem = Problem::from_instance(&file, None)
                        .map_err(|e| Failure::input(e.to_string()))?;
                    (problem, beta.unwrap_or(res.beta))
                }
            };
            let report =
                check_result(&problem, &res, beta).map_err(|e| Failure::input(e.to_string()))?;
            let _ = writeln!(stdout, "{}", report);
            if report.passes(tol) {
                let _ = writeln!(stdout, "ok");
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_INVALID_RESULT,
                    message: format!("result fails validation at tolerance {:e}", tol),
                })
            }
        }
    }
}
