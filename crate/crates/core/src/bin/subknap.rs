use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use subknap::benchmarks::{GenParams, Methodology, Problem};
use subknap::harness::{
    artificial_methodology, cmd_bench, cmd_curves, cmd_gen, cmd_solve, cmd_verify, format_summary, summarize,
    GenSource, SolverName,
};

#[derive(Parser)]
#[command(
    name = "subknap",
    version,
    about = "Submodular knapsack solvers and benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate instance files and a manifest.
    Gen {
        #[arg(long)]
        problem: Problem,
        /// sakaue, ours, or real (with --input)
        #[arg(long, default_value = "ours")]
        methodology: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
        /// Dataset file for real-data instances.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        budget: Option<f64>,
        /// Upper end of influence activation probabilities.
        #[arg(long)]
        activation_max: Option<f64>,
    },
    /// Solve one instance file.
    Solve {
        instance: PathBuf,
        #[arg(long)]
        solver: SolverName,
        #[arg(long, default_value_t = 3600.0)]
        time_limit: f64,
        /// CSV file to append the run record to.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run solvers over every instance of a manifest.
    Bench {
        manifest: PathBuf,
        /// Comma separated; defaults to all solvers.
        #[arg(long, value_delimiter = ',')]
        solver: Vec<SolverName>,
        #[arg(long, default_value_t = 3600.0)]
        time_limit: f64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write solved-over-time curves from a results CSV.
    Curves {
        csv: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check every solver against exhaustive search on small instances.
    Verify {
        manifest: PathBuf,
        #[arg(long, default_value_t = 20)]
        limit_n: usize,
        #[arg(long, default_value_t = 60.0)]
        time_limit: f64,
    },
}

fn seconds(s: f64) -> Result<Duration, String> {
    Duration::try_from_secs_f64(s).map_err(|_| format!("invalid time limit {s}"))
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Gen {
            problem,
            methodology,
            seed,
            count,
            out,
            input,
            n,
            m,
            budget,
            activation_max,
        } => {
            let source = match (methodology.parse::<Methodology>()?, input) {
                (Methodology::Real, Some(path)) => match problem {
                    Problem::Cov => GenSource::ForumCov(path),
                    Problem::Inf => GenSource::MovieLensInf(path),
                    Problem::Loc => return Err("no real-data loader for loc".into()),
                },
                (Methodology::Real, None) => return Err("--methodology real needs --input".into()),
                (_, Some(_)) => return Err("--input is only used with --methodology real".into()),
                (_, None) => {
                    let mut params = GenParams::defaults(artificial_methodology(&methodology)?, problem, 0);
                    params.n = n.unwrap_or(params.n);
                    params.m = m.unwrap_or(params.m);
                    params.budget = budget.unwrap_or(params.budget);
                    params.activation_max = activation_max.unwrap_or(params.activation_max);
                    GenSource::Artificial {
                        params,
                        count,
                        master_seed: seed,
                    }
                }
            };
            let manifest = cmd_gen(&source, &out)?;
            println!("{}", manifest.display());
        }
        Command::Solve {
            instance,
            solver,
            time_limit,
            out,
        } => {
            let r = cmd_solve(&instance, solver, seconds(time_limit)?, out.as_deref())?;
            println!(
                "{} {} {} value={} time={:.3}s nodes={} evals={}",
                r.instance_id, r.solver, r.status, r.best_value, r.wall_time_s, r.nodes, r.evals
            );
        }
        Command::Bench {
            manifest,
            solver,
            time_limit,
            jobs,
            out,
        } => {
            let solvers = if solver.is_empty() {
                SolverName::ALL.to_vec()
            } else {
                solver
            };
            let records = cmd_bench(&manifest, &solvers, seconds(time_limit)?, jobs, Some(&out))?;
            print!("{}", format_summary(&summarize(&records)));
        }
        Command::Curves { csv, out } => {
            for path in cmd_curves(&csv, &out)? {
                println!("{}", path.display());
            }
        }
        Command::Verify {
            manifest,
            limit_n,
            time_limit,
        } => {
            let report = cmd_verify(&manifest, limit_n, seconds(time_limit)?)?;
            for m in &report.mismatches {
                println!(
                    "MISMATCH {} {}: expected {} found {} ({})",
                    m.instance_id, m.solver, m.expected, m.found, m.status
                );
            }
            println!(
                "checked {} instances, skipped {}, {} mismatches",
                report.checked,
                report.skipped.len(),
                report.mismatches.len()
            );
            if !report.mismatches.is_empty() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
