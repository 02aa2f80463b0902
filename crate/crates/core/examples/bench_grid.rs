//! A miniature benchmark: generate, run a solver grid, summarize and write
//! solved-over-time curves.

use std::time::Duration;

use subknap::benchmarks::{GenParams, Methodology, Problem};
use subknap::harness::{cmd_bench, cmd_curves, cmd_gen, format_summary, summarize, GenSource, SolverName};

fn main() -> subknap::Result<()> {
    let dir = std::env::temp_dir().join("subknap-bench-example");
    let mut params = GenParams::defaults(Methodology::Ours, Problem::Cov, 0);
    (params.n, params.m, params.budget) = (40, 200, 2.5);
    let manifest = cmd_gen(
        &GenSource::Artificial {
            params,
            count: 6,
            master_seed: 1,
        },
        &dir.join("instances"),
    )?;

    let solvers: Vec<SolverName> = ["basic", "basic+", "le", "ep", "cr", "lecr", "umod", "udom"]
        .iter()
        .map(|s| s.parse())
        .collect::<subknap::Result<_>>()?;
    let csv = dir.join("runs.csv");
    let _ = std::fs::remove_file(&csv);
    let records = cmd_bench(&manifest, &solvers, Duration::from_secs(30), 1, Some(&csv))?;
    print!("{}", format_summary(&summarize(&records)));
    for path in cmd_curves(&csv, &dir.join("curves"))? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
