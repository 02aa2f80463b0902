//! Runs the six depth-first variants on one generated instance and prints
//! nodes, oracle work and time side by side.

use std::time::Duration;

use subknap::benchmarks::{generate, GenParams, Methodology, Problem};
use subknap::bnb::{solve, SolverConfig, Variant};
use subknap::with_instance;

fn main() -> subknap::Result<()> {
    let mut params = GenParams::defaults(Methodology::Ours, Problem::Loc, 11);
    params.n = 60;
    params.m = 200;
    params.budget = 3.0;
    let inst = generate(&params)?.instance;

    println!(
        "{:<7} {:>10} {:>10} {:>12} {:>10}",
        "variant", "value", "nodes", "evals", "ms"
    );
    for v in Variant::ALL {
        let cfg = SolverConfig::new(v).time_limit(Duration::from_secs(60));
        let r = with_instance!(&inst, |i| solve(i, &cfg));
        println!(
            "{:<7} {:>10.4} {:>10} {:>12} {:>10.1}",
            v.name(),
            r.best_value,
            r.nodes,
            r.evals,
            r.wall_time.as_secs_f64() * 1e3
        );
    }
    Ok(())
}
