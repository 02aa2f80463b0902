//! Build a weighted coverage instance by hand and solve it exactly.
//!
//! Run with `cargo run --example solve_coverage`.

use subknap::benchmarks::CovOracle;
use subknap::bnb::{solve, SolverConfig, Variant};
use subknap::model::Instance;

fn main() -> subknap::Result<()> {
    // five sensors watching eight zones; zone values below
    let zones = vec![vec![0, 1, 2], vec![2, 3], vec![3, 4, 5], vec![5, 6, 7], vec![0, 7]];
    let values = vec![3.0, 1.0, 2.0, 4.0, 1.5, 2.5, 1.0, 2.0];
    let costs = vec![1.2, 0.5, 1.0, 1.4, 0.6];
    let inst = Instance::new(costs, 2.5, CovOracle::new(zones, values)?)?;

    let report = solve(&inst, &SolverConfig::new(Variant::LeCr));
    println!("status     {}", report.status);
    println!("best set   {}", report.best_set);
    println!("value      {:.2}", report.best_value);
    println!("weight     {:.2}", inst.weight_of(report.best_set.as_slice())?);
    println!("nodes      {}", report.nodes);
    println!("gain evals {}", report.evals);
    Ok(())
}
