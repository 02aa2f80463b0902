//! The two best-first baselines against depth-first search, plus a look at
//! the greedy chain behind the dominance heuristic at the root.

use std::time::Duration;

use subknap::baselines::{best_first_run, greedy_udom, u_dom, u_mod, BestFirstConfig, Heuristic};
use subknap::benchmarks::{generate, AnyInstance, GenParams, Methodology, Problem};
use subknap::bnb::{solve, SolverConfig, Variant};

fn main() -> subknap::Result<()> {
    let mut params = GenParams::defaults(Methodology::Ours, Problem::Inf, 5);
    (params.n, params.m, params.budget) = (30, 150, 1.5);
    let AnyInstance::Inf(inst) = generate(&params)?.instance else {
        unreachable!()
    };

    let root = inst.empty_state();
    let all: Vec<usize> = (0..inst.n()).collect();
    let trace = greedy_udom(&inst, &root, &all, false);
    println!("root chain {:?}", trace.chain);
    println!(
        "u_mod(empty) {:.4}  u_dom {:.4}",
        u_mod(&inst, &root, &all, &[], false),
        u_dom(&trace)
    );

    for h in [Heuristic::Mod, Heuristic::Dom] {
        let cfg = BestFirstConfig::new(h).time_limit(Duration::from_secs(60));
        let (r, stats) = best_first_run(&inst, &cfg);
        println!(
            "{:<5} {} value {:.4} nodes {} evals {} frontier peak {} discarded {}",
            h.name(),
            r.status,
            r.best_value,
            r.nodes,
            r.evals,
            stats.max_len,
            stats.discarded
        );
    }
    let r = solve(&inst, &SolverConfig::new(Variant::LeCr));
    println!(
        "lecr  {} value {:.4} nodes {} evals {}",
        r.status, r.best_value, r.nodes, r.evals
    );
    Ok(())
}
