//! Shows the upper bounds used for pruning at a single node: the LP bound,
//! its lazy counterpart, the integral knapsack bound and the per-candidate
//! reduction bounds, next to the exhaustive answer.

use subknap::benchmarks::{generate, AnyInstance, GenParams, Methodology, Problem};
use subknap::bnb::reduction_bounds;
use subknap::bounds::{fkh, kv, lfkh};
use subknap::brute::exhaustive_subtree_max;
use subknap::model::{sort_greedy, GainEntry};

fn main() -> subknap::Result<()> {
    let mut params = GenParams::defaults(Methodology::Sakaue, Problem::Cov, 3);
    (params.n, params.m, params.budget) = (12, 60, 1.5);
    let AnyInstance::Cov(inst) = generate(&params)?.instance else {
        unreachable!()
    };

    let s = inst.state_for(&[0])?;
    let base = inst.empty_state();
    let cands: Vec<usize> = (1..inst.n())
        .filter(|&c| s.weight() + inst.weight(c) <= inst.budget())
        .collect();

    let entries_at = |state: &subknap::model::EvalState<_>| {
        let mut e: Vec<GainEntry> = cands
            .iter()
            .map(|&c| GainEntry::new(c, inst.marginal_gain(state, c), inst.weight(c)))
            .collect();
        sort_greedy(&mut e);
        e
    };
    let exact = entries_at(&s);
    // gains taken at the empty set are stale but still valid upper bounds
    let lazy = entries_at(&base);

    println!(
        "S = {}, f(S) = {:.3}, w(S) = {:.3}, B = {}",
        s.set(),
        s.value(),
        s.weight(),
        inst.budget()
    );
    println!("candidates in greedy order:");
    for e in &exact {
        println!(
            "  {:>2}  gain {:>7.3}  weight {:.3}  ratio {:>7.3}",
            e.element, e.gain, e.weight, e.ratio
        );
    }
    let brute = exhaustive_subtree_max(&inst, &s, &cands, inst.budget() - s.weight())?;
    println!("exhaustive {brute:.4}");
    println!("kv         {:.4}", kv(&s, &exact, inst.budget()));
    println!("fkh        {:.4}", fkh(&s, &exact, inst.budget()));
    println!("lfkh       {:.4}", lfkh(&s, &lazy, inst.budget()));
    println!("bound on any completion that takes the candidate:");
    for (e, b) in exact.iter().zip(reduction_bounds(&s, &exact, inst.budget())) {
        println!("  {:>2}  {b:.4}", e.element);
    }
    Ok(())
}
