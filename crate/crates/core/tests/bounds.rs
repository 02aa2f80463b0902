mod common;

use proptest::prelude::*;
use rand::Rng;
use subknap::benchmarks::Problem;
use subknap::bnb::reduction_bounds;
use subknap::bounds::{fkh, kv, leave_one_out_taken, lfkh};
use subknap::brute::exhaustive_subtree_max;
use subknap::model::{sort_greedy, GainEntry, Instance, Oracle};
use subknap::with_instance;

use common::*;

fn entries_at<O: Oracle>(
    inst: &Instance<O>,
    state: &subknap::model::EvalState<O::State>,
    cands: &[usize],
) -> Vec<GainEntry> {
    let mut e: Vec<GainEntry> = cands
        .iter()
        .map(|&c| GainEntry::new(c, inst.marginal_gain(state, c), inst.weight(c)))
        .collect();
    sort_greedy(&mut e);
    e
}

/// brute <= kv <= fkh <= lfkh, with lazy gains from a subset of `S`.
fn chain<O: Oracle>(inst: &Instance<O>, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let state = random_feasible_state(inst, &mut r);
    let residual = inst.budget() - state.weight();
    let cands: Vec<usize> = (0..inst.n())
        .filter(|&c| !state.set().contains(c) && r.gen_bool(0.7))
        .collect();
    let base: Vec<usize> = state.set().iter().filter(|_| r.gen_bool(0.5)).collect();
    let base = inst.state_for(&base).unwrap();
    let exact = entries_at(inst, &state, &cands);
    let lazy = entries_at(inst, &base, &cands);
    let brute = exhaustive_subtree_max(inst, &state, &cands, residual).unwrap();
    let (k, f, l) = (
        kv(&state, &exact, inst.budget()),
        fkh(&state, &exact, inst.budget()),
        lfkh(&state, &lazy, inst.budget()),
    );
    if brute <= k + 1e-9 && k <= f + 1e-9 && f <= l + 1e-9 {
        Ok(())
    } else {
        Err(format!("brute {brute} kv {k} fkh {f} lfkh {l}"))
    }
}

/// Every completion of `S ∪ {c}` within the other candidates stays below
/// the reduction bound of `c`.
fn reduction_bound_holds<O: Oracle>(inst: &Instance<O>, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let state = random_feasible_state(inst, &mut r);
    let cands: Vec<usize> = (0..inst.n())
        .filter(|&c| !state.set().contains(c) && subknap::model::fits(state.weight() + inst.weight(c), inst.budget()))
        .collect();
    let entries = entries_at(inst, &state, &cands);
    let bounds = reduction_bounds(&state, &entries, inst.budget());
    for (e, bound) in entries.iter().zip(bounds) {
        let with_c = inst.extend(&state, e.element);
        let rest: Vec<usize> = cands.iter().copied().filter(|&c| c != e.element).collect();
        let best = exhaustive_subtree_max(inst, &with_c, &rest, inst.budget() - with_c.weight()).unwrap();
        if best > bound + 1e-9 {
            return Err(format!("element {}: completion {best} above bound {bound}", e.element));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bound_chain_holds(pi in 0usize..3, k in 0usize..2, n in 1usize..14, seed in any::<u64>()) {
        let inst = gen_small(Problem::ALL[pi], METHODOLOGIES[k], n, seed);
        let budget = mixed_budget(inst.instance.weights(), (seed % 4) as usize);
        let inst = with_budget(&inst.instance, budget);
        let res = with_instance!(&inst, |i| chain(i, seed));
        prop_assert!(res.is_ok(), "{:?}", res);
    }

    #[test]
    fn reduction_bounds_cover_completions(pi in 0usize..3, k in 0usize..2, n in 1usize..13, seed in any::<u64>()) {
        let inst = gen_small(Problem::ALL[pi], METHODOLOGIES[k], n, seed);
        let budget = mixed_budget(inst.instance.weights(), 1 + (seed % 3) as usize);
        let inst = with_budget(&inst.instance, budget);
        let res = with_instance!(&inst, |i| reduction_bound_holds(i, seed));
        prop_assert!(res.is_ok(), "{:?}", res);
    }
}

#[test]
fn taken_capacity_never_exceeds_plain_leave_one_out() {
    let e: Vec<GainEntry> = [(0, 5.0, 1.0), (1, 4.0, 2.0), (2, 1.0, 1.5), (3, 2.0, 4.0)]
        .iter()
        .map(|&(c, g, w)| GainEntry::new(c, g, w))
        .collect();
    let mut e = e;
    sort_greedy(&mut e);
    let plain = subknap::bounds::leave_one_out(&e, 4.0);
    for (t, x) in leave_one_out_taken(&e, 4.0).iter().enumerate() {
        assert!(*x <= plain[t] + 1e-12);
    }
}
