//! Exhaustive reference solvers for small instances.
//!
//! Subsets are enumerated depth first with an include-before-exclude rule,
//! which visits them in lexicographic order of their sorted index lists.
//! Branches that exceed the capacity are cut, and oracle state is extended
//! incrementally along each branch.

use crate::error::{Error, Result};
use crate::model::{fits, ElementSet, EvalState, Instance, Oracle};

pub const DEFAULT_LIMIT: usize = 22;

/// Ties closer than this keep the lexicographically smaller set.
const TIE_EPS: f64 = 1e-12;

/// `max { f(X) : w(X) <= B }` and a maximizer, lexicographically smallest
/// among ties. Refuses instances with more than `limit_n` elements.
pub fn exhaustive_max<O: Oracle>(instance: &Instance<O>, limit_n: usize) -> Result<(f64, ElementSet)> {
    let n = instance.n();
    if n > limit_n {
        return Err(Error::TooLarge { n, limit: limit_n });
    }
    let all: Vec<usize> = (0..n).collect();
    let mut best = (0.0, Vec::new());
    enumerate(instance, &instance.empty_state(), &all, instance.budget(), &mut best);
    Ok((best.0, ElementSet::from_sorted_unchecked(best.1)))
}

/// `max { f(S ∪ X) : X ⊆ candidates, w(X) <= capacity }`.
pub fn exhaustive_subtree_max<O: Oracle>(
    instance: &Instance<O>,
    state: &EvalState<O::State>,
    candidates: &[usize],
    capacity: f64,
) -> Result<f64> {
    if candidates.len() > DEFAULT_LIMIT {
        return Err(Error::TooLarge {
            n: candidates.len(),
            limit: DEFAULT_LIMIT,
        });
    }
    let mut sorted = candidates.to_vec();
    sorted.sort_unstable();
    let mut best = (state.value(), Vec::new());
    enumerate(instance, state, &sorted, state.weight() + capacity, &mut best);
    Ok(best.0)
}

fn enumerate<O: Oracle>(
    instance: &Instance<O>,
    state: &EvalState<O::State>,
    rest: &[usize],
    weight_limit: f64,
    best: &mut (f64, Vec<usize>),
) {
    for (k, &c) in rest.iter().enumerate() {
        if !fits(state.weight() + instance.weight(c), weight_limit) {
            continue;
        }
        let next = instance.extend(state, c);
        if next.value() > best.0 + TIE_EPS {
            *best = (next.value(), next.set().as_slice().to_vec());
        }
        enumerate(instance, &next, &rest[k + 1..], weight_limit, best);
    }
}
