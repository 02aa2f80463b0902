//! Per-node building blocks of the depth-first search: candidate ordering,
//! pruning tests, lazy gain refresh, the early pruning scan and the
//! reduction set.

use crate::bounds::{fkh, kv, leave_one_out_taken};
use crate::model::{sort_greedy, EvalState, GainEntry, Instance, Oracle};

/// Exact gains `f(c | S)` for `candidates`, sorted into greedy order.
/// Performs one marginal-gain query per candidate.
pub fn order_candidates<O: Oracle>(
    instance: &Instance<O>,
    state: &EvalState<O::State>,
    candidates: impl IntoIterator<Item = usize>,
) -> Vec<GainEntry> {
    let mut entries: Vec<GainEntry> = candidates
        .into_iter()
        .map(|c| GainEntry::new(c, instance.marginal_gain(state, c), instance.weight(c)))
        .collect();
    sort_greedy(&mut entries);
    entries
}

/// `fkh(S, C(S)) <= s* + eps`.
pub fn prune_test_basic<S>(state: &EvalState<S>, entries: &[GainEntry], budget: f64, incumbent: f64, eps: f64) -> bool {
    fkh(state, entries, budget) <= incumbent + eps
}

/// `kv(S, C(S)) <= s* + eps`.
pub fn prune_test_plus<S>(state: &EvalState<S>, entries: &[GainEntry], budget: f64, incumbent: f64, eps: f64) -> bool {
    kv(state, entries, budget) <= incumbent + eps
}

/// Refresh threshold of the average decision rule: the mean ratio the
/// remaining capacity must earn to beat the incumbent. `None` when no
/// capacity is left, in which case nothing is worth refreshing.
pub fn refresh_threshold<S>(state: &EvalState<S>, budget: f64, incumbent: f64) -> Option<f64> {
    let residual = budget - state.weight();
    (residual > 0.0).then(|| (incumbent - state.value()) / residual)
}

/// Builds the lazy gains `u_S` from the parent's `u_{S^P}`.
///
/// A candidate is re-evaluated exactly iff its inherited ratio reaches
/// [`refresh_threshold`]; otherwise it keeps the inherited bound, which is
/// still an upper bound on `f(c | S)` by submodularity. Returns the entries
/// sorted by lazy ratio and the number of oracle queries made.
pub fn lazy_refresh<O: Oracle>(
    instance: &Instance<O>,
    state: &EvalState<O::State>,
    inherited: &[GainEntry],
    incumbent: f64,
) -> (Vec<GainEntry>, usize) {
    let threshold = refresh_threshold(state, instance.budget(), incumbent);
    let mut queries = 0;
    let mut entries: Vec<GainEntry> = inherited
        .iter()
        .map(|e| match threshold {
            Some(t) if e.ratio >= t => {
                queries += 1;
                GainEntry::new(e.element, instance.marginal_gain(state, e.element), e.weight)
            }
            _ => *e,
        })
        .collect();
    sort_greedy(&mut entries);
    (entries, queries)
}

#[derive(Debug, Clone, PartialEq)]
pub enum EarlyScan {
    /// The node can be discarded; only `evaluated` gains were computed.
    Pruned { evaluated: usize },
    /// The node cannot be pruned. Entries are complete and greedy-ordered.
    NoPrune(Vec<GainEntry>),
    /// Every gain was computed without either condition firing. Entries are
    /// greedy-ordered; the caller still has to run the ordinary bound test.
    Completed(Vec<GainEntry>),
}

/// Orders the candidates of `S` while testing for early (no-)pruning.
///
/// `parent_order` holds the candidates with their gains w.r.t. the parent
/// node, in the parent's greedy order. Gains w.r.t. `S` are computed one by
/// one and inserted into a sorted prefix `U`. Once `w(U)` covers the
/// residual capacity, let `j*` be the first sorted position whose prefix
/// weight reaches it. If the ratio at `j*` is at least the parent ratio of
/// the next unscanned candidate (an upper bound on every remaining ratio),
/// the LP over `U` equals the LP over all candidates and decides the node.
pub fn early_prune_scan<O: Oracle>(
    instance: &Instance<O>,
    state: &EvalState<O::State>,
    parent_order: &[GainEntry],
    incumbent: f64,
    eps: f64,
) -> EarlyScan {
    let capacity = (instance.budget() - state.weight()).max(0.0);
    let mut sorted: Vec<GainEntry> = Vec::with_capacity(parent_order.len());
    let mut total_weight = 0.0;
    for (i, p) in parent_order.iter().enumerate() {
        let e = GainEntry::new(p.element, instance.marginal_gain(state, p.element), p.weight);
        let pos = sorted.partition_point(|x| x.greedy_cmp(&e).is_lt());
        sorted.insert(pos, e);
        total_weight += e.weight;
        if total_weight < capacity {
            continue;
        }
        let mut prefix = 0.0;
        let j_star = sorted
            .iter()
            .position(|x| {
                prefix += x.weight;
                prefix >= capacity
            })
            .expect("total weight reaches capacity");
        let dominates = match parent_order.get(i + 1) {
            Some(next) => sorted[j_star].ratio >= next.ratio,
            None => true,
        };
        if !dominates {
            continue;
        }
        if fkh(state, &sorted, instance.budget()) <= incumbent + eps {
            return EarlyScan::Pruned { evaluated: i + 1 };
        }
        for p in &parent_order[i + 1..] {
            sorted.push(GainEntry::new(
                p.element,
                instance.marginal_gain(state, p.element),
                p.weight,
            ));
        }
        sort_greedy(&mut sorted);
        return EarlyScan::NoPrune(sorted);
    }
    EarlyScan::Completed(sorted)
}

/// `gain(c) + f(S) + l_c` for every candidate, where `l_c` is the LP over
/// the other candidates with the capacity left after taking `c`,
/// `B - w(S) - w_c`. This bounds every completion of `S ∪ {c}` within the
/// candidates: for such a completion `X`, submodularity gives
/// `f(S ∪ {c} ∪ X) <= f(S ∪ X) + gain(c)` and `f(S ∪ X) <= f(S) + l_c`.
/// Computed once per node; membership in the reduction set is then a
/// comparison against the incumbent of the moment.
pub fn reduction_bounds<S>(state: &EvalState<S>, entries: &[GainEntry], budget: f64) -> Vec<f64> {
    leave_one_out_taken(entries, budget - state.weight())
        .iter()
        .zip(entries)
        .map(|(rest, e)| e.gain + state.value() + rest)
        .collect()
}

/// Flags `c` iff its [`reduction_bounds`] entry is at most `s* + eps`.
///
/// With lazy gains both terms are still upper bounds, so a flag remains a
/// proof that no extension of `S ∪ {c}` within the candidates beats the
/// incumbent.
pub fn reduction_set<S>(
    state: &EvalState<S>,
    entries: &[GainEntry],
    budget: f64,
    incumbent: f64,
    eps: f64,
) -> Vec<bool> {
    reduction_bounds(state, entries, budget)
        .into_iter()
        .map(|b| b <= incumbent + eps)
        .collect()
}
