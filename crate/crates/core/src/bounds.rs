//! Upper bounds on the best continuation value of a search node.
//!
//! All bounds are knapsack problems over `(gain, weight)` pairs where the
//! gains are marginal gains `f(c | S)` (or upper bounds on them) and the
//! capacity is the residual budget `B - w(S)`:
//!
//! * [`fractional_knapsack`] solves the LP relaxation by the ratio-greedy
//!   fill; [`fkh`] and [`lfkh`] add `f(S)` to it.
//! * [`exact_knapsack`] solves the 0/1 problem by depth-first
//!   branch-and-bound; [`kv`] adds `f(S)` to it.

use crate::model::{fits, is_greedy_sorted, EvalState, GainEntry};

/// Optimum of the fractional knapsack LP together with the greedy fill that
/// attains it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalResult {
    pub value: f64,
    /// Number of leading entries taken completely.
    pub fill_prefix_len: usize,
    /// Entry taken partially, with its fraction in `(0, 1)`.
    pub fractional_element: Option<(usize, f64)>,
}

/// LP optimum of `max Σ p_x g_x` s.t. `Σ p_x w_x <= capacity`, `p ∈ [0,1]`.
///
/// `entries` must already be in greedy order (non-increasing ratio, ties by
/// ascending index); this is only checked in debug builds.
pub fn fractional_knapsack(entries: &[GainEntry], capacity: f64) -> FractionalResult {
    debug_assert!(is_greedy_sorted(entries), "entries are not in greedy order");
    let mut remaining = capacity.max(0.0);
    let mut value = 0.0;
    for (k, e) in entries.iter().enumerate() {
        if e.weight <= remaining {
            value += e.gain;
            remaining -= e.weight;
        } else {
            let frac = remaining / e.weight;
            let fractional_element = if frac > 0.0 {
                value += frac * e.gain;
                Some((e.element, frac))
            } else {
                None
            };
            return FractionalResult {
                value,
                fill_prefix_len: k,
                fractional_element,
            };
        }
    }
    FractionalResult {
        value,
        fill_prefix_len: entries.len(),
        fractional_element: None,
    }
}

fn residual<S>(state: &EvalState<S>, budget: f64) -> f64 {
    debug_assert!(fits(state.weight(), budget), "w(S) exceeds the budget");
    (budget - state.weight()).max(0.0)
}

/// `fkh(S, J) = f(S) + l(S, J)` for exact, greedy-ordered gains of `J`.
pub fn fkh<S>(state: &EvalState<S>, entries: &[GainEntry], budget: f64) -> f64 {
    state.value() + fractional_knapsack(entries, residual(state, budget)).value
}

/// Lazy variant of [`fkh`]: the same LP over gain upper bounds `u_S(c)`,
/// ordered by lazy ratio.
pub fn lfkh<S>(state: &EvalState<S>, lazy_entries: &[GainEntry], budget: f64) -> f64 {
    fkh(state, lazy_entries, budget)
}

/// Prefix sums over greedy-ordered entries, answering "LP without entry
/// `t`" queries in `O(log k)`.
struct PrefixLp<'a> {
    entries: &'a [GainEntry],
    pw: Vec<f64>,
    pg: Vec<f64>,
}

impl<'a> PrefixLp<'a> {
    fn new(entries: &'a [GainEntry]) -> Self {
        debug_assert!(is_greedy_sorted(entries));
        let mut pw = Vec::with_capacity(entries.len() + 1);
        let mut pg = Vec::with_capacity(entries.len() + 1);
        pw.push(0.0);
        pg.push(0.0);
        for e in entries {
            pw.push(pw.last().unwrap() + e.weight);
            pg.push(pg.last().unwrap() + e.gain);
        }
        PrefixLp { entries, pw, pg }
    }

    /// LP optimum over all entries except position `t`.
    fn without(&self, t: usize, capacity: f64) -> f64 {
        let cap = capacity.max(0.0);
        let (pw, pg, k) = (&self.pw, &self.pg, self.entries.len());
        let fill = |j: usize, taken_w: f64, taken_g: f64| {
            // `j` is the first position not taken completely
            if j < k && j != t {
                let frac = ((cap - taken_w) / self.entries[j].weight).clamp(0.0, 1.0);
                taken_g + frac * self.entries[j].gain
            } else {
                taken_g
            }
        };
        if pw[t] > cap {
            // the fill stops before reaching `t`
            let j = pw[..=t].partition_point(|&w| w <= cap) - 1;
            return fill(j, pw[j], pg[j]);
        }
        let (wt, gt) = (self.entries[t].weight, self.entries[t].gain);
        let j = t + 1 + pw[t + 2..].partition_point(|&w| w - wt <= cap);
        fill(j, pw[j] - wt, pg[j] - gt)
    }
}

/// LP value of `entries` with each single entry removed in turn.
///
/// Runs in `O(k log k)` using prefix sums over the greedy order: the break
/// point of the fill after removing an entry is located by binary search.
pub fn leave_one_out(entries: &[GainEntry], capacity: f64) -> Vec<f64> {
    let lp = PrefixLp::new(entries);
    (0..entries.len()).map(|t| lp.without(t, capacity)).collect()
}

/// Like [`leave_one_out`], but the capacity left after removing entry `t`
/// is also reduced by its weight: the LP over `J \ {t}` with capacity
/// `capacity - w_t`, floored at zero. This bounds what can be added next to
/// `t` once `t` has been taken.
pub fn leave_one_out_taken(entries: &[GainEntry], capacity: f64) -> Vec<f64> {
    let lp = PrefixLp::new(entries);
    entries
        .iter()
        .enumerate()
        .map(|(t, e)| lp.without(t, capacity - e.weight))
        .collect()
}

/// Optimum of the 0/1 knapsack `max Σ p_x g_x` s.t. `Σ p_x w_x <= capacity`.
///
/// Weights are real-valued, so this is a depth-first branch-and-bound over
/// the ratio order with the LP relaxation of the remaining items as bound.
pub fn exact_knapsack(entries: &[GainEntry], capacity: f64) -> f64 {
    let capacity = capacity.max(0.0);
    let mut items: Vec<GainEntry> = entries
        .iter()
        .copied()
        .filter(|e| e.gain > 0.0 && fits(e.weight, capacity))
        .collect();
    if items.is_empty() {
        return 0.0;
    }
    items.sort_unstable_by(GainEntry::greedy_cmp);
    let mut pw = vec![0.0; items.len() + 1];
    let mut pg = vec![0.0; items.len() + 1];
    for (k, e) in items.iter().enumerate() {
        pw[k + 1] = pw[k] + e.weight;
        pg[k + 1] = pg[k] + e.gain;
    }
    let mut search = KnapsackSearch {
        items: &items,
        pw: &pw,
        pg: &pg,
        best: 0.0,
    };
    search.dfs(0, capacity, 0.0);
    search.best
}

struct KnapsackSearch<'a> {
    items: &'a [GainEntry],
    pw: &'a [f64],
    pg: &'a [f64],
    best: f64,
}

impl KnapsackSearch<'_> {
    /// LP bound of items `i..` with capacity `cap`.
    fn bound(&self, i: usize, cap: f64) -> f64 {
        let base_w = self.pw[i];
        let j = i + self.pw[i + 1..].partition_point(|&w| w - base_w <= cap);
        let g = self.pg[j] - self.pg[i];
        if j < self.items.len() {
            let rest = cap - (self.pw[j] - base_w);
            g + (rest / self.items[j].weight).clamp(0.0, 1.0) * self.items[j].gain
        } else {
            g
        }
    }

    fn dfs(&mut self, i: usize, cap: f64, value: f64) {
        if value > self.best {
            self.best = value;
        }
        if i == self.items.len() || value + self.bound(i, cap) <= self.best {
            return;
        }
        let e = self.items[i];
        if fits(e.weight, cap) {
            self.dfs(i + 1, cap - e.weight, value + e.gain);
        }
        self.dfs(i + 1, cap, value);
    }
}

/// `kv(S, J) = f(S) + ` the 0/1 knapsack optimum over exact gains of `J`.
pub fn kv<S>(state: &EvalState<S>, entries: &[GainEntry], budget: f64) -> f64 {
    state.value() + exact_knapsack(entries, residual(state, budget))
}
