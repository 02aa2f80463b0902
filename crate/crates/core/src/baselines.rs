//! Best-first search baselines.
//!
//! Both solvers keep a frontier of open nodes of the basic search tree and
//! always expand the one with the largest priority `f(S) + u(S)`:
//!
//! * `Mod` uses `u_mod(∅)`, the LP relaxation of the remaining knapsack.
//!   It is admissible, so the search stops as soon as the best priority no
//!   longer beats the incumbent.
//! * `Dom` orders by a heuristic built from a greedy chain of the node
//!   (see [`greedy_udom`] and [`u_dom`]). That heuristic is not known to be
//!   admissible, so each entry also carries its `u_mod(∅)` bound; entries
//!   are discarded by that bound and the search ends when the frontier is
//!   empty.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::time::{Duration, Instant};

use crate::bnb::{SolveReport, Status};
use crate::bounds::fractional_knapsack;
use crate::model::{fits, sort_greedy, ElementSet, EvalState, GainEntry, Instance, Oracle, CMP_EPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heuristic {
    Mod,
    Dom,
}

impl Heuristic {
    pub fn name(self) -> &'static str {
        match self {
            Heuristic::Mod => "umod",
            Heuristic::Dom => "udom",
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestFirstConfig {
    pub heuristic: Heuristic,
    pub time_limit: Duration,
    pub prune_eps: f64,
    pub node_limit: Option<u64>,
    /// Maximum number of open entries.
    pub frontier_cap: usize,
    /// Approximate memory cap for the frontier, in bytes.
    pub frontier_bytes_cap: usize,
    /// Use `B - w(S ∪ Y)` instead of `B - w(S)` as the capacity of
    /// `u_mod(Y)` inside the greedy chain.
    pub tightened_capacity: bool,
}

impl BestFirstConfig {
    pub fn new(heuristic: Heuristic) -> Self {
        BestFirstConfig {
            heuristic,
            time_limit: Duration::from_secs(3600),
            prune_eps: CMP_EPS,
            node_limit: None,
            frontier_cap: 50_000_000,
            frontier_bytes_cap: 2 << 30,
            tightened_capacity: false,
        }
    }

    pub fn time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = limit;
        self
    }
}

/// `u_mod(Y)` at node `S`: the LP over `C(S) \ Y` with gains `f(x | S ∪ Y)`.
/// The capacity is `B - w(S)`, or `B - w(S ∪ Y)` when `tightened`.
pub fn u_mod<O: Oracle>(
    instance: &Instance<O>,
    state: &EvalState<O::State>,
    candidates: &[usize],
    y: &[usize],
    tightened: bool,
) -> f64 {
    let mut sy = state.clone();
    for &c in y {
        sy = instance.extend(&sy, c);
    }
    let mut entries: Vec<GainEntry> = candidates
        .iter()
        .filter(|c| !y.contains(c))
        .map(|&c| GainEntry::new(c, instance.marginal_gain(&sy, c), instance.weight(c)))
        .collect();
    sort_greedy(&mut entries);
    let base = if tightened { sy.weight() } else { state.weight() };
    fractional_knapsack(&entries, instance.budget() - base).value
}

/// The greedy chain `X_{1:0} ⊂ X_{1:1} ⊂ ... ⊂ X_{1:k}` of a node.
#[derive(Debug, Clone, PartialEq)]
pub struct UdomTrace {
    /// `c_1, ..., c_k`.
    pub chain: Vec<usize>,
    /// `f(c_i | S ∪ X_{1:i-1})`.
    pub gains: Vec<f64>,
    /// `u_mod(X_{1:i})` for `i = 0..=k`.
    pub umod_values: Vec<f64>,
    /// Candidate with the largest gain `f(c | S)`.
    pub c_max: Option<usize>,
    /// Marginal-gain queries made while building the chain.
    pub evals: u64,
}

impl UdomTrace {
    /// `f(X_{1:k} | S)`.
    pub fn chain_gain(&self) -> f64 {
        self.gains.iter().sum()
    }
}

/// Builds the greedy chain of node `S`, breaking at the first candidate that
/// no longer fits. `u_mod` of every chain prefix is recorded on the way, so
/// no extra oracle queries are needed.
pub fn greedy_udom<O: Oracle>(
    instance: &Instance<O>,
    state: &EvalState<O::State>,
    candidates: &[usize],
    tightened: bool,
) -> UdomTrace {
    let entries: Vec<GainEntry> = candidates
        .iter()
        .map(|&c| GainEntry::new(c, instance.marginal_gain(state, c), instance.weight(c)))
        .collect();
    let mut trace = udom_from_entries(instance, state, entries, tightened);
    trace.evals += candidates.len() as u64;
    trace
}

/// [`greedy_udom`] with the first round of gains already computed.
fn udom_from_entries<O: Oracle>(
    instance: &Instance<O>,
    state: &EvalState<O::State>,
    mut entries: Vec<GainEntry>,
    tightened: bool,
) -> UdomTrace {
    let capacity = instance.budget() - state.weight();
    let c_max = entries
        .iter()
        .max_by(|a, b| a.gain.total_cmp(&b.gain).then(b.element.cmp(&a.element)))
        .map(|e| e.element);
    let mut trace = UdomTrace {
        chain: Vec::new(),
        gains: Vec::new(),
        umod_values: Vec::new(),
        c_max,
        evals: 0,
    };
    let mut current = state.clone();
    let mut used = 0.0;
    loop {
        sort_greedy(&mut entries);
        let cap = if tightened { capacity - used } else { capacity };
        trace.umod_values.push(fractional_knapsack(&entries, cap).value);
        let Some(&best) = entries.first() else { break };
        if !fits(used + best.weight, capacity) {
            break;
        }
        used += best.weight;
        trace.chain.push(best.element);
        trace.gains.push(best.gain);
        current = instance.extend(&current, best.element);
        entries.remove(0);
        for e in entries.iter_mut() {
            *e = GainEntry::new(e.element, instance.marginal_gain(&current, e.element), e.weight);
        }
        trace.evals += entries.len() as u64 + 1;
    }
    trace
}

/// `f(X_{1:k} | S) / (1 - β_{1:k})` with `β_i = 1 - gain_i / u_mod(X_{1:i-1})`.
///
/// `β_{1:k}` is zero when some `u_mod(X_{1:i})` vanishes. When `1 - β_{1:k}`
/// is zero (no chain at all), `u_mod(∅)` is returned instead.
pub fn u_dom(trace: &UdomTrace) -> f64 {
    let total = trace.chain_gain();
    if trace.umod_values.iter().any(|&u| u <= 0.0) {
        return total;
    }
    let beta: f64 = trace
        .gains
        .iter()
        .zip(&trace.umod_values)
        .map(|(g, u)| 1.0 - g / u)
        .product();
    let denom = 1.0 - beta;
    if denom <= 0.0 {
        trace.umod_values[0]
    } else {
        total / denom
    }
}

/// Counters beyond the common report.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrontierStats {
    pub pushed: u64,
    /// Entries dropped on pop because their bound no longer beats the incumbent.
    pub discarded: u64,
    pub max_len: usize,
    /// The search ended because the best priority fell to the incumbent
    /// rather than because the frontier ran empty.
    pub stopped_by_priority: bool,
}

struct Open {
    priority: f64,
    bound: f64,
    depth: usize,
    seq: u64,
    set: Vec<u32>,
    candidates: Vec<u32>,
}

impl Open {
    fn bytes(&self) -> usize {
        std::mem::size_of::<Open>() + 4 * (self.set.capacity() + self.candidates.capacity())
    }
}

impl PartialEq for Open {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Open {}

impl PartialOrd for Open {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Open {
    /// Max-heap order: larger priority, then smaller depth, then older.
    fn cmp(&self, other: &Self) -> Ordering {
        self.priority
            .total_cmp(&other.priority)
            .then(other.depth.cmp(&self.depth))
            .then(other.seq.cmp(&self.seq))
    }
}

pub fn best_first_solve<O: Oracle>(instance: &Instance<O>, config: &BestFirstConfig) -> SolveReport {
    best_first_run(instance, config).0
}

/// Runs a best-first search and also returns frontier statistics.
pub fn best_first_run<O: Oracle>(instance: &Instance<O>, config: &BestFirstConfig) -> (SolveReport, FrontierStats) {
    let start = Instant::now();
    let budget = instance.budget();
    let eps = config.prune_eps;
    let mut stats = FrontierStats::default();
    let mut evals: u64 = 0;
    let mut nodes: u64 = 0;
    let mut incumbent = 0.0;
    let mut best_set = ElementSet::empty();
    let mut heap = BinaryHeap::new();
    let mut bytes = 0usize;
    let mut seq = 0u64;
    let mut status = Status::Optimal;

    // Scores a node from its sorted gains; returns (priority, bound).
    let score = |state: &EvalState<O::State>, entries: Vec<GainEntry>, evals: &mut u64| {
        let mut entries = entries;
        sort_greedy(&mut entries);
        let umod = fractional_knapsack(&entries, budget - state.weight()).value;
        let bound = state.value() + umod;
        let priority = match config.heuristic {
            Heuristic::Mod => bound,
            Heuristic::Dom => {
                let trace = udom_from_entries(instance, state, entries, config.tightened_capacity);
                *evals += trace.evals;
                state.value() + u_dom(&trace)
            }
        };
        (priority, bound)
    };
    let gains = |state: &EvalState<O::State>, candidates: &[u32]| -> Vec<GainEntry> {
        candidates
            .iter()
            .map(|&c| {
                let c = c as usize;
                GainEntry::new(c, instance.marginal_gain(state, c), instance.weight(c))
            })
            .collect()
    };

    let root = instance.empty_state();
    let root_candidates: Vec<u32> = (0..instance.n())
        .filter(|&c| fits(instance.weight(c), budget))
        .map(|c| c as u32)
        .collect();
    let entries = gains(&root, &root_candidates);
    evals += entries.len() as u64;
    let (priority, bound) = score(&root, entries, &mut evals);
    heap.push(Open {
        priority,
        bound,
        depth: 0,
        seq,
        set: Vec::new(),
        candidates: root_candidates,
    });
    stats.pushed = 1;

    while let Some(top) = heap.pop() {
        bytes = bytes.saturating_sub(top.bytes());
        if config.heuristic == Heuristic::Mod && top.priority <= incumbent + eps {
            stats.stopped_by_priority = true;
            break;
        }
        if top.bound <= incumbent + eps {
            stats.discarded += 1;
            continue;
        }
        if start.elapsed() >= config.time_limit || config.node_limit.is_some_and(|l| nodes >= l) {
            status = Status::TimedOut;
            break;
        }
        nodes += 1;
        let set: Vec<usize> = top.set.iter().map(|&c| c as usize).collect();
        let state = instance.state_for(&set).expect("frontier sets are valid");
        evals += set.len() as u64;
        if state.value() > incumbent {
            incumbent = state.value();
            best_set = state.set().clone();
        }
        let mut entries = gains(&state, &top.candidates);
        evals += entries.len() as u64;
        sort_greedy(&mut entries);
        for (i, c) in entries.iter().enumerate() {
            let weight = state.weight() + c.weight;
            if !fits(weight, budget) {
                continue;
            }
            let child = instance.extend(&state, c.element);
            evals += 1;
            if child.value() > incumbent {
                // not yet expanded, but already a feasible solution
                incumbent = child.value();
                best_set = child.set().clone();
            }
            let candidates: Vec<u32> = entries[i + 1..]
                .iter()
                .filter(|e| fits(weight + e.weight, budget))
                .map(|e| e.element as u32)
                .collect();
            let child_entries = gains(&child, &candidates);
            evals += child_entries.len() as u64;
            let (priority, bound) = score(&child, child_entries, &mut evals);
            if bound <= incumbent + eps || candidates.is_empty() {
                continue;
            }
            seq += 1;
            let mut set = top.set.clone();
            set.push(c.element as u32);
            let open = Open {
                priority,
                bound,
                depth: top.depth + 1,
                seq,
                set,
                candidates,
            };
            bytes += open.bytes();
            heap.push(open);
            stats.pushed += 1;
        }
        stats.max_len = stats.max_len.max(heap.len());
        if heap.len() > config.frontier_cap || bytes > config.frontier_bytes_cap {
            status = Status::MemoryExceeded;
            break;
        }
    }

    let report = SolveReport {
        status,
        best_value: incumbent,
        best_set,
        nodes,
        evals,
        wall_time: start.elapsed(),
        first_leaf: None,
    };
    (report, stats)
}
