//! Depth-first branch-and-bound over the basic search tree.
//!
//! Every node is a feasible set `S` with an ordered candidate list `C(S)`.
//! The children of `S` are `S ∪ {c_i}` for the candidates in order, and
//! child `i` inherits the candidates after `c_i`. A node is discarded when
//! an upper bound on its best completion does not exceed the incumbent by
//! more than `prune_eps`. The variants differ only in how that bound is
//! obtained and in which children are skipped:
//!
//! | variant     | bound test                          | children skipped       |
//! |-------------|-------------------------------------|------------------------|
//! | `Basic`     | LP relaxation over exact gains      | none                   |
//! | `BasicPlus` | exact 0/1 knapsack over exact gains | none                   |
//! | `Le`        | LP over lazily refreshed gains      | none                   |
//! | `Ep`        | LP, decided while ordering          | none                   |
//! | `Cr`        | LP                                  | reduction set          |
//! | `LeCr`      | LP over lazy gains                  | lazy reduction set     |
//!
//! The search is iterative; recursion depth is bounded only by memory.

mod ops;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use ops::{
    early_prune_scan, lazy_refresh, order_candidates, prune_test_basic, prune_test_plus, reduction_bounds,
    reduction_set, refresh_threshold, EarlyScan,
};

use crate::error::{Error, Result};
use crate::model::{fits, ElementSet, EvalState, GainEntry, Instance, Oracle, CMP_EPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    Basic,
    BasicPlus,
    Le,
    Ep,
    Cr,
    LeCr,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::Basic,
        Variant::BasicPlus,
        Variant::Le,
        Variant::Ep,
        Variant::Cr,
        Variant::LeCr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Basic => "basic",
            Variant::BasicPlus => "basic+",
            Variant::Le => "le",
            Variant::Ep => "ep",
            Variant::Cr => "cr",
            Variant::LeCr => "lecr",
        }
    }

    fn lazy(self) -> bool {
        matches!(self, Variant::Le | Variant::LeCr)
    }

    fn reduces(self) -> bool {
        matches!(self, Variant::Cr | Variant::LeCr)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownSolver(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub variant: Variant,
    pub time_limit: Duration,
    pub prune_eps: f64,
    /// Stop with [`Status::TimedOut`] after this many nodes.
    pub node_limit: Option<u64>,
    /// Drop candidates that no longer fit before computing any bound.
    /// Turning this off follows the plain feasibility guard on children.
    pub filter_infeasible: bool,
}

impl SolverConfig {
    pub fn new(variant: Variant) -> Self {
        SolverConfig {
            variant,
            time_limit: Duration::from_secs(3600),
            prune_eps: CMP_EPS,
            node_limit: None,
            filter_infeasible: true,
        }
    }

    pub fn time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = limit;
        self
    }

    pub fn node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    /// Time or node limit reached; the incumbent is reported.
    #[serde(rename = "timeout")]
    TimedOut,
    /// Best-first frontier outgrew its cap.
    #[serde(rename = "memory")]
    MemoryExceeded,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Optimal => "optimal",
            Status::TimedOut => "timeout",
            Status::MemoryExceeded => "memory",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub status: Status,
    pub best_value: f64,
    pub best_set: ElementSet,
    /// Processed nodes: one per feasible set the search visits.
    pub nodes: u64,
    /// Marginal-gain queries plus state extensions.
    pub evals: u64,
    pub wall_time: Duration,
    /// Where the first dive of the search stopped.
    pub first_leaf: Option<ElementSet>,
}

/// Why a node was discarded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneKind {
    /// The bound test at the top of the node.
    Bound,
    /// The early pruning conditions during candidate ordering.
    Early,
}

/// Hooks for inspecting a search. Detailed callbacks receive owned copies
/// of search data and are only invoked when `wants_detail` returns true.
pub trait SearchObserver {
    fn wants_detail(&self) -> bool {
        false
    }

    fn on_node(&mut self, _set: &ElementSet) {}

    /// `set` was discarded with `candidates` still open.
    fn on_prune(&mut self, _kind: PruneKind, _set: &ElementSet, _candidates: &[usize], _incumbent: f64) {}

    /// `reduced` entered the reduction set of `set`, whose candidate list is
    /// `candidates`. Reported once per node, with the incumbent at that time.
    fn on_reduced(&mut self, _set: &ElementSet, _reduced: usize, _candidates: &[usize], _incumbent: f64) {}

    /// The ordered entries a node branches on, exact or lazy.
    fn on_entries(&mut self, _set: &ElementSet, _entries: &[GainEntry]) {}
}

/// Observer that ignores everything.
pub struct NoObserver;

impl SearchObserver for NoObserver {}

pub fn solve<O: Oracle>(instance: &Instance<O>, config: &SolverConfig) -> SolveReport {
    solve_with_observer(instance, config, &mut NoObserver)
}

struct Frame<S> {
    state: EvalState<S>,
    entries: Vec<GainEntry>,
    /// Per-entry reduction bounds; empty unless the variant reduces.
    reduce_bounds: Vec<f64>,
    reported: Vec<bool>,
    next: usize,
}

enum Outcome<S> {
    Leaf,
    Expand(Frame<S>),
}

struct Search<'a, O: Oracle, V: SearchObserver> {
    instance: &'a Instance<O>,
    config: &'a SolverConfig,
    observer: &'a mut V,
    detail: bool,
    best_value: f64,
    best_set: ElementSet,
    nodes: u64,
    evals: u64,
    descending: bool,
    first_leaf: Option<ElementSet>,
}

impl<O: Oracle, V: SearchObserver> Search<'_, O, V> {
    fn incumbent_eps(&self) -> f64 {
        self.config.prune_eps
    }

    fn mark_leaf(&mut self, set: &ElementSet) {
        if self.descending {
            self.descending = false;
            self.first_leaf = Some(set.clone());
        }
    }

    fn candidates_of(entries: &[GainEntry]) -> Vec<usize> {
        entries.iter().map(|e| e.element).collect()
    }

    /// Processes one node. `inherited` holds the candidates in the parent's
    /// order with the parent's (exact or lazy) gains; `None` at the root.
    fn process(&mut self, state: EvalState<O::State>, inherited: Option<Vec<GainEntry>>) -> Outcome<O::State> {
        let inst = self.instance;
        let budget = inst.budget();
        let eps = self.incumbent_eps();
        let variant = self.config.variant;
        self.nodes += 1;
        self.observer.on_node(state.set());
        if state.value() > self.best_value {
            self.best_value = state.value();
            self.best_set = state.set().clone();
        }

        let candidates_empty = match &inherited {
            Some(c) => c.is_empty(),
            None => {
                inst.n() == 0 || (self.config.filter_infeasible && !inst.weights().iter().any(|&w| fits(w, budget)))
            }
        };
        if candidates_empty {
            self.mark_leaf(state.set());
            return Outcome::Leaf;
        }

        let entries = match inherited {
            None => {
                let roots = (0..inst.n()).filter(|&c| !self.config.filter_infeasible || fits(inst.weight(c), budget));
                let e = order_candidates(inst, &state, roots);
                self.evals += e.len() as u64;
                e
            }
            Some(parent) if variant.lazy() => {
                let (e, q) = lazy_refresh(inst, &state, &parent, self.best_value);
                self.evals += q as u64;
                e
            }
            Some(parent) if variant == Variant::Ep => {
                match early_prune_scan(inst, &state, &parent, self.best_value, eps) {
                    EarlyScan::Pruned { evaluated } => {
                        self.evals += evaluated as u64;
                        if self.detail {
                            let c = Self::candidates_of(&parent);
                            self.observer
                                .on_prune(PruneKind::Early, state.set(), &c, self.best_value);
                        }
                        self.mark_leaf(state.set());
                        return Outcome::Leaf;
                    }
                    EarlyScan::NoPrune(e) => {
                        self.evals += e.len() as u64;
                        return self.expand(state, e);
                    }
                    EarlyScan::Completed(e) => {
                        self.evals += e.len() as u64;
                        e
                    }
                }
            }
            Some(parent) => {
                let e = order_candidates(inst, &state, parent.iter().map(|e| e.element));
                self.evals += e.len() as u64;
                e
            }
        };

        let pruned = match variant {
            Variant::BasicPlus => prune_test_plus(&state, &entries, budget, self.best_value, eps),
            _ => prune_test_basic(&state, &entries, budget, self.best_value, eps),
        };
        if pruned {
            if self.detail {
                let c = Self::candidates_of(&entries);
                self.observer
                    .on_prune(PruneKind::Bound, state.set(), &c, self.best_value);
            }
            self.mark_leaf(state.set());
            return Outcome::Leaf;
        }
        self.expand(state, entries)
    }

    fn expand(&mut self, state: EvalState<O::State>, entries: Vec<GainEntry>) -> Outcome<O::State> {
        let reduce_bounds = if self.config.variant.reduces() {
            reduction_bounds(&state, &entries, self.instance.budget())
        } else {
            Vec::new()
        };
        if self.detail {
            self.observer.on_entries(state.set(), &entries);
        }
        Outcome::Expand(Frame {
            reported: vec![false; reduce_bounds.len()],
            state,
            entries,
            reduce_bounds,
            next: 0,
        })
    }

    /// Whether entry `k` of `frame` is in the reduction set under the
    /// current incumbent.
    fn is_reduced(&mut self, frame: &mut Frame<O::State>, k: usize) -> bool {
        let Some(&bound) = frame.reduce_bounds.get(k) else {
            return false;
        };
        let reduced = bound <= self.best_value + self.incumbent_eps();
        if reduced && self.detail && !frame.reported[k] {
            frame.reported[k] = true;
            let c = Self::candidates_of(&frame.entries);
            self.observer
                .on_reduced(frame.state.set(), frame.entries[k].element, &c, self.best_value);
        }
        reduced
    }

    /// Next child of `frame`: its state and inherited candidates.
    fn next_child(&mut self, frame: &mut Frame<O::State>) -> Option<(EvalState<O::State>, Vec<GainEntry>)> {
        let inst = self.instance;
        let budget = inst.budget();
        let filter = self.config.filter_infeasible;
        while frame.next < frame.entries.len() {
            let i = frame.next;
            frame.next += 1;
            let c = frame.entries[i];
            if self.is_reduced(frame, i) {
                continue;
            }
            let weight = frame.state.weight() + c.weight;
            if !fits(weight, budget) {
                continue;
            }
            let mut inherited = Vec::with_capacity(frame.entries.len() - i - 1);
            for k in i + 1..frame.entries.len() {
                let e = frame.entries[k];
                if (!filter || fits(weight + e.weight, budget)) && !self.is_reduced(frame, k) {
                    inherited.push(e);
                }
            }
            self.evals += 1;
            return Some((inst.extend(&frame.state, c.element), inherited));
        }
        None
    }
}

/// Runs the configured variant, reporting search events to `observer`.
pub fn solve_with_observer<O: Oracle, V: SearchObserver>(
    instance: &Instance<O>,
    config: &SolverConfig,
    observer: &mut V,
) -> SolveReport {
    let start = Instant::now();
    let detail = observer.wants_detail();
    let mut search = Search {
        instance,
        config,
        observer,
        detail,
        best_value: f64::NEG_INFINITY,
        best_set: ElementSet::empty(),
        nodes: 0,
        evals: 0,
        descending: true,
        first_leaf: None,
    };
    let mut stack: Vec<Frame<O::State>> = Vec::new();
    let mut status = Status::Optimal;

    if let Outcome::Expand(f) = search.process(instance.empty_state(), None) {
        stack.push(f);
    }
    while let Some(top) = stack.last_mut() {
        let Some((child, inherited)) = search.next_child(top) else {
            if search.descending {
                // expanded, but no child was visited
                let set = top.state.set().clone();
                search.mark_leaf(&set);
            }
            stack.pop();
            continue;
        };
        if start.elapsed() >= config.time_limit || config.node_limit.is_some_and(|l| search.nodes >= l) {
            status = Status::TimedOut;
            break;
        }
        if let Outcome::Expand(f) = search.process(child, Some(inherited)) {
            stack.push(f);
        }
    }

    SolveReport {
        status,
        best_value: search.best_value.max(0.0),
        best_set: search.best_set,
        nodes: search.nodes,
        evals: search.evals,
        wall_time: start.elapsed(),
        first_leaf: search.first_leaf,
    }
}
