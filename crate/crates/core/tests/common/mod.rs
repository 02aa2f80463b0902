#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subknap::benchmarks::{derive_seed, generate, AnyInstance, BenchInstance, GenParams, Methodology, Problem};
use subknap::model::{EvalState, Instance, Oracle};

pub const METHODOLOGIES: [Methodology; 2] = [Methodology::Sakaue, Methodology::Ours];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

/// Secondary dimension small enough for exhaustive checks to stay cheap.
pub fn small_m(problem: Problem) -> usize {
    match problem {
        Problem::Cov => 50,
        Problem::Loc => 20,
        Problem::Inf => 30,
    }
}

pub fn gen_small(problem: Problem, methodology: Methodology, n: usize, seed: u64) -> BenchInstance {
    let mut p = GenParams::defaults(methodology, problem, seed);
    p.n = n;
    p.m = small_m(problem);
    generate(&p).expect("generator accepts small parameters")
}

/// Same objective and weights, new budget.
pub fn with_budget(any: &AnyInstance, budget: f64) -> AnyInstance {
    match any {
        AnyInstance::Cov(i) => {
            AnyInstance::Cov(Instance::new(i.weights().to_vec(), budget, i.oracle().clone()).unwrap())
        }
        AnyInstance::Loc(i) => {
            AnyInstance::Loc(Instance::new(i.weights().to_vec(), budget, i.oracle().clone()).unwrap())
        }
        AnyInstance::Inf(i) => {
            AnyInstance::Inf(Instance::new(i.weights().to_vec(), budget, i.oracle().clone()).unwrap())
        }
    }
}

/// Budgets cycle through: below the cheapest element, then 15%, 30% and
/// 50% of the total weight.
pub fn mixed_budget(weights: &[f64], k: usize) -> f64 {
    let total: f64 = weights.iter().sum();
    let min = weights.iter().cloned().fold(f64::INFINITY, f64::min);
    match k % 4 {
        0 => 0.5 * min,
        1 => 0.15 * total,
        2 => 0.3 * total,
        _ => 0.5 * total,
    }
}

/// `count` instances of one problem, alternating methodologies, with
/// `n` drawn from `n_range` and budgets from [`mixed_budget`].
pub fn small_suite(
    problem: Problem,
    count: usize,
    n_range: std::ops::RangeInclusive<usize>,
    master: u64,
) -> Vec<AnyInstance> {
    let mut r = rng(master);
    (0..count)
        .map(|k| {
            let methodology = METHODOLOGIES[k % 2];
            let n = r.gen_range(n_range.clone());
            let inst = gen_small(problem, methodology, n, derive_seed(master, k as u64));
            let budget = mixed_budget(inst.instance.weights(), k / 2);
            with_budget(&inst.instance, budget)
        })
        .collect()
}

/// A random feasible set built by adding random fitting elements, stopping
/// with probability 1/3 after each step.
pub fn random_feasible_state<O: Oracle, R: Rng>(inst: &Instance<O>, r: &mut R) -> EvalState<O::State> {
    let mut state = inst.empty_state();
    loop {
        let open: Vec<usize> = (0..inst.n())
            .filter(|&c| {
                !state.set().contains(c) && subknap::model::fits(state.weight() + inst.weight(c), inst.budget())
            })
            .collect();
        if open.is_empty() || r.gen_range(0..3) == 0 {
            return state;
        }
        state = inst.extend(&state, open[r.gen_range(0..open.len())]);
    }
}

/// Plain ratio greedy from the empty set: take the fitting element of
/// largest `gain / weight` (lowest index on ties) while one with positive
/// gain remains.
pub fn ratio_greedy<O: Oracle>(inst: &Instance<O>) -> Vec<usize> {
    let mut state = inst.empty_state();
    loop {
        let mut best: Option<(f64, usize)> = None;
        for c in 0..inst.n() {
            if state.set().contains(c) || !subknap::model::fits(state.weight() + inst.weight(c), inst.budget()) {
                continue;
            }
            let g = inst.marginal_gain(&state, c);
            if g <= subknap::model::CMP_EPS {
                continue;
            }
            let ratio = g / inst.weight(c);
            if best.is_none_or(|(b, _)| ratio > b) {
                best = Some((ratio, c));
            }
        }
        match best {
            Some((_, c)) => state = inst.extend(&state, c),
            None => return state.set().as_slice().to_vec(),
        }
    }
}

/// Records every search event with enough context to re-check it.
#[derive(Default)]
pub struct Recorder {
    pub nodes: Vec<Vec<usize>>,
    pub prunes: Vec<(subknap::bnb::PruneKind, Vec<usize>, Vec<usize>, f64)>,
    pub reduced: Vec<(Vec<usize>, usize, Vec<usize>, f64)>,
    pub entries: Vec<(Vec<usize>, Vec<subknap::model::GainEntry>)>,
}

impl subknap::bnb::SearchObserver for Recorder {
    fn wants_detail(&self) -> bool {
        true
    }

    fn on_node(&mut self, set: &subknap::model::ElementSet) {
        self.nodes.push(set.as_slice().to_vec());
    }

    fn on_prune(
        &mut self,
        kind: subknap::bnb::PruneKind,
        set: &subknap::model::ElementSet,
        candidates: &[usize],
        incumbent: f64,
    ) {
        self.prunes
            .push((kind, set.as_slice().to_vec(), candidates.to_vec(), incumbent));
    }

    fn on_reduced(&mut self, set: &subknap::model::ElementSet, reduced: usize, candidates: &[usize], incumbent: f64) {
        self.reduced
            .push((set.as_slice().to_vec(), reduced, candidates.to_vec(), incumbent));
    }

    fn on_entries(&mut self, set: &subknap::model::ElementSet, entries: &[subknap::model::GainEntry]) {
        self.entries.push((set.as_slice().to_vec(), entries.to_vec()));
    }
}

#[derive(Debug, Default)]
pub struct Soundness {
    pub prune_checks: usize,
    pub reduce_checks: usize,
    pub gain_checks: usize,
    pub violations: Vec<String>,
}

impl Soundness {
    pub fn absorb(&mut self, other: Soundness) {
        self.prune_checks += other.prune_checks;
        self.reduce_checks += other.reduce_checks;
        self.gain_checks += other.gain_checks;
        self.violations.extend(other.violations);
    }
}

/// Runs `variant` with a [`Recorder`] and brute-forces every pruned subtree
/// and every reduced child; also checks that branching gains never
/// undercut the true marginal gains.
pub fn check_soundness<O: Oracle>(inst: &Instance<O>, variant: subknap::bnb::Variant, tol: f64) -> Soundness {
    use subknap::brute::exhaustive_subtree_max;
    let mut rec = Recorder::default();
    let report = subknap::bnb::solve_with_observer(inst, &subknap::bnb::SolverConfig::new(variant), &mut rec);
    let mut out = Soundness::default();
    if report.status != subknap::bnb::Status::Optimal {
        out.violations.push(format!("{variant}: status {}", report.status));
    }
    for (kind, set, cands, incumbent) in &rec.prunes {
        let state = inst.state_for(set).unwrap();
        let best = exhaustive_subtree_max(inst, &state, cands, inst.budget() - state.weight()).unwrap();
        out.prune_checks += 1;
        if best > incumbent + tol {
            out.violations.push(format!(
                "{variant}: {kind:?} prune at {set:?} lost {best} > {incumbent}"
            ));
        }
    }
    for (set, r, cands, incumbent) in &rec.reduced {
        let state = inst.state_for(set).unwrap();
        if !subknap::model::fits(state.weight() + inst.weight(*r), inst.budget()) {
            continue;
        }
        let with_r = inst.extend(&state, *r);
        let rest: Vec<usize> = cands.iter().copied().filter(|c| c != r).collect();
        let best = exhaustive_subtree_max(inst, &with_r, &rest, inst.budget() - with_r.weight()).unwrap();
        out.reduce_checks += 1;
        if best > incumbent + tol {
            out.violations
                .push(format!("{variant}: reducing {r} at {set:?} lost {best} > {incumbent}"));
        }
    }
    for (set, entries) in &rec.entries {
        let state = inst.state_for(set).unwrap();
        for e in entries {
            out.gain_checks += 1;
            let exact = inst.marginal_gain(&state, e.element);
            if e.gain < exact - tol {
                out.violations.push(format!(
                    "{variant}: gain of {} at {set:?} is {} < {exact}",
                    e.element, e.gain
                ));
            }
        }
    }
    out
}
