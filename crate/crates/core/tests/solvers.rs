mod common;

use std::collections::BTreeSet;
use std::time::Duration;

use proptest::prelude::*;
use subknap::baselines::{best_first_run, BestFirstConfig, Heuristic};
use subknap::benchmarks::Problem;
use subknap::bnb::{solve, solve_with_observer, SolverConfig, Status, Variant};
use subknap::brute::exhaustive_max;
use subknap::harness::{run_solver, SolverName};
use subknap::model::{Instance, Oracle};
use subknap::with_instance;

use common::*;

fn all_match<O: Oracle>(inst: &Instance<O>) -> Result<(), String> {
    let (opt, _) = exhaustive_max(inst, 18).unwrap();
    for v in Variant::ALL {
        for filter in [true, false] {
            let cfg = SolverConfig {
                filter_infeasible: filter,
                ..SolverConfig::new(v)
            };
            let r = solve(inst, &cfg);
            if r.status != Status::Optimal || (r.best_value - opt).abs() > 1e-6 {
                return Err(format!("{v} (filter {filter}): {} vs {opt}", r.best_value));
            }
        }
    }
    for h in [Heuristic::Mod, Heuristic::Dom] {
        for tightened in [false, true] {
            let cfg = BestFirstConfig {
                tightened_capacity: tightened,
                ..BestFirstConfig::new(h)
            };
            let (r, _) = best_first_run(inst, &cfg);
            if r.status != Status::Optimal || (r.best_value - opt).abs() > 1e-6 {
                return Err(format!("{h} (tightened {tightened}): {} vs {opt}", r.best_value));
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn every_solver_is_exact(pi in 0usize..3, k in 0usize..2, n in 1usize..15, b in 0usize..4, seed in any::<u64>()) {
        let inst = gen_small(Problem::ALL[pi], METHODOLOGIES[k], n, seed);
        let inst = with_budget(&inst.instance, mixed_budget(inst.instance.weights(), b));
        let res = with_instance!(&inst, |i| all_match(i));
        prop_assert!(res.is_ok(), "{:?}", res);
    }
}

#[test]
fn pruning_and_reduction_are_sound() {
    let mut total = Soundness::default();
    for (pi, p) in Problem::ALL.into_iter().enumerate() {
        for inst in small_suite(p, 12, 8..=13, 40 + pi as u64) {
            for v in Variant::ALL {
                total.absorb(with_instance!(&inst, |i| check_soundness(i, v, 1e-9)));
            }
        }
    }
    assert!(
        total.violations.is_empty(),
        "{:?}",
        &total.violations[..total.violations.len().min(5)]
    );
    assert!(total.prune_checks > 0 && total.reduce_checks > 0, "{total:?}");
}

fn node_sets<O: Oracle>(inst: &Instance<O>, v: Variant) -> (Vec<Vec<usize>>, u64) {
    let mut rec = Recorder::default();
    let r = solve_with_observer(inst, &SolverConfig::new(v), &mut rec);
    assert_eq!(rec.nodes.len() as u64, r.nodes);
    (rec.nodes, r.nodes)
}

#[test]
fn early_pruning_visits_the_same_tree() {
    for (pi, p) in Problem::ALL.into_iter().enumerate() {
        for inst in small_suite(p, 16, 10..=16, 50 + pi as u64) {
            let (basic, _) = with_instance!(&inst, |i| node_sets(i, Variant::Basic));
            let (ep, _) = with_instance!(&inst, |i| node_sets(i, Variant::Ep));
            assert_eq!(basic, ep);
        }
    }
}

#[test]
fn reduction_only_removes_nodes() {
    let mut strictly_smaller = 0;
    for (pi, p) in Problem::ALL.into_iter().enumerate() {
        for inst in small_suite(p, 16, 10..=16, 60 + pi as u64) {
            let (basic, _) = with_instance!(&inst, |i| node_sets(i, Variant::Basic));
            let (cr, _) = with_instance!(&inst, |i| node_sets(i, Variant::Cr));
            let basic: BTreeSet<Vec<usize>> = basic.into_iter().collect();
            let extra: Vec<&Vec<usize>> = cr.iter().filter(|s| !basic.contains(*s)).collect();
            assert!(extra.is_empty(), "cr visited {extra:?} which basic did not");
            strictly_smaller += (cr.len() < basic.len()) as usize;
        }
    }
    assert!(strictly_smaller > 0);
}

#[test]
fn first_leaf_is_the_ratio_greedy_set() {
    for (pi, p) in Problem::ALL.into_iter().enumerate() {
        for inst in small_suite(p, 20, 4..=16, 70 + pi as u64) {
            let r = with_instance!(&inst, |i| solve(i, &SolverConfig::new(Variant::Basic)));
            let mut greedy = with_instance!(&inst, |i| ratio_greedy(i));
            greedy.sort_unstable();
            assert_eq!(r.first_leaf.unwrap().as_slice(), &greedy[..]);
        }
    }
}

#[test]
fn runs_are_reproducible() {
    for p in Problem::ALL {
        for inst in small_suite(p, 4, 12..=16, 80) {
            for s in SolverName::ALL {
                let a = run_solver(&inst, s, Duration::from_secs(60));
                let b = run_solver(&inst, s, Duration::from_secs(60));
                assert_eq!(
                    (a.best_value.to_bits(), a.nodes, a.evals),
                    (b.best_value.to_bits(), b.nodes, b.evals)
                );
                assert_eq!(a.best_set, b.best_set);
            }
        }
    }
}

#[test]
fn limits_stop_the_search() {
    let inst = gen_small(Problem::Loc, METHODOLOGIES[1], 30, 9);
    let inst = with_budget(&inst.instance, mixed_budget(inst.instance.weights(), 3));
    for v in Variant::ALL {
        let r = with_instance!(&inst, |i| solve(i, &SolverConfig::new(v).node_limit(5)));
        assert_eq!(r.status, Status::TimedOut, "{v}");
        assert!(r.nodes <= 6);
        let r = with_instance!(&inst, |i| solve(i, &SolverConfig::new(v).time_limit(Duration::ZERO)));
        assert_eq!(r.status, Status::TimedOut, "{v}");
    }
    for h in [Heuristic::Mod, Heuristic::Dom] {
        let cfg = BestFirstConfig::new(h).time_limit(Duration::ZERO);
        let (r, _) = with_instance!(&inst, |i| best_first_run(i, &cfg));
        assert_eq!(r.status, Status::TimedOut);
        let cfg = BestFirstConfig {
            frontier_cap: 3,
            ..BestFirstConfig::new(h)
        };
        let (r, _) = with_instance!(&inst, |i| best_first_run(i, &cfg));
        assert_eq!(r.status, Status::MemoryExceeded);
    }
}

#[test]
fn lazy_variants_spend_fewer_evaluations() {
    let (mut basic, mut le) = (0, 0);
    for inst in small_suite(Problem::Cov, 10, 14..=18, 90) {
        basic += run_solver(&inst, SolverName::Bnb(Variant::Basic), Duration::from_secs(60)).evals;
        le += run_solver(&inst, SolverName::Bnb(Variant::Le), Duration::from_secs(60)).evals;
    }
    assert!(le < basic, "le {le} vs basic {basic}");
}
