//! Exact solvers for maximizing a monotone submodular set function under a
//! knapsack constraint.
//!
//! The crate is organized bottom-up:
//!
//! * [`model`]: instances, value oracles, incremental evaluation state.
//! * [`bounds`]: fractional and exact knapsack bounds on a node's best
//!   completion.
//! * [`bnb`]: depth-first branch-and-bound and its accelerated variants.
//! * [`baselines`]: best-first search with LP and greedy-chain priorities.
//! * [`benchmarks`]: coverage, facility location and influence objectives,
//!   seeded generators, dataset loaders and the instance file format.
//! * [`brute`]: exhaustive reference solvers for small instances.
//! * [`harness`]: the operations behind the `subknap` command line tool.
//!
//! ```
//! use subknap::benchmarks::CovOracle;
//! use subknap::bnb::{solve, SolverConfig, Variant};
//! use subknap::model::Instance;
//!
//! // three elements covering overlapping parts of {0, .., 3}
//! let f = CovOracle::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]], vec![1.0; 4]).unwrap();
//! let inst = Instance::new(vec![0.5, 0.4, 0.5], 1.0, f).unwrap();
//! let report = solve(&inst, &SolverConfig::new(Variant::Basic));
//! assert_eq!(report.best_value, 4.0);
//! assert_eq!(report.best_set.as_slice(), &[0, 2]);
//! ```

pub mod baselines;
pub mod benchmarks;
pub mod bnb;
pub mod bounds;
pub mod brute;
pub mod error;
pub mod harness;
pub mod model;

pub use error::{Error, Result};
