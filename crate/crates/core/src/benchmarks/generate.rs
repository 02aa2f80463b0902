//! Seeded artificial instance generation.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)` (rand_chacha
//! 0.3), split into independent streams with `set_stream`:
//!
//! | stream | draws, in order                                                  |
//! |--------|------------------------------------------------------------------|
//! | 0      | costs `w_0 .. w_{n-1}`                                           |
//! | 1      | COV values `v_0 .. v_{m-1}`; LOC benefits row by row; INF probs  |
//! | 2      | COV inclusions / INF arcs, for `i in 0..n`, then `e in 0..m`     |
//!
//! A uniform draw on `[a, b]` is `a + (b - a) * u` with `u = rng.gen::<f64>()`,
//! and a Bernoulli(`p`) trial succeeds iff `u < p`. Per-instance seeds for a
//! batch are derived from a master seed by [`derive_seed`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AnyInstance, BenchInstance, CovOracle, InfOracle, InstanceMeta, LocOracle, Methodology, Problem};
use crate::error::{Error, Result};
use crate::model::Instance;

const STREAM_COSTS: u64 = 0;
const STREAM_VALUES: u64 = 1;
const STREAM_STRUCTURE: u64 = 2;

/// Probability that element `i` covers a ground element (COV) or that
/// source `i` has an arc to a target (INF).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LinkRule {
    Fixed(f64),
    /// `w_i / divisor`.
    CostOver(f64),
}

impl LinkRule {
    fn prob(self, w: f64) -> f64 {
        match self {
            LinkRule::Fixed(p) => p,
            LinkRule::CostOver(d) => w / d,
        }
    }
}

/// Distribution of COV element values and LOC benefits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValueRule {
    Uniform(f64, f64),
    /// `U[0, factor * w_i]` for row `i`.
    CostScaled(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub methodology: Methodology,
    pub problem: Problem,
    pub seed: u64,
    /// Elements, locations or sources.
    pub n: usize,
    /// Ground elements, customers or targets.
    pub m: usize,
    pub budget: f64,
    pub cost_min: f64,
    pub cost_max: f64,
    /// COV inclusion / INF arc probability; unused for LOC.
    pub link: LinkRule,
    /// COV values / LOC benefits; unused for INF.
    pub value: ValueRule,
    /// INF activation probabilities are `U[0, activation_max]`.
    pub activation_max: f64,
}

impl GenParams {
    /// The published parameter set for a methodology and problem.
    pub fn defaults(methodology: Methodology, problem: Problem, seed: u64) -> Self {
        let base = GenParams {
            methodology,
            problem,
            seed,
            n: 100,
            m: 1000,
            budget: 1.0,
            cost_min: 0.01,
            cost_max: 1.0,
            link: LinkRule::Fixed(0.3),
            value: ValueRule::Uniform(0.0, 1.0),
            activation_max: 1.0,
        };
        match (methodology, problem) {
            (Methodology::Ours, Problem::Cov) => GenParams {
                n: 150,
                budget: 5.0,
                cost_min: 0.1,
                link: LinkRule::CostOver(10.0),
                ..base
            },
            (Methodology::Ours, Problem::Loc) => GenParams {
                n: 200,
                budget: 6.0,
                cost_min: 0.1,
                value: ValueRule::CostScaled(2.0),
                ..base
            },
            (Methodology::Ours, Problem::Inf) => GenParams {
                n: 150,
                budget: 5.0,
                cost_min: 0.1,
                link: LinkRule::CostOver(5.0),
                ..base
            },
            _ => base,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.methodology == Methodology::Real {
            return bad("real-data instances are loaded, not generated".into());
        }
        if self.n == 0 || self.m == 0 {
            return bad(format!("n = {} and m = {} must be positive", self.n, self.m));
        }
        if !(self.cost_min > 0.0 && self.cost_min <= self.cost_max && self.cost_max.is_finite()) {
            return bad(format!(
                "cost range [{}, {}] must satisfy 0 < min <= max",
                self.cost_min, self.cost_max
            ));
        }
        if !(self.budget >= 0.0 && self.budget.is_finite()) {
            return bad(format!("budget {} must be nonnegative", self.budget));
        }
        let prob_ok = |p: f64| (0.0..=1.0).contains(&p);
        if self.problem != Problem::Loc {
            let ok = match self.link {
                LinkRule::Fixed(p) => prob_ok(p),
                LinkRule::CostOver(d) => d > 0.0 && self.cost_max / d <= 1.0,
            };
            if !ok {
                return bad(format!(
                    "link rule {:?} does not give probabilities in [0, 1]",
                    self.link
                ));
            }
        }
        if self.problem != Problem::Inf {
            let ok = match self.value {
                ValueRule::Uniform(lo, hi) => lo >= 0.0 && lo <= hi && hi.is_finite(),
                // ground-element values of COV have no cost to scale with
                ValueRule::CostScaled(f) => self.problem == Problem::Loc && f >= 0.0 && f.is_finite(),
            };
            if !ok {
                return bad(format!("value rule {:?} must give nonnegative values", self.value));
            }
        }
        if self.problem == Problem::Inf && !prob_ok(self.activation_max) {
            return bad(format!("activation_max {} outside [0, 1]", self.activation_max));
        }
        Ok(())
    }
}

/// SplitMix64 finalizer applied to `master + index * golden_gamma`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}

pub fn generate(params: &GenParams) -> Result<BenchInstance> {
    params.validate()?;
    let (n, m) = (params.n, params.m);
    let mut costs = stream(params.seed, STREAM_COSTS);
    let weights: Vec<f64> = (0..n)
        .map(|_| uniform(&mut costs, params.cost_min, params.cost_max))
        .collect();
    let mut values = stream(params.seed, STREAM_VALUES);
    let mut structure = stream(params.seed, STREAM_STRUCTURE);
    let mut links = |w: f64| -> Vec<u32> {
        let p = params.link.prob(w);
        (0..m as u32).filter(|_| structure.gen::<f64>() < p).collect()
    };
    let value_range = |w: f64| match params.value {
        ValueRule::Uniform(lo, hi) => (lo, hi),
        ValueRule::CostScaled(f) => (0.0, f * w),
    };

    let instance = match params.problem {
        Problem::Cov => {
            // validate() only admits Uniform here
            let (lo, hi) = value_range(0.0);
            let v: Vec<f64> = (0..m).map(|_| uniform(&mut values, lo, hi)).collect();
            let subsets = weights.iter().map(|&w| links(w)).collect();
            AnyInstance::Cov(Instance::new(weights, params.budget, CovOracle::new(subsets, v)?)?)
        }
        Problem::Loc => {
            let mut benefit = Vec::with_capacity(n * m);
            for &w in &weights {
                let (lo, hi) = value_range(w);
                benefit.extend((0..m).map(|_| uniform(&mut values, lo, hi)));
            }
            AnyInstance::Loc(Instance::new(weights, params.budget, LocOracle::new(n, m, benefit)?)?)
        }
        Problem::Inf => {
            let probs: Vec<f64> = (0..n)
                .map(|_| uniform(&mut values, 0.0, params.activation_max))
                .collect();
            let arcs = weights.iter().map(|&w| links(w)).collect();
            AnyInstance::Inf(Instance::new(weights, params.budget, InfOracle::new(arcs, probs, m)?)?)
        }
    };
    Ok(BenchInstance {
        meta: InstanceMeta {
            methodology: Some(params.methodology),
            seed: Some(params.seed),
        },
        instance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::write_instance_string;

    #[test]
    fn published_defaults() {
        let p = GenParams::defaults(Methodology::Sakaue, Problem::Cov, 0);
        assert_eq!(
            (p.n, p.m, p.budget, p.cost_min, p.cost_max),
            (100, 1000, 1.0, 0.01, 1.0)
        );
        assert_eq!(p.link, LinkRule::Fixed(0.3));
        assert_eq!(p.value, ValueRule::Uniform(0.0, 1.0));

        let p = GenParams::defaults(Methodology::Sakaue, Problem::Inf, 0);
        assert_eq!((p.n, p.m, p.activation_max), (100, 1000, 1.0));
        assert_eq!(p.link, LinkRule::Fixed(0.3));

        let p = GenParams::defaults(Methodology::Ours, Problem::Cov, 0);
        assert_eq!((p.n, p.m, p.budget, p.cost_min, p.cost_max), (150, 1000, 5.0, 0.1, 1.0));
        assert_eq!(p.link, LinkRule::CostOver(10.0));

        let p = GenParams::defaults(Methodology::Ours, Problem::Loc, 0);
        assert_eq!((p.n, p.m, p.budget, p.cost_min, p.cost_max), (200, 1000, 6.0, 0.1, 1.0));
        assert_eq!(p.value, ValueRule::CostScaled(2.0));

        let p = GenParams::defaults(Methodology::Ours, Problem::Inf, 0);
        assert_eq!((p.n, p.m, p.budget, p.cost_min), (150, 1000, 5.0, 0.1));
        assert_eq!(p.link, LinkRule::CostOver(5.0));
        assert_eq!(p.activation_max, 1.0);
    }

    #[test]
    fn same_seed_same_bytes() {
        for problem in Problem::ALL {
            let mut p = GenParams::defaults(Methodology::Ours, problem, 42);
            p.n = 30;
            p.m = 50;
            let a = write_instance_string(&generate(&p).unwrap());
            let b = write_instance_string(&generate(&p).unwrap());
            assert_eq!(a, b);
            p.seed = 43;
            assert_ne!(a, write_instance_string(&generate(&p).unwrap()));
        }
    }

    #[test]
    fn rejects_invalid_params() {
        let mut p = GenParams::defaults(Methodology::Sakaue, Problem::Cov, 0);
        p.cost_min = 0.0;
        assert!(generate(&p).is_err());
        let mut p = GenParams::defaults(Methodology::Ours, Problem::Inf, 0);
        p.cost_max = 6.0;
        assert!(generate(&p).is_err());
        let mut p = GenParams::defaults(Methodology::Sakaue, Problem::Loc, 0);
        p.n = 0;
        assert!(generate(&p).is_err());
        let p = GenParams::defaults(Methodology::Real, Problem::Loc, 0);
        assert!(generate(&p).is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| derive_seed(7, i)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }
}
