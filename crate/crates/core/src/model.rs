//! Instances, value oracles and incremental evaluation state.
//!
//! An [`Instance`] bundles a ground set `0..n`, positive element weights, a
//! budget and a value oracle for a normalized, monotone, submodular set
//! function `f`. Solvers never evaluate `f` from scratch; they work with an
//! [`EvalState`] for a fixed set `S`, which answers marginal-gain queries
//! `f(c | S) = f(S ∪ {c}) - f(S)` in time proportional to the oracle's
//! per-element footprint.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Absolute tolerance used by every bound comparison in the solvers.
pub const CMP_EPS: f64 = 1e-9;

/// Absolute slack allowed on the knapsack constraint, so that decimal data
/// such as `0.3 + 0.5 <= 0.8` is not rejected because of binary rounding.
pub const WEIGHT_EPS: f64 = 1e-12;

/// Knapsack feasibility test shared by all solvers and the exhaustive oracle.
#[inline]
pub fn fits(weight: f64, budget: f64) -> bool {
    weight <= budget + WEIGHT_EPS
}

/// A set of elements stored as a strictly ascending index vector.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(Vec<usize>);

impl ElementSet {
    pub fn empty() -> Self {
        ElementSet(Vec::new())
    }

    /// Builds a set from arbitrary indices, sorting and checking them against `n`.
    pub fn new(elements: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let mut v: Vec<usize> = elements.into_iter().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInstance(format!("duplicate element {}", w[0])));
        }
        if let Some(&last) = v.last() {
            if last >= n {
                return Err(Error::IndexOutOfRange { index: last, n });
            }
        }
        Ok(ElementSet(v))
    }

    pub(crate) fn from_sorted_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        ElementSet(v)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: usize) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    /// Inserts `c`, returning `false` if it was already present.
    pub fn insert(&mut self, c: usize) -> bool {
        match self.0.binary_search(&c) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, c);
                true
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// A value oracle with incremental state.
///
/// Implementations must describe a normalized (`f(∅) = 0`), monotone and
/// submodular function over `0..len()`. `gain` must not mutate the state and
/// `insert` must return exactly the gain it realizes. `value_of` evaluates
/// the defining formula directly; it is the reference the incremental path
/// is checked against.
#[allow(clippy::len_without_is_empty)]
pub trait Oracle: Send + Sync {
    type State: Clone + Send;

    fn len(&self) -> usize;

    fn empty_state(&self) -> Self::State;

    fn gain(&self, state: &Self::State, c: usize) -> f64;

    fn insert(&self, state: &mut Self::State, c: usize) -> f64;

    fn value_of(&self, set: &[usize]) -> f64;
}

/// `(I, f, w, B)`.
#[derive(Debug, Clone)]
pub struct Instance<O> {
    weights: Vec<f64>,
    budget: f64,
    oracle: O,
}

impl<O: Oracle> Instance<O> {
    pub fn new(weights: Vec<f64>, budget: f64, oracle: O) -> Result<Self> {
        if oracle.len() != weights.len() {
            return Err(Error::InvalidInstance(format!(
                "oracle ground set has {} elements but {} weights were given",
                oracle.len(),
                weights.len()
            )));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidInstance(format!(
                "weight of element {i} is {w}, weights must be positive"
            )));
        }
        if !(budget.is_finite() && budget >= 0.0) {
            return Err(Error::InvalidInstance(format!(
                "budget {budget} must be a nonnegative real"
            )));
        }
        let empty = oracle.value_of(&[]);
        if empty != 0.0 {
            return Err(Error::InvalidInstance(format!(
                "oracle is not normalized: f(∅) = {empty}"
            )));
        }
        Ok(Instance {
            weights,
            budget,
            oracle,
        })
    }
}

impl<O> Instance<O> {
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, c: usize) -> f64 {
        self.weights[c]
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    pub fn oracle(&self) -> &O {
        &self.oracle
    }

    /// `w(X)`.
    pub fn weight_of(&self, set: &[usize]) -> Result<f64> {
        let n = self.n();
        set.iter().try_fold(0.0, |acc, &i| {
            if i < n {
                Ok(acc + self.weights[i])
            } else {
                Err(Error::IndexOutOfRange { index: i, n })
            }
        })
    }
}

impl<O: Oracle> Instance<O> {
    /// From-scratch `f(X)`.
    pub fn value_of(&self, set: &[usize]) -> f64 {
        self.oracle.value_of(set)
    }

    pub fn empty_state(&self) -> EvalState<O::State> {
        EvalState {
            set: ElementSet::empty(),
            value: 0.0,
            weight: 0.0,
            inner: self.oracle.empty_state(),
        }
    }

    /// Builds the state for `set` by successive insertion.
    pub fn state_for(&self, set: &[usize]) -> Result<EvalState<O::State>> {
        let mut state = self.empty_state();
        for &c in set {
            if c >= self.n() {
                return Err(Error::IndexOutOfRange { index: c, n: self.n() });
            }
            if state.set.contains(c) {
                return Err(Error::InvalidInstance(format!("duplicate element {c}")));
            }
            self.extend_in_place(&mut state, c);
        }
        Ok(state)
    }

    /// `f(c | S)`. Panics in debug builds if `c ∈ S`.
    #[inline]
    pub fn marginal_gain(&self, state: &EvalState<O::State>, c: usize) -> f64 {
        debug_assert!(!state.set.contains(c), "marginal gain of {c} which is already in S");
        self.oracle.gain(&state.inner, c)
    }

    /// Returns the state for `S ∪ {c}`, leaving `state` untouched.
    pub fn extend(&self, state: &EvalState<O::State>, c: usize) -> EvalState<O::State> {
        let mut next = state.clone();
        self.extend_in_place(&mut next, c);
        next
    }

    pub(crate) fn extend_in_place(&self, state: &mut EvalState<O::State>, c: usize) {
        debug_assert!(!state.set.contains(c));
        let g = self.oracle.insert(&mut state.inner, c);
        state.value += g;
        state.weight += self.weights[c];
        state.set.insert(c);
    }

    /// Spot-checks normalization, monotonicity and submodularity on `samples`
    /// random chains `X ⊆ Y`, `i ∉ Y`, using from-scratch evaluations.
    pub fn spot_check<R: Rng>(&self, rng: &mut R, samples: usize, tol: f64) -> Result<(), String> {
        let n = self.n();
        let empty = self.value_of(&[]);
        if empty != 0.0 {
            return Err(format!("f(∅) = {empty}"));
        }
        if n == 0 {
            return Ok(());
        }
        for _ in 0..samples {
            let mut x = Vec::new();
            let mut y = Vec::new();
            let mut outside = Vec::new();
            for i in 0..n {
                let r: f64 = rng.gen();
                if r < 0.2 {
                    x.push(i);
                    y.push(i);
                } else if r < 0.45 {
                    y.push(i);
                } else {
                    outside.push(i);
                }
            }
            let fx = self.value_of(&x);
            let fy = self.value_of(&y);
            if fx > fy + tol {
                return Err(format!("monotonicity: f({x:?}) = {fx} > f({y:?}) = {fy}"));
            }
            if let Some(&i) = outside.get(rng.gen_range(0..outside.len().max(1))) {
                let with = |s: &[usize]| {
                    let mut v = s.to_vec();
                    v.push(i);
                    v.sort_unstable();
                    self.value_of(&v)
                };
                let gx = with(&x) - fx;
                let gy = with(&y) - fy;
                if gx < gy - tol {
                    return Err(format!("submodularity: f({i}|{x:?}) = {gx} < f({i}|{y:?}) = {gy}"));
                }
            }
        }
        Ok(())
    }
}

/// Incremental snapshot for a fixed set `S`.
#[derive(Debug, Clone)]
pub struct EvalState<S> {
    set: ElementSet,
    value: f64,
    weight: f64,
    inner: S,
}

impl<S> EvalState<S> {
    pub fn set(&self) -> &ElementSet {
        &self.set
    }

    /// `f(S)`.
    pub fn value(&self) -> f64 {
        self.value
    }

    /// `w(S)`.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }
}

/// `(element, gain, weight, gain / weight)`. The gain is either an exact
/// marginal gain or an upper bound on it, depending on who built the entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainEntry {
    pub element: usize,
    pub gain: f64,
    pub weight: f64,
    pub ratio: f64,
}

impl GainEntry {
    pub fn new(element: usize, gain: f64, weight: f64) -> Self {
        debug_assert!(weight > 0.0);
        GainEntry {
            element,
            gain,
            weight,
            ratio: gain / weight,
        }
    }

    /// Greedy order: non-increasing ratio, ties by ascending element index.
    #[inline]
    pub fn greedy_cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .ratio
            .total_cmp(&self.ratio)
            .then(self.element.cmp(&other.element))
    }
}

/// Sorts entries into greedy order.
pub fn sort_greedy(entries: &mut [GainEntry]) {
    entries.sort_unstable_by(GainEntry::greedy_cmp);
}

pub fn is_greedy_sorted(entries: &[GainEntry]) -> bool {
    entries
        .windows(2)
        .all(|w| w[0].greedy_cmp(&w[1]) != std::cmp::Ordering::Greater)
}

/// `f(X) = Σ_{i ∈ X} v_i`.
#[derive(Debug, Clone)]
pub struct ModularOracle {
    values: Vec<f64>,
}

impl ModularOracle {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidInstance("modular values must be nonnegative".into()));
        }
        Ok(ModularOracle { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl Oracle for ModularOracle {
    type State = ();

    fn len(&self) -> usize {
        self.values.len()
    }

    fn empty_state(&self) {}

    fn gain(&self, _: &(), c: usize) -> f64 {
        self.values[c]
    }

    fn insert(&self, _: &mut (), c: usize) -> f64 {
        self.values[c]
    }

    fn value_of(&self, set: &[usize]) -> f64 {
        set.iter().map(|&i| self.values[i]).sum()
    }
}

/// Explicit value table indexed by subset bitmask (bit `i` set iff `i ∈ X`).
/// Intended for hand-built test functions on at most 20 elements.
#[derive(Debug, Clone)]
pub struct TableOracle {
    n: usize,
    table: Vec<f64>,
}

impl TableOracle {
    pub fn new(n: usize, table: Vec<f64>) -> Result<Self> {
        if n > 20 {
            return Err(Error::TooLarge { n, limit: 20 });
        }
        if table.len() != 1 << n {
            return Err(Error::InvalidInstance(format!(
                "table for {n} elements needs {} entries, got {}",
                1usize << n,
                table.len()
            )));
        }
        Ok(TableOracle { n, table })
    }

    /// Tabulates an arbitrary set function.
    pub fn from_fn(n: usize, f: impl Fn(&[usize]) -> f64) -> Result<Self> {
        if n > 20 {
            return Err(Error::TooLarge { n, limit: 20 });
        }
        let table = (0..1usize << n)
            .map(|mask| {
                let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                f(&set)
            })
            .collect();
        TableOracle::new(n, table)
    }

    fn mask(set: &[usize]) -> usize {
        set.iter().fold(0, |m, &i| m | 1 << i)
    }
}

impl Oracle for TableOracle {
    type State = usize;

    fn len(&self) -> usize {
        self.n
    }

    fn empty_state(&self) -> usize {
        0
    }

    fn gain(&self, mask: &usize, c: usize) -> f64 {
        self.table[*mask | 1 << c] - self.table[*mask]
    }

    fn insert(&self, mask: &mut usize, c: usize) -> f64 {
        let g = self.gain(mask, c);
        *mask |= 1 << c;
        g
    }

    fn value_of(&self, set: &[usize]) -> f64 {
        self.table[Self::mask(set)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::CovOracle;

    fn cov_example() -> Instance<CovOracle> {
        // E_0 = {0,1}, E_1 = {1,2}, unit values
        let oracle = CovOracle::new(vec![vec![0, 1], vec![1, 2]], vec![1.0, 1.0, 1.0]).unwrap();
        Instance::new(vec![0.3, 0.5], 1.0, oracle).unwrap()
    }

    #[test]
    fn weight_of_sums_weights() {
        let inst = cov_example();
        assert_eq!(inst.weight_of(&[]).unwrap(), 0.0);
        assert_eq!(inst.weight_of(&[0, 1]).unwrap(), 0.8);
        assert_eq!(inst.weight_of(&[1]).unwrap(), 0.5);
        assert!(matches!(
            inst.weight_of(&[2]),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        ));
    }

    #[test]
    fn marginal_gain_coverage() {
        let inst = cov_example();
        let s = inst.state_for(&[0]).unwrap();
        assert_eq!(inst.marginal_gain(&s, 1), 1.0);
        let empty = inst.empty_state();
        assert_eq!(inst.marginal_gain(&empty, 1), inst.value_of(&[1]));
    }

    #[test]
    fn covered_contribution_has_zero_gain() {
        let oracle = CovOracle::new(vec![vec![0, 1], vec![1]], vec![1.0, 2.0]).unwrap();
        let inst = Instance::new(vec![1.0, 1.0], 2.0, oracle).unwrap();
        let s = inst.state_for(&[0]).unwrap();
        assert_eq!(inst.marginal_gain(&s, 1), 0.0);
    }

    #[test]
    fn extend_is_copy_on_branch() {
        let inst = cov_example();
        let empty = inst.empty_state();
        let one = inst.extend(&empty, 1);
        assert_eq!(empty.value(), 0.0);
        assert!(empty.set().is_empty());
        assert_eq!(one.value(), inst.value_of(&[1]));
        assert_eq!(one.weight(), 0.5);
        let both = inst.extend(&one, 0);
        assert_eq!(both.value(), inst.value_of(&[0, 1]));
        assert_eq!(both.set().as_slice(), &[0, 1]);
        assert!((both.weight() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn instance_validation() {
        let m = || ModularOracle::new(vec![1.0, 2.0]).unwrap();
        assert!(Instance::new(vec![1.0, 0.0], 1.0, m()).is_err());
        assert!(Instance::new(vec![1.0, -1.0], 1.0, m()).is_err());
        assert!(Instance::new(vec![1.0, 1.0], -0.1, m()).is_err());
        assert!(Instance::new(vec![1.0], 1.0, m()).is_err());
        let not_normalized = TableOracle::new(1, vec![1.0, 2.0]).unwrap();
        assert!(Instance::new(vec![1.0], 1.0, not_normalized).is_err());
        assert!(Instance::new(vec![1.0, 1.0], 0.0, m()).is_ok());
    }

    #[test]
    fn element_set_is_canonical() {
        let s = ElementSet::new([3, 1, 2], 4).unwrap();
        assert_eq!(s.as_slice(), &[1, 2, 3]);
        assert!(ElementSet::new([1, 1], 4).is_err());
        assert!(ElementSet::new([4], 4).is_err());
        assert_eq!(s.to_string(), "{1,2,3}");
    }

    #[test]
    fn greedy_order_breaks_ties_by_index() {
        let mut e = vec![
            GainEntry::new(2, 2.0, 2.0),
            GainEntry::new(0, 1.0, 1.0),
            GainEntry::new(1, 2.0, 1.0),
        ];
        sort_greedy(&mut e);
        let order: Vec<usize> = e.iter().map(|x| x.element).collect();
        assert_eq!(order, vec![1, 0, 2]);
        assert!(is_greedy_sorted(&e));
    }

    #[test]
    fn table_oracle_matches_function() {
        let t = TableOracle::from_fn(3, |s| (s.len() as f64).sqrt()).unwrap();
        let inst = Instance::new(vec![1.0; 3], 2.0, t).unwrap();
        let s = inst.state_for(&[2, 0]).unwrap();
        assert!((s.value() - 2f64.sqrt()).abs() < 1e-12);
        let mut rng = rand::thread_rng();
        assert!(inst.spot_check(&mut rng, 200, 1e-9).is_ok());
    }

    #[test]
    fn spot_check_catches_supermodular() {
        let t = TableOracle::from_fn(4, |s| (s.len() * s.len()) as f64).unwrap();
        let inst = Instance::new(vec![1.0; 4], 2.0, t).unwrap();
        let mut rng = rand::thread_rng();
        assert!(inst.spot_check(&mut rng, 500, 1e-9).is_err());
    }
}
