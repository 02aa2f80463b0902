use crate::error::{Error, Result};
use crate::model::Oracle;

/// Bipartite influence `f(X) = Σ_j (1 - Π_{i ∈ X, (i,j) ∈ A} (1 - p_i))`.
#[derive(Debug, Clone, PartialEq)]
pub struct InfOracle {
    /// `arcs[i]`: sorted targets reached by source `i`.
    arcs: Vec<Vec<u32>>,
    probs: Vec<f64>,
    m: usize,
}

impl InfOracle {
    pub fn new(arcs: Vec<Vec<u32>>, probs: Vec<f64>, m: usize) -> Result<Self> {
        if arcs.len() != probs.len() {
            return Err(Error::InvalidInstance(format!(
                "{} adjacency lists but {} activation probabilities",
                arcs.len(),
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidInstance(format!(
                "activation probability {p} outside [0, 1]"
            )));
        }
        let mut arcs = arcs;
        for (i, a) in arcs.iter_mut().enumerate() {
            a.sort_unstable();
            a.dedup();
            if let Some(&j) = a.last() {
                if j as usize >= m {
                    return Err(Error::InvalidInstance(format!(
                        "source {i} has an arc to target {j} but only {m} targets exist"
                    )));
                }
            }
        }
        Ok(InfOracle { arcs, probs, m })
    }

    pub fn arcs(&self) -> &[Vec<u32>] {
        &self.arcs
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

impl Oracle for InfOracle {
    /// Per-target probability of staying inactive, `Π (1 - p_i)`.
    type State = Vec<f64>;

    fn len(&self) -> usize {
        self.arcs.len()
    }

    fn empty_state(&self) -> Vec<f64> {
        vec![1.0; self.m]
    }

    #[inline]
    fn gain(&self, survival: &Vec<f64>, c: usize) -> f64 {
        let p = self.probs[c];
        self.arcs[c].iter().map(|&j| survival[j as usize]).sum::<f64>() * p
    }

    fn insert(&self, survival: &mut Vec<f64>, c: usize) -> f64 {
        let g = self.gain(survival, c);
        let q = 1.0 - self.probs[c];
        for &j in &self.arcs[c] {
            survival[j as usize] *= q;
        }
        g
    }

    fn value_of(&self, set: &[usize]) -> f64 {
        let mut survival = vec![1.0; self.m];
        for &i in set {
            for &j in &self.arcs[i] {
                survival[j as usize] *= 1.0 - self.probs[i];
            }
        }
        survival.iter().map(|s| 1.0 - s).sum()
    }
}
