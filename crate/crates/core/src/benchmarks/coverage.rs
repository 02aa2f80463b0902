use crate::error::{Error, Result};
use crate::model::Oracle;

/// Weighted coverage `f(X) = Σ_{e ∈ ∪_{i∈X} E_i} v_e`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovOracle {
    subsets: Vec<Vec<u32>>,
    values: Vec<f64>,
}

impl CovOracle {
    /// `subsets[i]` is `E_i`; duplicates are removed. `values` has one entry per ground element.
    pub fn new(subsets: Vec<Vec<u32>>, values: Vec<f64>) -> Result<Self> {
        let m = values.len();
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidInstance(format!("coverage value {v} is negative")));
        }
        let mut subsets = subsets;
        for (i, s) in subsets.iter_mut().enumerate() {
            s.sort_unstable();
            s.dedup();
            if let Some(&e) = s.last() {
                if e as usize >= m {
                    return Err(Error::InvalidInstance(format!(
                        "subset {i} references element {e} but only {m} elements exist"
                    )));
                }
            }
        }
        Ok(CovOracle { subsets, values })
    }

    pub fn subsets(&self) -> &[Vec<u32>] {
        &self.subsets
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn m(&self) -> usize {
        self.values.len()
    }
}

impl Oracle for CovOracle {
    /// Covered-element indicator.
    type State = Vec<bool>;

    fn len(&self) -> usize {
        self.subsets.len()
    }

    fn empty_state(&self) -> Vec<bool> {
        vec![false; self.values.len()]
    }

    #[inline]
    fn gain(&self, covered: &Vec<bool>, c: usize) -> f64 {
        self.subsets[c]
            .iter()
            .filter(|&&e| !covered[e as usize])
            .map(|&e| self.values[e as usize])
            .sum()
    }

    fn insert(&self, covered: &mut Vec<bool>, c: usize) -> f64 {
        let mut g = 0.0;
        for &e in &self.subsets[c] {
            let e = e as usize;
            if !covered[e] {
                covered[e] = true;
                g += self.values[e];
            }
        }
        g
    }

    fn value_of(&self, set: &[usize]) -> f64 {
        let mut covered = vec![false; self.values.len()];
        for &i in set {
            for &e in &self.subsets[i] {
                covered[e as usize] = true;
            }
        }
        covered
            .iter()
            .zip(&self.values)
            .filter(|(c, _)| **c)
            .map(|(_, v)| v)
            .sum()
    }
}
