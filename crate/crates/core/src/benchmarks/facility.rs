use crate::error::{Error, Result};
use crate::model::Oracle;

/// Facility location `f(X) = Σ_j max_{i ∈ X} v_ij`, with the max over `∅` equal to 0.
#[derive(Debug, Clone, PartialEq)]
pub struct LocOracle {
    n: usize,
    m: usize,
    /// Row-major `n × m`: row `i` holds the benefits of location `i`.
    benefit: Vec<f64>,
}

impl LocOracle {
    pub fn new(n: usize, m: usize, benefit: Vec<f64>) -> Result<Self> {
        if benefit.len() != n * m {
            return Err(Error::InvalidInstance(format!(
                "benefit matrix has {} entries, expected {n} x {m}",
                benefit.len()
            )));
        }
        if let Some(v) = benefit.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidInstance(format!("benefit {v} is negative")));
        }
        Ok(LocOracle { n, m, benefit })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.benefit[i * self.m..(i + 1) * self.m]
    }
}

impl Oracle for LocOracle {
    /// Best benefit per customer so far.
    type State = Vec<f64>;

    fn len(&self) -> usize {
        self.n
    }

    fn empty_state(&self) -> Vec<f64> {
        vec![0.0; self.m]
    }

    #[inline]
    fn gain(&self, best: &Vec<f64>, c: usize) -> f64 {
        self.row(c).iter().zip(best).map(|(v, b)| (v - b).max(0.0)).sum()
    }

    fn insert(&self, best: &mut Vec<f64>, c: usize) -> f64 {
        let mut g = 0.0;
        for (v, b) in self.row(c).iter().zip(best.iter_mut()) {
            if *v > *b {
                g += v - *b;
                *b = *v;
            }
        }
        g
    }

    fn value_of(&self, set: &[usize]) -> f64 {
        (0..self.m)
            .map(|j| set.iter().map(|&i| self.benefit[i * self.m + j]).fold(0.0, f64::max))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hand() -> LocOracle {
        // rows: locations, columns: customers
        LocOracle::new(3, 3, vec![3.0, 0.0, 1.0, 1.0, 2.0, 0.0, 2.0, 1.0, 1.0]).unwrap()
    }

    #[test]
    fn singleton_is_row_sum() {
        let f = hand();
        assert_eq!(f.value_of(&[0]), 4.0);
        assert_eq!(f.value_of(&[]), 0.0);
    }

    #[test]
    fn three_by_three_by_hand() {
        let f = hand();
        // max per column over {0,1}: 3, 2, 1
        assert_eq!(f.value_of(&[0, 1]), 6.0);
        // over all: 3, 2, 1
        assert_eq!(f.value_of(&[0, 1, 2]), 6.0);
        // over {1,2}: 2, 2, 1
        assert_eq!(f.value_of(&[1, 2]), 5.0);
        let mut s = f.empty_state();
        f.insert(&mut s, 0);
        f.insert(&mut s, 1);
        // location 2 is dominated by {0,1}
        assert_eq!(f.gain(&s, 2), 0.0);
    }
}
