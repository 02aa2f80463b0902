//! Loaders that turn public datasets into benchmark instances.
//!
//! Raw ids are remapped to dense 0-based indices in ascending id order.
//! Derived costs, values and probabilities are rounded to two decimals,
//! half away from zero.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use super::{AnyInstance, BenchInstance, CovOracle, InfOracle, InstanceMeta, Methodology};
use crate::error::{Error, Result};
use crate::model::Instance;

pub const FORUM_BUDGET: f64 = 2.0;
pub const MOVIELENS_BUDGET: f64 = 7.5;

/// Rounds to two decimals, half away from zero.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// `round(num / den)` for nonnegative integers, half away from zero.
fn round_ratio(num: u64, den: u64) -> u64 {
    (2 * num + den) / (2 * den)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(format!("reading {}", path.display()), e))
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#') && !l.starts_with('%'))
}

fn field<T: std::str::FromStr>(path: &Path, line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(path, line, format!("invalid {what} `{tok}`")))
}

fn dense<K: Ord + Copy>(ids: &BTreeSet<K>) -> BTreeMap<K, usize> {
    ids.iter().enumerate().map(|(k, &id)| (id, k)).collect()
}

/// Forum network as a weighted coverage instance.
///
/// Rows are `user topic weight`, whitespace separated. Users are the
/// elements, topics the ground set. A topic is worth the sum of the weights
/// of all rows naming it; a user costs `100 * (#topics posted) / (#topics)`.
/// The budget is 2.
pub fn load_forum_cov(path: &Path) -> Result<BenchInstance> {
    let text = read(path)?;
    let mut rows = Vec::new();
    for (k, line) in data_lines(&text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::parse(
                path,
                k,
                format!("expected `user topic weight`, found {} fields", toks.len()),
            ));
        }
        let user: u64 = field(path, k, toks[0], "user id")?;
        let topic: u64 = field(path, k, toks[1], "topic id")?;
        let weight: f64 = field(path, k, toks[2], "weight")?;
        if !(weight.is_finite() && weight >= 0.0) {
            return Err(Error::parse(path, k, format!("weight {weight} must be nonnegative")));
        }
        rows.push((user, topic, weight));
    }
    if rows.is_empty() {
        return Err(Error::parse(path, 1, "no data rows"));
    }
    let users = dense(&rows.iter().map(|r| r.0).collect());
    let topics = dense(&rows.iter().map(|r| r.1).collect());
    let mut subsets = vec![BTreeSet::new(); users.len()];
    let mut topic_value = vec![0.0; topics.len()];
    for &(u, t, w) in &rows {
        let (u, t) = (users[&u], topics[&t]);
        subsets[u].insert(t as u32);
        topic_value[t] += w;
    }
    let total_topics = topics.len() as u64;
    let weights = subsets
        .iter()
        .map(|s| round_ratio(10_000 * s.len() as u64, total_topics) as f64 / 100.0)
        .collect();
    let values = topic_value.into_iter().map(round2).collect();
    let subsets = subsets.into_iter().map(|s| s.into_iter().collect()).collect();
    let oracle = CovOracle::new(subsets, values)?;
    Ok(BenchInstance {
        meta: InstanceMeta {
            methodology: Some(Methodology::Real),
            seed: None,
        },
        instance: AnyInstance::Cov(Instance::new(weights, FORUM_BUDGET, oracle)?),
    })
}

/// MovieLens ratings as a bipartite influence instance.
///
/// Rows are `user item rating timestamp` (tab separated in the original
/// files). Movies are sources, users targets, and every rating is an arc.
/// A movie activates with probability `avg rating / 10` and costs twice
/// that. The budget is 7.5.
pub fn load_movielens_inf(path: &Path) -> Result<BenchInstance> {
    let text = read(path)?;
    let mut rows = Vec::new();
    for (k, line) in data_lines(&text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(Error::parse(
                path,
                k,
                format!("expected `user item rating timestamp`, found {} fields", toks.len()),
            ));
        }
        let user: u64 = field(path, k, toks[0], "user id")?;
        let movie: u64 = field(path, k, toks[1], "item id")?;
        let rating: u64 = field(path, k, toks[2], "rating")?;
        let _: u64 = field(path, k, toks[3], "timestamp")?;
        rows.push((user, movie, rating));
    }
    if rows.is_empty() {
        return Err(Error::parse(path, 1, "no data rows"));
    }
    let users = dense(&rows.iter().map(|r| r.0).collect());
    let movies = dense(&rows.iter().map(|r| r.1).collect());
    let mut arcs = vec![BTreeSet::new(); movies.len()];
    let mut sums = vec![(0u64, 0u64); movies.len()];
    for &(u, mv, r) in &rows {
        let mv = movies[&mv];
        arcs[mv].insert(users[&u] as u32);
        sums[mv].0 += r;
        sums[mv].1 += 1;
    }
    // p in hundredths: round(100 * sum / (10 * count))
    let hundredths: Vec<u64> = sums.iter().map(|&(s, c)| round_ratio(10 * s, c)).collect();
    let probs: Vec<f64> = hundredths.iter().map(|&h| h as f64 / 100.0).collect();
    let weights: Vec<f64> = hundredths.iter().map(|&h| (2 * h) as f64 / 100.0).collect();
    if let Some(p) = probs.iter().find(|p| **p > 1.0) {
        return Err(Error::parse(path, 1, format!("ratings above 10 give probability {p}")));
    }
    let arcs = arcs.into_iter().map(|a| a.into_iter().collect()).collect();
    let oracle = InfOracle::new(arcs, probs, users.len())?;
    Ok(BenchInstance {
        meta: InstanceMeta {
            methodology: Some(Methodology::Real),
            seed: None,
        },
        instance: AnyInstance::Inf(Instance::new(weights, MOVIELENS_BUDGET, oracle)?),
    })
}
