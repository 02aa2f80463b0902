use std::collections::BTreeSet;
use std::fmt::Write;

use super::RunRecord;
use crate::benchmarks::Problem;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverSummary {
    pub solver: String,
    pub runs: usize,
    pub solved: usize,
    /// Means over this solver's solved instances; `None` if it solved none.
    pub mean_time: Option<f64>,
    pub mean_nodes: Option<f64>,
    /// Means over the instances every solver of the group solved.
    pub co_mean_time: Option<f64>,
    pub co_mean_nodes: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupSummary {
    pub problem: Problem,
    pub methodology: String,
    pub instances: usize,
    pub co_solved: usize,
    pub solvers: Vec<SolverSummary>,
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Groups records by (problem, methodology); solvers keep the order in
/// which they first appear.
pub fn summarize(records: &[RunRecord]) -> Vec<GroupSummary> {
    let groups: BTreeSet<(Problem, &str)> = records.iter().map(|r| (r.problem, r.methodology.as_str())).collect();
    groups
        .into_iter()
        .map(|(problem, methodology)| {
            let rows: Vec<&RunRecord> = records
                .iter()
                .filter(|r| r.problem == problem && r.methodology == methodology)
                .collect();
            let mut solvers: Vec<&str> = Vec::new();
            for r in &rows {
                if !solvers.contains(&r.solver.as_str()) {
                    solvers.push(&r.solver);
                }
            }
            let instances: BTreeSet<&str> = rows.iter().map(|r| r.instance_id.as_str()).collect();
            let co_solved: BTreeSet<&str> = instances
                .iter()
                .copied()
                .filter(|id| {
                    solvers.iter().all(|s| {
                        rows.iter()
                            .any(|r| r.instance_id == *id && r.solver == *s && r.solved())
                    })
                })
                .collect();
            let solvers = solvers
                .into_iter()
                .map(|s| {
                    let mine: Vec<&&RunRecord> = rows.iter().filter(|r| r.solver == s).collect();
                    let solved: Vec<&&RunRecord> = mine.iter().copied().filter(|r| r.solved()).collect();
                    let co: Vec<&&RunRecord> = solved
                        .iter()
                        .copied()
                        .filter(|r| co_solved.contains(r.instance_id.as_str()))
                        .collect();
                    SolverSummary {
                        solver: s.to_string(),
                        runs: mine.len(),
                        solved: solved.len(),
                        mean_time: mean(solved.iter().map(|r| r.wall_time_s)),
                        mean_nodes: mean(solved.iter().map(|r| r.nodes as f64)),
                        co_mean_time: mean(co.iter().map(|r| r.wall_time_s)),
                        co_mean_nodes: mean(co.iter().map(|r| r.nodes as f64)),
                    }
                })
                .collect();
            GroupSummary {
                problem,
                methodology: methodology.to_string(),
                instances: instances.len(),
                co_solved: co_solved.len(),
                solvers,
            }
        })
        .collect()
}

fn cell(x: Option<f64>, co: Option<f64>, prec: usize) -> String {
    let f = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.prec$}"));
    format!("{} ({})", f(x), f(co))
}

/// Solved count, then mean time and mean nodes over solved instances, with
/// the co-solved means in parentheses.
pub fn format_summary(groups: &[GroupSummary]) -> String {
    let mut out = String::new();
    for g in groups {
        let label = if g.methodology.is_empty() { "-" } else { &g.methodology };
        let _ = writeln!(
            out,
            "{} / {}: {} instances, {} solved by all",
            g.problem, label, g.instances, g.co_solved
        );
        let _ = writeln!(
            out,
            "  {:<8} {:>8} {:>24} {:>28}",
            "solver", "solved", "time_s", "nodes"
        );
        for s in &g.solvers {
            let _ = writeln!(
                out,
                "  {:<8} {:>8} {:>24} {:>28}",
                s.solver,
                format!("{}/{}", s.solved, s.runs),
                cell(s.mean_time, s.co_mean_time, 3),
                cell(s.mean_nodes, s.co_mean_nodes, 1)
            );
        }
    }
    out
}
