//! Operations behind the command line tool: instance generation, single and
//! batch solver runs, result summaries, solved-over-time curves and
//! verification against exhaustive search.
//!
//! Results are CSV files with one [`RunRecord`] per (instance, solver) run,
//! columns in field order. Instance batches are described by a manifest: a
//! text file listing one instance path per line, relative to the manifest.

mod summary;

use std::fmt;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use summary::{format_summary, summarize, GroupSummary, SolverSummary};

use crate::baselines::{best_first_solve, BestFirstConfig, Heuristic};
use crate::benchmarks::{
    derive_seed, generate, load_forum_cov, load_movielens_inf, read_instance, write_instance, AnyInstance,
    BenchInstance, GenParams, Methodology, Problem,
};
use crate::bnb::{solve, SolveReport, SolverConfig, Status, Variant};
use crate::brute::exhaustive_max;
use crate::error::{Error, Result};
use crate::with_instance;

pub const MANIFEST_NAME: &str = "manifest.txt";

/// Any of the eight solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverName {
    Bnb(Variant),
    BestFirst(Heuristic),
}

impl SolverName {
    pub const ALL: [SolverName; 8] = [
        SolverName::Bnb(Variant::Basic),
        SolverName::Bnb(Variant::BasicPlus),
        SolverName::Bnb(Variant::Le),
        SolverName::Bnb(Variant::Ep),
        SolverName::Bnb(Variant::Cr),
        SolverName::Bnb(Variant::LeCr),
        SolverName::BestFirst(Heuristic::Mod),
        SolverName::BestFirst(Heuristic::Dom),
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverName::Bnb(v) => v.name(),
            SolverName::BestFirst(h) => h.name(),
        }
    }
}

impl fmt::Display for SolverName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolverName::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownSolver(s.to_string()))
    }
}

/// Runs one solver on any benchmark instance.
pub fn run_solver(instance: &AnyInstance, solver: SolverName, time_limit: Duration) -> SolveReport {
    match solver {
        SolverName::Bnb(v) => {
            let cfg = SolverConfig::new(v).time_limit(time_limit);
            with_instance!(instance, |i| solve(i, &cfg))
        }
        SolverName::BestFirst(h) => {
            let cfg = BestFirstConfig::new(h).time_limit(time_limit);
            with_instance!(instance, |i| best_first_solve(i, &cfg))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance_id: String,
    pub problem: Problem,
    /// Empty when the instance file does not record it.
    pub methodology: String,
    pub solver: String,
    pub status: Status,
    pub best_value: f64,
    pub wall_time_s: f64,
    pub nodes: u64,
    pub evals: u64,
    pub seed: Option<u64>,
}

impl RunRecord {
    pub fn new(instance_id: &str, inst: &BenchInstance, solver: SolverName, report: &SolveReport) -> Self {
        RunRecord {
            instance_id: instance_id.to_string(),
            problem: inst.problem(),
            methodology: inst.meta.methodology.map(|m| m.to_string()).unwrap_or_default(),
            solver: solver.to_string(),
            status: report.status,
            best_value: report.best_value,
            wall_time_s: report.wall_time.as_secs_f64(),
            nodes: report.nodes,
            evals: report.evals,
            seed: inst.meta.seed,
        }
    }

    pub fn solved(&self) -> bool {
        self.status == Status::Optimal
    }
}

fn instance_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn write_records(path: &Path, records: &[RunRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_path(path)?;
    w.write_record(record_header())?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()
        .map_err(|e| Error::io(format!("writing {}", path.display()), e))?;
    Ok(())
}

fn record_header() -> [&'static str; 10] {
    [
        "instance_id",
        "problem",
        "methodology",
        "solver",
        "status",
        "best_value",
        "wall_time_s",
        "nodes",
        "evals",
        "seed",
    ]
}

pub fn read_records(path: &Path) -> Result<Vec<RunRecord>> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize().map(|x| x.map_err(Error::from)).collect()
}

/// Appends one record in a single write, adding the header to a new file.
pub fn append_record(path: &Path, record: &RunRecord) -> Result<()> {
    let ctx = || format!("appending to {}", path.display());
    let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    if fresh {
        w.write_record(record_header())?;
    }
    w.serialize(record)?;
    let bytes = w.into_inner().map_err(|e| Error::io(ctx(), e.into_error()))?;
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::io(ctx(), e))?;
    file.write_all(&bytes).map_err(|e| Error::io(ctx(), e))
}

/// Where a batch of instances comes from.
#[derive(Debug, Clone)]
pub enum GenSource {
    /// `count` seeded instances; instance `i` uses `derive_seed(master, i)`.
    Artificial {
        params: GenParams,
        count: usize,
        master_seed: u64,
    },
    ForumCov(PathBuf),
    MovieLensInf(PathBuf),
}

/// Writes instance files and a manifest into `out_dir`; returns the
/// manifest path.
pub fn cmd_gen(source: &GenSource, out_dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(format!("creating {}", out_dir.display()), e))?;
    let mut names = Vec::new();
    let mut emit = |name: String, inst: &BenchInstance| -> Result<()> {
        write_instance(inst, &out_dir.join(&name))?;
        names.push(name);
        Ok(())
    };
    match source {
        GenSource::Artificial {
            params,
            count,
            master_seed,
        } => {
            for i in 0..*count {
                let p = GenParams {
                    seed: derive_seed(*master_seed, i as u64),
                    ..params.clone()
                };
                let name = format!("{}-{}-{:04}.inst", p.problem, p.methodology, i);
                emit(name, &generate(&p)?)?;
            }
        }
        GenSource::ForumCov(path) => emit("cov-real-forum.inst".into(), &load_forum_cov(path)?)?,
        GenSource::MovieLensInf(path) => emit("inf-real-movielens.inst".into(), &load_movielens_inf(path)?)?,
    }
    let manifest = out_dir.join(MANIFEST_NAME);
    let mut text = String::new();
    for n in &names {
        text.push_str(n);
        text.push('\n');
    }
    fs::write(&manifest, text).map_err(|e| Error::io(format!("writing {}", manifest.display()), e))?;
    Ok(manifest)
}

/// Instance paths listed in a manifest, resolved against its directory.
pub fn read_manifest(path: &Path) -> Result<Vec<PathBuf>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| base.join(l))
        .collect())
}

/// Solves one instance file; appends the record to `csv` if given.
pub fn cmd_solve(
    instance_file: &Path,
    solver: SolverName,
    time_limit: Duration,
    csv: Option<&Path>,
) -> Result<RunRecord> {
    let inst = read_instance(instance_file)?;
    let report = run_solver(&inst.instance, solver, time_limit);
    let record = RunRecord::new(&instance_id(instance_file), &inst, solver, &report);
    if let Some(path) = csv {
        append_record(path, &record)?;
    }
    Ok(record)
}

/// Runs every solver on every manifest instance, `jobs` runs at a time.
/// Records come back in manifest order, solvers in the given order.
pub fn cmd_bench(
    manifest: &Path,
    solvers: &[SolverName],
    time_limit: Duration,
    jobs: usize,
    out_csv: Option<&Path>,
) -> Result<Vec<RunRecord>> {
    let paths = read_manifest(manifest)?;
    let instances = paths
        .iter()
        .map(|p| Ok((instance_id(p), read_instance(p)?)))
        .collect::<Result<Vec<_>>>()?;
    let grid: Vec<(usize, SolverName)> = (0..instances.len())
        .flat_map(|i| solvers.iter().map(move |&s| (i, s)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
    let records: Vec<RunRecord> = pool.install(|| {
        grid.par_iter()
            .map(|&(i, s)| {
                let (id, inst) = &instances[i];
                let report = run_solver(&inst.instance, s, time_limit);
                RunRecord::new(id, inst, s, &report)
            })
            .collect()
    });
    if let Some(path) = out_csv {
        write_records(path, &records)?;
    }
    Ok(records)
}

/// `(time, solved count)` points of one solver's curve.
pub fn solved_curve(records: &[&RunRecord]) -> Vec<(f64, usize)> {
    let mut times: Vec<f64> = records.iter().filter(|r| r.solved()).map(|r| r.wall_time_s).collect();
    times.sort_by(f64::total_cmp);
    times.into_iter().enumerate().map(|(k, t)| (t, k + 1)).collect()
}

/// Writes one curve file per (problem, methodology, solver) found in `csv`;
/// returns the written paths.
pub fn cmd_curves(csv: &Path, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let records = read_records(csv)?;
    fs::create_dir_all(out_dir).map_err(|e| Error::io(format!("creating {}", out_dir.display()), e))?;
    let mut keys: Vec<(Problem, &str, &str)> = records
        .iter()
        .map(|r| (r.problem, r.methodology.as_str(), r.solver.as_str()))
        .collect();
    keys.sort();
    keys.dedup();
    let mut written = Vec::new();
    for (problem, methodology, solver) in keys {
        let group: Vec<&RunRecord> = records
            .iter()
            .filter(|r| r.problem == problem && r.methodology == methodology && r.solver == solver)
            .collect();
        let mut text = String::from("# time_s solved\n");
        for (t, k) in solved_curve(&group) {
            text.push_str(&format!("{t} {k}\n"));
        }
        let stem = if methodology.is_empty() {
            format!("{problem}-{solver}")
        } else {
            format!("{problem}-{methodology}-{solver}")
        };
        let path = out_dir.join(format!("{}.dat", stem.replace('+', "plus")));
        fs::write(&path, text).map_err(|e| Error::io(format!("writing {}", path.display()), e))?;
        written.push(path);
    }
    Ok(written)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub instance_id: String,
    pub solver: String,
    pub expected: f64,
    pub found: f64,
    pub status: Status,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub checked: usize,
    /// Instances above the size limit.
    pub skipped: Vec<String>,
    pub mismatches: Vec<Mismatch>,
}

/// Compares every solver against exhaustive search on each manifest
/// instance with at most `limit_n` elements. Runs that do not finish count
/// as mismatches.
pub fn cmd_verify(manifest: &Path, limit_n: usize, time_limit: Duration) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for path in read_manifest(manifest)? {
        let id = instance_id(&path);
        let inst = read_instance(&path)?;
        if inst.instance.n() > limit_n {
            report.skipped.push(id);
            continue;
        }
        let expected = with_instance!(&inst.instance, |i| exhaustive_max(i, limit_n))?.0;
        for solver in SolverName::ALL {
            let r = run_solver(&inst.instance, solver, time_limit);
            if r.status != Status::Optimal || (r.best_value - expected).abs() > 1e-6 {
                report.mismatches.push(Mismatch {
                    instance_id: id.clone(),
                    solver: solver.to_string(),
                    expected,
                    found: r.best_value,
                    status: r.status,
                });
            }
        }
        report.checked += 1;
    }
    Ok(report)
}

/// Parses a methodology name, accepting only the two artificial ones.
pub fn artificial_methodology(s: &str) -> Result<Methodology> {
    match s.parse()? {
        Methodology::Real => Err(Error::InvalidParams("real-data instances need a dataset path".into())),
        m => Ok(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(solver: &str, t: f64, status: Status) -> RunRecord {
        RunRecord {
            instance_id: "x".into(),
            problem: Problem::Cov,
            methodology: "ours".into(),
            solver: solver.into(),
            status,
            best_value: 1.0,
            wall_time_s: t,
            nodes: 1,
            evals: 1,
            seed: Some(3),
        }
    }

    #[test]
    fn solver_names_round_trip() {
        for s in SolverName::ALL {
            assert_eq!(s.name().parse::<SolverName>().unwrap(), s);
        }
        assert!(matches!("dfs".parse::<SolverName>(), Err(Error::UnknownSolver(_))));
    }

    #[test]
    fn curve_sorts_and_skips_timeouts() {
        let rs = [
            record("basic", 3.0, Status::Optimal),
            record("basic", 1.0, Status::Optimal),
            record("basic", 9.0, Status::TimedOut),
            record("basic", 2.0, Status::Optimal),
        ];
        let refs: Vec<&RunRecord> = rs.iter().collect();
        assert_eq!(solved_curve(&refs), vec![(1.0, 1), (2.0, 2), (3.0, 3)]);
    }

    #[test]
    fn records_round_trip_through_csv() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("runs.csv");
        let a = record("basic+", 0.5, Status::Optimal);
        let mut b = record("udom", 60.0, Status::MemoryExceeded);
        b.seed = None;
        append_record(&path, &a).unwrap();
        append_record(&path, &b).unwrap();
        assert_eq!(read_records(&path).unwrap(), vec![a.clone(), b.clone()]);
        let text = fs::read_to_string(&path).unwrap();
        assert!(
            text.starts_with("instance_id,problem,methodology,solver,status,best_value,wall_time_s,nodes,evals,seed\n")
        );
        assert!(text.contains(",memory,"));

        write_records(&path, &[b.clone()]).unwrap();
        assert_eq!(read_records(&path).unwrap(), vec![b]);
    }

    #[test]
    fn empty_manifest_gives_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let src = GenSource::Artificial {
            params: GenParams::defaults(Methodology::Sakaue, Problem::Cov, 0),
            count: 0,
            master_seed: 1,
        };
        let manifest = cmd_gen(&src, dir.path()).unwrap();
        assert_eq!(fs::read_to_string(&manifest).unwrap(), "");
        let csv = dir.path().join("out.csv");
        let records = cmd_bench(&manifest, &SolverName::ALL, Duration::from_secs(1), 1, Some(&csv)).unwrap();
        assert!(records.is_empty());
        assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 1);
    }
}
