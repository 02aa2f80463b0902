//! Plain-text instance files.
//!
//! ```text
//! subknap-instance 1
//! problem <cov|loc|inf>
//! methodology <sakaue|ours|real>      optional
//! seed <u64>                          optional
//! n <count>
//! m <count>
//! budget <real>
//! weights <w_0> ... <w_{n-1}>
//! -- cov --
//! values <v_0> ... <v_{m-1}>
//! subsets
//! <k> <e_1> ... <e_k>                 one line per element i, 0-based ground elements
//! -- loc --
//! benefits
//! <v_i0> ... <v_i(m-1)>               one line per location i
//! -- inf --
//! probs <p_0> ... <p_{n-1}>
//! arcs
//! <k> <j_1> ... <j_k>                 one line per source i, 0-based targets
//! end
//! ```
//!
//! Reals are written with Rust's shortest round-trip formatting, so reading
//! a written file reproduces every value bit for bit, and writing the same
//! instance twice yields identical bytes. Blank lines and lines starting
//! with `#` are ignored by the reader.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{AnyInstance, BenchInstance, CovOracle, InfOracle, InstanceMeta, LocOracle, Methodology, Problem};
use crate::error::{Error, Result};
use crate::model::Instance;

const MAGIC: &str = "subknap-instance";
const VERSION: &str = "1";

fn join<T: std::fmt::Display>(out: &mut String, items: impl IntoIterator<Item = T>) {
    for x in items {
        let _ = write!(out, " {x}");
    }
}

pub fn write_instance_string(inst: &BenchInstance) -> String {
    let any = &inst.instance;
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC} {VERSION}");
    let _ = writeln!(out, "problem {}", any.problem());
    if let Some(m) = inst.meta.methodology {
        let _ = writeln!(out, "methodology {m}");
    }
    if let Some(s) = inst.meta.seed {
        let _ = writeln!(out, "seed {s}");
    }
    let _ = writeln!(out, "n {}", any.n());
    let _ = writeln!(out, "m {}", any.m());
    let _ = writeln!(out, "budget {}", any.budget());
    out.push_str("weights");
    join(&mut out, any.weights());
    out.push('\n');
    match any {
        AnyInstance::Cov(i) => {
            out.push_str("values");
            join(&mut out, i.oracle().values());
            out.push_str("\nsubsets\n");
            for s in i.oracle().subsets() {
                let _ = write!(out, "{}", s.len());
                join(&mut out, s);
                out.push('\n');
            }
        }
        AnyInstance::Loc(i) => {
            out.push_str("benefits\n");
            for r in 0..i.n() {
                let row = i.oracle().row(r);
                if let Some((first, rest)) = row.split_first() {
                    let _ = write!(out, "{first}");
                    join(&mut out, rest);
                }
                out.push('\n');
            }
        }
        AnyInstance::Inf(i) => {
            out.push_str("probs");
            join(&mut out, i.oracle().probs());
            out.push_str("\narcs\n");
            for a in i.oracle().arcs() {
                let _ = write!(out, "{}", a.len());
                join(&mut out, a);
                out.push('\n');
            }
        }
    }
    out.push_str("end\n");
    out
}

pub fn write_instance(inst: &BenchInstance, path: &Path) -> Result<()> {
    std::fs::write(path, write_instance_string(inst)).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

pub fn read_instance(path: &Path) -> Result<BenchInstance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
    Parser::new(path, &text).parse()
}

/// Parses instance text; `origin` is only used in error messages.
pub fn read_instance_str(origin: &str, text: &str) -> Result<BenchInstance> {
    Parser::new(Path::new(origin), text).parse()
}

struct Parser<'a> {
    path: PathBuf,
    lines: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last_line: usize,
}

impl<'a> Parser<'a> {
    fn new(path: &Path, text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(k, l)| (k + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Parser {
            path: path.to_path_buf(),
            lines: it.peekable(),
            last_line: 0,
        }
    }

    fn err(&self, line: usize, msg: impl Into<String>) -> Error {
        Error::parse(self.path.clone(), line, msg)
    }

    fn next_line(&mut self) -> Result<(usize, &'a str)> {
        match self.lines.next() {
            Some((k, l)) => {
                self.last_line = k;
                Ok((k, l))
            }
            None => Err(self.err(self.last_line + 1, "unexpected end of file")),
        }
    }

    /// Reads `key <tokens...>` and returns the tokens.
    fn keyed(&mut self, key: &str) -> Result<(usize, Vec<&'a str>)> {
        let (k, line) = self.next_line()?;
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some(t) if t == key => Ok((k, toks.collect())),
            Some(t) => Err(self.err(k, format!("expected `{key}`, found `{t}`"))),
            None => Err(self.err(k, format!("expected `{key}`"))),
        }
    }

    fn single<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let (k, toks) = self.keyed(key)?;
        if toks.len() != 1 {
            return Err(self.err(k, format!("`{key}` takes exactly one value")));
        }
        toks[0]
            .parse()
            .map_err(|_| self.err(k, format!("invalid value `{}` for `{key}`", toks[0])))
    }

    fn numbers<T: std::str::FromStr>(&self, k: usize, toks: &[&str], expected: usize, what: &str) -> Result<Vec<T>> {
        if toks.len() != expected {
            return Err(self.err(k, format!("expected {expected} {what}, found {}", toks.len())));
        }
        toks.iter()
            .map(|t| t.parse().map_err(|_| self.err(k, format!("invalid {what} `{t}`"))))
            .collect()
    }

    fn counted_list(&mut self, what: &str) -> Result<Vec<u32>> {
        let (k, line) = self.next_line()?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let count: usize = toks[0]
            .parse()
            .map_err(|_| self.err(k, format!("invalid {what} count `{}`", toks[0])))?;
        self.numbers(k, &toks[1..], count, what)
    }

    fn parse(mut self) -> Result<BenchInstance> {
        let (k, toks) = self.keyed(MAGIC)?;
        if toks != [VERSION] {
            return Err(self.err(k, format!("unsupported format version {toks:?}")));
        }
        let (k, toks) = self.keyed("problem")?;
        let problem: Problem = match toks.as_slice() {
            [p] => p.parse().map_err(|e: Error| self.err(k, e.to_string()))?,
            _ => return Err(self.err(k, "`problem` takes exactly one value")),
        };
        let mut meta = InstanceMeta {
            methodology: None,
            seed: None,
        };
        if matches!(self.lines.peek(), Some((_, l)) if l.starts_with("methodology")) {
            let (k, toks) = self.keyed("methodology")?;
            let m: Methodology = match toks.as_slice() {
                [m] => m.parse().map_err(|e: Error| self.err(k, e.to_string()))?,
                _ => return Err(self.err(k, "`methodology` takes exactly one value")),
            };
            meta.methodology = Some(m);
        }
        if matches!(self.lines.peek(), Some((_, l)) if l.starts_with("seed")) {
            meta.seed = Some(self.single("seed")?);
        }
        let n: usize = self.single("n")?;
        let m: usize = self.single("m")?;
        let budget: f64 = self.single("budget")?;
        let (k, toks) = self.keyed("weights")?;
        let weights: Vec<f64> = self.numbers(k, &toks, n, "weights")?;
        let k_payload = self.last_line;
        let invalid = |e: Error, s: &Self| s.err(k_payload, e.to_string());

        let instance = match problem {
            Problem::Cov => {
                let (k, toks) = self.keyed("values")?;
                let values: Vec<f64> = self.numbers(k, &toks, m, "values")?;
                self.keyed("subsets")?;
                let subsets = (0..n)
                    .map(|_| self.counted_list("ground elements"))
                    .collect::<Result<Vec<_>>>()?;
                let oracle = CovOracle::new(subsets, values).map_err(|e| invalid(e, &self))?;
                AnyInstance::Cov(Instance::new(weights, budget, oracle).map_err(|e| invalid(e, &self))?)
            }
            Problem::Loc => {
                self.keyed("benefits")?;
                let mut benefit = Vec::with_capacity(n * m);
                for _ in 0..n {
                    let (k, line) = self.next_line()?;
                    let toks: Vec<&str> = line.split_whitespace().collect();
                    benefit.extend(self.numbers::<f64>(k, &toks, m, "benefits")?);
                }
                let oracle = LocOracle::new(n, m, benefit).map_err(|e| invalid(e, &self))?;
                AnyInstance::Loc(Instance::new(weights, budget, oracle).map_err(|e| invalid(e, &self))?)
            }
            Problem::Inf => {
                let (k, toks) = self.keyed("probs")?;
                let probs: Vec<f64> = self.numbers(k, &toks, n, "probabilities")?;
                self.keyed("arcs")?;
                let arcs = (0..n)
                    .map(|_| self.counted_list("targets"))
                    .collect::<Result<Vec<_>>>()?;
                let oracle = InfOracle::new(arcs, probs, m).map_err(|e| invalid(e, &self))?;
                AnyInstance::Inf(Instance::new(weights, budget, oracle).map_err(|e| invalid(e, &self))?)
            }
        };
        let (k, toks) = self.keyed("end")?;
        if !toks.is_empty() {
            return Err(self.err(k, "trailing tokens after `end`"));
        }
        if let Some((k, _)) = self.lines.next() {
            return Err(self.err(k, "content after `end`"));
        }
        Ok(BenchInstance { meta, instance })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{generate, GenParams};
    use proptest::prelude::*;

    const TINY_COV: &str = "\
subknap-instance 1
problem cov
n 2
m 3
budget 0.8
weights 0.3 0.5
values 1 1 1
subsets
2 0 1
2 1 2
end
";

    #[test]
    fn reads_hand_written_file() {
        let inst = read_instance_str("tiny", TINY_COV).unwrap();
        assert_eq!(inst.problem(), Problem::Cov);
        assert_eq!(inst.instance.n(), 2);
        assert_eq!(inst.instance.value_of(&[0, 1]), 3.0);
        assert_eq!(inst.meta.methodology, None);
        assert_eq!(write_instance_string(&inst), TINY_COV);
    }

    #[test]
    fn reports_line_numbers() {
        let broken = TINY_COV.replace("2 1 2", "2 1 x");
        match read_instance_str("tiny", &broken) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 10),
            other => panic!("expected parse error, got {other:?}"),
        }
        let truncated = &TINY_COV[..TINY_COV.find("end").unwrap()];
        assert!(matches!(read_instance_str("tiny", truncated), Err(Error::Parse { .. })));
        let bad_ref = TINY_COV.replace("2 1 2", "2 1 7");
        assert!(matches!(read_instance_str("tiny", &bad_ref), Err(Error::Parse { .. })));
    }

    fn same(a: &AnyInstance, b: &AnyInstance) -> bool {
        let base = a.n() == b.n() && a.m() == b.m() && a.budget() == b.budget() && a.weights() == b.weights();
        base && match (a, b) {
            (AnyInstance::Cov(x), AnyInstance::Cov(y)) => x.oracle() == y.oracle(),
            (AnyInstance::Loc(x), AnyInstance::Loc(y)) => x.oracle() == y.oracle(),
            (AnyInstance::Inf(x), AnyInstance::Inf(y)) => x.oracle() == y.oracle(),
            _ => false,
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn round_trip_is_value_identical(seed in any::<u64>(), p in 0usize..3, ours in any::<bool>()) {
            let methodology = if ours { Methodology::Ours } else { Methodology::Sakaue };
            let mut params = GenParams::defaults(methodology, Problem::ALL[p], seed);
            params.n = 12;
            params.m = 20;
            let inst = generate(&params).unwrap();
            let text = write_instance_string(&inst);
            let back = read_instance_str("rt", &text).unwrap();
            prop_assert!(same(&inst.instance, &back.instance));
            prop_assert_eq!(&back.meta, &inst.meta);
            prop_assert_eq!(write_instance_string(&back), text);
        }
    }
}
