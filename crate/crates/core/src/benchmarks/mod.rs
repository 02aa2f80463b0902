//! Benchmark objectives, instance generators, real-data loaders and the
//! on-disk instance format.

mod coverage;
mod datasets;
mod facility;
mod format;
mod generate;
mod influence;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use coverage::CovOracle;
pub use datasets::{load_forum_cov, load_movielens_inf, round2};
pub use facility::LocOracle;
pub use format::{read_instance, read_instance_str, write_instance, write_instance_string};
pub use generate::{derive_seed, generate, GenParams, LinkRule, ValueRule};
pub use influence::InfOracle;

use crate::error::Error;
use crate::model::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Cov,
    Loc,
    Inf,
}

impl Problem {
    pub const ALL: [Problem; 3] = [Problem::Cov, Problem::Loc, Problem::Inf];

    pub fn as_str(self) -> &'static str {
        match self {
            Problem::Cov => "cov",
            Problem::Loc => "loc",
            Problem::Inf => "inf",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "cov" => Ok(Problem::Cov),
            "loc" => Ok(Problem::Loc),
            "inf" => Ok(Problem::Inf),
            _ => Err(Error::InvalidParams(format!("unknown problem `{s}`"))),
        }
    }
}

/// How an instance came about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Methodology {
    /// Costs independent of the objective structure.
    Sakaue,
    /// Costs coupled to the objective structure.
    Ours,
    /// Built from a real dataset.
    Real,
}

impl Methodology {
    pub fn as_str(self) -> &'static str {
        match self {
            Methodology::Sakaue => "sakaue",
            Methodology::Ours => "ours",
            Methodology::Real => "real",
        }
    }
}

impl fmt::Display for Methodology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Methodology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "sakaue" => Ok(Methodology::Sakaue),
            "ours" => Ok(Methodology::Ours),
            "real" => Ok(Methodology::Real),
            _ => Err(Error::InvalidParams(format!("unknown methodology `{s}`"))),
        }
    }
}

/// A benchmark instance of any of the three problem families.
#[derive(Debug, Clone)]
pub enum AnyInstance {
    Cov(Instance<CovOracle>),
    Loc(Instance<LocOracle>),
    Inf(Instance<InfOracle>),
}

/// Runs a generic expression against whichever concrete instance is inside
/// an [`AnyInstance`].
#[macro_export]
macro_rules! with_instance {
    ($any:expr, |$inst:ident| $body:expr) => {
        match $any {
            $crate::benchmarks::AnyInstance::Cov($inst) => $body,
            $crate::benchmarks::AnyInstance::Loc($inst) => $body,
            $crate::benchmarks::AnyInstance::Inf($inst) => $body,
        }
    };
}

impl AnyInstance {
    pub fn problem(&self) -> Problem {
        match self {
            AnyInstance::Cov(_) => Problem::Cov,
            AnyInstance::Loc(_) => Problem::Loc,
            AnyInstance::Inf(_) => Problem::Inf,
        }
    }

    pub fn n(&self) -> usize {
        with_instance!(self, |i| i.n())
    }

    /// Size of the secondary dimension: ground elements, customers or targets.
    pub fn m(&self) -> usize {
        match self {
            AnyInstance::Cov(i) => i.oracle().m(),
            AnyInstance::Loc(i) => i.oracle().m(),
            AnyInstance::Inf(i) => i.oracle().m(),
        }
    }

    pub fn budget(&self) -> f64 {
        with_instance!(self, |i| i.budget())
    }

    pub fn weights(&self) -> &[f64] {
        with_instance!(self, |i| i.weights())
    }

    pub fn value_of(&self, set: &[usize]) -> f64 {
        with_instance!(self, |i| i.value_of(set))
    }
}

/// Header fields that travel with an instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceMeta {
    pub methodology: Option<Methodology>,
    pub seed: Option<u64>,
}

/// An instance plus its provenance.
#[derive(Debug, Clone)]
pub struct BenchInstance {
    pub meta: InstanceMeta,
    pub instance: AnyInstance,
}

impl BenchInstance {
    pub fn problem(&self) -> Problem {
        self.instance.problem()
    }
}
