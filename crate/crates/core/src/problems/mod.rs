//! Fitness functions: weighted MAX-SAT over DIMACS formulas and synthetic
//! landscapes. All problems are maximized.

mod dimacs;
mod generate;
mod synthetic;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::rng::RandomSource;

pub use dimacs::{parse_dimacs, CnfFormula};
pub use generate::{clauses_for_ratio, generate_uniform_3sat};
pub use synthetic::{onemax, pair_trap, Constant, OneMax, PairTrap, TrapValues};

/// A pure fitness function over `size()` binary genes.
pub trait Problem: Send + Sync {
    fn size(&self) -> usize;

    /// Fitness of `bits`; callers guarantee `bits.len() == self.size()`.
    fn evaluate(&self, bits: &[bool]) -> f64;

    fn fitness(&self, bits: &BitString) -> Result<f64> {
        if bits.len() != self.size() {
            return Err(Error::Shape {
                expected: self.size(),
                actual: bits.len(),
            });
        }
        Ok(self.evaluate(bits.as_slice()))
    }

    /// Best attainable fitness, when known.
    fn optimum(&self) -> Option<f64> {
        None
    }
}

impl Problem for CnfFormula {
    fn size(&self) -> usize {
        self.variable_count()
    }

    fn evaluate(&self, bits: &[bool]) -> f64 {
        CnfFormula::evaluate(self, bits)
    }
}

impl<P: Problem + ?Sized> Problem for Arc<P> {
    fn size(&self) -> usize {
        (**self).size()
    }

    fn evaluate(&self, bits: &[bool]) -> f64 {
        (**self).evaluate(bits)
    }

    fn optimum(&self) -> Option<f64> {
        (**self).optimum()
    }
}

/// Textual problem reference: `onemax:N`, `trap:PAIRS`,
/// `3sat:N:CLAUSES:SEED`, `const:N`, or a path to a DIMACS file.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ProblemSpec {
    OneMax(usize),
    Trap(usize),
    Random3Sat {
        variables: usize,
        clauses: usize,
        seed: u64,
    },
    Constant(usize),
    File(PathBuf),
}

impl ProblemSpec {
    /// Short display name: the file name for paths, the spec text otherwise.
    pub fn name(&self) -> String {
        match self {
            ProblemSpec::File(path) => path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string()),
            other => other.to_string(),
        }
    }

    /// Builds the fitness function; relative paths resolve against `base`.
    pub fn load(&self, base: Option<&Path>) -> Result<Arc<dyn Problem>> {
        Ok(match *self {
            ProblemSpec::OneMax(n) => Arc::new(onemax(n)),
            ProblemSpec::Trap(p) => Arc::new(pair_trap(p)),
            ProblemSpec::Constant(n) => Arc::new(Constant {
                size: n,
                value: 1.0,
            }),
            ProblemSpec::Random3Sat {
                variables,
                clauses,
                seed,
            } => Arc::new(generate_uniform_3sat(
                variables,
                clauses,
                &mut RandomSource::new(seed),
            )?),
            ProblemSpec::File(ref path) => {
                let resolved = match base {
                    Some(base) if path.is_relative() => base.join(path),
                    _ => path.clone(),
                };
                Arc::new(CnfFormula::from_path(resolved)?)
            }
        })
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemSpec::OneMax(n) => write!(f, "onemax:{n}"),
            ProblemSpec::Trap(p) => write!(f, "trap:{p}"),
            ProblemSpec::Random3Sat {
                variables,
                clauses,
                seed,
            } => write!(f, "3sat:{variables}:{clauses}:{seed}"),
            ProblemSpec::Constant(n) => write!(f, "const:{n}"),
            ProblemSpec::File(path) => write!(f, "{}", path.display()),
        }
    }
}

impl FromStr for ProblemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("malformed problem spec {s:?}"));
        let positive = |t: &str| -> Result<usize> {
            match t.parse::<usize>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(bad()),
            }
        };
        let fields: Vec<&str> = s.split(':').collect();
        match fields.as_slice() {
            ["onemax", n] => Ok(ProblemSpec::OneMax(positive(n)?)),
            ["trap", p] => Ok(ProblemSpec::Trap(positive(p)?)),
            ["const", n] => Ok(ProblemSpec::Constant(positive(n)?)),
            ["3sat", n, m, seed] => Ok(ProblemSpec::Random3Sat {
                variables: positive(n)?,
                clauses: positive(m)?,
                seed: seed.parse().map_err(|_| bad())?,
            }),
            [kind, ..] if matches!(*kind, "onemax" | "trap" | "const" | "3sat") => Err(bad()),
            _ if s.is_empty() => Err(bad()),
            _ => Ok(ProblemSpec::File(PathBuf::from(s))),
        }
    }
}

impl TryFrom<String> for ProblemSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ProblemSpec> for String {
    fn from(spec: ProblemSpec) -> Self {
        spec.to_string()
    }
}
