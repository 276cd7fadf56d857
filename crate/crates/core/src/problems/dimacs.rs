//! DIMACS CNF / WCNF reading and writing, and weighted MAX-SAT fitness.
//!
//! DIMACS variable `v` maps to bit index `v - 1`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CnfFormula {
    variable_count: usize,
    clauses: Vec<Vec<i32>>,
    weights: Option<Vec<f64>>,
}

impl CnfFormula {
    pub fn new(
        variable_count: usize,
        clauses: Vec<Vec<i32>>,
        weights: Option<Vec<f64>>,
    ) -> Result<Self> {
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::Config(format!("clause {i} is empty")));
            }
            if let Some(&lit) = clause
                .iter()
                .find(|l| **l == 0 || l.unsigned_abs() as usize > variable_count)
            {
                return Err(Error::Config(format!(
                    "clause {i}: literal {lit} outside 1..={variable_count}"
                )));
            }
        }
        if let Some(w) = &weights {
            if w.len() != clauses.len() {
                return Err(Error::Config(format!(
                    "{} weights for {} clauses",
                    w.len(),
                    clauses.len()
                )));
            }
            if let Some(bad) = w.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
                return Err(Error::Config(format!(
                    "clause weight {bad} is not positive"
                )));
            }
        }
        Ok(Self {
            variable_count,
            clauses,
            weights,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn weight(&self, clause: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[clause])
    }

    /// Total weight of satisfied clauses.
    pub fn maxsat_fitness(&self, bits: &BitString) -> Result<f64> {
        if bits.len() != self.variable_count {
            return Err(Error::Shape {
                expected: self.variable_count,
                actual: bits.len(),
            });
        }
        Ok(self.evaluate(bits.as_slice()))
    }

    pub(crate) fn evaluate(&self, bits: &[bool]) -> f64 {
        let satisfied = |clause: &Vec<i32>| {
            clause
                .iter()
                .any(|&lit| bits[lit.unsigned_abs() as usize - 1] == (lit > 0))
        };
        match &self.weights {
            None => self.clauses.iter().filter(|c| satisfied(c)).count() as f64,
            Some(w) => self
                .clauses
                .iter()
                .zip(w)
                .filter(|(c, _)| satisfied(c))
                .map(|(_, w)| w)
                .sum(),
        }
    }

    pub fn total_weight(&self) -> f64 {
        match &self.weights {
            None => self.clauses.len() as f64,
            Some(w) => w.iter().sum(),
        }
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        parse_dimacs(&text)
    }

    /// Serializes to `p cnf` (or `p wcnf` when weighted), one clause per line.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let kind = if self.weights.is_some() {
            "wcnf"
        } else {
            "cnf"
        };
        let _ = writeln!(
            out,
            "p {kind} {} {}",
            self.variable_count,
            self.clauses.len()
        );
        for (i, clause) in self.clauses.iter().enumerate() {
            if let Some(w) = &self.weights {
                let _ = write!(out, "{} ", w[i]);
            }
            for lit in clause {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

struct Header {
    weighted: bool,
    variables: usize,
    clauses: usize,
    line: usize,
}

fn parse_header(line_no: usize, line: &str) -> Result<Header> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let weighted = match fields.get(1) {
        Some(&"cnf") => false,
        Some(&"wcnf") => true,
        _ => return Err(Error::parse(line_no, format!("malformed header {line:?}"))),
    };
    let count_fields = if weighted { 4..=5 } else { 4..=4 };
    if !count_fields.contains(&fields.len()) {
        return Err(Error::parse(line_no, format!("malformed header {line:?}")));
    }
    let number = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(line_no, format!("bad count {s:?} in header")))
    };
    Ok(Header {
        weighted,
        variables: number(fields[2])?,
        clauses: number(fields[3])?,
        line: line_no,
    })
}

/// Parses DIMACS CNF (`p cnf V C`) or weighted CNF (`p wcnf V C [top]`).
///
/// Comment lines start with `c`. Clauses are `0`-terminated and may span
/// lines. A line starting with `%` ends the clause section, as in the SATLIB
/// uniform random files.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<Header> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut awaiting_weight = true;
    let mut last_line = 0;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        last_line = line_no;
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate header"));
            }
            header = Some(parse_header(line_no, trimmed)?);
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        let Some(h) = &header else {
            return Err(Error::parse(line_no, "clause data before \"p cnf\" header"));
        };
        for token in trimmed.split_whitespace() {
            if h.weighted && awaiting_weight {
                let w: f64 = token
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad clause weight {token:?}")))?;
                if !(w.is_finite() && w > 0.0) {
                    return Err(Error::parse(
                        line_no,
                        format!("clause weight {w} is not positive"),
                    ));
                }
                weights.push(w);
                awaiting_weight = false;
                continue;
            }
            let lit: i32 = token
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad literal {token:?}")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(Error::parse(line_no, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
                awaiting_weight = true;
            } else if lit.unsigned_abs() as usize > h.variables {
                return Err(Error::parse(
                    line_no,
                    format!("literal {lit} exceeds {} declared variables", h.variables),
                ));
            } else {
                current.push(lit);
            }
        }
    }

    let Some(h) = header else {
        return Err(Error::parse(last_line.max(1), "missing \"p cnf\" header"));
    };
    if !current.is_empty() || (h.weighted && !awaiting_weight) {
        return Err(Error::parse(
            last_line,
            "final clause is not terminated by 0",
        ));
    }
    if clauses.len() != h.clauses {
        return Err(Error::parse(
            h.line,
            format!(
                "header declares {} clauses, found {}",
                h.clauses,
                clauses.len()
            ),
        ));
    }
    let weights = h.weighted.then_some(weights);
    CnfFormula::new(h.variables, clauses, weights)
}
