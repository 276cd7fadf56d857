//! Quantum order, relative quantum order and quantum factor.
//!
//! The quantum factor `lambda = 2^r * (N / r) / 2^N` underflows `f64` long
//! before interesting problem sizes run out, so it is carried as `log2 lambda`
//! and only exponentiated on request.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgorithmClass {
    Classical,
    QuantumInspired,
    TrueQuantum,
}

impl fmt::Display for AlgorithmClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgorithmClass::Classical => "classical",
            AlgorithmClass::QuantumInspired => "quantum-inspired",
            AlgorithmClass::TrueQuantum => "true-quantum",
        })
    }
}

/// Input to [`classify`]. An algorithm without quantum elements has
/// `lambda = 0` by definition, which no `(r, N)` pair produces, so it is
/// passed as an explicit marker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuantumFactor {
    Classical,
    Log2(f64),
}

fn check_range(order: usize, size: usize) -> Result<()> {
    if order >= 1 && order <= size {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange { order, size })
    }
}

/// `w = r / N`.
pub fn relative_order(order: usize, size: usize) -> Result<f64> {
    check_range(order, size)?;
    Ok(order as f64 / size as f64)
}

/// `log2 lambda = r - N + log2 N - log2 r`, exact for every valid `(r, N)`.
pub fn log2_quantum_factor(order: usize, size: usize) -> Result<f64> {
    check_range(order, size)?;
    let (r, n) = (order as f64, size as f64);
    // integer part first so that e.g. r = 1 and r = 2 agree bit for bit
    Ok(((r - n) - r.log2()) + n.log2())
}

/// Linear-scale quantum factor `N 2^(r - N) / r`; flushes to 0 when it
/// underflows.
pub fn quantum_factor(order: usize, size: usize) -> Result<f64> {
    let log2 = log2_quantum_factor(order, size)?;
    let (r, n) = (order as f64, size as f64);
    // scaling by a power of two is exact while the result stays normal
    let direct = n * (r - n).exp2() / r;
    Ok(if direct >= f64::MIN_POSITIVE {
        direct
    } else {
        log2.exp2()
    })
}

pub fn classify(lambda: QuantumFactor) -> Result<AlgorithmClass> {
    match lambda {
        QuantumFactor::Classical => Ok(AlgorithmClass::Classical),
        QuantumFactor::Log2(l) if l.is_nan() || l > 0.0 => Err(Error::InvalidLambda(l)),
        QuantumFactor::Log2(l) if l == 0.0 => Ok(AlgorithmClass::TrueQuantum),
        QuantumFactor::Log2(_) => Ok(AlgorithmClass::QuantumInspired),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderProfile {
    pub problem_size: usize,
    pub order: usize,
    pub relative_order: f64,
    pub log2_quantum_factor: f64,
    pub quantum_factor: f64,
}

impl OrderProfile {
    pub fn new(order: usize, size: usize) -> Result<Self> {
        let log2 = log2_quantum_factor(order, size)?;
        Ok(Self {
            problem_size: size,
            order,
            relative_order: relative_order(order, size)?,
            log2_quantum_factor: log2,
            quantum_factor: quantum_factor(order, size)?,
        })
    }

    pub fn class(&self) -> AlgorithmClass {
        // the log2 value is never positive for a valid profile
        classify(QuantumFactor::Log2(self.log2_quantum_factor))
            .unwrap_or(AlgorithmClass::QuantumInspired)
    }
}

/// Profiles for every `N` in `sizes` and every order in `orders` with `r <= N`.
pub fn profile_grid(sizes: impl IntoIterator<Item = usize>, orders: &[usize]) -> Vec<OrderProfile> {
    sizes
        .into_iter()
        .flat_map(|n| {
            orders
                .iter()
                .filter_map(move |&r| OrderProfile::new(r, n).ok())
        })
        .collect()
}

pub fn write_profiles_csv<W: Write>(profiles: &[OrderProfile], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["N", "r", "w", "log2_lambda", "lambda", "class"])?;
    for p in profiles {
        w.write_record([
            p.problem_size.to_string(),
            p.order.to_string(),
            p.relative_order.to_string(),
            p.log2_quantum_factor.to_string(),
            p.quantum_factor.to_string(),
            p.class().to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}
