//! Synthetic fitness landscapes: OneMax (separable) and the deceptive
//! pair trap (epistatic within adjacent gene pairs).

use serde::{Deserialize, Serialize};

use super::Problem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OneMax {
    size: usize,
}

pub fn onemax(size: usize) -> OneMax {
    OneMax { size }
}

impl Problem for OneMax {
    fn size(&self) -> usize {
        self.size
    }

    fn evaluate(&self, bits: &[bool]) -> f64 {
        bits.iter().filter(|&&b| b).count() as f64
    }

    fn optimum(&self) -> Option<f64> {
        Some(self.size as f64)
    }
}

/// Contribution of one adjacent pair. Defaults make `00` the optimum, `11`
/// a strong deceptive attractor and the mixed pairs worthless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapValues {
    pub zeros: f64,
    pub ones: f64,
    pub mixed: f64,
}

impl Default for TrapValues {
    fn default() -> Self {
        Self {
            zeros: 1.0,
            ones: 0.9,
            mixed: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairTrap {
    pairs: usize,
    values: TrapValues,
}

pub fn pair_trap(pairs: usize) -> PairTrap {
    PairTrap::with_values(pairs, TrapValues::default())
}

impl PairTrap {
    pub fn with_values(pairs: usize, values: TrapValues) -> Self {
        Self { pairs, values }
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }
}

impl Problem for PairTrap {
    fn size(&self) -> usize {
        2 * self.pairs
    }

    fn evaluate(&self, bits: &[bool]) -> f64 {
        bits.chunks_exact(2)
            .map(|p| match (p[0], p[1]) {
                (false, false) => self.values.zeros,
                (true, true) => self.values.ones,
                _ => self.values.mixed,
            })
            .sum()
    }

    fn optimum(&self) -> Option<f64> {
        let v = self.values;
        Some(self.pairs as f64 * v.zeros.max(v.ones).max(v.mixed))
    }
}

/// Flat landscape; every string scores the same.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant {
    pub size: usize,
    pub value: f64,
}

impl Problem for Constant {
    fn size(&self) -> usize {
        self.size
    }

    fn evaluate(&self, _bits: &[bool]) -> f64 {
        self.value
    }

    fn optimum(&self) -> Option<f64> {
        Some(self.value)
    }
}
