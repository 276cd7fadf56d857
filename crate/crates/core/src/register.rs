//! Quantum registers, quantum chromosomes and their observation.
//!
//! A register of order `r` holds `2^r` real amplitudes; squaring them gives a
//! distribution over the `r`-bit values of one group of consecutive genes.
//! Group values are big-endian, so for `r = 2` index 2 is the pair `10`.

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Largest supported register order; keeps `2^order` well inside `usize`.
pub const MAX_ORDER: usize = 30;

/// Tolerance on `sum(a^2) == 1` accepted from callers.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Drift above which internally produced registers are rescaled.
pub const RENORMALIZE_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumRegister {
    order: usize,
    amplitudes: Vec<f64>,
}

fn check_order(order: usize) -> Result<()> {
    if (1..=MAX_ORDER).contains(&order) {
        Ok(())
    } else {
        Err(Error::InvalidOrder(order))
    }
}

impl QuantumRegister {
    /// Equal superposition: every group value has probability `2^-order`.
    pub fn uniform(order: usize) -> Result<Self> {
        check_order(order)?;
        let dim = 1usize << order;
        let amp = (-(order as f64) / 2.0).exp2();
        Ok(Self {
            order,
            amplitudes: vec![amp; dim],
        })
    }

    /// Basis state that always observes `index`.
    pub fn basis(order: usize, index: usize) -> Result<Self> {
        check_order(order)?;
        let dim = 1usize << order;
        if index >= dim {
            return Err(Error::InvalidIndex { index, len: dim });
        }
        let mut amplitudes = vec![0.0; dim];
        amplitudes[index] = 1.0;
        Ok(Self { order, amplitudes })
    }

    /// Validates length (a power of two, at least 2) and unit norm.
    pub fn from_amplitudes(amplitudes: Vec<f64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Config(format!(
                "register needs a power-of-two number (>= 2) of amplitudes, got {len}"
            )));
        }
        let order = len.trailing_zeros() as usize;
        check_order(order)?;
        let norm: f64 = amplitudes.iter().map(|a| a * a).sum();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Config(format!(
                "register is not normalized: sum of squares = {norm}"
            )));
        }
        Ok(Self { order, amplitudes })
    }

    /// Builds a register from amplitudes produced by an update operator,
    /// rescaling if round-off pushed the norm past the drift threshold.
    pub(crate) fn from_update(order: usize, mut amplitudes: Vec<f64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << order);
        let norm: f64 = amplitudes.iter().map(|a| a * a).sum();
        if (norm - 1.0).abs() > RENORMALIZE_THRESHOLD {
            let scale = norm.sqrt().recip();
            amplitudes.iter_mut().for_each(|a| *a *= scale);
        }
        Self { order, amplitudes }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn probability(&self, index: usize) -> f64 {
        let a = self.amplitudes[index];
        a * a
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a * a).collect()
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum()
    }

    /// Maps a uniform draw `u` in `[0, 1)` to a group value by scanning
    /// cumulative probabilities in ascending index order. The last index is
    /// the catch-all branch, so round-off never yields an out-of-range value.
    pub fn select(&self, u: f64) -> usize {
        let last = self.amplitudes.len() - 1;
        let mut cumulative = 0.0;
        for (k, a) in self.amplitudes[..last].iter().enumerate() {
            cumulative += a * a;
            if u < cumulative {
                return k;
            }
        }
        last
    }

    /// Samples a group value `k` with probability `amplitudes[k]^2`.
    /// The register itself is left untouched.
    pub fn observe(&self, rng: &mut RandomSource) -> usize {
        self.select(rng.uniform())
    }
}

/// The register layout of a chromosome: consecutive genes grouped into
/// registers of order `r`, with a shorter tail of order `N mod r` when `r`
/// does not divide `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub length: usize,
    pub order: usize,
}

impl Layout {
    pub fn new(length: usize, order: usize) -> Result<Self> {
        if length == 0 {
            return Err(Error::EmptyProblem);
        }
        check_order(order)?;
        if order > length {
            return Err(Error::OrderOutOfRange {
                order,
                size: length,
            });
        }
        Ok(Self { length, order })
    }

    /// `(first gene, register order)` for every register, in gene order.
    pub fn groups(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.length)
            .step_by(self.order)
            .map(move |start| (start, self.order.min(self.length - start)))
    }

    pub fn register_count(&self) -> usize {
        self.length.div_ceil(self.order)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumChromosome {
    layout: Layout,
    registers: Vec<QuantumRegister>,
}

impl QuantumChromosome {
    /// Every register in equal superposition, so observation samples the
    /// whole search space uniformly.
    pub fn uniform(length: usize, order: usize) -> Result<Self> {
        let layout = Layout::new(length, order)?;
        let registers = layout
            .groups()
            .map(|(_, r)| QuantumRegister::uniform(r))
            .collect::<Result<_>>()?;
        Ok(Self { layout, registers })
    }

    /// Assembles a chromosome from explicit registers. All registers but the
    /// last must share the first register's order; the last may be shorter.
    pub fn from_registers(registers: Vec<QuantumRegister>) -> Result<Self> {
        let Some(first) = registers.first() else {
            return Err(Error::EmptyProblem);
        };
        let order = first.order();
        let length = registers.iter().map(QuantumRegister::order).sum();
        let layout = Layout::new(length, order)?;
        let consistent = layout
            .groups()
            .zip(&registers)
            .all(|((_, r), reg)| reg.order() == r);
        if !consistent || layout.register_count() != registers.len() {
            return Err(Error::Config(
                "register orders do not form a valid chromosome layout".into(),
            ));
        }
        Ok(Self { layout, registers })
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn len(&self) -> usize {
        self.layout.length
    }

    pub fn is_empty(&self) -> bool {
        self.layout.length == 0
    }

    pub fn order(&self) -> usize {
        self.layout.order
    }

    pub fn registers(&self) -> &[QuantumRegister] {
        &self.registers
    }

    pub(crate) fn registers_mut(&mut self) -> &mut [QuantumRegister] {
        &mut self.registers
    }

    /// Observes every register and concatenates the big-endian bit groups.
    pub fn observe(&self, rng: &mut RandomSource) -> BitString {
        let mut bits = BitString::zeros(self.layout.length);
        for ((start, width), reg) in self.layout.groups().zip(&self.registers) {
            bits.set_group(start, width, reg.observe(rng));
        }
        bits
    }
}
