//! The contraction operator: every amplitude except the one matching the
//! best individual's bit group shrinks by `mu`, and the remaining probability
//! mass moves onto the matching amplitude.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::register::{QuantumChromosome, QuantumRegister};

pub fn contraction_update(
    reg: &QuantumRegister,
    best_group: usize,
    mu: f64,
) -> Result<QuantumRegister> {
    let dim = reg.dim();
    if best_group >= dim {
        return Err(Error::InvalidIndex {
            index: best_group,
            len: dim,
        });
    }
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::Config(format!(
            "contraction factor {mu} outside (0, 1]"
        )));
    }
    Ok(contract(reg, best_group, mu))
}

pub(crate) fn contract(reg: &QuantumRegister, best_group: usize, mu: f64) -> QuantumRegister {
    let mut next = vec![0.0; reg.dim()];
    let mut rest = 0.0;
    for (amp, (&old, new)) in reg.amplitudes().iter().zip(next.iter_mut()).enumerate() {
        if amp != best_group {
            *new = mu * old;
            rest += *new * *new;
        }
    }
    next[best_group] = (1.0 - rest).max(0.0).sqrt();
    QuantumRegister::from_update(reg.order(), next)
}

/// Moves every register of every chromosome toward the matching bit group
/// of `best`.
pub fn update_quantum_population(
    population: &mut [QuantumChromosome],
    best: &BitString,
    mu: f64,
) -> Result<()> {
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::Config(format!(
            "contraction factor {mu} outside (0, 1]"
        )));
    }
    for chrom in population.iter() {
        if chrom.len() != best.len() {
            return Err(Error::Shape {
                expected: chrom.len(),
                actual: best.len(),
            });
        }
    }
    for chrom in population.iter_mut() {
        let layout = chrom.layout();
        for ((start, width), reg) in layout.groups().zip(chrom.registers_mut()) {
            *reg = contract(reg, best.group_value(start, width), mu);
        }
    }
    Ok(())
}
