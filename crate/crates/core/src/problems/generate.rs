use super::CnfFormula;
use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Uniform random 3-SAT: each clause picks 3 distinct variables uniformly
/// and negates each with probability 1/2.
pub fn generate_uniform_3sat(
    variables: usize,
    clause_count: usize,
    rng: &mut RandomSource,
) -> Result<CnfFormula> {
    if variables < 3 {
        return Err(Error::Config(format!(
            "uniform 3-SAT needs at least 3 variables, got {variables}"
        )));
    }
    if variables > i32::MAX as usize {
        return Err(Error::Config(format!(
            "{variables} variables do not fit DIMACS literals"
        )));
    }
    let mut clauses = Vec::with_capacity(clause_count);
    for _ in 0..clause_count {
        let mut vars = [0usize; 3];
        let mut filled = 0;
        while filled < 3 {
            let v = rng.below(1, variables + 1);
            if !vars[..filled].contains(&v) {
                vars[filled] = v;
                filled += 1;
            }
        }
        let clause = vars
            .iter()
            .map(|&v| {
                let lit = v as i32;
                if rng.chance(0.5) {
                    -lit
                } else {
                    lit
                }
            })
            .collect();
        clauses.push(clause);
    }
    CnfFormula::new(variables, clauses, None)
}

/// Clause count for a clause-to-variable ratio, rounded to nearest.
pub fn clauses_for_ratio(variables: usize, ratio: f64) -> usize {
    (variables as f64 * ratio).round() as usize
}
