use serde::{Deserialize, Serialize};

use super::ExperimentResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub algorithm: String,
    /// Problems on which this algorithm had the highest mean best fitness.
    pub wins: usize,
    /// How many of those wins were shared with another algorithm.
    pub tied_wins: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingTable {
    /// Sorted by wins descending, then algorithm id.
    pub entries: Vec<RankEntry>,
    /// Winners per problem index, in plan order; empty when every cell failed.
    pub winners: Vec<Vec<String>>,
    /// Problem indices whose best mean was shared.
    pub tied_problems: Vec<usize>,
}

impl RankingTable {
    pub fn wins(&self, algorithm: &str) -> usize {
        self.entries
            .iter()
            .find(|e| e.algorithm == algorithm)
            .map_or(0, |e| e.wins)
    }

    pub fn is_winner(&self, problem_index: usize, algorithm: &str) -> bool {
        self.winners
            .get(problem_index)
            .is_some_and(|w| w.iter().any(|a| a == algorithm))
    }

    /// Standard competition rank (1, 2, 2, 4, ...) of each entry.
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = Vec::with_capacity(self.entries.len());
        for (i, e) in self.entries.iter().enumerate() {
            let rank = match i {
                0 => 1,
                _ if self.entries[i - 1].wins == e.wins => ranks[i - 1],
                _ => i + 1,
            };
            ranks.push(rank);
        }
        ranks
    }
}

/// Awards one win per problem to the algorithm with the highest mean best
/// fitness; exact ties award a win to each tied algorithm and are flagged.
pub fn rank_algorithms(result: &ExperimentResult) -> RankingTable {
    let mut entries: Vec<RankEntry> = result
        .algorithms
        .iter()
        .map(|a| RankEntry {
            algorithm: a.clone(),
            wins: 0,
            tied_wins: 0,
        })
        .collect();
    let mut winners = Vec::with_capacity(result.problems.len());
    let mut tied_problems = Vec::new();

    for p in 0..result.problems.len() {
        let means: Vec<(&str, f64)> = result
            .cells
            .iter()
            .filter(|c| c.problem_index == p)
            .filter_map(|c| c.summary().map(|s| (c.algorithm.as_str(), s.mean)))
            .collect();
        let best = means
            .iter()
            .map(|&(_, m)| m)
            .fold(f64::NEG_INFINITY, f64::max);
        let top: Vec<String> = means
            .iter()
            .filter(|&&(_, m)| m == best)
            .map(|&(a, _)| a.to_string())
            .collect();
        let tie = top.len() > 1;
        if tie {
            tied_problems.push(p);
        }
        for winner in &top {
            if let Some(e) = entries.iter_mut().find(|e| &e.algorithm == winner) {
                e.wins += 1;
                e.tied_wins += usize::from(tie);
            }
        }
        winners.push(top);
    }

    entries.sort_by(|a, b| {
        b.wins
            .cmp(&a.wins)
            .then_with(|| a.algorithm.cmp(&b.algorithm))
    });
    RankingTable {
        entries,
        winners,
        tied_problems,
    }
}
