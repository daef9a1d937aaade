//! Capped search for green-to-red and maximal green sequences.
//!
//! Iterative deepening over g-seeds: each round is a depth-first search
//! bounded by the current depth, so the first sequence found is a shortest
//! one. Within a round, a state `(B, G)` already reached with at least as
//! much remaining depth is not expanded again. Green vertices are tried
//! before red ones, each group in vertex order, which makes the search
//! deterministic.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::gseed::{Color, GSeed, GSeedError, SequenceMode};
use crate::quiver::Quiver;
use crate::scalar::Scalar;
use crate::vertex::VertexId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found(Vec<VertexId>),
    /// Every sequence up to the depth cap was examined.
    ExhaustedWithinCap,
    /// The node cap stopped the search early.
    CapHit,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Mutations performed, summed over all rounds.
    pub nodes: u64,
    /// Deepest round started.
    pub max_depth: usize,
    /// States skipped because they were already expanded in the round.
    pub dedup_hits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn sequence(&self) -> Option<&[VertexId]> {
        match &self.outcome {
            Outcome::Found(s) => Some(s),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let (outcome, seq) = match &self.outcome {
            Outcome::Found(s) => (
                "found",
                Some(s.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
            ),
            Outcome::ExhaustedWithinCap => ("exhausted_within_cap", None),
            Outcome::CapHit => ("cap_hit", None),
        };
        json!({
            "outcome": outcome,
            "sequence": seq,
            "stats": {
                "nodes": self.stats.nodes,
                "max_depth": self.stats.max_depth,
                "dedup_hits": self.stats.dedup_hits,
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_depth: usize,
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_depth: 12,
            max_nodes: 1_000_000,
        }
    }
}

enum Stop {
    Found,
    Cap,
}

struct Searcher<T> {
    mode: SequenceMode,
    max_nodes: u64,
    stats: SearchStats,
    seen: HashMap<(Vec<T>, Vec<T>), usize>,
    path: Vec<usize>,
}

impl<T: Scalar> Searcher<T> {
    fn dfs(&mut self, seed: &GSeed<T>, remaining: usize) -> Result<Option<Stop>, GSeedError> {
        if seed.all_red() {
            return Ok(Some(Stop::Found));
        }
        if remaining == 0 {
            return Ok(None);
        }
        let key = seed.state_key();
        match self.seen.get(&key) {
            Some(&r) if r >= remaining => {
                self.stats.dedup_hits += 1;
                return Ok(None);
            }
            _ => {
                self.seen.insert(key, remaining);
            }
        }
        let n = seed.len();
        let green = (0..n).filter(|&k| seed.color_at(k) == Color::Green);
        let red = (0..n)
            .filter(|&k| seed.color_at(k) == Color::Red && self.mode == SequenceMode::GreenToRed);
        let order: Vec<usize> = green.chain(red).collect();
        for k in order {
            if self.path.last() == Some(&k) {
                // mutating twice in a row returns to the parent
                continue;
            }
            if self.stats.nodes >= self.max_nodes {
                return Ok(Some(Stop::Cap));
            }
            self.stats.nodes += 1;
            let next = seed.mutate_at(k)?;
            self.path.push(k);
            if let Some(stop) = self.dfs(&next, remaining - 1)? {
                return Ok(Some(stop));
            }
            self.path.pop();
        }
        Ok(None)
    }
}

/// Looks for a shortest sequence ending with every mutable vertex red.
///
/// Errors only come from the seed arithmetic (overflow for fixed-width
/// scalars, or a sign-coherence failure, which would indicate a bug).
pub fn find_sequence<T: Scalar>(
    q: &Quiver<T>,
    mode: SequenceMode,
    limits: SearchLimits,
) -> Result<SearchResult, GSeedError> {
    let root = GSeed::initial(q);
    let mut s = Searcher {
        mode,
        max_nodes: limits.max_nodes,
        stats: SearchStats::default(),
        seen: HashMap::new(),
        path: Vec::new(),
    };
    for depth in 0..=limits.max_depth {
        s.stats.max_depth = depth;
        s.seen.clear();
        s.path.clear();
        match s.dfs(&root, depth)? {
            Some(Stop::Found) => {
                let seq = s.path.iter().map(|&k| root.ids()[k].clone()).collect();
                return Ok(SearchResult {
                    outcome: Outcome::Found(seq),
                    stats: s.stats,
                });
            }
            Some(Stop::Cap) => {
                return Ok(SearchResult {
                    outcome: Outcome::CapHit,
                    stats: s.stats,
                })
            }
            None => {}
        }
    }
    Ok(SearchResult {
        outcome: Outcome::ExhaustedWithinCap,
        stats: s.stats,
    })
}
