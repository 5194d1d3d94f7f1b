//! Perfection test: ω(H) = χ(H) on every induced subgraph H.

use dashmap::DashMap;
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalKey};
use crate::graph::{Graph, VertexSet};
use crate::invariants::{chromatic_number, clique_number};

pub const DEFAULT_PERFECTION_LIMIT: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("perfection check limited to {limit} vertices, graph has {n}")]
pub struct PerfectionLimitExceeded {
    pub n: usize,
    pub limit: usize,
}

/// Memoised perfection checker. The memo maps canonical keys to verdicts;
/// entries are idempotent, so concurrent writers may race harmlessly.
#[derive(Debug)]
pub struct PerfectionChecker {
    limit: usize,
    memo: DashMap<CanonicalKey, bool>,
}

impl Default for PerfectionChecker {
    fn default() -> Self {
        Self::new(DEFAULT_PERFECTION_LIMIT)
    }
}

impl PerfectionChecker {
    pub fn new(limit: usize) -> Self {
        PerfectionChecker { limit, memo: DashMap::new() }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_perfect(&self, g: &Graph) -> Result<bool, PerfectionLimitExceeded> {
        if g.order() > self.limit {
            return Err(PerfectionLimitExceeded { n: g.order(), limit: self.limit });
        }
        Ok(self.check(g))
    }

    // A graph is perfect iff ω = χ holds for it and every vertex-deleted
    // subgraph is perfect; this reaches every induced subgraph.
    fn check(&self, g: &Graph) -> bool {
        if g.order() <= 1 {
            return true;
        }
        let form = canonical_form(g);
        if let Some(hit) = self.memo.get(&form.key) {
            return *hit;
        }
        let c = &form.graph;
        let verdict = clique_number(c) == chromatic_number(c)
            && (0..c.order()).all(|v| self.check(&c.remove(VertexSet::singleton(v))));
        self.memo.insert(form.key, verdict);
        verdict
    }
}

/// Perfection with a fresh memo and the default vertex limit.
pub fn is_perfect(g: &Graph) -> Result<bool, PerfectionLimitExceeded> {
    PerfectionChecker::default().is_perfect(g)
}
