//! Prime independent sets and prime cliques.
//!
//! A prime independent set is an independent set meeting every maximum
//! clique whose members each lie in some maximum clique. A prime clique is
//! the same notion in the complement.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::invariants::maximum_cliques;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrimeSetKind {
    PrimeIndependentSet,
    PrimeClique,
}

impl fmt::Display for PrimeSetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeSetKind::PrimeIndependentSet => "prime independent set",
            PrimeSetKind::PrimeClique => "prime clique",
        })
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PrimeSetViolation {
    #[error("vertex {0} is not a vertex of the graph")]
    OutOfRange(usize),
    #[error("{0} and {1} are adjacent")]
    NotIndependent(usize, usize),
    #[error("{0} and {1} are not adjacent")]
    NotClique(usize, usize),
    #[error("misses the maximum clique {0:?}")]
    MissesMaximumClique(VertexSet),
    #[error("misses the maximum independent set {0:?}")]
    MissesMaximumIndependentSet(VertexSet),
    #[error("vertex {0} lies in no maximum clique")]
    OutsideMaximumCliques(usize),
    #[error("vertex {0} lies in no maximum independent set")]
    OutsideMaximumIndependentSets(usize),
}

/// The graph in which the set must be independent and meet every maximum
/// clique: `g` itself for PI, its complement for PK.
fn structure(g: &Graph, kind: PrimeSetKind) -> Graph {
    match kind {
        PrimeSetKind::PrimeIndependentSet => g.clone(),
        PrimeSetKind::PrimeClique => g.complement(),
    }
}

pub fn check_prime_set(g: &Graph, kind: PrimeSetKind, s: VertexSet) -> Result<(), PrimeSetViolation> {
    let h = structure(g, kind);
    let targets = maximum_cliques(&h);
    check_against(&h, &targets, kind, s)
}

fn check_against(
    h: &Graph,
    targets: &[VertexSet],
    kind: PrimeSetKind,
    s: VertexSet,
) -> Result<(), PrimeSetViolation> {
    let pi = kind == PrimeSetKind::PrimeIndependentSet;
    if let Some(v) = (s - h.vertices()).first() {
        return Err(PrimeSetViolation::OutOfRange(v));
    }
    for u in s {
        if let Some(v) = (h.neighbors(u) & s).first() {
            let (a, b) = (u.min(v), u.max(v));
            return Err(if pi {
                PrimeSetViolation::NotIndependent(a, b)
            } else {
                PrimeSetViolation::NotClique(a, b)
            });
        }
    }
    if let Some(&t) = targets.iter().find(|t| !t.intersects(s)) {
        return Err(if pi {
            PrimeSetViolation::MissesMaximumClique(t)
        } else {
            PrimeSetViolation::MissesMaximumIndependentSet(t)
        });
    }
    let covered = targets.iter().fold(VertexSet::EMPTY, |acc, &t| acc | t);
    if let Some(v) = (s - covered).first() {
        return Err(if pi {
            PrimeSetViolation::OutsideMaximumCliques(v)
        } else {
            PrimeSetViolation::OutsideMaximumIndependentSets(v)
        });
    }
    Ok(())
}

pub fn check_prime_independent_set(g: &Graph, s: VertexSet) -> Result<(), PrimeSetViolation> {
    check_prime_set(g, PrimeSetKind::PrimeIndependentSet, s)
}

pub fn check_prime_clique(g: &Graph, s: VertexSet) -> Result<(), PrimeSetViolation> {
    check_prime_set(g, PrimeSetKind::PrimeClique, s)
}

pub fn is_prime_independent_set(g: &Graph, s: VertexSet) -> bool {
    check_prime_independent_set(g, s).is_ok()
}

pub fn is_prime_clique(g: &Graph, s: VertexSet) -> bool {
    check_prime_clique(g, s).is_ok()
}

/// Lazily yields prime sets by increasing size, lexicographically within a
/// size. Candidates are drawn from the union of the maximum cliques (of the
/// structure graph), since every member must lie in one.
pub struct PrimeSets {
    h: Graph,
    targets: Vec<VertexSet>,
    pool: VertexSet,
    next_size: usize,
    buffer: VecDeque<VertexSet>,
    exhausted: bool,
}

impl PrimeSets {
    fn new(g: &Graph, kind: PrimeSetKind) -> Self {
        let h = structure(g, kind);
        let targets = maximum_cliques(&h);
        let pool = targets.iter().fold(VertexSet::EMPTY, |acc, &t| acc | t);
        let mut buffer = VecDeque::new();
        if g.is_null() {
            buffer.push_back(VertexSet::EMPTY);
        }
        PrimeSets {
            exhausted: g.is_null(),
            h,
            targets,
            pool,
            next_size: 1,
            buffer,
        }
    }

    /// Fills the buffer with the next non-empty size class, if any.
    fn refill(&mut self) {
        while self.buffer.is_empty() && !self.exhausted {
            let size = self.next_size;
            self.next_size += 1;
            if size > self.pool.len() {
                self.exhausted = true;
                return;
            }
            let mut any_independent = false;
            let (h, targets, buffer) = (&self.h, &self.targets, &mut self.buffer);
            independent_subsets(h, self.pool, size, &mut |s| {
                any_independent = true;
                if targets.iter().all(|t| t.intersects(s)) {
                    buffer.push_back(s);
                }
            });
            if !any_independent {
                self.exhausted = true;
            }
        }
    }
}

impl Iterator for PrimeSets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        self.refill();
        self.buffer.pop_front()
    }
}

/// Calls `visit` on each independent `size`-subset of `pool`, in
/// lexicographic order.
fn independent_subsets(h: &Graph, pool: VertexSet, size: usize, visit: &mut dyn FnMut(VertexSet)) {
    fn rec(h: &Graph, size: usize, current: VertexSet, candidates: VertexSet, visit: &mut dyn FnMut(VertexSet)) {
        if current.len() == size {
            visit(current);
            return;
        }
        let mut rest = candidates;
        for v in candidates {
            rest.remove(v);
            if current.len() + 1 + rest.len() < size {
                return;
            }
            rec(h, size, current.with(v), rest - h.neighbors(v), visit);
        }
    }
    rec(h, size, VertexSet::EMPTY, pool, visit);
}

pub fn prime_independent_sets(g: &Graph) -> PrimeSets {
    PrimeSets::new(g, PrimeSetKind::PrimeIndependentSet)
}

pub fn prime_cliques(g: &Graph) -> PrimeSets {
    PrimeSets::new(g, PrimeSetKind::PrimeClique)
}

pub fn prime_sets(g: &Graph, kind: PrimeSetKind) -> PrimeSets {
    PrimeSets::new(g, kind)
}
