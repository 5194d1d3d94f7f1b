//! Memoised recognition of quasiperfect graphs.
//!
//! A non-null graph is quasiperfect when it has a prime independent set
//! with a quasiperfect residue *and* a prime clique with a quasiperfect
//! residue. Results are memoised per isomorphism class; the stored witness
//! lives in the canonical labelling and is mapped back on every lookup, so
//! the certificate for a graph never depends on which labelling reached the
//! memo first.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::certificate::QpCertificate;
use super::prime::{prime_sets, PrimeSetKind};
use crate::canon::{canonical_form, CanonicalKey};
use crate::constructions::lovasz_prime_clique;
use crate::graph::{Graph, VertexSet};
use crate::invariants::{chromatic_number, clique_number};
use crate::perfect::{PerfectionChecker, DEFAULT_PERFECTION_LIMIT};

pub const DEFAULT_RECOGNITION_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Only the definition.
    #[default]
    Pure,
    /// Rejects early when ω ≠ χ; optionally accepts perfect graphs early.
    Accelerated,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Pure => "pure",
            Mode::Accelerated => "accelerated",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pure" => Ok(Mode::Pure),
            "accelerated" => Ok(Mode::Accelerated),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognitionConfig {
    pub mode: Mode,
    pub limit: usize,
    /// Maximum number of memo entries; `None` is unbounded.
    pub memo_capacity: Option<usize>,
    /// In accelerated mode, accept perfect graphs (up to the perfection
    /// limit) using replication-derived prime sets instead of search.
    pub perfect_shortcut: bool,
    /// Search sibling candidates on the rayon pool.
    pub parallel: bool,
}

impl Default for RecognitionConfig {
    fn default() -> Self {
        RecognitionConfig {
            mode: Mode::Pure,
            limit: DEFAULT_RECOGNITION_LIMIT,
            memo_capacity: None,
            perfect_shortcut: false,
            parallel: true,
        }
    }
}

impl RecognitionConfig {
    pub fn pure() -> Self {
        Self::default()
    }

    pub fn accelerated() -> Self {
        RecognitionConfig { mode: Mode::Accelerated, ..Self::default() }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognitionError {
    #[error("graph has {n} vertices, recognition limit is {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("memo capacity of {capacity} entries exceeded")]
    MemoCapacityExceeded { capacity: usize },
}

/// One witnessing (PI, PK) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub pi: VertexSet,
    pub pk: VertexSet,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RecognitionStats {
    pub nodes_explored: u64,
    pub memo_hits: u64,
    #[serde(serialize_with = "as_millis")]
    pub wall_time: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

#[derive(Clone, Debug)]
pub struct RecognitionOutcome {
    pub quasiperfect: bool,
    /// Present exactly when `quasiperfect`.
    pub certificate: Option<QpCertificate>,
    pub stats: RecognitionStats,
}

/// Recogniser with a memo shared across calls and threads.
#[derive(Debug)]
pub struct Recognizer {
    config: RecognitionConfig,
    memo: DashMap<CanonicalKey, Option<Witness>>,
    perfection: PerfectionChecker,
    nodes: AtomicU64,
    hits: AtomicU64,
}

impl Default for Recognizer {
    fn default() -> Self {
        Self::new(RecognitionConfig::default())
    }
}

impl Recognizer {
    pub fn new(config: RecognitionConfig) -> Self {
        let perfection = PerfectionChecker::new(DEFAULT_PERFECTION_LIMIT);
        Recognizer {
            config,
            memo: DashMap::new(),
            perfection,
            nodes: AtomicU64::new(0),
            hits: AtomicU64::new(0),
        }
    }

    pub fn pure() -> Self {
        Self::new(RecognitionConfig::pure())
    }

    pub fn accelerated() -> Self {
        Self::new(RecognitionConfig::accelerated())
    }

    pub fn config(&self) -> &RecognitionConfig {
        &self.config
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn check_limit(&self, g: &Graph) -> Result<(), RecognitionError> {
        if g.order() > self.config.limit {
            Err(RecognitionError::LimitExceeded { n: g.order(), limit: self.config.limit })
        } else {
            Ok(())
        }
    }

    pub fn is_quasiperfect(&self, g: &Graph) -> Result<bool, RecognitionError> {
        self.check_limit(g)?;
        Ok(self.witness(g)?.is_some())
    }

    /// The witnessing prime sets for `g`, in `g`'s labelling.
    pub fn witness(&self, g: &Graph) -> Result<Option<Witness>, RecognitionError> {
        self.check_limit(g)?;
        let form = canonical_form(g);
        let canonical = match self.memo.get(&form.key).map(|e| *e) {
            Some(hit) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                hit
            }
            None => {
                let found = self.search(&form.graph)?;
                if let Some(cap) = self.config.memo_capacity {
                    if self.memo.len() >= cap {
                        return Err(RecognitionError::MemoCapacityExceeded { capacity: cap });
                    }
                }
                self.memo.insert(form.key, found);
                found
            }
        };
        Ok(canonical.map(|w| Witness {
            pi: pull_back(w.pi, &form.labeling),
            pk: pull_back(w.pk, &form.labeling),
        }))
    }

    fn search(&self, g: &Graph) -> Result<Option<Witness>, RecognitionError> {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if g.is_null() {
            return Ok(Some(Witness { pi: VertexSet::EMPTY, pk: VertexSet::EMPTY }));
        }
        if self.config.mode == Mode::Accelerated {
            if clique_number(g) != chromatic_number(g) {
                return Ok(None);
            }
            if self.config.perfect_shortcut && self.perfection.is_perfect(g) == Ok(true) {
                if let (Ok(pk), Ok(pi)) = (lovasz_prime_clique(g), lovasz_prime_clique(&g.complement())) {
                    return Ok(Some(Witness { pi, pk }));
                }
            }
        }
        let Some(pi) = self.first_good(g, PrimeSetKind::PrimeIndependentSet)? else {
            return Ok(None);
        };
        let Some(pk) = self.first_good(g, PrimeSetKind::PrimeClique)? else {
            return Ok(None);
        };
        Ok(Some(Witness { pi, pk }))
    }

    /// First prime set, in enumeration order, whose residue is quasiperfect.
    fn first_good(&self, g: &Graph, kind: PrimeSetKind) -> Result<Option<VertexSet>, RecognitionError> {
        let residue_ok = |s: VertexSet| self.witness(&g.remove(s)).map(|w| w.is_some());
        if self.config.parallel {
            let candidates: Vec<VertexSet> = prime_sets(g, kind).collect();
            candidates
                .par_iter()
                .find_map_first(|&s| match residue_ok(s) {
                    Ok(true) => Some(Ok(s)),
                    Ok(false) => None,
                    Err(e) => Some(Err(e)),
                })
                .transpose()
        } else {
            for s in prime_sets(g, kind) {
                if residue_ok(s)? {
                    return Ok(Some(s));
                }
            }
            Ok(None)
        }
    }

    /// Builds the full witness tree, or `None` for a non-quasiperfect graph.
    pub fn certificate(&self, g: &Graph) -> Result<Option<QpCertificate>, RecognitionError> {
        self.check_limit(g)?;
        if g.is_null() {
            return Ok(Some(QpCertificate::Leaf));
        }
        let Some(w) = self.witness(g)? else {
            return Ok(None);
        };
        let child = |s: VertexSet| {
            self.certificate(&g.remove(s))
                .map(|c| c.expect("residue of a witnessing prime set is quasiperfect"))
        };
        let pi_child = child(w.pi)?;
        let pk_child = child(w.pk)?;
        Ok(Some(QpCertificate::node(g.clone(), w.pi, w.pk, pi_child, pk_child)))
    }

    pub fn recognize(&self, g: &Graph) -> Result<RecognitionOutcome, RecognitionError> {
        let start = Instant::now();
        let (n0, h0) = (self.nodes.load(Ordering::Relaxed), self.hits.load(Ordering::Relaxed));
        let certificate = self.certificate(g)?;
        let stats = RecognitionStats {
            nodes_explored: self.nodes.load(Ordering::Relaxed) - n0,
            memo_hits: self.hits.load(Ordering::Relaxed) - h0,
            wall_time: start.elapsed(),
        };
        Ok(RecognitionOutcome {
            quasiperfect: certificate.is_some(),
            certificate,
            stats,
        })
    }
}

/// `{v : labeling[v] ∈ s}`.
fn pull_back(s: VertexSet, labeling: &[usize]) -> VertexSet {
    (0..labeling.len()).filter(|&v| s.contains(labeling[v])).collect()
}

/// Recognition with a fresh recogniser.
pub fn is_quasiperfect(g: &Graph, mode: Mode) -> Result<RecognitionOutcome, RecognitionError> {
    Recognizer::new(RecognitionConfig { mode, ..RecognitionConfig::default() }).recognize(g)
}

/// Verdict under the disjunctive reading (either clause suffices). Only
/// used to measure how far the two readings diverge.
pub fn disjunctive_verdict(g: &Graph, limit: usize) -> Result<bool, RecognitionError> {
    fn rec(g: &Graph, memo: &mut HashMap<CanonicalKey, bool>) -> bool {
        if g.is_null() {
            return true;
        }
        let form = canonical_form(g);
        if let Some(&v) = memo.get(&form.key) {
            return v;
        }
        let c = form.graph;
        let verdict = [PrimeSetKind::PrimeIndependentSet, PrimeSetKind::PrimeClique]
            .into_iter()
            .any(|kind| prime_sets(&c, kind).any(|s| rec(&c.remove(s), memo)));
        memo.insert(form.key, verdict);
        verdict
    }
    if g.order() > limit {
        return Err(RecognitionError::LimitExceeded { n: g.order(), limit });
    }
    Ok(rec(g, &mut HashMap::new()))
}
