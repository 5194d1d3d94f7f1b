//! Exhaustive enumeration of small graphs and the verification suites.
//!
//! Theorem suites report violations and fail when any are found. Surveys
//! explore open questions: they report counts and examples but never fail.
//! Every suite runs pure-mode recognition and processes graphs in a fixed
//! order, so reports are reproducible regardless of thread count.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalKey};
use crate::constructions::{lovasz_prime_clique, ConstructionError};
use crate::engine::certificate::{coloring_from_certificate, complement_certificate, verify_certificate};
use crate::engine::recognize::{disjunctive_verdict, Mode, RecognitionError, Recognizer};
use crate::graph::{Graph, VertexSet};
use crate::invariants::{chromatic_number, clique_number, independence_number, is_proper_coloring};
use crate::perfect::{PerfectionChecker, PerfectionLimitExceeded};

pub const REPORT_SCHEMA: &str = "qpreport-v1";

/// Largest order the built-in enumerator generates.
pub const ENUMERATION_LIMIT: usize = 8;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("built-in enumeration stops at {limit} vertices, asked for {n}")]
    EnumerationLimit { n: usize, limit: usize },
    #[error(transparent)]
    Recognition(#[from] RecognitionError),
    #[error(transparent)]
    Perfection(#[from] PerfectionLimitExceeded),
    #[error("suites must run pure-mode recognition, got {0}")]
    NotPure(Mode),
    #[error("quasiperfect graph {graph6} has clique number {omega} but chromatic number {chi}")]
    Theorem1Violation { graph6: String, omega: usize, chi: usize },
    #[error("supergraph search needs {needed} vertices, recognition limit is {limit}")]
    SupergraphLimit { needed: usize, limit: usize },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// One representative per isomorphism class on `n` vertices, in canonical
/// labelling, ordered by canonical key.
///
/// Classes on `n` vertices are obtained by adding a vertex with every
/// possible neighbourhood to each class on `n - 1` vertices.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, HarnessError> {
    if n > ENUMERATION_LIMIT {
        return Err(HarnessError::EnumerationLimit { n, limit: ENUMERATION_LIMIT });
    }
    let mut layer = vec![Graph::empty(0).expect("K0")];
    for order in 1..=n {
        layer = extend(&layer, order);
    }
    Ok(layer)
}

fn extend(previous: &[Graph], order: usize) -> Vec<Graph> {
    let found: Vec<Vec<(CanonicalKey, Graph)>> = previous
        .par_iter()
        .map(|g| {
            (0u64..1 << (order - 1))
                .map(|mask| {
                    let mut rows: Vec<u64> = g.rows().to_vec();
                    for (v, row) in rows.iter_mut().enumerate() {
                        *row |= (mask >> v & 1) << (order - 1);
                    }
                    rows.push(mask);
                    let h = Graph::from_adjacency(rows).expect("extension is a simple graph");
                    let form = canonical_form(&h);
                    (form.key, form.graph)
                })
                .collect()
        })
        .collect();
    let classes: BTreeMap<CanonicalKey, Graph> = found.into_iter().flatten().collect();
    classes.into_values().collect()
}

/// All classes with `0..=n_max` vertices, by order then key.
pub fn enumerate_up_to(n_max: usize) -> Result<Vec<Graph>, HarnessError> {
    if n_max > ENUMERATION_LIMIT {
        return Err(HarnessError::EnumerationLimit { n: n_max, limit: ENUMERATION_LIMIT });
    }
    let mut all = Vec::new();
    let mut layer = vec![Graph::empty(0).expect("K0")];
    all.extend(layer.iter().cloned());
    for order in 1..=n_max {
        layer = extend(&layer, order);
        all.extend(layer.iter().cloned());
    }
    Ok(all)
}

/// Where a suite's graphs came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSource {
    Enumerated { n_max: usize },
    Stream { count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub source: GraphSource,
    pub mode: Mode,
    pub reading: &'static str,
    pub recognition_limit: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteKind {
    /// Violations are failures.
    Theorem,
    /// Findings are informational.
    Survey,
}

/// Outside the determinism contract.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunStats {
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: String,
    pub kind: SuiteKind,
    pub graphs_scanned: usize,
    /// graph6 strings of graphs violating a proved statement.
    pub violations: Vec<String>,
    pub findings: BTreeMap<String, Value>,
    pub config: ConfigEcho,
    pub stats: RunStats,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Whether this report should fail a run: theorem violations only.
    pub fn is_failure(&self) -> bool {
        self.kind == SuiteKind::Theorem && !self.passed()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// The report with `stats` blanked, for byte-level comparisons.
    pub fn deterministic_json(&self) -> String {
        let mut copy = self.clone();
        copy.stats = RunStats::default();
        copy.to_json()
    }
}

/// Anything that can decide quasiperfection; lets tests inject a broken one.
pub trait QpClassifier: Sync {
    fn classify(&self, g: &Graph) -> Result<bool, RecognitionError>;
    fn mode(&self) -> Mode;
    fn limit(&self) -> usize;
}

impl QpClassifier for Recognizer {
    fn classify(&self, g: &Graph) -> Result<bool, RecognitionError> {
        self.is_quasiperfect(g)
    }

    fn mode(&self) -> Mode {
        self.config().mode
    }

    fn limit(&self) -> usize {
        self.config().limit
    }
}

fn require_pure(c: &dyn QpClassifier) -> Result<(), HarnessError> {
    match c.mode() {
        Mode::Pure => Ok(()),
        other => Err(HarnessError::NotPure(other)),
    }
}

fn echo(source: &GraphSource, c: &dyn QpClassifier) -> ConfigEcho {
    ConfigEcho {
        source: source.clone(),
        mode: c.mode(),
        reading: "conjunctive",
        recognition_limit: c.limit(),
    }
}

fn report(
    suite: &str,
    kind: SuiteKind,
    graphs: &[Graph],
    violations: Vec<String>,
    findings: BTreeMap<String, Value>,
    config: ConfigEcho,
    start: Instant,
) -> SuiteReport {
    SuiteReport {
        schema: REPORT_SCHEMA,
        suite: suite.to_owned(),
        kind,
        graphs_scanned: graphs.len(),
        violations,
        findings,
        config,
        stats: RunStats { runtime_ms: start.elapsed().as_secs_f64() * 1e3 },
    }
}

/// Quasiperfect implies ω = χ, with χ from the exact solver.
pub fn theorem1_suite(
    graphs: &[Graph],
    source: &GraphSource,
    classifier: &dyn QpClassifier,
) -> Result<SuiteReport, HarnessError> {
    require_pure(classifier)?;
    let start = Instant::now();
    let rows: Vec<(bool, bool)> = graphs
        .par_iter()
        .map(|g| {
            let q = classifier.classify(g)?;
            let bad = q && clique_number(g) != chromatic_number(g);
            Ok((q, bad))
        })
        .collect::<Result<_, HarnessError>>()?;
    let violations = graphs
        .iter()
        .zip(&rows)
        .filter(|(_, r)| r.1)
        .map(|(g, _)| g.to_graph6())
        .collect();
    let mut findings = BTreeMap::new();
    findings.insert("quasiperfect".into(), json!(rows.iter().filter(|r| r.0).count()));
    Ok(report("theorem1", SuiteKind::Theorem, graphs, violations, findings, echo(source, classifier), start))
}

pub fn verify_theorem1(n_max: usize) -> Result<SuiteReport, HarnessError> {
    let graphs = enumerate_up_to(n_max)?;
    theorem1_suite(&graphs, &GraphSource::Enumerated { n_max }, &Recognizer::pure())
}

/// Quasiperfection is preserved by complementation, and complemented
/// certificates verify against the complement.
pub fn theorem2_suite(graphs: &[Graph], source: &GraphSource, r: &Recognizer) -> Result<SuiteReport, HarnessError> {
    require_pure(r)?;
    let start = Instant::now();
    let rows: Vec<(bool, bool, bool)> = graphs
        .par_iter()
        .map(|g| {
            let co = g.complement();
            let q = r.is_quasiperfect(g)?;
            let mismatch = q != r.is_quasiperfect(&co)?;
            let mut cert_failure = false;
            if q {
                let cert = r.certificate(g)?.expect("accepted graph has a certificate");
                cert_failure = match complement_certificate(&cert) {
                    Ok(c) => verify_certificate(&co, &c).is_err(),
                    Err(_) => true,
                };
            }
            Ok((q, mismatch, cert_failure))
        })
        .collect::<Result<_, HarnessError>>()?;
    let violations = graphs
        .iter()
        .zip(&rows)
        .filter(|(_, r)| r.1 || r.2)
        .map(|(g, _)| g.to_graph6())
        .collect();
    let mut findings = BTreeMap::new();
    findings.insert("quasiperfect".into(), json!(rows.iter().filter(|r| r.0).count()));
    findings.insert("verdict_mismatches".into(), json!(rows.iter().filter(|r| r.1).count()));
    findings.insert("certificate_failures".into(), json!(rows.iter().filter(|r| r.2).count()));
    Ok(report("theorem2", SuiteKind::Theorem, graphs, violations, findings, echo(source, r), start))
}

pub fn verify_theorem2(n_max: usize) -> Result<SuiteReport, HarnessError> {
    let graphs = enumerate_up_to(n_max)?;
    theorem2_suite(&graphs, &GraphSource::Enumerated { n_max }, &Recognizer::pure())
}

/// Perfect implies quasiperfect, and replication yields a prime clique of
/// every non-null perfect graph.
pub fn perfect_subset_suite(
    graphs: &[Graph],
    source: &GraphSource,
    r: &Recognizer,
    perfection: &PerfectionChecker,
) -> Result<SuiteReport, HarnessError> {
    require_pure(r)?;
    let start = Instant::now();
    let rows: Vec<(bool, bool, bool, bool)> = graphs
        .par_iter()
        .map(|g| {
            let p = perfection.is_perfect(g)?;
            let q = r.is_quasiperfect(g)?;
            let lovasz_failed = p && !g.is_null() && lovasz_prime_clique(g).is_err();
            Ok((p, q, p && !q, lovasz_failed))
        })
        .collect::<Result<_, HarnessError>>()?;
    let violations = graphs
        .iter()
        .zip(&rows)
        .filter(|(_, r)| r.2 || r.3)
        .map(|(g, _)| g.to_graph6())
        .collect();
    let count = |f: fn(&(bool, bool, bool, bool)) -> bool| json!(rows.iter().filter(|r| f(r)).count());
    let mut findings = BTreeMap::new();
    findings.insert("perfect".into(), count(|r| r.0));
    findings.insert("quasiperfect".into(), count(|r| r.1));
    findings.insert("quasiperfect_not_perfect".into(), count(|r| r.1 && !r.0));
    findings.insert("perfect_not_quasiperfect".into(), count(|r| r.2));
    findings.insert("replication_prime_clique_failures".into(), count(|r| r.3));
    Ok(report("perfect-subset", SuiteKind::Theorem, graphs, violations, findings, echo(source, r), start))
}

pub fn verify_perfect_subset(n_max: usize) -> Result<SuiteReport, HarnessError> {
    let graphs = enumerate_up_to(n_max)?;
    let perfection = PerfectionChecker::new(n_max.max(crate::perfect::DEFAULT_PERFECTION_LIMIT));
    perfect_subset_suite(&graphs, &GraphSource::Enumerated { n_max }, &Recognizer::pure(), &perfection)
}

/// Colour classes of a colouring, each as a vertex set, by colour.
pub fn color_classes(colors: &[usize]) -> Vec<VertexSet> {
    let k = colors.iter().copied().max().map_or(0, |c| c + 1);
    let mut classes = vec![VertexSet::EMPTY; k];
    for (v, &c) in colors.iter().enumerate() {
        classes[c].insert(v);
    }
    classes
}

/// Every colour class occurring in some optimal colouring, in
/// lexicographic order.
pub fn optimal_color_classes(g: &Graph) -> Vec<VertexSet> {
    fn rec(g: &Graph, k: usize, v: usize, colors: &mut Vec<usize>, used: usize, out: &mut BTreeSet<Vec<usize>>) {
        if v == g.order() {
            for class in color_classes(colors) {
                out.insert(class.to_vec());
            }
            return;
        }
        for c in 0..(used + 1).min(k) {
            if g.neighbors(v).iter().filter(|&u| u < v).all(|u| colors[u] != c) {
                colors.push(c);
                rec(g, k, v + 1, colors, used.max(c + 1), out);
                colors.pop();
            }
        }
    }
    let k = chromatic_number(g);
    let mut out = BTreeSet::new();
    rec(g, k, 0, &mut Vec::new(), 0, &mut out);
    out.into_iter().map(|c| c.into_iter().collect()).collect()
}

/// Orders at or below this also get the sweep over all optimal colourings.
pub const ALL_COLORINGS_LIMIT: usize = 5;

/// Does removing one colour class of a minimum colouring keep a
/// quasiperfect graph quasiperfect? Uses the certificate-derived colouring,
/// and optionally every optimal colouring for small graphs.
pub fn color_class_removal_suite(
    graphs: &[Graph],
    source: &GraphSource,
    r: &Recognizer,
    all_colorings: bool,
) -> Result<SuiteReport, HarnessError> {
    require_pure(r)?;
    let start = Instant::now();
    type Row = (bool, usize, Vec<String>, usize, Vec<String>);
    let rows: Vec<Row> = graphs
        .par_iter()
        .map(|g| {
            if !r.is_quasiperfect(g)? {
                return Ok((false, 0, Vec::new(), 0, Vec::new()));
            }
            let cert = r.certificate(g)?.expect("accepted graph has a certificate");
            let colors = coloring_from_certificate(g, &cert).expect("fresh certificate verifies");
            let classes = color_classes(&colors);
            let mut failures = Vec::new();
            for class in &classes {
                if !r.is_quasiperfect(&g.remove(*class))? {
                    failures.push(format!("{} remove={:?}", g.to_graph6(), class.to_vec()));
                }
            }
            let mut swept = 0;
            let mut sweep_failures = Vec::new();
            if all_colorings && g.order() <= ALL_COLORINGS_LIMIT {
                for class in optimal_color_classes(g) {
                    swept += 1;
                    if !r.is_quasiperfect(&g.remove(class))? {
                        sweep_failures.push(format!("{} remove={:?}", g.to_graph6(), class.to_vec()));
                    }
                }
            }
            Ok((true, classes.len(), failures, swept, sweep_failures))
        })
        .collect::<Result<_, HarnessError>>()?;

    let surveyed = rows.iter().filter(|r| r.0).count();
    let tested: usize = rows.iter().map(|r| r.1).sum();
    let counterexamples: Vec<&String> = rows.iter().flat_map(|r| &r.2).collect();
    let mut findings = BTreeMap::new();
    findings.insert("quasiperfect_graphs_surveyed".into(), json!(surveyed));
    findings.insert("certificate_classes_tested".into(), json!(tested));
    findings.insert("certificate_classes_preserving".into(), json!(tested - counterexamples.len()));
    findings.insert("certificate_counterexamples".into(), json!(counterexamples));
    if all_colorings {
        let swept: usize = rows.iter().map(|r| r.3).sum();
        let sweep_fail: Vec<&String> = rows.iter().flat_map(|r| &r.4).collect();
        findings.insert("all_colorings_order_limit".into(), json!(ALL_COLORINGS_LIMIT));
        findings.insert("all_colorings_classes_tested".into(), json!(swept));
        findings.insert("all_colorings_classes_preserving".into(), json!(swept - sweep_fail.len()));
        findings.insert("all_colorings_counterexamples".into(), json!(sweep_fail));
    }
    Ok(report("color-removal", SuiteKind::Survey, graphs, Vec::new(), findings, echo(source, r), start))
}

pub fn color_class_removal_survey(n_max: usize, all_colorings: bool) -> Result<SuiteReport, HarnessError> {
    let graphs = enumerate_up_to(n_max)?;
    color_class_removal_suite(&graphs, &GraphSource::Enumerated { n_max }, &Recognizer::pure(), all_colorings)
}

/// Graphs on which the conjunctive and disjunctive readings of the
/// definition disagree.
pub fn reading_divergence_suite(
    graphs: &[Graph],
    source: &GraphSource,
    r: &Recognizer,
) -> Result<SuiteReport, HarnessError> {
    require_pure(r)?;
    let start = Instant::now();
    let rows: Vec<(bool, bool)> = graphs
        .par_iter()
        .map(|g| Ok((r.is_quasiperfect(g)?, disjunctive_verdict(g, r.config().limit)?)))
        .collect::<Result<_, HarnessError>>()?;
    let diverging: Vec<String> = graphs
        .iter()
        .zip(&rows)
        .filter(|(_, (c, d))| c != d)
        .map(|(g, _)| g.to_graph6())
        .collect();
    let mut findings = BTreeMap::new();
    findings.insert("conjunctive_accepted".into(), json!(rows.iter().filter(|r| r.0).count()));
    findings.insert("disjunctive_accepted".into(), json!(rows.iter().filter(|r| r.1).count()));
    findings.insert("diverging".into(), json!(diverging));
    Ok(report("reading-divergence", SuiteKind::Survey, graphs, Vec::new(), findings, echo(source, r), start))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Supergraph {
    /// Contains the input as the induced subgraph on `0..n`.
    pub graph: Graph,
    pub added: usize,
}

/// Smallest quasiperfect graph containing `g` as an induced subgraph, with
/// at most `k_max` added vertices. Added vertices are attached in every
/// possible way (neighbourhood masks in increasing order); isomorphic
/// supergraphs are tested once.
pub fn minimal_qp_supergraph(g: &Graph, k_max: usize, r: &Recognizer) -> Result<Option<Supergraph>, HarnessError> {
    let needed = g.order() + k_max;
    if needed > r.config().limit {
        return Err(HarnessError::SupergraphLimit { needed, limit: r.config().limit });
    }
    let mut layer = vec![g.clone()];
    for added in 0..=k_max {
        if added > 0 {
            let mut seen = BTreeSet::new();
            let mut next = Vec::new();
            for h in &layer {
                let m = h.order();
                for mask in 0u64..1 << m {
                    let mut rows = h.rows().to_vec();
                    for (v, row) in rows.iter_mut().enumerate() {
                        *row |= (mask >> v & 1) << m;
                    }
                    rows.push(mask);
                    let s = Graph::from_adjacency(rows).expect("extension is a simple graph");
                    if seen.insert(canonical_form(&s).key) {
                        next.push(s);
                    }
                }
            }
            layer = next;
        }
        let verdicts: Vec<bool> = layer
            .par_iter()
            .map(|h| r.is_quasiperfect(h))
            .collect::<Result<_, _>>()?;
        if let Some(i) = verdicts.iter().position(|&q| q) {
            return Ok(Some(Supergraph { graph: layer[i].clone(), added }));
        }
    }
    Ok(None)
}

/// Per-graph classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub key: CanonicalKey,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    pub alpha: usize,
    pub chi: usize,
    /// `None` above the perfection limit.
    pub perfect: Option<bool>,
    pub quasiperfect: bool,
    /// Filled in by whoever stores the certificate.
    pub cert_ref: Option<String>,
}

/// Classifies `g`; a quasiperfect graph with ω ≠ χ aborts with the graph.
pub fn classify(g: &Graph, r: &Recognizer, perfection: &PerfectionChecker) -> Result<ClassificationRecord, HarnessError> {
    let quasiperfect = r.is_quasiperfect(g)?;
    let (omega, chi) = (clique_number(g), chromatic_number(g));
    if quasiperfect && omega != chi {
        return Err(HarnessError::Theorem1Violation { graph6: g.to_graph6(), omega, chi });
    }
    let key = canonical_form(g).key;
    Ok(ClassificationRecord {
        cert_ref: None,
        key,
        graph6: g.to_graph6(),
        n: g.order(),
        m: g.size(),
        omega,
        alpha: independence_number(g),
        chi,
        perfect: perfection.is_perfect(g).ok(),
        quasiperfect,
    })
}

pub fn classify_all(
    graphs: &[Graph],
    r: &Recognizer,
    perfection: &PerfectionChecker,
) -> Result<Vec<ClassificationRecord>, HarnessError> {
    graphs.par_iter().map(|g| classify(g, r, perfection)).collect()
}

pub fn write_records_csv<W: Write>(records: &[ClassificationRecord], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    for rec in records {
        w.serialize(rec)?;
    }
    w.flush()?;
    Ok(())
}

/// A proper colouring sanity check used by suites and tests.
pub fn coloring_is_optimal(g: &Graph, colors: &[usize]) -> bool {
    is_proper_coloring(g, colors) && crate::invariants::color_count(colors) == chromatic_number(g)
}
