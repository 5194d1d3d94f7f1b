//! Exact recognition of quasiperfect graphs.
//!
//! A graph is quasiperfect when it is the null graph K₀, or when it has an
//! independent set meeting every maximum clique (each member lying in some
//! maximum clique) whose removal leaves a quasiperfect graph, and a clique
//! meeting every maximum independent set (each member lying in some maximum
//! independent set) whose removal leaves a quasiperfect graph.
//!
//! The crate provides the graph substrate ([`graph`], [`graph6`], [`canon`],
//! [`invariants`], [`perfect`]), the recogniser and its certificates
//! ([`engine`]), the explicit constructions ([`constructions`]) and the
//! exhaustive verification suites ([`harness`]).

pub mod canon;
pub mod constructions;
pub mod engine;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod invariants;
pub mod perfect;

pub use canon::{canonical_form, canonical_key, CanonicalForm, CanonicalKey};
pub use engine::{
    coloring_from_certificate, complement_certificate, is_quasiperfect, verify_certificate, Mode, QpCertificate,
    RecognitionConfig, RecognitionError, RecognitionOutcome, Recognizer,
};
pub use graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
pub use graph6::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph6, ParseError};
pub use invariants::{
    chromatic_number, clique_number, independence_number, invariants, is_block_graph, is_forest, maximum_cliques,
    maximum_independent_sets, InvariantTriple,
};
pub use perfect::{is_perfect, PerfectionChecker};
