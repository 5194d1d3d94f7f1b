//! Decomposition certificates: recursive (PI, PK) witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::prime::{check_prime_set, PrimeSetKind, PrimeSetViolation};
use crate::canon::{canonical_key, CanonicalKey};
use crate::graph::{residue_origins, Graph, VertexSet, MAX_VERTICES};
use crate::graph6::{parse_graph6, ParseError};

pub const CERTIFICATE_SCHEMA: &str = "qpcert-v1";

/// Witness tree for a quasiperfect graph.
///
/// Children certify the residues `G[V - pi]` and `G[V - pk]`, whose
/// vertices are the survivors relabelled in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QpCertificate {
    /// Certifies K₀ only.
    Leaf,
    Node(Box<CertificateNode>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateNode {
    pub key: CanonicalKey,
    pub graph: Graph,
    pub pi: VertexSet,
    pub pk: VertexSet,
    pub pi_child: QpCertificate,
    pub pk_child: QpCertificate,
}

impl QpCertificate {
    pub fn node(graph: Graph, pi: VertexSet, pk: VertexSet, pi_child: QpCertificate, pk_child: QpCertificate) -> Self {
        QpCertificate::Node(Box::new(CertificateNode {
            key: canonical_key(&graph),
            graph,
            pi,
            pk,
            pi_child,
            pk_child,
        }))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, QpCertificate::Leaf)
    }

    /// The certified graph (K₀ for a leaf).
    pub fn graph(&self) -> Graph {
        match self {
            QpCertificate::Leaf => Graph::empty(0).expect("K0"),
            QpCertificate::Node(node) => node.graph.clone(),
        }
    }

    /// Number of nodes, leaves included.
    pub fn node_count(&self) -> usize {
        match self {
            QpCertificate::Leaf => 1,
            QpCertificate::Node(n) => 1 + n.pi_child.node_count() + n.pk_child.node_count(),
        }
    }

    /// Length of the chain of PI residues down to K₀.
    pub fn pi_depth(&self) -> usize {
        let mut depth = 0;
        let mut cur = self;
        while let QpCertificate::Node(n) = cur {
            depth += 1;
            cur = &n.pi_child;
        }
        depth
    }

    pub fn to_json(&self) -> String {
        let mut doc = to_json_node(self);
        doc.schema = Some(CERTIFICATE_SCHEMA.to_owned());
        serde_json::to_string_pretty(&doc).expect("certificate serialises")
    }

    pub fn from_json(text: &str) -> Result<QpCertificate, CertificateJsonError> {
        // one nesting level per tree level, so at most 65 for 64 vertices
        let doc: CertJson = serde_json::from_str(text)?;
        match doc.schema.as_deref() {
            Some(CERTIFICATE_SCHEMA) => {}
            other => return Err(CertificateJsonError::Schema(other.map(str::to_owned))),
        }
        from_json_node(&doc)
    }
}

#[derive(Debug, Error)]
pub enum CertificateJsonError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema {0:?}, expected \"qpcert-v1\"")]
    Schema(Option<String>),
    #[error(transparent)]
    Graph6(#[from] ParseError),
    #[error("malformed certificate node: {0}")]
    Malformed(String),
}

#[derive(Serialize, Deserialize)]
struct CertJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    graph6: String,
    #[serde(default)]
    leaf: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pi: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pk: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pi_child: Option<Box<CertJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pk_child: Option<Box<CertJson>>,
}

fn to_json_node(cert: &QpCertificate) -> CertJson {
    match cert {
        QpCertificate::Leaf => CertJson {
            schema: None,
            graph6: "?".to_owned(),
            leaf: true,
            pi: None,
            pk: None,
            pi_child: None,
            pk_child: None,
        },
        QpCertificate::Node(n) => CertJson {
            schema: None,
            graph6: n.graph.to_graph6(),
            leaf: false,
            pi: Some(n.pi.to_vec()),
            pk: Some(n.pk.to_vec()),
            pi_child: Some(Box::new(to_json_node(&n.pi_child))),
            pk_child: Some(Box::new(to_json_node(&n.pk_child))),
        },
    }
}

fn vertex_set(list: &[usize]) -> Result<VertexSet, CertificateJsonError> {
    if let Some(&v) = list.iter().find(|&&v| v >= MAX_VERTICES) {
        return Err(CertificateJsonError::Malformed(format!("vertex {v} out of range")));
    }
    Ok(list.iter().copied().collect())
}

fn from_json_node(doc: &CertJson) -> Result<QpCertificate, CertificateJsonError> {
    let graph = parse_graph6(&doc.graph6)?;
    if doc.leaf {
        if doc.pi.is_some() || doc.pk.is_some() || doc.pi_child.is_some() || doc.pk_child.is_some() {
            return Err(CertificateJsonError::Malformed("leaf carries prime sets or children".into()));
        }
        if !graph.is_null() {
            return Err(CertificateJsonError::Malformed("leaf for a non-null graph".into()));
        }
        return Ok(QpCertificate::Leaf);
    }
    let missing = |field: &str| CertificateJsonError::Malformed(format!("inner node without `{field}`"));
    let pi = vertex_set(doc.pi.as_deref().ok_or_else(|| missing("pi"))?)?;
    let pk = vertex_set(doc.pk.as_deref().ok_or_else(|| missing("pk"))?)?;
    let pi_child = from_json_node(doc.pi_child.as_deref().ok_or_else(|| missing("pi_child"))?)?;
    let pk_child = from_json_node(doc.pk_child.as_deref().ok_or_else(|| missing("pk_child"))?)?;
    Ok(QpCertificate::node(graph, pi, pk, pi_child, pk_child))
}

/// Why a certificate was rejected.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CertificateFault {
    #[error("leaf certificate for a graph with {0} vertices")]
    LeafForNonNullGraph(usize),
    #[error("inner node for the null graph")]
    NodeForNullGraph,
    #[error("certificate describes a different graph")]
    GraphMismatch,
    #[error("stored key does not match the canonical key")]
    KeyMismatch,
    #[error("invalid prime independent set: {0}")]
    PrimeIndependentSet(PrimeSetViolation),
    #[error("invalid prime clique: {0}")]
    PrimeClique(PrimeSetViolation),
}

/// A rejection with the position in the tree, e.g. `root/pi/pk`.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{path}: {fault}")]
pub struct CertificateError {
    pub path: String,
    pub fault: CertificateFault,
}

/// Re-checks every clause of the definition against `g` and its residues.
/// Uses only the exact invariant routines; no recogniser state.
pub fn verify_certificate(g: &Graph, cert: &QpCertificate) -> Result<(), CertificateError> {
    verify_at(g, cert, &mut String::from("root"))
}

fn verify_at(g: &Graph, cert: &QpCertificate, path: &mut String) -> Result<(), CertificateError> {
    let fail = |path: &String, fault| Err(CertificateError { path: path.clone(), fault });
    let node = match cert {
        QpCertificate::Leaf if g.is_null() => return Ok(()),
        QpCertificate::Leaf => return fail(path, CertificateFault::LeafForNonNullGraph(g.order())),
        QpCertificate::Node(_) if g.is_null() => return fail(path, CertificateFault::NodeForNullGraph),
        QpCertificate::Node(node) => node,
    };
    if node.graph != *g {
        return fail(path, CertificateFault::GraphMismatch);
    }
    if node.key != canonical_key(g) {
        return fail(path, CertificateFault::KeyMismatch);
    }
    if let Err(v) = check_prime_set(g, PrimeSetKind::PrimeIndependentSet, node.pi) {
        return fail(path, CertificateFault::PrimeIndependentSet(v));
    }
    if let Err(v) = check_prime_set(g, PrimeSetKind::PrimeClique, node.pk) {
        return fail(path, CertificateFault::PrimeClique(v));
    }
    for (suffix, removed, child) in [("/pi", node.pi, &node.pi_child), ("/pk", node.pk, &node.pk_child)] {
        let len = path.len();
        path.push_str(suffix);
        verify_at(&g.remove(removed), child, path)?;
        path.truncate(len);
    }
    Ok(())
}

pub fn is_valid_certificate(g: &Graph, cert: &QpCertificate) -> bool {
    verify_certificate(g, cert).is_ok()
}

/// Colours each level's PI along the chain of PI residues with a fresh
/// colour. The result is a proper colouring with exactly ω(G) colours.
pub fn coloring_from_certificate(g: &Graph, cert: &QpCertificate) -> Result<Vec<usize>, CertificateError> {
    verify_certificate(g, cert)?;
    let mut colors = vec![usize::MAX; g.order()];
    let mut origin: Vec<usize> = (0..g.order()).collect();
    let mut cur = cert;
    let mut color = 0;
    while let QpCertificate::Node(node) = cur {
        for v in node.pi {
            colors[origin[v]] = color;
        }
        origin = residue_origins(origin.len(), node.pi)
            .into_iter()
            .map(|i| origin[i])
            .collect();
        cur = &node.pi_child;
        color += 1;
    }
    Ok(colors)
}

/// Certificate for the complement graph: PI and PK trade places at every
/// level, together with their subtrees.
pub fn complement_certificate(cert: &QpCertificate) -> Result<QpCertificate, CertificateError> {
    verify_certificate(&cert.graph(), cert)?;
    Ok(swap(cert))
}

fn swap(cert: &QpCertificate) -> QpCertificate {
    match cert {
        QpCertificate::Leaf => QpCertificate::Leaf,
        QpCertificate::Node(n) => {
            QpCertificate::node(n.graph.complement(), n.pk, n.pi, swap(&n.pk_child), swap(&n.pi_child))
        }
    }
}

impl fmt::Display for QpCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2_certificate() -> QpCertificate {
        // K2: PI = {0} leaves K1, PK = {0,1} leaves K0
        let k1 = QpCertificate::node(
            Graph::complete(1),
            VertexSet::singleton(0),
            VertexSet::singleton(0),
            QpCertificate::Leaf,
            QpCertificate::Leaf,
        );
        QpCertificate::node(
            Graph::complete(2),
            VertexSet::singleton(0),
            VertexSet::full(2),
            k1,
            QpCertificate::Leaf,
        )
    }

    #[test]
    fn leaf_only_for_null_graph() {
        assert!(verify_certificate(&Graph::empty(0).unwrap(), &QpCertificate::Leaf).is_ok());
        let err = verify_certificate(&Graph::complete(1), &QpCertificate::Leaf).unwrap_err();
        assert_eq!(err.fault, CertificateFault::LeafForNonNullGraph(1));
    }

    #[test]
    fn hand_built_k2() {
        let cert = k2_certificate();
        verify_certificate(&Graph::complete(2), &cert).unwrap();
        assert_eq!(coloring_from_certificate(&Graph::complete(2), &cert).unwrap(), vec![0, 1]);
        let co = complement_certificate(&cert).unwrap();
        verify_certificate(&Graph::empty(2).unwrap(), &co).unwrap();
    }

    #[test]
    fn broken_pk_is_located() {
        let mut cert = k2_certificate();
        if let QpCertificate::Node(n) = &mut cert {
            n.pk = VertexSet::singleton(1);
        }
        let err = verify_certificate(&Graph::complete(2), &cert).unwrap_err();
        assert_eq!(err.path, "root");
        assert!(matches!(err.fault, CertificateFault::PrimeClique(_)));
    }

    #[test]
    fn json_round_trip_and_schema() {
        let cert = k2_certificate();
        let text = cert.to_json();
        assert!(text.contains("\"schema\": \"qpcert-v1\""));
        assert_eq!(QpCertificate::from_json(&text).unwrap(), cert);
        let wrong = text.replace("qpcert-v1", "qpcert-v0");
        assert!(matches!(QpCertificate::from_json(&wrong), Err(CertificateJsonError::Schema(_))));
        let leafy = r#"{"schema":"qpcert-v1","graph6":"@","leaf":true}"#;
        assert!(matches!(QpCertificate::from_json(leafy), Err(CertificateJsonError::Malformed(_))));
    }
}
