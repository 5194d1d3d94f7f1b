//! Concrete graphs and prime sets: odd cycles with attached triangles,
//! clique replication, the replication-based prime clique of a perfect
//! graph, and the blown-up five-cycle counterexample.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::engine::prime::{check_prime_clique, check_prime_independent_set, prime_independent_sets, PrimeSetViolation};
use crate::graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
use crate::invariants::{is_forest, is_proper_coloring, maximum_clique, maximum_independent_sets};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("cycle length {0} is even")]
    EvenCycle(usize),
    #[error("cycle length {0} is below 5")]
    CycleTooShort(usize),
    #[error("at least one attachment position is required")]
    NoPositions,
    #[error("position {position} outside 1..={n}")]
    PositionOutOfRange { position: usize, n: usize },
    #[error("positions must be strictly increasing")]
    PositionsNotIncreasing,
    #[error("expected {expected} multiplicities, found {found}")]
    MultiplicityLength { expected: usize, found: usize },
    #[error("blow-up factor must be at least 1")]
    ZeroMultiplicity,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("the null graph has no prime clique")]
    NullGraph,
    #[error("replicated graph has clique number {omega} but {mis_count} maximum independent sets; input is not perfect")]
    NotPerfect { omega: usize, mis_count: usize },
    #[error("replication-derived clique is not a prime clique: {0}")]
    NotPrimeClique(PrimeSetViolation),
    #[error("no prime independent set with a forest residue exists")]
    NoForestPrimeIndependentSet,
    #[error("cannot parse construction `{0}`")]
    Syntax(String),
}

/// Odd cycle `C_n` plus triangles attached at the given edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    n: usize,
    positions: Vec<usize>,
}

impl FamilySpec {
    /// `positions` are 1-based edge indices `k` (edge `v_k v_{k+1}`),
    /// strictly increasing.
    pub fn new(n: usize, positions: Vec<usize>) -> Result<Self, ConstructionError> {
        if n.is_multiple_of(2) {
            return Err(ConstructionError::EvenCycle(n));
        }
        if n < 5 {
            return Err(ConstructionError::CycleTooShort(n));
        }
        if positions.is_empty() {
            return Err(ConstructionError::NoPositions);
        }
        if let Some(&position) = positions.iter().find(|&&k| k == 0 || k > n) {
            return Err(ConstructionError::PositionOutOfRange { position, n });
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ConstructionError::PositionsNotIncreasing);
        }
        if n + positions.len() > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n: n + positions.len(), limit: MAX_VERTICES }.into());
        }
        Ok(FamilySpec { n, positions })
    }

    pub fn cycle_len(&self) -> usize {
        self.n
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ks: Vec<String> = self.positions.iter().map(ToString::to_string).collect();
        write!(f, "family n={} k={{{}}}", self.n, ks.join(","))
    }
}

/// A family graph with its vertex roles. `v_i` (1-based) is vertex `i - 1`;
/// the wing `w_{k_p}` attached at the `p`-th position is vertex `n + p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyGraph {
    pub spec: FamilySpec,
    pub graph: Graph,
}

impl FamilyGraph {
    /// Index of `v_i`, with `v_{n+1} = v_1`.
    pub fn v(&self, i: usize) -> usize {
        (i - 1) % self.spec.n
    }

    /// Index of `w_k`, if a triangle is attached at `k`.
    pub fn w(&self, k: usize) -> Option<usize> {
        self.spec.positions.iter().position(|&p| p == k).map(|p| self.spec.n + p)
    }

    pub fn cycle_vertices(&self) -> VertexSet {
        VertexSet::full(self.spec.n)
    }

    pub fn wing_vertices(&self) -> Vec<(usize, usize)> {
        self.spec
            .positions
            .iter()
            .enumerate()
            .map(|(p, &k)| (k, self.spec.n + p))
            .collect()
    }

    /// The attached triangle `{w_k, v_k, v_{k+1}}`.
    pub fn triangle(&self, k: usize) -> Option<VertexSet> {
        self.w(k).map(|w| VertexSet::singleton(w).with(self.v(k)).with(self.v(k + 1)))
    }
}

pub fn odd_cycle_family(spec: &FamilySpec) -> FamilyGraph {
    let n = spec.n;
    let cycle = (0..n).map(|i| (i, (i + 1) % n));
    let wings = spec
        .positions
        .iter()
        .enumerate()
        .flat_map(|(p, &k)| [(n + p, k - 1), (n + p, k % n)]);
    let graph = Graph::from_edges(n + spec.positions.len(), cycle.chain(wings))
        .expect("family spec was validated");
    FamilyGraph { spec: spec.clone(), graph }
}

/// `{w_{k_1}, v_{k_1}, v_{k_1 + 1}}`: the first attached triangle.
///
/// It always meets every maximum independent set and leaves a block graph,
/// but `v_{k_1}` often lies in no maximum independent set, so the result is
/// not a prime clique in general.
pub fn family_prime_clique(fg: &FamilyGraph) -> VertexSet {
    fg.triangle(fg.spec.positions[0]).expect("first position has a wing")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PiMethod {
    /// All positions attached: `{w_n, v_2, v_4, …, v_{n-1}}`.
    Formula,
    /// Thinned attachment vertices, patched with wings.
    Repair,
    /// First enumerated prime independent set with a forest residue.
    ExhaustiveFallback,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyPrimeIndependentSet {
    pub set: VertexSet,
    pub method: PiMethod,
}

/// A prime independent set whose residue is a forest.
pub fn family_prime_independent_set(fg: &FamilyGraph) -> Result<FamilyPrimeIndependentSet, ConstructionError> {
    let g = &fg.graph;
    let acceptable = |s: VertexSet| check_prime_independent_set(g, s).is_ok() && is_forest(&g.remove(s));

    let (candidate, method) = if fg.spec.positions.len() == fg.spec.n {
        (formula_pi(fg), PiMethod::Formula)
    } else {
        (repair_pi(fg), PiMethod::Repair)
    };
    if acceptable(candidate) {
        return Ok(FamilyPrimeIndependentSet { set: candidate, method });
    }
    prime_independent_sets(g)
        .find(|&s| is_forest(&g.remove(s)))
        .map(|set| FamilyPrimeIndependentSet { set, method: PiMethod::ExhaustiveFallback })
        .ok_or(ConstructionError::NoForestPrimeIndependentSet)
}

fn formula_pi(fg: &FamilyGraph) -> VertexSet {
    let n = fg.spec.n;
    let mut s = VertexSet::singleton(fg.w(n).expect("all positions attached"));
    for i in (2..n).step_by(2) {
        s.insert(fg.v(i));
    }
    s
}

/// Walks the attachment vertices `v_k` in cyclic order from the start of a
/// run, dropping each one adjacent to the previously kept vertex, then adds
/// `w_k` for every triangle left unmet.
fn repair_pi(fg: &FamilyGraph) -> VertexSet {
    let n = fg.spec.n;
    let attached = |k: usize| fg.w(k).is_some();
    let prev = |k: usize| if k == 1 { n } else { k - 1 };
    let start = fg
        .spec
        .positions
        .iter()
        .copied()
        .find(|&k| !attached(prev(k)))
        .expect("fewer positions than cycle edges");

    let mut kept = VertexSet::EMPTY;
    let mut last_kept: Option<usize> = None;
    for step in 0..n {
        let k = (start - 1 + step) % n + 1;
        if !attached(k) {
            continue;
        }
        let v = fg.v(k);
        if last_kept.is_some_and(|u| fg.graph.adjacent(u, v)) {
            continue;
        }
        kept.insert(v);
        last_kept = Some(v);
    }
    for (k, w) in fg.wing_vertices() {
        let triangle = fg.triangle(k).expect("attached");
        if !triangle.intersects(kept) {
            kept.insert(w);
        }
    }
    kept
}

/// Vertex multiplicities `t_v` for replication.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicities(Vec<usize>);

impl Multiplicities {
    pub fn new(g: &Graph, t: Vec<usize>) -> Result<Self, ConstructionError> {
        if t.len() != g.order() {
            return Err(ConstructionError::MultiplicityLength { expected: g.order(), found: t.len() });
        }
        Ok(Multiplicities(t))
    }

    pub fn uniform(g: &Graph, t: usize) -> Self {
        Multiplicities(vec![t; g.order()])
    }

    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replication {
    pub graph: Graph,
    /// `origin[x]` is the source vertex of copy `x`; copies of one source are
    /// consecutive and sources appear in increasing order.
    pub origin: Vec<usize>,
}

/// Replaces each vertex `v` by a clique on `t_v` vertices; copies of
/// adjacent sources are fully joined. `t_v = 0` deletes `v`.
pub fn replicate(g: &Graph, t: &Multiplicities) -> Result<Replication, ConstructionError> {
    if t.0.len() != g.order() {
        return Err(ConstructionError::MultiplicityLength { expected: g.order(), found: t.0.len() });
    }
    let origin: Vec<usize> = (0..g.order()).flat_map(|v| std::iter::repeat_n(v, t.get(v))).collect();
    let total = origin.len();
    let mut edges = Vec::new();
    for x in 0..total {
        for y in x + 1..total {
            let (a, b) = (origin[x], origin[y]);
            if a == b || g.adjacent(a, b) {
                edges.push((x, y));
            }
        }
    }
    let graph = Graph::from_edges(total, edges)?;
    Ok(Replication { graph, origin })
}

/// Everything computed while extracting a prime clique by replication.
#[derive(Clone, Debug)]
pub struct LovaszReport {
    pub multiplicities: Multiplicities,
    pub replication: Replication,
    /// Number of maximum independent sets of the input.
    pub mis_count: usize,
    /// Colouring of the replicated graph by maximum independent set.
    pub mis_coloring: Vec<usize>,
    /// Maximum clique of the replicated graph.
    pub replicated_clique: VertexSet,
    pub prime_clique: VertexSet,
}

/// Replicates each vertex once per maximum independent set containing it,
/// takes a maximum clique of the result and returns its sources.
///
/// Checks that the replicated graph has clique number equal to the number
/// `I` of maximum independent sets and that colouring each copy by its
/// independent set is proper, so its chromatic number is `I` as well.
pub fn lovasz_replication(g: &Graph) -> Result<LovaszReport, ConstructionError> {
    if g.is_null() {
        return Err(ConstructionError::NullGraph);
    }
    let mis = maximum_independent_sets(g);
    let t: Vec<usize> = (0..g.order()).map(|v| mis.iter().filter(|s| s.contains(v)).count()).collect();
    let multiplicities = Multiplicities(t);
    let replication = replicate(g, &multiplicities)?;

    let mut mis_coloring = Vec::with_capacity(replication.origin.len());
    for v in 0..g.order() {
        mis_coloring.extend(mis.iter().enumerate().filter(|(_, s)| s.contains(v)).map(|(i, _)| i));
    }
    let clique = maximum_clique(&replication.graph);
    if clique.len() != mis.len() || !is_proper_coloring(&replication.graph, &mis_coloring) {
        return Err(ConstructionError::NotPerfect { omega: clique.len(), mis_count: mis.len() });
    }
    let prime_clique: VertexSet = clique.iter().map(|x| replication.origin[x]).collect();
    check_prime_clique(g, prime_clique).map_err(ConstructionError::NotPrimeClique)?;
    Ok(LovaszReport {
        multiplicities,
        replication,
        mis_count: mis.len(),
        mis_coloring,
        replicated_clique: clique,
        prime_clique,
    })
}

pub fn lovasz_prime_clique(g: &Graph) -> Result<VertexSet, ConstructionError> {
    lovasz_replication(g).map(|r| r.prime_clique)
}

/// `C_5` with every vertex blown up to a `t`-clique, plus one vertex joined
/// to the two cliques replacing `v_1` and `v_2`. Clique `i` occupies
/// `i*t .. (i+1)*t`; the extra vertex is `5t`.
pub fn remark_counterexample(t: usize) -> Result<Graph, ConstructionError> {
    if t == 0 {
        return Err(ConstructionError::ZeroMultiplicity);
    }
    let c5 = Graph::cycle(5);
    let blown = replicate(&c5, &Multiplicities::uniform(&c5, t))?;
    let n = 5 * t + 1;
    let extra = (0..2 * t).map(|x| (x, 5 * t));
    Ok(Graph::from_edges(n, blown.graph.edges().chain(extra))?)
}

/// Textual construction: `family n=5 k={1,3}` or `c5blowup t=3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Family(FamilySpec),
    C5Blowup(usize),
}

impl FromStr for Construction {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || ConstructionError::Syntax(s.to_owned());
        let mut words = s.split_whitespace();
        let kind = words.next().ok_or_else(syntax)?;
        let mut n = None;
        let mut k = None;
        let mut t = None;
        for word in words {
            let (key, value) = word.split_once('=').ok_or_else(syntax)?;
            let value = value.trim_start_matches('{').trim_end_matches('}');
            let number = |v: &str| v.parse::<usize>().map_err(|_| syntax());
            match key {
                "n" => n = Some(number(value)?),
                "t" => t = Some(number(value)?),
                "k" => k = Some(value.split(',').map(number).collect::<Result<Vec<_>, _>>()?),
                _ => return Err(syntax()),
            }
        }
        match (kind, n, k, t) {
            ("family", Some(n), Some(k), None) => Ok(Construction::Family(FamilySpec::new(n, k)?)),
            ("c5blowup", None, None, Some(t)) => {
                if t == 0 {
                    Err(ConstructionError::ZeroMultiplicity)
                } else {
                    Ok(Construction::C5Blowup(t))
                }
            }
            _ => Err(syntax()),
        }
    }
}

impl Construction {
    pub fn build(&self) -> Result<Graph, ConstructionError> {
        match self {
            Construction::Family(spec) => Ok(odd_cycle_family(spec).graph),
            Construction::C5Blowup(t) => remark_counterexample(*t),
        }
    }
}
