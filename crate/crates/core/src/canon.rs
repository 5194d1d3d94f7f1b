//! Canonical labelling by individualisation and equitable refinement.
//!
//! The canonical form is the smallest relabelled adjacency matrix over all
//! leaves of the search tree. Subtrees are skipped only when a discovered
//! automorphism maps them onto an already explored subtree, so the minimum
//! is taken over a leaf set that is closed under isomorphism.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::graph6::emit_graph6;

/// Isomorphism-invariant fingerprint of a graph.
///
/// The bytes are the graph6 encoding of the canonical relabelling: the
/// order followed by the packed upper triangle.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalKey(String);

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    /// `labeling[v]` is the canonical index of vertex `v`.
    pub labeling: Vec<usize>,
    /// `graph.permute(labeling)`.
    pub graph: Graph,
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    canonical_form(g).key
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.order();
    if n == 0 {
        return CanonicalForm {
            key: CanonicalKey(emit_graph6(g)),
            labeling: Vec::new(),
            graph: g.clone(),
        };
    }
    let mut search = Search {
        g,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    let root = refine(g, vec![g.vertices()]);
    search.descend(root, 0, true);
    let (labeling, rows) = search.best.expect("search visits at least one leaf");
    let graph = Graph::from_adjacency(rows).expect("relabelled adjacency is valid");
    CanonicalForm {
        key: CanonicalKey(emit_graph6(&graph)),
        labeling,
        graph,
    }
}

type Partition = Vec<VertexSet>;

struct Leaf {
    labeling: Vec<usize>,
    rows: Vec<u64>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<(Vec<usize>, Vec<u64>)>,
    /// Automorphisms with the first-path level at which they were found;
    /// an automorphism found at level `d` fixes the first `d` individualised
    /// vertices of the first path.
    automorphisms: Vec<(usize, Vec<usize>)>,
}

enum Outcome {
    Continue,
    /// Abandon everything below the first-path node at this depth.
    Backjump(usize),
}

impl Search<'_> {
    fn descend(&mut self, partition: Partition, depth: usize, on_first_path: bool) -> Outcome {
        self.descend_with(partition, depth, on_first_path, &mut Vec::new())
    }

    fn descend_with(
        &mut self,
        partition: Partition,
        depth: usize,
        on_first_path: bool,
        path: &mut Vec<usize>,
    ) -> Outcome {
        let Some(target) = partition.iter().position(|c| c.len() > 1) else {
            return self.leaf(&partition, path);
        };
        let cell = partition[target];
        let mut explored = VertexSet::EMPTY;
        for v in cell {
            if on_first_path && !explored.is_empty() && self.in_orbit_of(depth, explored, v) {
                continue;
            }
            let mut child = Vec::with_capacity(partition.len() + 1);
            child.extend_from_slice(&partition[..target]);
            child.push(VertexSet::singleton(v));
            child.push(cell.without(v));
            child.extend_from_slice(&partition[target + 1..]);
            let child = refine(self.g, child);

            path.push(v);
            let first_child = on_first_path && explored.is_empty();
            let outcome = self.descend_with(child, depth + 1, first_child, path);
            path.pop();
            explored.insert(v);

            if let Outcome::Backjump(level) = outcome {
                if level < depth {
                    return outcome;
                }
            }
        }
        Outcome::Continue
    }

    fn leaf(&mut self, partition: &Partition, path: &[usize]) -> Outcome {
        let n = self.g.order();
        let mut labeling = vec![0usize; n];
        for (pos, cell) in partition.iter().enumerate() {
            labeling[cell.first().expect("discrete partition")] = pos;
        }
        let rows = relabel_rows(self.g, &labeling);

        let outcome = match &self.first {
            None => {
                self.first = Some(Leaf {
                    labeling: labeling.clone(),
                    rows: rows.clone(),
                    path: path.to_vec(),
                });
                Outcome::Continue
            }
            Some(first) if first.rows == rows => {
                // v sits at first.labeling[v]; map it to the vertex at that position here
                let auto: Vec<usize> = first.labeling.iter().map(|&p| position_owner(&labeling, p)).collect();
                let level = first
                    .path
                    .iter()
                    .zip(path)
                    .take_while(|(a, b)| a == b)
                    .count();
                self.automorphisms.push((level, auto));
                Outcome::Backjump(level)
            }
            Some(_) => Outcome::Continue,
        };

        let better = match &self.best {
            None => true,
            Some((_, best_rows)) => rows.cmp(best_rows) == Ordering::Less,
        };
        if better {
            self.best = Some((labeling, rows));
        }
        outcome
    }

    /// Whether `v` shares an orbit with a member of `explored` under the
    /// automorphisms fixing the first `depth` first-path vertices.
    fn in_orbit_of(&self, depth: usize, explored: VertexSet, v: usize) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (level, auto) in &self.automorphisms {
            if *level < depth {
                continue;
            }
            for (x, &y) in auto.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, v);
        explored.iter().any(|u| find(&mut parent, u) == root)
    }
}

fn position_owner(labeling: &[usize], pos: usize) -> usize {
    labeling
        .iter()
        .position(|&p| p == pos)
        .expect("labeling is a permutation")
}

fn relabel_rows(g: &Graph, labeling: &[usize]) -> Vec<u64> {
    let mut rows = vec![0u64; g.order()];
    for v in 0..g.order() {
        rows[labeling[v]] = g.neighbors(v).iter().fold(0, |r, u| r | 1 << labeling[u]);
    }
    rows
}

/// Splits cells by neighbour counts into each splitter cell until the
/// partition is equitable. New fragments are ordered by increasing count,
/// so the result commutes with relabelling.
fn refine(g: &Graph, mut cells: Partition) -> Partition {
    let mut changed = true;
    while changed {
        changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut next = Vec::with_capacity(cells.len());
            let mut split_any = false;
            for &cell in &cells {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut counted: Vec<(usize, usize)> = cell
                    .iter()
                    .map(|v| ((g.neighbors(v) & splitter).len(), v))
                    .collect();
                counted.sort_unstable();
                let mut current = VertexSet::EMPTY;
                let mut current_count = counted[0].0;
                for (count, v) in counted {
                    if count != current_count {
                        next.push(current);
                        current = VertexSet::EMPTY;
                        current_count = count;
                        split_any = true;
                    }
                    current.insert(v);
                }
                next.push(current);
            }
            cells = next;
            if split_any {
                changed = true;
            }
            s += 1;
        }
    }
    cells
}
