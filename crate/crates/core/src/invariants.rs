//! Exact clique, independence and chromatic numbers, plus the structural
//! predicates used for residues.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTriple {
    pub omega: usize,
    pub alpha: usize,
    pub chi: usize,
}

pub fn invariants(g: &Graph) -> InvariantTriple {
    InvariantTriple {
        omega: clique_number(g),
        alpha: independence_number(g),
        chi: chromatic_number(g),
    }
}

/// Greedy colouring of `candidates` in increasing vertex order; returns the
/// vertices with their colour bound, sorted by bound. Used to prune the
/// clique search: a clique inside `candidates` has at most `bound` vertices.
fn colour_bounds(g: &Graph, candidates: VertexSet) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(candidates.len());
    let mut uncoloured = candidates;
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut available = uncoloured;
        while let Some(v) = available.first() {
            available = available.without(v) - g.neighbors(v);
            uncoloured.remove(v);
            out.push((v, colour));
        }
    }
    out
}

fn max_clique_rec(g: &Graph, current: VertexSet, candidates: VertexSet, best: &mut VertexSet) {
    let ordered = colour_bounds(g, candidates);
    let mut candidates = candidates;
    for &(v, bound) in ordered.iter().rev() {
        if current.len() + bound <= best.len() {
            return;
        }
        let next = current.with(v);
        let sub = candidates & g.neighbors(v);
        if sub.is_empty() {
            if next.len() > best.len() {
                *best = next;
            }
        } else {
            max_clique_rec(g, next, sub, best);
        }
        candidates.remove(v);
    }
}

/// Some maximum clique (branch and bound with greedy colouring bounds).
pub fn maximum_clique(g: &Graph) -> VertexSet {
    let mut best = VertexSet::EMPTY;
    max_clique_rec(g, VertexSet::EMPTY, g.vertices(), &mut best);
    best
}

pub fn clique_number(g: &Graph) -> usize {
    maximum_clique(g).len()
}

pub fn independence_number(g: &Graph) -> usize {
    clique_number(&g.complement())
}

/// Every clique of size exactly `size`, in lexicographic order.
pub fn cliques_of_size(g: &Graph, size: usize) -> Vec<VertexSet> {
    fn rec(g: &Graph, size: usize, current: VertexSet, candidates: VertexSet, out: &mut Vec<VertexSet>) {
        if current.len() == size {
            out.push(current);
            return;
        }
        if current.len() + candidates.len() < size {
            return;
        }
        let mut rest = candidates;
        for v in candidates {
            rest.remove(v);
            if current.len() + 1 + rest.len() < size {
                break;
            }
            rec(g, size, current.with(v), rest & g.neighbors(v), out);
        }
    }
    let mut out = Vec::new();
    if size == 0 {
        return out;
    }
    rec(g, size, VertexSet::EMPTY, g.vertices(), &mut out);
    out
}

/// All cliques of size ω(G), lexicographically ordered; empty for K₀.
pub fn maximum_cliques(g: &Graph) -> Vec<VertexSet> {
    cliques_of_size(g, clique_number(g))
}

/// All independent sets of size α(G), lexicographically ordered.
pub fn maximum_independent_sets(g: &Graph) -> Vec<VertexSet> {
    maximum_cliques(&g.complement())
}

pub fn is_proper_coloring(g: &Graph, colors: &[usize]) -> bool {
    colors.len() == g.order() && g.edges().all(|(u, v)| colors[u] != colors[v])
}

pub fn color_count(colors: &[usize]) -> usize {
    let mut seen: Vec<usize> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// DSATUR greedy colouring.
fn dsatur_greedy(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colors = vec![usize::MAX; n];
    let mut forbidden = vec![0u64; n];
    let mut uncoloured = g.vertices();
    while !uncoloured.is_empty() {
        let v = pick_dsatur(g, uncoloured, &forbidden);
        let c = (!forbidden[v]).trailing_zeros() as usize;
        colors[v] = c;
        uncoloured.remove(v);
        for u in g.neighbors(v) & uncoloured {
            forbidden[u] |= 1 << c;
        }
    }
    colors
}

fn pick_dsatur(g: &Graph, uncoloured: VertexSet, forbidden: &[u64]) -> usize {
    uncoloured
        .iter()
        .max_by(|&a, &b| {
            let key = |v: usize| (forbidden[v].count_ones(), (g.neighbors(v) & uncoloured).len());
            // ties go to the smaller index
            key(a).cmp(&key(b)).then(b.cmp(&a))
        })
        .expect("non-empty set")
}

/// Tries to colour `g` with `k` colours; new colours are opened in order so
/// permuted colourings are never revisited.
pub fn k_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    fn rec(g: &Graph, k: usize, uncoloured: VertexSet, used: usize, colors: &mut [usize], forbidden: &mut [u64]) -> bool {
        if uncoloured.is_empty() {
            return true;
        }
        let v = pick_dsatur(g, uncoloured, forbidden);
        let limit = (used + 1).min(k);
        for c in 0..limit {
            if forbidden[v] >> c & 1 == 1 {
                continue;
            }
            colors[v] = c;
            let touched: Vec<usize> = (g.neighbors(v) & uncoloured)
                .iter()
                .filter(|&u| forbidden[u] >> c & 1 == 0)
                .collect();
            for &u in &touched {
                forbidden[u] |= 1 << c;
            }
            if rec(g, k, uncoloured.without(v), used.max(c + 1), colors, forbidden) {
                return true;
            }
            for &u in &touched {
                forbidden[u] &= !(1 << c);
            }
        }
        colors[v] = usize::MAX;
        false
    }
    let n = g.order();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let mut colors = vec![usize::MAX; n];
    let mut forbidden = vec![0u64; n];
    rec(g, k, g.vertices(), 0, &mut colors, &mut forbidden).then_some(colors)
}

/// An optimal colouring with colours `0..χ(G)`.
pub fn minimum_coloring(g: &Graph) -> Vec<usize> {
    let greedy = dsatur_greedy(g);
    let upper = color_count(&greedy);
    let lower = clique_number(g);
    for k in lower..upper {
        if let Some(c) = k_coloring(g, k) {
            return c;
        }
    }
    greedy
}

pub fn chromatic_number(g: &Graph) -> usize {
    color_count(&minimum_coloring(g))
}

pub fn is_forest(g: &Graph) -> bool {
    let mut parent: Vec<usize> = (0..g.order()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Biconnected components as vertex sets (Hopcroft–Tarjan with an edge stack).
pub fn biconnected_components(g: &Graph) -> Vec<VertexSet> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<VertexSet>,
    }
    fn dfs(s: &mut State, u: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for v in s.g.neighbors(u) {
            if Some(v) == parent {
                continue;
            }
            if s.disc[v] == 0 {
                s.stack.push((u, v));
                dfs(s, v, Some(u));
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut comp = VertexSet::EMPTY;
                    while let Some((a, b)) = s.stack.pop() {
                        comp.insert(a);
                        comp.insert(b);
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    s.out.push(comp);
                }
            } else if s.disc[v] < s.disc[u] {
                s.stack.push((u, v));
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }
    let n = g.order();
    let mut s = State {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    s.out
}

/// Every biconnected component induces a complete graph.
pub fn is_block_graph(g: &Graph) -> bool {
    biconnected_components(g).into_iter().all(|c| g.is_clique(c))
}
