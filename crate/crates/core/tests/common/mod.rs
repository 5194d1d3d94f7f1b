//! Brute-force oracles shared by the integration tests. Everything here is
//! written directly from the definitions and shares no code with the
//! library beyond the `Graph` container.
#![allow(dead_code)]

use std::collections::HashMap;

use proptest::prelude::*;
use qpkit::{Graph, VertexSet};

pub fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits >> k & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Every labelled graph on `n` vertices.
pub fn labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..1 << pairs).map(move |b| graph_from_bits(n, b))
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let pairs = (1..n).flat_map(|j| (0..j).map(move |i| (i, j)));
            let edges = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

pub fn adjacent(g: &Graph, u: usize, v: usize) -> bool {
    g.rows()[u] >> v & 1 == 1
}

pub fn is_clique(g: &Graph, s: u64) -> bool {
    members(s).iter().all(|&u| members(s).iter().all(|&v| u == v || adjacent(g, u, v)))
}

pub fn is_independent(g: &Graph, s: u64) -> bool {
    members(s).iter().all(|&u| members(s).iter().all(|&v| !adjacent(g, u, v)))
}

pub fn members(s: u64) -> Vec<usize> {
    (0..64).filter(|&i| s >> i & 1 == 1).collect()
}

pub fn max_cliques(g: &Graph) -> Vec<u64> {
    let all: Vec<u64> = (0u64..1 << g.order()).filter(|&s| is_clique(g, s)).collect();
    let best = all.iter().map(|s| s.count_ones()).max().unwrap_or(0);
    all.into_iter().filter(|s| s.count_ones() == best).collect()
}

pub fn omega(g: &Graph) -> usize {
    max_cliques(g)[0].count_ones() as usize
}

pub fn alpha(g: &Graph) -> usize {
    omega(&g.complement())
}

/// Smallest k admitting a proper colouring, trying all k^n assignments.
pub fn chi(g: &Graph) -> usize {
    let n = g.order();
    (0..=n)
        .find(|&k| {
            let total = (k as u64).pow(n as u32);
            (0..total).any(|mut code| {
                let mut c = vec![0usize; n];
                for x in c.iter_mut() {
                    *x = (code % k as u64) as usize;
                    code /= k as u64;
                }
                (0..n).all(|u| (0..u).all(|v| !adjacent(g, u, v) || c[u] != c[v]))
            })
        })
        .unwrap()
}

pub fn induced(g: &Graph, keep: u64) -> Graph {
    g.induced_subgraph(VertexSet::from_bits(keep)).unwrap()
}

pub fn full(n: usize) -> u64 {
    if n == 64 { u64::MAX } else { (1u64 << n) - 1 }
}

/// Perfection by checking ω = χ on every induced subgraph.
pub fn perfect(g: &Graph) -> bool {
    (0u64..1 << g.order()).all(|s| {
        let h = induced(g, s);
        omega(&h) == chi(&h)
    })
}

/// Prime independent set per the definition.
pub fn is_pi(g: &Graph, s: u64) -> bool {
    let cliques = max_cliques(g);
    is_independent(g, s)
        && cliques.iter().all(|c| c & s != 0)
        && members(s).iter().all(|&v| cliques.iter().any(|c| c >> v & 1 == 1))
}

pub fn is_pk(g: &Graph, s: u64) -> bool {
    is_pi(&g.complement(), s)
}

/// Quasiperfection straight from the definition (conjunctive reading),
/// memoised on the labelled adjacency only.
pub fn qp(g: &Graph) -> bool {
    fn go(g: &Graph, memo: &mut HashMap<Vec<u64>, bool>) -> bool {
        if g.order() == 0 {
            return true;
        }
        if let Some(&v) = memo.get(g.rows()) {
            return v;
        }
        let all = full(g.order());
        let co = g.complement();
        let pi = (1u64..=all).any(|s| is_pi(g, s) && go(&induced(g, all & !s), memo));
        let ans = pi && (1u64..=all).any(|s| is_pi(&co, s) && go(&induced(g, all & !s), memo));
        memo.insert(g.rows().to_vec(), ans);
        ans
    }
    go(g, &mut HashMap::new())
}

/// Disjunctive reading: PI branch or PK branch.
pub fn qp_disjunctive(g: &Graph) -> bool {
    if g.order() == 0 {
        return true;
    }
    let all = full(g.order());
    let co = g.complement();
    (1u64..=all).any(|s| {
        (is_pi(g, s) || is_pi(&co, s)) && qp_disjunctive(&induced(g, all & !s))
    })
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !prefix.contains(&v) {
                prefix.push(v);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

/// Canonical invariant by minimising adjacency rows over all permutations.
pub fn brute_canonical(g: &Graph) -> Vec<u64> {
    permutations(g.order())
        .into_iter()
        .map(|p| g.permute(&p).rows().to_vec())
        .min()
        .unwrap_or_default()
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.size() == b.size() && brute_canonical(a) == brute_canonical(b)
}

/// Plain backtracking k-colourability in vertex order.
pub fn colorable(g: &Graph, k: usize) -> bool {
    fn rec(g: &Graph, k: usize, v: usize, c: &mut Vec<usize>, used: usize) -> bool {
        if v == g.order() {
            return true;
        }
        for col in 0..k.min(used + 1) {
            if (0..v).all(|u| !adjacent(g, u, v) || c[u] != col) {
                c.push(col);
                if rec(g, k, v + 1, c, used.max(col + 1)) {
                    return true;
                }
                c.pop();
            }
        }
        false
    }
    rec(g, k, 0, &mut Vec::new(), 0)
}

pub fn chi_backtracking(g: &Graph) -> usize {
    (0..=g.order()).find(|&k| colorable(g, k)).unwrap()
}
