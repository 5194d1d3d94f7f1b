mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use qpkit::harness::enumerate_up_to;
use qpkit::invariants::{
    cliques_of_size, is_proper_coloring, k_coloring, maximum_independent_sets, minimum_coloring,
};
use qpkit::{
    chromatic_number, clique_number, independence_number, is_block_graph, is_forest, is_perfect, maximum_cliques,
    Graph,
};

fn is_forest_oracle(g: &Graph) -> bool {
    // acyclic iff m = n - components
    let n = g.order();
    let mut seen = vec![false; n];
    let mut components = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        components += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for (v, seen_v) in seen.iter_mut().enumerate() {
                if common::adjacent(g, u, v) && !*seen_v {
                    *seen_v = true;
                    stack.push(v);
                }
            }
        }
    }
    g.size() + components == n
}

/// Block graphs are exactly the chordal diamond-free graphs.
fn is_block_oracle(g: &Graph) -> bool {
    (0u64..1 << g.order()).all(|s| {
        let h = common::induced(g, s);
        let k = h.order();
        let degrees: Vec<usize> = (0..k).map(|v| h.degree(v)).collect();
        let connected = is_connected(&h);
        let hole = k >= 4 && connected && degrees.iter().all(|&d| d == 2);
        let diamond = k == 4 && h.size() == 5;
        !hole && !diamond
    })
}

fn is_connected(g: &Graph) -> bool {
    if g.order() == 0 {
        return true;
    }
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        for v in common::members(frontier) {
            next |= g.rows()[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == common::full(g.order())
}

#[test]
fn exhaustive_through_six() {
    for g in enumerate_up_to(6).unwrap() {
        assert_eq!(clique_number(&g), common::omega(&g), "{g:?}");
        assert_eq!(independence_number(&g), common::alpha(&g), "{g:?}");
        assert_eq!(chromatic_number(&g), common::chi(&g), "{g:?}");
        if g.order() == 0 {
            // by convention K0 lists no maximum cliques rather than {}
            assert!(maximum_cliques(&g).is_empty() && maximum_independent_sets(&g).is_empty());
            continue;
        }
        let lib: BTreeSet<u64> = maximum_cliques(&g).iter().map(|s| s.bits()).collect();
        let oracle: BTreeSet<u64> = common::max_cliques(&g).into_iter().collect();
        assert_eq!(lib, oracle, "{g:?}");
        let mis: BTreeSet<u64> = maximum_independent_sets(&g).iter().map(|s| s.bits()).collect();
        let oracle: BTreeSet<u64> = common::max_cliques(&g.complement()).into_iter().collect();
        assert_eq!(mis, oracle, "{g:?}");
        assert_eq!(is_forest(&g), is_forest_oracle(&g), "{g:?}");
        assert_eq!(is_block_graph(&g), is_block_oracle(&g), "{g:?}");
        let colors = minimum_coloring(&g);
        assert!(is_proper_coloring(&g, &colors));
        assert_eq!(colors.iter().copied().max().map_or(0, |c| c + 1), common::chi(&g));
    }
}

#[test]
fn perfection_matches_definition() {
    let mut per_order = [0usize; 7];
    for g in enumerate_up_to(6).unwrap() {
        let p = is_perfect(&g).unwrap();
        assert_eq!(p, common::perfect(&g), "{g:?}");
        per_order[g.order()] += usize::from(p);
    }
    assert_eq!(per_order, [1, 1, 2, 4, 11, 33, 148]);
}

#[test]
fn odd_holes_and_antiholes() {
    for n in [5, 7, 9] {
        assert!(!is_perfect(&Graph::cycle(n)).unwrap());
        assert!(!is_perfect(&Graph::cycle(n).complement()).unwrap());
    }
    for n in [4, 6, 8] {
        assert!(is_perfect(&Graph::cycle(n)).unwrap());
    }
}

#[test]
fn cliques_of_size_are_lexicographic() {
    let g = Graph::complete(5);
    let triples = cliques_of_size(&g, 3);
    assert_eq!(triples.len(), 10);
    assert!(triples.windows(2).all(|w| w[0].lex_cmp(w[1]).is_lt()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clique_and_independence_numbers(g in common::arb_graph(11)) {
        prop_assert_eq!(clique_number(&g), common::omega(&g));
        prop_assert_eq!(independence_number(&g), common::alpha(&g));
    }

    #[test]
    fn chromatic_number_matches_backtracking(g in common::arb_graph(10)) {
        let chi = chromatic_number(&g);
        prop_assert_eq!(chi, common::chi_backtracking(&g));
        let c = k_coloring(&g, chi).unwrap();
        prop_assert!(is_proper_coloring(&g, &c));
        if chi > 0 {
            prop_assert!(k_coloring(&g, chi - 1).is_none());
        }
    }
}
