mod common;

use proptest::prelude::*;
use qpkit::constructions::{
    family_prime_clique, family_prime_independent_set, lovasz_prime_clique, lovasz_replication, odd_cycle_family, remark_counterexample,
    replicate, Construction, ConstructionError, FamilySpec, Multiplicities, PiMethod,
};
use qpkit::engine::{check_prime_clique, check_prime_independent_set, PrimeSetViolation};
use qpkit::harness::enumerate_up_to;
use qpkit::invariants::maximum_independent_sets;
use qpkit::{
    canonical_key, chromatic_number, clique_number, is_block_graph, is_forest, is_perfect,
    Graph, RecognitionConfig, Recognizer, VertexSet,
};

fn all_specs() -> Vec<FamilySpec> {
    [5usize, 7]
        .into_iter()
        .flat_map(|n| {
            (1u32..1 << n).map(move |mask| {
                let positions = (1..=n).filter(|k| mask >> (k - 1) & 1 == 1).collect();
                FamilySpec::new(n, positions).unwrap()
            })
        })
        .collect()
}

fn set(vs: &[usize]) -> VertexSet {
    vs.iter().copied().collect()
}

#[test]
fn family_shapes() {
    for spec in all_specs() {
        let fg = odd_cycle_family(&spec);
        let (n, o) = (spec.cycle_len(), spec.positions().len());
        assert_eq!(fg.graph.order(), n + o);
        assert_eq!(fg.graph.size(), n + 2 * o);
        for i in 1..=n {
            assert!(fg.graph.adjacent(fg.v(i), fg.v(i + 1)));
        }
        for (k, w) in fg.wing_vertices() {
            assert_eq!(fg.graph.neighbors(w), set(&[fg.v(k), fg.v(k + 1)]));
        }
    }
    let fg = odd_cycle_family(&FamilySpec::new(7, vec![1, 3, 5]).unwrap());
    assert_eq!((fg.graph.order(), fg.graph.size()), (10, 13));
}

#[test]
fn family_spec_validation() {
    assert!(matches!(FamilySpec::new(4, vec![1]), Err(ConstructionError::EvenCycle(4))));
    assert!(FamilySpec::new(3, vec![1]).is_err());
    assert!(FamilySpec::new(5, vec![]).is_err());
    assert!(FamilySpec::new(5, vec![6]).is_err());
    assert!(FamilySpec::new(5, vec![0]).is_err());
    assert!(FamilySpec::new(5, vec![2, 2]).is_err());
    assert!(FamilySpec::new(5, vec![3, 2]).is_err());
}

#[test]
fn every_family_is_quasiperfect_with_forest_and_block_residues() {
    let r = Recognizer::new(RecognitionConfig::pure().with_limit(14));
    let mut pk_predicate_holds = 0;
    let specs = all_specs();
    for spec in &specs {
        let fg = odd_cycle_family(spec);
        let g = &fg.graph;
        assert!(r.is_quasiperfect(g).unwrap(), "{spec}");

        let pi = family_prime_independent_set(&fg).unwrap();
        check_prime_independent_set(g, pi.set).unwrap();
        assert!(is_forest(&g.remove(pi.set)), "{spec}");
        assert_ne!(pi.method, PiMethod::ExhaustiveFallback, "{spec}");

        let pk = family_prime_clique(&fg);
        assert!(g.is_clique(pk));
        assert!(is_block_graph(&g.remove(pk)), "{spec}");
        assert!(maximum_independent_sets(g).iter().all(|s| s.intersects(pk)), "{spec}");
        let lib = check_prime_clique(g, pk).is_ok();
        assert_eq!(lib, common::is_pk(g, pk.bits()), "{spec}");
        pk_predicate_holds += usize::from(lib);
    }
    assert_eq!(specs.len(), 158);
    // the first-triangle clique is a genuine prime clique in only a few families
    assert_eq!(pk_predicate_holds, 16);
}

#[test]
fn first_triangle_clique_can_miss_the_membership_clause() {
    let fg = odd_cycle_family(&FamilySpec::new(5, vec![1]).unwrap());
    let pk = family_prime_clique(&fg);
    assert_eq!(pk, set(&[fg.w(1).unwrap(), fg.v(1), fg.v(2)]));
    assert!(matches!(
        check_prime_clique(&fg.graph, pk),
        Err(PrimeSetViolation::OutsideMaximumIndependentSets(_))
    ));
    // the genuine prime cliques of F(5,{1}) are singletons
    let got: Vec<VertexSet> = qpkit::engine::prime_cliques(&fg.graph).collect();
    assert_eq!(got, vec![set(&[fg.v(3)]), set(&[fg.v(5)]), set(&[fg.w(1).unwrap()])]);
}

#[test]
fn documented_prime_sets() {
    let fg = odd_cycle_family(&FamilySpec::new(5, vec![1, 2, 3, 4, 5]).unwrap());
    let pi = family_prime_independent_set(&fg).unwrap();
    assert_eq!(pi.method, PiMethod::Formula);
    assert_eq!(pi.set, set(&[fg.w(5).unwrap(), fg.v(2), fg.v(4)]));
    for k in 1..=5 {
        assert!(fg.triangle(k).unwrap().intersects(pi.set));
    }
    // the wings form the only maximum independent set, so v1 is in none of them
    let pk = family_prime_clique(&fg);
    assert_eq!(maximum_independent_sets(&fg.graph), vec![set(&[5, 6, 7, 8, 9])]);
    assert!(!common::is_pk(&fg.graph, pk.bits()));
    assert!(check_prime_clique(&fg.graph, pk).is_err());

    let fg = odd_cycle_family(&FamilySpec::new(7, vec![2]).unwrap());
    assert_eq!(family_prime_clique(&fg), set(&[fg.w(2).unwrap(), fg.v(2), fg.v(3)]));

    let fg = odd_cycle_family(&FamilySpec::new(7, vec![1, 4]).unwrap());
    check_prime_independent_set(&fg.graph, family_prime_independent_set(&fg).unwrap().set).unwrap();
}

#[test]
fn replication_basics() {
    let c5 = Graph::cycle(5);
    let same = replicate(&c5, &Multiplicities::uniform(&c5, 1)).unwrap();
    assert_eq!(canonical_key(&same.graph), canonical_key(&c5));

    let dropped = replicate(&c5, &Multiplicities::new(&c5, vec![0, 1, 1, 1, 1]).unwrap()).unwrap();
    assert_eq!(dropped.graph, Graph::path(4));
    assert_eq!(dropped.origin, vec![1, 2, 3, 4]);

    let doubled = replicate(&c5, &Multiplicities::uniform(&c5, 2)).unwrap().graph;
    assert_eq!((clique_number(&doubled), chromatic_number(&doubled)), (4, 5));
    assert_eq!((common::omega(&doubled), common::chi_backtracking(&doubled)), (4, 5));

    assert!(Multiplicities::new(&c5, vec![1, 1]).is_err());
}

#[test]
fn replication_preserves_perfection() {
    for g in enumerate_up_to(5).unwrap() {
        if !is_perfect(&g).unwrap() {
            continue;
        }
        for seed in 0..3usize {
            let t: Vec<usize> = (0..g.order()).map(|v| (v * 7 + seed * 3 + v * seed) % 3).collect();
            let h = replicate(&g, &Multiplicities::new(&g, t).unwrap()).unwrap().graph;
            if h.order() <= 10 {
                assert!(is_perfect(&h).unwrap(), "{g:?} -> {h:?}");
            }
        }
    }
}

#[test]
fn lovasz_extraction() {
    let c4 = Graph::cycle(4);
    let pk = lovasz_prime_clique(&c4).unwrap();
    assert_eq!(pk.len(), 2);
    assert!(c4.is_clique(pk));

    let p3 = Graph::path(3);
    let report = lovasz_replication(&p3).unwrap();
    assert_eq!(report.multiplicities.as_slice(), &[1, 0, 1]);
    assert!(report.prime_clique == set(&[0]) || report.prime_clique == set(&[2]));

    for n in 1..=5 {
        assert_eq!(lovasz_prime_clique(&Graph::complete(n)).unwrap(), VertexSet::full(n));
    }
    assert!(lovasz_prime_clique(&Graph::cycle(5)).is_err());
    assert!(matches!(lovasz_prime_clique(&Graph::empty(0).unwrap()), Err(ConstructionError::NullGraph)));

    for g in enumerate_up_to(6).unwrap() {
        if g.order() > 0 && is_perfect(&g).unwrap() {
            let report = lovasz_replication(&g).unwrap();
            assert_eq!(clique_number(&report.replication.graph), report.mis_count);
            check_prime_clique(&g, report.prime_clique).unwrap();
        }
    }
}

#[test]
fn counterexample_values() {
    let expected = [(1, 3, 3), (2, 5, 5), (3, 7, 8)];
    for (t, omega, chi) in expected {
        let g = remark_counterexample(t).unwrap();
        assert_eq!(g.order(), 5 * t + 1);
        assert_eq!((clique_number(&g), chromatic_number(&g)), (omega, chi), "t={t}");
    }
    // independent confirmation by the brute-force oracles
    let g1 = remark_counterexample(1).unwrap();
    assert_eq!((common::omega(&g1), common::chi(&g1)), (3, 3));
    let g2 = remark_counterexample(2).unwrap();
    assert_eq!((common::omega(&g2), common::chi_backtracking(&g2)), (5, 5));
    let g3 = remark_counterexample(3).unwrap();
    assert_eq!(common::omega(&g3), 7);
    assert!(!common::colorable(&g3, 7) && common::colorable(&g3, 8));
    assert!(remark_counterexample(0).is_err());
}

#[test]
fn construction_notation() {
    let c: Construction = "family n=5 k=1".parse().unwrap();
    assert_eq!(c.build().unwrap().order(), 6);
    let c: Construction = "family n=7 k={1,3,5}".parse().unwrap();
    assert_eq!(c.build().unwrap().size(), 13);
    let c: Construction = "c5blowup t=3".parse().unwrap();
    assert_eq!(c.build().unwrap().order(), 16);
    for bad in ["family n=4 k=1", "family n=5", "c5blowup t=0", "c5blowup", "nonsense", "family n=5 k={1,x}"] {
        assert!(bad.parse::<Construction>().is_err(), "{bad}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn replication_structure(g in common::arb_graph(6), t in prop::collection::vec(0usize..3, 6)) {
        let t = Multiplicities::new(&g, t[..g.order()].to_vec()).unwrap();
        let rep = replicate(&g, &t).unwrap();
        prop_assert_eq!(rep.graph.order(), t.total());
        for x in 0..rep.origin.len() {
            for y in x + 1..rep.origin.len() {
                let (a, b) = (rep.origin[x], rep.origin[y]);
                prop_assert_eq!(rep.graph.adjacent(x, y), a == b || g.adjacent(a, b));
            }
        }
    }
}
