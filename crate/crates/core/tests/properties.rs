use fibcat::fincat::check_category;
use fibcat::format::{dump, load, Entity};
use fibcat::gen::{random_category, random_cocartesian_lax, random_lattice, random_strict_indexed, rng, twist};
use fibcat::groth::{grothendieck, roundtrip_indexed};
use fibcat::indexed::check_pseudofunctor;
use fibcat::moncat::{find_cocartesian, SearchLimits};
use fibcat::zoo::dds::{behaviourally_equivalent, dds_apply, equivalence_length, parse_diagram, random_box, random_machine, random_wiring};
use fibcat::zoo::{SimpleGraph, WiringDiagram};
use proptest::collection::btree_set;
use proptest::prelude::*;
use std::sync::Arc;

fn graph(n: usize) -> impl Strategy<Value = SimpleGraph> {
    btree_set((0..n, 0..n), 0..=n * n).prop_map(move |edges| SimpleGraph::new(n, edges).unwrap())
}

fn graph_pair() -> impl Strategy<Value = (SimpleGraph, SimpleGraph, SimpleGraph)> {
    (0usize..=3).prop_flat_map(|n| (graph(n), graph(n), graph(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_categories_satisfy_the_laws(seed in any::<u64>()) {
        let c = random_category(&mut rng(seed), 4, 2, 30);
        prop_assert!(check_category(&c).unwrap().is_pass());
        prop_assert_eq!(c.opposite().opposite(), c);
    }

    #[test]
    fn total_objects_are_counted_by_fibre(seed in any::<u64>()) {
        let mut r = rng(seed);
        let base = Arc::new(random_category(&mut r, 4, 2, 30));
        let m = random_strict_indexed(&mut r, base, 3);
        let sizes: usize = m.fibres.iter().map(|f| f.n_objs()).sum();
        let g = grothendieck(&m).unwrap();
        prop_assert_eq!(g.total.n_objs(), sizes);
        let hom_sizes: usize = m.base.morphisms().map(|f| {
            let (x, y) = (m.base.dom(f), m.base.cod(f));
            m.fibres[x].objects().map(|a| m.fibres[y].objects().map(|b| m.fibres[y].hom(m.reindex[f].ob(a), b).len()).sum::<usize>()).sum::<usize>()
        }).sum();
        prop_assert_eq!(g.total.n_mors(), hom_sizes);
    }

    #[test]
    fn twisting_keeps_a_pseudofunctor_that_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let base = Arc::new(random_category(&mut r, 3, 2, 20));
        let m = twist(&random_strict_indexed(&mut r, base, 3), &mut r);
        prop_assert!(check_pseudofunctor(&m).unwrap().is_pass());
        prop_assert!(roundtrip_indexed(&m).unwrap().is_pass());
    }

    #[test]
    fn dumps_are_canonical(seed in any::<u64>(), pseudo in any::<bool>()) {
        let (l, w) = random_cocartesian_lax(&mut rng(seed), pseudo);
        let e = Entity::LaxMonoidal { lax: l, witness: Some(w) };
        let s = dump(&e);
        let back = load(&s).unwrap();
        prop_assert_eq!(dump(&back), s);
        prop_assert_eq!(back, e);
    }

    #[test]
    fn lattice_joins_are_found_by_search(seed in any::<u64>()) {
        let (c, w) = random_lattice(&mut rng(seed), 3, 6);
        prop_assert!(w.verify().is_pass());
        let found = find_cocartesian(&c, SearchLimits::default()).unwrap();
        for (pair, &(s, _, _)) in &w.coproducts {
            prop_assert_eq!(found.coproducts[pair].0, s);
        }
        prop_assert_eq!(found.initial, w.initial);
    }

    #[test]
    fn overlay_is_a_semilattice((a, b, c) in graph_pair()) {
        prop_assert_eq!(a.overlay(&b), b.overlay(&a));
        prop_assert_eq!(a.overlay(&a), Some(a.clone()));
        let left = a.overlay(&b).unwrap().overlay(&c);
        let right = a.overlay(&b.overlay(&c).unwrap());
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.overlay(&SimpleGraph::empty(a.vertices)), Some(a.clone()));
    }

    #[test]
    fn pushforward_is_functorial(g in graph(3), f in proptest::collection::vec(0usize..3, 3), h in proptest::collection::vec(0usize..2, 3)) {
        let hf: Vec<usize> = f.iter().map(|&i| h[i]).collect();
        prop_assert_eq!(g.pushforward(&f, 3).pushforward(&h, 2), g.pushforward(&hf, 2));
        prop_assert_eq!(g.pushforward(&[0, 1, 2], 3), g.clone());
        prop_assert_eq!(SimpleGraph::parse(&g.name()), Some(g));
    }

    #[test]
    fn union_counts_edges(a in graph(2), b in graph(1)) {
        let u = a.disjoint_union(&b);
        prop_assert_eq!(u.vertices, 3);
        prop_assert_eq!(u.edges.len(), a.edges.len() + b.edges.len());
    }

    #[test]
    fn wiring_laws_hold_behaviourally(seed in any::<u64>()) {
        let mut r = rng(seed);
        let types = vec![2];
        let x = random_box(&mut r, 1, 2);
        let m = random_machine(&mut r, &x, &types, 3);
        let id = dds_apply(&WiringDiagram::identity(&x), &m).unwrap();
        prop_assert!(behaviourally_equivalent(&id, &m, equivalence_length(&id, &m)));
        if let Some(phi) = random_wiring(&mut r, &x, 1, 2) {
            prop_assert_eq!(parse_diagram(&phi.name()).unwrap(), phi.clone());
            let back = WiringDiagram::identity(&x).then(&phi).unwrap();
            prop_assert_eq!(back, phi);
        }
    }
}

#[test]
fn graph_fibres_have_the_expected_sizes() {
    for n in 0..=3 {
        assert_eq!(SimpleGraph::all(n).len(), 1 << (n * n));
    }
}
