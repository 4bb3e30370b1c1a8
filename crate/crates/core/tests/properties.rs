mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use hamlift::build::{coset_graph, generalized_petersen};
use hamlift::family::{self, Flavor, FlavorParams};
use hamlift::perm::{minimal_block_systems, semiregular_decomposition, PermGroup, Permutation};
use hamlift::quotient::{lift_cycle, LiftKind};
use hamlift::search::{hamilton_search, verify_certificate, SearchOptions};
use hamlift::SimpleGraph;

use common::{held_karp, lift_oracle, random_lift_instance, small_groups};

fn permutation(max_degree: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_degree).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|v| Permutation::from_images(v).unwrap())
}

fn same_degree_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=12usize).prop_flat_map(|n| {
        let s = || Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap());
        (s(), s(), s())
    })
}

fn random_graph(max_order: usize) -> impl Strategy<Value = SimpleGraph> {
    (3..=max_order).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            SimpleGraph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative((a, b, c) in same_degree_triple()) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.then(&b).inverse(), b.inverse().then(&a.inverse()));
    }

    #[test]
    fn order_matches_power(p in permutation(12)) {
        prop_assert!(p.pow(p.order() as i64).is_identity());
        prop_assert_eq!(p.pow(-1), p.inverse());
    }

    #[test]
    fn minimal_blocks_are_invariant((a, b, _) in same_degree_triple().prop_filter("small", |t| t.0.degree() <= 8)) {
        let g = PermGroup::new(a.degree(), vec![a, b]).unwrap();
        if g.is_transitive() {
            for sys in minimal_block_systems(&g).unwrap() {
                prop_assert!(sys.is_invariant_under(g.generators()));
                prop_assert_eq!(sys.num_blocks() * sys.block_size(), g.degree());
            }
        }
    }

    #[test]
    fn search_agrees_with_subset_dp(g in random_graph(11)) {
        let outcome = hamilton_search(&g, &SearchOptions::default());
        if let Some(c) = outcome.certificate() {
            prop_assert!(verify_certificate(&g, c));
        }
        prop_assert_eq!(outcome.certificate().is_some(), held_karp(&g));
    }

    #[test]
    fn worker_count_does_not_change_the_answer(g in random_graph(12)) {
        let one = hamilton_search(&g, &SearchOptions::default());
        let four = hamilton_search(&g, &SearchOptions { workers: 4, ..SearchOptions::default() });
        prop_assert_eq!(one.certificate().is_some(), four.certificate().is_some());
        if let Some(c) = four.certificate() {
            prop_assert!(verify_certificate(&g, c));
        }
    }

    #[test]
    fn hash_ignores_edge_order(g in random_graph(12), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut edges: Vec<_> = g.edges().into_iter().map(|(u, v)| if seed % 2 == 0 { (u, v) } else { (v, u) }).collect();
        edges.shuffle(&mut StdRng::seed_from_u64(seed));
        let h = SimpleGraph::from_edges(g.order(), edges).unwrap();
        prop_assert_eq!(g.hash(), h.hash());
    }

    #[test]
    fn edge_list_round_trips(g in random_graph(12)) {
        let back = SimpleGraph::parse_edge_list(&g.to_edge_list(), Some(g.order())).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.hash(), g.hash());
    }

    #[test]
    fn crt_exponent_is_least_solution(p in prop::sample::select(vec![7u64, 11, 13, 17, 19, 23, 29, 31, 37, 41]), t in -100i64..100) {
        let l = family::crt_exponent(t, p).unwrap();
        prop_assert_eq!(l % p, t.rem_euclid(p as i64) as u64);
        prop_assert_eq!(l % 5, 2);
        prop_assert!((1..l).all(|m| m % p != l % p || m % 5 != 2));
    }

    #[test]
    fn lifts_agree_with_class_enumeration(seed in any::<u64>()) {
        let (x, rho, c) = random_lift_instance(&mut StdRng::seed_from_u64(seed));
        let d = semiregular_decomposition(&rho).unwrap();
        let (mult, long) = lift_oracle(&x, &rho, &d.orbits, &c);
        let lift = lift_cycle(&x, &d, &c).unwrap();
        match lift.kind {
            LiftKind::LongCycle { .. } => prop_assert!(long),
            LiftKind::DisjointCycles { .. } => {
                prop_assert!(!long);
                prop_assert!(mult.iter().all(|&m| m == 1));
            }
        }
    }

    #[test]
    fn coset_graphs_are_regular_and_witnessed(seed in any::<u64>(), which in 0usize..10) {
        use rand::Rng;
        let mut rng = StdRng::seed_from_u64(seed);
        let g = small_groups()[which].1.closed(200).unwrap();
        let elems = g.elements().unwrap().to_vec();
        let h = vec![elems[rng.gen_range(0..elems.len())].clone()];
        let s: Vec<_> = (0..2).map(|_| elems[rng.gen_range(0..elems.len())].clone()).collect();
        let c = coset_graph(&g, &h, &s).unwrap();
        let h_order = common::closure(g.degree(), &h).len();
        prop_assert_eq!(c.graph.order() * h_order, elems.len());
        prop_assert!(c.graph.regular_degree().is_some());
        prop_assert!(c.action.iter().all(|a| c.graph.is_automorphism(a)));
        prop_assert!(c.witness().is_transitive());
        prop_assert_eq!(c.graph.is_connected(), c.generates);
    }

    #[test]
    fn sign_walk_survives_block_reordering(rest in Just((1..10).collect::<Vec<usize>>()).prop_shuffle(), l in 1u64..41) {
        let q: [usize; 10] = std::iter::once(0).chain(rest).collect::<Vec<_>>().try_into().unwrap();
        let (g, cert) = family::z10_sign_walk(41, 36, l, &q).unwrap();
        prop_assert_eq!(cert.cycle.len(), 410);
        prop_assert!(verify_certificate(&g, &cert));
    }

    #[test]
    fn k55_chain_is_hamiltonian(p in prop::sample::select(vec![7u64, 11, 13]), l in 1u64..100, lp in 1u64..100, iota in 1u64..100) {
        prop_assume!(l % p != 0 && lp % p != 0 && iota % p != 0);
        let (g, cert) = family::k55_case_cycle(p, l, lp, iota).unwrap();
        prop_assert_eq!(cert.cycle.len() as u64, 10 * p);
        prop_assert!(verify_certificate(&g, &cert));
    }
}

#[test]
fn flavor_groups_have_predicted_order() {
    for p in [7u64, 11, 13] {
        let params: Vec<FlavorParams> = family::z5z4_params(p, 1)
            .into_iter()
            .chain(family::z10_params(p))
            .chain(family::d10_params(p, 1))
            .collect();
        assert!(params.iter().any(|fp| fp.flavor == Flavor::Z5Z4));
        for fp in params {
            let g = family::build_group_flavor(&fp).unwrap().closed(1_000_000).unwrap();
            assert_eq!(g.order().unwrap() as u64, fp.predicted_order(), "{fp:?}");
            assert!(g.is_transitive(), "{fp:?}");
        }
    }
}

#[test]
fn petersen_family_sizes() {
    for n in 3..=20 {
        for k in (1..n).filter(|&k| 2 * k < n) {
            let g = generalized_petersen(n, k).unwrap();
            assert_eq!((g.order(), g.edge_count(), g.regular_degree()), (2 * n, 3 * n, Some(3)));
        }
    }
}
