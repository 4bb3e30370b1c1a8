mod common;

use std::collections::VecDeque;

use rand::rngs::StdRng;
use rand::SeedableRng;

use hamlift::build::{cayley_graph, generalized_petersen, petersen};
use hamlift::perm::PermGroup;
use hamlift::pipeline::{classify_normal_block_systems, semiregular_from_prime_blocks};
use hamlift::search::{hamilton_search, verify_certificate, SearchOptions};
use hamlift::graph::standard;
use hamlift::SimpleGraph;

use common::{closure, dihedral, held_karp, order_70_groups, permutation_oracle, random_symmetric_set, small_groups};

fn search_says(g: &SimpleGraph) -> bool {
    let outcome = hamilton_search(g, &SearchOptions::default());
    if let Some(c) = outcome.certificate() {
        assert!(verify_certificate(g, c));
        return true;
    }
    assert_eq!(outcome.kind(), "exhausted_none");
    false
}

fn distances_from(g: &SimpleGraph, s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; g.order()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &w in g.neighbors(v) {
            if d[w] == usize::MAX {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

#[test]
fn search_matches_subset_dp_on_small_cayley_graphs() {
    let mut rng = StdRng::seed_from_u64(1);
    let mut checked = 0;
    for (name, g) in small_groups() {
        let g = g.closed(1000).unwrap();
        if g.order().unwrap() > 20 {
            continue;
        }
        let elems = g.elements().unwrap().to_vec();
        for _ in 0..15 {
            let s = random_symmetric_set(&mut rng, &elems);
            let x = cayley_graph(&g, &s).unwrap().graph;
            assert_eq!(search_says(&x), held_karp(&x), "{name} {s:?}");
            checked += 1;
        }
    }
    assert!(checked >= 60);
}

#[test]
fn search_matches_oracles_on_petersen_family() {
    for n in 3..=12 {
        for k in (1..n).filter(|&k| 2 * k < n) {
            let x = generalized_petersen(n, k).unwrap();
            assert_eq!(search_says(&x), held_karp(&x), "GP({n},{k})");
        }
    }
    assert!(!permutation_oracle(&petersen()));
    assert!(!search_says(&petersen()));
    for n in 3..=10 {
        for offsets in [vec![1], vec![1, 2], vec![2, 3]] {
            let x = standard::circulant(n, &offsets);
            assert_eq!(search_says(&x), permutation_oracle(&x), "C({n},{offsets:?})");
        }
    }
}

#[test]
fn dodecahedron_has_only_the_antipodal_normal_system() {
    let x = generalized_petersen(10, 2).unwrap();
    let aut = x.automorphism_group().closed(1000).unwrap();
    assert_eq!(aut.order(), Some(120));
    let systems = classify_normal_block_systems(&x, &aut).unwrap();
    assert_eq!(systems.len(), 1);
    assert_eq!(systems[0].r, 2);
    for block in systems[0].system.blocks() {
        assert_eq!(distances_from(&x, block[0])[block[1]], 5);
    }
}

#[test]
fn prime_block_elements_come_from_the_cyclic_part() {
    for (name, q, rotation_step) in [("D35", 7, 5), ("Z70", 5, 14)] {
        let g = order_70_groups().into_iter().find(|(n, _)| *n == name).unwrap().1;
        let g = g.closed(1000).unwrap();
        let rot = &g.generators()[0];
        let s = vec![rot.clone(), rot.inverse()]
            .into_iter()
            .chain(g.generators()[1..].iter().cloned())
            .collect::<Vec<_>>();
        let c = cayley_graph(&g, &s).unwrap();
        let w = c.witness().closed(1000).unwrap();
        let systems = classify_normal_block_systems(&c.graph, &w).unwrap();
        let sys = &systems.iter().find(|s| s.r == q).unwrap_or_else(|| panic!("{name}: no r={q}")).system;
        let d = semiregular_from_prime_blocks(&w, sys).unwrap();
        assert_eq!(d.n, q);
        let step = c.action[0].pow(rotation_step);
        let powers = closure(70, &[step]);
        assert!(powers.contains(&d.perm), "{name}: {:?}", d.perm.cycles()[0]);
    }
}

#[test]
fn dihedral_helper_has_expected_order() {
    assert_eq!(dihedral(35).closed(100).unwrap().order(), Some(70));
    assert_eq!(PermGroup::cyclic(70).closed(100).unwrap().order(), Some(70));
}
