mod common;

use common::{all_labelled_graphs, all_unlabelled_graphs, brute_canonical_form, random_cotree};
use copart::cotree::has_induced_p4;
use copart::enumerate::{enumerate_cographs, enumerate_up_to};
use copart::oracle::{
    brute_force_arboricity, brute_force_chromatic, brute_force_partitionable, brute_force_partitionable_with,
    brute_force_strength, default_order, OracleBudget,
};
use copart::solver::{chromatic_number, vertex_arboricity};
use copart::{feasible_set, recognize, strength_profile, Triple};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

#[test]
fn recognition_agrees_with_p4_search() {
    for n in 0..=6 {
        for g in all_labelled_graphs(n) {
            match recognize(&g) {
                Ok(t) => {
                    assert!(!has_induced_p4(&g));
                    assert_eq!(t.realize(), g);
                }
                Err(w) => {
                    assert!(has_induced_p4(&g));
                    let [a, b, c, d] = w.0;
                    let edges = [g.has_edge(a, b), g.has_edge(b, c), g.has_edge(c, d)];
                    let non = [g.has_edge(a, c), g.has_edge(b, d), g.has_edge(a, d)];
                    assert_eq!((edges, non), ([true; 3], [false; 3]), "witness {w} in {:?}", g.edges());
                }
            }
        }
    }
}

#[test]
fn recognition_on_random_seven_vertex_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let all: Vec<_> = all_labelled_graphs(7).collect();
    for g in all.choose_multiple(&mut rng, 20_000) {
        assert_eq!(recognize(g).is_ok(), !has_induced_p4(g));
    }
}

#[test]
fn four_vertex_graphs() {
    let graphs = all_unlabelled_graphs(4);
    assert_eq!(graphs.len(), 11);
    assert_eq!(graphs.iter().filter(|g| recognize(g).is_ok()).count(), 10);
}

#[test]
fn enumeration_matches_brute_force_classes() {
    for n in 1..=6 {
        let brute: HashSet<Vec<bool>> =
            all_unlabelled_graphs(n).iter().filter(|g| !has_induced_p4(g)).map(brute_canonical_form).collect();
        let listed: Vec<Vec<bool>> = enumerate_cographs(n).map(|t| brute_canonical_form(&t.realize())).collect();
        let unique: HashSet<Vec<bool>> = listed.iter().cloned().collect();
        assert_eq!(unique.len(), listed.len(), "duplicates at n={n}");
        assert_eq!(unique, brute, "n={n}");
    }
}

#[test]
fn dp_matches_oracle_on_small_cographs() {
    let bounds = Triple::new(2, 2, 2);
    for t in enumerate_up_to(6) {
        let g = t.realize();
        let set = feasible_set(&t, bounds);
        for p in 0..=2 {
            for q in 0..=2 {
                for r in 0..=2 {
                    let tri = Triple::new(p, q, r);
                    assert_eq!(set.contains(tri), brute_force_partitionable(&g, tri).unwrap(), "{t} {tri}");
                }
            }
        }
    }
}

#[test]
fn oracle_does_not_depend_on_vertex_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let n = 1 + rand::Rng::gen_range(&mut rng, 0..8);
        let g = random_cotree(&mut rng, n).realize();
        let mut order = default_order(&g);
        let tri = Triple::new(rand::Rng::gen_range(&mut rng, 0..3), rand::Rng::gen_range(&mut rng, 0..3), 1);
        let base = brute_force_partitionable(&g, tri).unwrap();
        order.shuffle(&mut rng);
        assert_eq!(brute_force_partitionable_with(&g, tri, OracleBudget::default(), &order).unwrap(), base);
    }
}

#[test]
fn derived_parameters_match_oracle() {
    for t in enumerate_up_to(7) {
        let g = t.realize();
        assert_eq!(vertex_arboricity(&t), brute_force_arboricity(&g).unwrap(), "{t}");
        assert_eq!(chromatic_number(&t), brute_force_chromatic(&g).unwrap(), "{t}");
        assert_eq!(strength_profile(&t).unwrap(), brute_force_strength(&g).unwrap(), "{t}");
    }
}

#[test]
fn oracle_handles_non_cographs() {
    // the 5-cycle: not a forest, 3-chromatic, a forest after one deletion
    let c5 = copart::Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    assert!(recognize(&c5).is_err());
    assert_eq!(brute_force_arboricity(&c5), Ok(2));
    assert_eq!(brute_force_chromatic(&c5), Ok(3));
    assert_eq!(brute_force_partitionable(&c5, Triple::new(1, 0, 1)), Ok(true));
}

#[test]
fn k4_needs_two_colours_beside_a_forest() {
    // any forest in K_4 has at most 2 vertices, leaving an edge for the colour classes
    let k4 = copart::Graph::complete(4);
    assert_eq!(brute_force_partitionable(&k4, Triple::new(1, 1, 0)), Ok(false));
    assert_eq!(brute_force_partitionable(&k4, Triple::new(1, 2, 0)), Ok(true));
    assert_eq!(copart::solver::min_q_feedback(&copart::Cotree::complete(4)), 2);
}
