use std::sync::Arc;

use forge_core::desing::zipper_desingularize;
use forge_core::harness::random_quotient;
use forge_core::poset::{barratt, nerve, FinPoset};
use forge_core::sset::{
    find_isomorphism, is_degreewise_surjective, is_isomorphism, is_nonsingular, is_regular, sphere, standard_simplex,
};
use forge_core::subdivision::{agrees_with_colimit, b_nat, last_vertex, sd, sd_map, t_nat};
use forge_core::SimplicialSet;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Nonempty subsets of `[n]` under inclusion, built directly from bitmasks.
fn subset_poset(n: usize) -> FinPoset {
    let masks: Vec<u32> = (1u32..(1 << (n + 1))).collect();
    let names = masks.iter().map(|m| format!("s{m}")).collect();
    let mut rels = Vec::new();
    for (i, a) in masks.iter().enumerate() {
        for (j, b) in masks.iter().enumerate() {
            if a & !b == 0 {
                rels.push((i, j));
            }
        }
    }
    FinPoset::from_relations("subsets", names, &rels).unwrap()
}

#[test]
fn subdivided_simplex_is_the_nerve_of_its_faces() {
    for n in 0..=3 {
        let s = sd(&Arc::new(standard_simplex(n)));
        let oracle = nerve(Arc::new(subset_poset(n)));
        assert!(find_isomorphism(&s.set, &oracle.sset).is_some(), "n = {n}");
    }
}

#[test]
fn subdivided_circle_has_two_edges() {
    let s = sd(&Arc::new(sphere(1).unwrap()));
    assert_eq!(s.set.counts(), vec![2, 2]);
    assert!(!is_nonsingular(&sphere(1).unwrap()));
    assert!(is_nonsingular(&s.set));
}

#[test]
fn corollary_for_the_two_sphere() {
    let y = Arc::new(sphere(2).unwrap());
    let sy = sd(&y);
    let s2 = sd(&sy.set);
    let z = zipper_desingularize(&s2.set);
    assert!(z.is_certified());
    let b = b_nat(&s2, &barratt(&sy.set)).unwrap();
    let t = t_nat(&z.eta, &b).unwrap();
    assert!(is_isomorphism(&t));
}

fn quotient_from(seed: u64) -> Arc<SimplicialSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Arc::new(random_quotient(&mut rng, 3, "q"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_matches_colimit(seed in any::<u64>()) {
        let x = quotient_from(seed);
        prop_assert!(agrees_with_colimit(&sd(&x)));
    }

    #[test]
    fn subdivision_is_regular_and_b_detects_nonsingularity(seed in any::<u64>()) {
        let x = quotient_from(seed);
        let s = sd(&x);
        prop_assert!(is_regular(&s.set));
        prop_assert_eq!(s.set.cells_of_dim(0).len(), x.num_cells());
        let b = b_nat(&s, &barratt(&x)).unwrap();
        prop_assert!(is_degreewise_surjective(&b));
        prop_assert_eq!(is_isomorphism(&b), is_nonsingular(&x));
    }

    #[test]
    fn subdivision_preserves_surjections(seed in any::<u64>()) {
        let x = quotient_from(seed);
        let z = zipper_desingularize(&x);
        let (sx, sz) = (sd(&x), sd(&z.quotient));
        let f = sd_map(&z.eta, &sx, &sz).unwrap();
        prop_assert!(is_degreewise_surjective(&f));
        let dx = last_vertex(&sx).unwrap();
        let dz = last_vertex(&sz).unwrap();
        prop_assert!(f.then(&dz).unwrap().same_as(&dx.then(&z.eta).unwrap()));
    }

    #[test]
    fn comparison_is_an_isomorphism_on_subdivisions(seed in any::<u64>()) {
        let y = quotient_from(seed);
        let x = sd(&y).set;
        let s = sd(&x);
        let z = zipper_desingularize(&s.set);
        prop_assert!(z.is_certified());
        let t = t_nat(&z.eta, &b_nat(&s, &barratt(&x)).unwrap()).unwrap();
        prop_assert!(is_isomorphism(&t));
    }
}
