use std::sync::Arc;

use forge_core::cylinder::{
    cone, cylinder_reduction, dcr, degree_zero_bijective, example_non_injective, example_non_surjective,
    sibling_criterion,
};
use forge_core::poset::{nerve, posets_up_to_iso, FinPoset, MonotoneMap};
use forge_core::sset::{
    find_isomorphism, injective_in_degree, is_degreewise_surjective, is_isomorphism, is_nonsingular, product,
    standard_simplex, surjective_in_degree,
};
use proptest::prelude::*;

#[test]
fn identity_on_a_chain_reduces_isomorphically() {
    let p = Arc::new(FinPoset::chain(1));
    let b = cylinder_reduction(&MonotoneMap::identity(p.clone())).unwrap();
    assert!(is_isomorphism(b.cr()));
    let np = nerve(p);
    let prism = product(&np.sset, &Arc::new(standard_simplex(1)));
    assert!(find_isomorphism(b.t(), &prism.set).is_some());
}

#[test]
fn cones_on_simplices() {
    assert!(find_isomorphism(&cone(&Arc::new(standard_simplex(0))).unwrap(), &Arc::new(standard_simplex(1))).is_some());
    for n in 0..=3 {
        assert_eq!(cone(&Arc::new(standard_simplex(n))).unwrap().dim(), n + 1);
    }
}

#[test]
fn reduction_can_miss_top_simplices() {
    let b = cylinder_reduction(&example_non_surjective()).unwrap();
    assert_eq!(b.t().dim(), 2);
    assert_eq!(b.m().dim(), 3);
    assert!(!surjective_in_degree(b.cr(), 3));
    assert!(degree_zero_bijective(b.cr()));
}

#[test]
fn zipped_reduction_can_fail_injectivity() {
    let (_, d) = dcr(&example_non_injective()).unwrap();
    assert!(d.desing.is_certified());
    assert!(injective_in_degree(&d.dcr, 0));
    assert!(!injective_in_degree(&d.dcr, 1));
    assert!(!injective_in_degree(&d.dcr, 2));
    assert!(sibling_criterion(&d.desing.eta, &d.dcr).iter().all(|c| c.holds()));
}

#[test]
fn cones_desingularize_to_reduced_cylinders() {
    for p in posets_up_to_iso(4) {
        let phi = MonotoneMap::terminal(Arc::new(p));
        let (b, d) = dcr(&phi).unwrap();
        assert!(is_degreewise_surjective(b.cr()));
        assert!(is_isomorphism(&d.dcr));
    }
}

fn monotone() -> impl Strategy<Value = MonotoneMap> {
    let posets: Vec<Arc<FinPoset>> = posets_up_to_iso(3).into_iter().filter(|p| !p.is_empty()).map(Arc::new).collect();
    let n = posets.len();
    (0..n, 0..n, proptest::collection::vec(0usize..3, 3)).prop_filter_map("not monotone", move |(a, b, v)| {
        let (p, r) = (posets[a].clone(), posets[b].clone());
        let map: Vec<usize> = v.iter().take(p.len()).map(|&x| x % r.len()).collect();
        MonotoneMap::new(p, r, map).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_invariants(phi in monotone()) {
        let b = cylinder_reduction(&phi).unwrap();
        prop_assert!(is_nonsingular(b.m()));
        prop_assert!(degree_zero_bijective(b.cr()));
        prop_assert!(b.legs_agree());
        let (_, d) = dcr(&phi).unwrap();
        prop_assert!(d.desing.eta.then(&d.dcr).unwrap().same_as(b.cr()));
        prop_assert!(sibling_criterion(&d.desing.eta, &d.dcr).iter().all(|c| c.holds()));
    }
}
