use std::sync::Arc;

use forge_core::delta::all_operators;
use forge_core::harness::random_quotient;
use forge_core::sset::{
    find_isomorphism, generate, is_degreewise_injective, is_nonsingular, is_regular, representing_map, parse_smap, parse_sset, print_smap, print_sset, product, pushout,
    standard_simplex, Congruence,
};
use forge_core::SimplicialSet;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn quotient_from(seed: u64) -> Arc<SimplicialSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Arc::new(random_quotient(&mut rng, 3, "q"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_is_functorial(seed in any::<u64>()) {
        let x = quotient_from(seed);
        for q in 0..=x.dim() {
            for s in x.simplices_of_degree(q) {
                for a in 0..=2usize {
                    for alpha in all_operators(a, q) {
                        let sa = x.eval(&s, &alpha).unwrap();
                        for beta in all_operators(a.saturating_sub(1), a) {
                            let lhs = x.eval(&sa, &beta).unwrap();
                            let rhs = x.eval(&s, &beta.then(&alpha).unwrap()).unwrap();
                            prop_assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_of_projection_round_trips(seed in any::<u64>(), merges in 1usize..4) {
        let x = Arc::new(standard_simplex(3));
        let mut cong = Congruence::on(x.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..merges {
            let d = rng.gen_range(0..=2);
            let r = cong.index().degree_range(d);
            let (a, b) = (rng.gen_range(r.clone()), rng.gen_range(r));
            cong.merge(a, b);
        }
        let q = cong.quotient("q");
        let k = Congruence::kernel(&q.projection, 0);
        prop_assert!(k.same_partition(&cong));
    }

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let x = quotient_from(seed);
        let y = Arc::new(parse_sset(&print_sset(&x)).unwrap());
        prop_assert_eq!(&*y, &*x);
        let s = x.cell_simplex(x.num_cells() - 1);
        let f = representing_map(&x, &s).unwrap();
        let g = parse_smap(&print_smap(&f), f.source().clone(), x.clone()).unwrap();
        prop_assert!(g.same_as(&f));
    }

    #[test]
    fn subcomplexes_of_products_of_simplices_are_regular(a in 0usize..3, b in 0usize..3, pick in any::<u64>()) {
        let p = product(&Arc::new(standard_simplex(a)), &Arc::new(standard_simplex(b)));
        prop_assert!(is_regular(&p.set));
        let c = (pick % p.set.num_cells() as u64) as usize;
        let sub = generate(&p.set, &[c]).unwrap();
        prop_assert!(is_regular(&sub.set));
    }

    #[test]
    fn nonsingularity_matches_representing_maps(seed in any::<u64>()) {
        let x = quotient_from(seed);
        let direct = (0..x.num_cells()).all(|c| {
            is_degreewise_injective(&representing_map(&x, &x.cell_simplex(c)).unwrap())
        });
        prop_assert_eq!(is_nonsingular(&x), direct);
    }

    #[test]
    fn pushout_along_identity_is_the_other_leg(seed in any::<u64>()) {
        let x = quotient_from(seed);
        let id = forge_core::SimplicialMap::identity(x.clone());
        let po = pushout(&id, &id, "p").unwrap();
        prop_assert!(find_isomorphism(po.set(), &x).is_some());
        let m = po.mediate(&id, &id).unwrap();
        prop_assert!(po.left.then(&m).unwrap().same_as(&id));
    }
}

#[test]
fn product_counts_match_shuffles() {
    // non-degenerate (p+q)-simplices of Δ[p]×Δ[q] are the C(p+q, p) shuffles
    let p = product(&Arc::new(standard_simplex(2)), &Arc::new(standard_simplex(1)));
    assert_eq!(p.set.cells_of_dim(3).len(), 3);
    assert_eq!(p.set.cells_of_dim(0).len(), 6);
}
