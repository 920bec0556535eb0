use std::sync::Arc;

use forge_core::desing::{
    oracle_desingularize_bounded, regularize_oracle_bounded, replay_moves, zipper_desingularize, Certificate,
    DesingError,
};
use forge_core::harness::random_quotient;
use forge_core::poset::barratt;
use forge_core::sset::{find_isomorphism, is_nonsingular, is_regular, sphere, Congruence};
use forge_core::subdivision::sd;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn circle_desingularizes_to_a_point() {
    let x = Arc::new(sphere(1).unwrap());
    let z = zipper_desingularize(&x);
    assert_eq!(z.certificate, Certificate::ZipperCertified);
    assert_eq!(z.quotient.counts(), vec![1]);
    let o = oracle_desingularize_bounded(&x, 10).unwrap();
    assert_eq!(o.certificate, Certificate::OracleExact);
    assert_eq!(o.quotient.counts(), vec![1]);
    let r = regularize_oracle_bounded(&x, 10).unwrap();
    assert!(is_regular(&r.set));
    assert_eq!(r.set.counts(), vec![1]);
}

#[test]
fn double_subdivision_of_the_two_sphere() {
    let y = Arc::new(sphere(2).unwrap());
    let sy = sd(&y);
    let z = zipper_desingularize(&sd(&sy.set).set);
    assert_eq!(z.certificate, Certificate::ZipperCertified);
    assert!(find_isomorphism(&z.quotient, &barratt(&sy.set).sset).is_some());
}

#[test]
fn oracle_refuses_large_inputs() {
    let x = sd(&Arc::new(sphere(2).unwrap())).set;
    assert!(matches!(
        oracle_desingularize_bounded(&x, 10),
        Err(DesingError::TooLarge { bound: 10, .. })
    ));
}

fn tiny(seed: u64) -> Arc<forge_core::SimplicialSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Arc::new(random_quotient(&mut rng, 2, "t"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn zipper_log_replays_and_is_idempotent(seed in any::<u64>()) {
        let x = tiny(seed);
        let z = zipper_desingularize(&x);
        prop_assert!(replay_moves(&x, &z));
        prop_assert_eq!(z.certificate == Certificate::ZipperCertified, is_nonsingular(&z.quotient));
        if z.is_certified() {
            let again = zipper_desingularize(&z.quotient);
            prop_assert!(again.moves.is_empty());
        }
    }

    #[test]
    fn zipper_agrees_with_oracle(seed in any::<u64>()) {
        let x = tiny(seed);
        prop_assume!(x.num_cells() <= 10);
        let z = zipper_desingularize(&x);
        prop_assume!(z.is_certified());
        let o = oracle_desingularize_bounded(&x, 10).unwrap();
        let (kz, ko) = (Congruence::kernel(&z.eta, x.dim()), Congruence::kernel(&o.eta, x.dim()));
        prop_assert!(kz.same_partition(&ko));
    }
}
