use forge_core::delta::{all_operators, faces_into, surjections};
use forge_core::{compose, join_faces, Operator};
use proptest::prelude::*;

fn operator(max: usize) -> impl Strategy<Value = Operator> {
    (0..=max, 0..=max).prop_flat_map(|(m, n)| {
        proptest::collection::vec(0..=n, m + 1).prop_map(move |mut v| {
            v.sort_unstable();
            Operator::new(&v, n).unwrap()
        })
    })
}

fn chain3(max: usize) -> impl Strategy<Value = (Operator, Operator, Operator)> {
    (0..=max, 0..=max, 0..=max, 0..=max).prop_flat_map(|(a, b, c, d)| {
        let mk = |src: usize, dst: usize| {
            proptest::collection::vec(0..=dst, src + 1).prop_map(move |mut v| {
                v.sort_unstable();
                Operator::new(&v, dst).unwrap()
            })
        };
        (mk(a, b), mk(b, c), mk(c, d))
    })
}

proptest! {
    #[test]
    fn composition_is_associative((f, g, h) in chain3(5)) {
        let left = f.then(&g).unwrap().then(&h).unwrap();
        let right = f.then(&g.then(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identities_are_neutral(f in operator(6)) {
        prop_assert_eq!(Operator::identity(f.src()).then(&f).unwrap(), f.clone());
        prop_assert_eq!(f.then(&Operator::identity(f.dst())).unwrap(), f);
    }

    #[test]
    fn epi_mono_factorization_is_unique(f in operator(6)) {
        let (face, degen) = f.ez_factor();
        prop_assert!(face.is_face());
        prop_assert!(degen.is_degeneracy());
        prop_assert_eq!(compose(&degen, &face).unwrap(), f.clone());
        // any other surjection-injection pair through the same middle rank differs
        let k = degen.dst();
        let hits = surjections(f.src(), k)
            .iter()
            .flat_map(|s| all_operators(k, f.dst()).into_iter().filter(|i| i.is_face()).map(move |i| (s.clone(), i)))
            .filter(|(s, i)| compose(s, i).unwrap() == f)
            .count();
        prop_assert_eq!(hits, 1);
    }

    #[test]
    fn join_is_least_upper_bound(n in 0usize..6, a in 1u32..64, b in 1u32..64) {
        let full = (1u32 << (n + 1)) - 1;
        prop_assume!(a & full != 0 && b & full != 0);
        let mu = Operator::from_image(n, a & full).unwrap();
        let nu = Operator::from_image(n, b & full).unwrap();
        let j = join_faces(&mu, &nu).unwrap();
        prop_assert_eq!(j.image_mask(), mu.image_mask() | nu.image_mask());
        for g in faces_into(n) {
            let above = |x: &Operator| x.image_mask() & !g.image_mask() == 0;
            prop_assert_eq!(above(&mu) && above(&nu), above(&j));
        }
    }

    #[test]
    fn cosimplicial_identities(n in 2usize..7, i in 0usize..7, j in 0usize..7) {
        let d = |k: usize, m: usize| Operator::face(k, m).unwrap();
        let s = |k: usize, m: usize| Operator::degeneracy(k, m).unwrap();
        if i < j && j <= n {
            prop_assert_eq!(d(i, n - 1).then(&d(j, n)).unwrap(), d(j - 1, n - 1).then(&d(i, n)).unwrap());
        }
        if i <= j && j < n {
            prop_assert_eq!(s(i, n).then(&s(j, n - 1)).unwrap(), s(j + 1, n).then(&s(i, n - 1)).unwrap());
        }
        if j < n {
            let id = Operator::identity(n - 1);
            prop_assert_eq!(d(j, n).then(&s(j, n - 1)).unwrap(), id.clone());
            prop_assert_eq!(d(j + 1, n).then(&s(j, n - 1)).unwrap(), id);
        }
    }
}
