//! Property tests for the structural invariants: canonical indexing, the
//! group action, exact rank, serialization, and the orthogonal decomposition.

use proptest::prelude::*;

use octa_core::face::{enumerate_faces, face_index, SignedPermutation};
use octa_core::linalg::{rat, span_rank, BasisId, FaceVector, OperatorMatrix};
use octa_core::spectral::decompose;
use num_traits::Zero;

const N: usize = 4;

fn arb_grade() -> impl Strategy<Value = usize> {
    0..=N
}

fn arb_signed_permutation() -> impl Strategy<Value = SignedPermutation> {
    (
        Just((1..=N as i32).collect::<Vec<_>>()).prop_shuffle(),
        proptest::collection::vec(any::<bool>(), N),
    )
        .prop_map(|(perm, signs)| {
            let images = perm
                .into_iter()
                .zip(signs)
                .map(|(v, neg)| if neg { -v } else { v })
                .collect();
            SignedPermutation::new(images).expect("valid permutation")
        })
}

fn arb_vector(k: usize) -> impl Strategy<Value = FaceVector> {
    let basis = BasisId::faces(N, k as i64);
    proptest::collection::vec(-4i64..=4, basis.size()).prop_map(move |cs| {
        FaceVector::from_coeffs(basis, cs.into_iter().map(rat).collect()).expect("sized")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn face_index_inverts_enumeration(k in arb_grade(), idx_seed in any::<prop::sample::Index>()) {
        let basis = BasisId::faces(N, k as i64);
        let idx = idx_seed.index(basis.size());
        let face = basis.face_at(idx);
        prop_assert_eq!(face_index(&face, N, k as i64).unwrap(), idx);
    }

    #[test]
    fn opposite_is_involutive_and_commutes_with_the_action(
        k in 1..=N,
        idx_seed in any::<prop::sample::Index>(),
        g in arb_signed_permutation(),
    ) {
        let basis = BasisId::faces(N, k as i64);
        let x = basis.face_at(idx_seed.index(basis.size()));
        prop_assert_eq!(x.opposite().opposite(), x.clone());
        prop_assert_ne!(x.opposite(), x.clone());
        prop_assert_eq!(g.act(&x.opposite()), g.act(&x).opposite());
    }

    #[test]
    fn action_preserves_inclusion(
        g in arb_signed_permutation(),
        small_seed in any::<prop::sample::Index>(),
        big_seed in any::<prop::sample::Index>(),
    ) {
        let ones = enumerate_faces(N, 1);
        let twos = enumerate_faces(N, 2);
        let x = &ones[small_seed.index(ones.len())];
        let y = &twos[big_seed.index(twos.len())];
        prop_assert_eq!(
            x.is_subface_of(y),
            g.act(x).is_subface_of(&g.act(y))
        );
    }

    #[test]
    fn composition_is_associative_on_faces(
        g in arb_signed_permutation(),
        h in arb_signed_permutation(),
        k in arb_grade(),
        idx_seed in any::<prop::sample::Index>(),
    ) {
        let basis = BasisId::faces(N, k as i64);
        let x = basis.face_at(idx_seed.index(basis.size()));
        prop_assert_eq!(g.then(&h).act(&x), h.act(&g.act(&x)));
        prop_assert_eq!(g.then(&g.inverse()).act(&x), x);
    }

    #[test]
    fn rank_is_transpose_invariant(entries in proptest::collection::vec(-3i64..=3, 6 * 4)) {
        let rows = BasisId::positive(4, 2);
        let cols = BasisId::positive(4, 1);
        let m = OperatorMatrix::from_fn(rows, cols, |r, c| rat(entries[r * 4 + c]));
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn face_vector_survives_json(v in arb_vector(2)) {
        let json = serde_json::to_string(&v).unwrap();
        let back: FaceVector = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn spectral_components_sum_and_are_orthogonal(v in arb_vector(2)) {
        let comps = decompose(&v).unwrap();
        let mut sum = FaceVector::zero(v.basis());
        let mut norm_total = rat(0);
        let parts: Vec<&FaceVector> = comps.values().collect();
        for (a, pa) in parts.iter().enumerate() {
            sum = sum.add(pa).unwrap();
            norm_total += pa.norm2();
            for pb in parts.iter().skip(a + 1) {
                prop_assert!(pa.inner_product(pb).unwrap().is_zero());
            }
        }
        prop_assert_eq!(sum, v.clone());
        prop_assert_eq!(norm_total, v.norm2());
    }

    #[test]
    fn span_rank_is_order_invariant(k in 1..=N, seeds in proptest::collection::vec(any::<prop::sample::Index>(), 4)) {
        let basis = BasisId::faces(N, k as i64);
        let vs: Vec<FaceVector> = seeds
            .iter()
            .map(|s| FaceVector::unit(basis, &basis.face_at(s.index(basis.size()))).unwrap())
            .collect();
        let mut reversed = vs.clone();
        reversed.reverse();
        prop_assert_eq!(span_rank(&vs).unwrap(), span_rank(&reversed).unwrap());
    }
}
