mod common;

use common::*;
use gaeta_core::arith::{int, Int, Rat};
use gaeta_core::exceptional::{lambda_matrix, perp_test, perp_value, sequence, verify_dual, verify_sequence};
use gaeta_core::gaeta::GaetaExponents;
use gaeta_core::surface::{NumClass, SurfaceConfig};
use num::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn every_small_shape_verifies_with_identity_dual_matrix() {
    let mut all = vec![SurfaceConfig::P2];
    all.extend((0..=4).map(SurfaceConfig::hirzebruch));
    all.extend(all_blowups(4, 4));
    for s in &all {
        let seq = verify_sequence(s).unwrap();
        assert!(seq.pass, "{s:?}: {:?}", seq.failures().next());
        let dual = verify_dual(s).unwrap();
        assert!(dual.pass, "{s:?}");
        let n = dual.matrix.len();
        for (i, row) in dual.matrix.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, if i == j { Int::one() } else { Int::zero() }, "{s:?} ({i},{j})");
            }
        }
        assert_eq!(n, sequence(s).unwrap().len());
    }
}

fn exps_strategy(s: &SurfaceConfig) -> impl Strategy<Value = GaetaExponents> {
    let p2 = s.is_p2();
    let (s0, s1) = (s.s0(), s.t() - s.s0());
    (prop::collection::vec(-9i64..=9, 4), prop::collection::vec(-9i64..=9, s0), prop::collection::vec(-9i64..=9, s1))
        .prop_map(move |(a, gi, gj)| {
            if p2 {
                GaetaExponents::p2([a[0], a[1], a[2]])
            } else {
                GaetaExponents::blowup([a[0], a[1], a[2], a[3]], &gi, &gj)
            }
        })
}

proptest! {
    #[test]
    fn lambda_is_lower_triangular_with_unit_diagonal((s, exps) in arb_shape().prop_flat_map(|s| {
        let e = exps_strategy(&s);
        (Just(s), e)
    })) {
        let m = lambda_matrix(&s, &exps).unwrap();
        for (i, row) in m.iter().enumerate() {
            prop_assert!(row[i].abs().is_one());
            prop_assert!(row[i + 1..].iter().all(Zero::is_zero));
        }
        // Exponent-independent: only the shape matters.
        let zero = GaetaExponents::from_sequence_vector(&s, &vec![int(0); m.len()]).unwrap();
        prop_assert_eq!(lambda_matrix(&s, &zero).unwrap(), m);
    }

    #[test]
    fn perp_is_linear_and_matches_oracle(
        (s, f, w1, w2) in arb_shape().prop_flat_map(|s| {
            let n = if s.is_p2() { 3 } else { 4 + s.t() };
            let f = arb_class(&s, 4, 8);
            let w = prop::collection::vec(-6i64..=6, n);
            (Just(s), f, w.clone(), w)
        }),
        k in -4i64..=4,
    ) {
        let to_int = |w: &[i64]| w.iter().map(|&x| int(x)).collect::<Vec<Int>>();
        let (w1, w2) = (to_int(&w1), to_int(&w2));
        let combo: Vec<Int> = w1.iter().zip(&w2).map(|(a, b)| a * int(k) + b).collect();
        let v = |w: &[Int]| perp_value(&s, w, &f).unwrap();
        prop_assert_eq!(v(&combo), v(&w1) * int(k) + v(&w2));

        let seq = sequence(&s).unwrap();
        let mut oracle = Rat::zero();
        for (wi, m) in w1.iter().zip(&seq.members) {
            let chi = rat(1, 1) + rat(1, 2) * oracle_dot(&s, m, &(m - &oracle_k(&s)));
            let line = NumClass::new(int(1), m.clone(), chi.to_integer());
            oracle += Rat::from_integer(wi.clone()) * oracle_chi_hom(&s, &line, &f);
        }
        prop_assert_eq!(Rat::from_integer(v(&w1)), oracle);
    }
}

#[test]
fn perp_nullspace_vectors_pass() {
    // For each class, an integer vector orthogonal to χ(E_i, f) built from two
    // coordinates is in f^⊥; a unit vector on a nonzero coordinate is not.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in shapes() {
        for _ in 0..20 {
            let f = random_class(&mut rng, &s, 3, 6);
            let n = sequence(&s).unwrap().len();
            let c: Vec<Int> = (0..n)
                .map(|i| {
                    let mut w = vec![int(0); n];
                    w[i] = int(1);
                    perp_value(&s, &w, &f).unwrap()
                })
                .collect();
            let Some(p) = c.iter().position(|x| !x.is_zero()) else { continue };
            let q = (p + 1) % n;
            let mut w = vec![int(0); n];
            w[p] = c[q].clone();
            w[q] = -c[p].clone();
            assert!(perp_test(&s, &w, &f).unwrap());
            let mut unit = vec![int(0); n];
            unit[p] = int(1);
            assert!(!perp_test(&s, &unit, &f).unwrap());
        }
    }
}

#[test]
fn reordered_sequences_fail() {
    let s = SurfaceConfig::hirzebruch(1);
    let mut seq = sequence(&s).unwrap();
    seq.members.swap(0, 3);
    let rep = gaeta_core::exceptional::verify_sequence_of(&s, &seq).unwrap();
    assert!(!rep.pass);
}
