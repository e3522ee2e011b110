mod common;

use common::*;
use gaeta_core::arith::{int, to_int, Rat};
use gaeta_core::surface::{DivClass, NumClass, SurfaceConfig};
use num::Zero;
use proptest::prelude::*;

proptest! {
    #[test]
    fn intersection_matches_oracle_and_is_bilinear(
        (s, d1, d2, d3) in arb_shape().prop_flat_map(|s| {
            let (a, b, c) = (arb_divisor(&s, 9), arb_divisor(&s, 9), arb_divisor(&s, 9));
            (Just(s), a, b, c)
        }),
        k in -5i64..=5,
    ) {
        let dot = |x: &DivClass, y: &DivClass| s.intersect(x, y).unwrap();
        prop_assert_eq!(dot(&d1, &d2), oracle_dot(&s, &d1, &d2));
        prop_assert_eq!(dot(&d1, &d2), dot(&d2, &d1));
        let k = Rat::from_integer(int(k));
        let lhs = dot(&(&d1.scale(&k) + &d2), &d3);
        prop_assert_eq!(lhs, &k * dot(&d1, &d3) + dot(&d2, &d3));
    }

    #[test]
    fn c2_is_integral_and_matches_chern_character((s, f) in arb_shape_class(5, 9)) {
        let inv = s.invariants(&f).unwrap();
        prop_assert!(to_int(&inv.c2).is_some(), "c2 = {}", inv.c2);
        prop_assert_eq!(inv.c2, oracle_c2(&s, &f));
    }

    #[test]
    fn self_pairing_is_r_squared_minus_twice_discriminant((s, f) in arb_shape_class(5, 9)) {
        let delta = s.invariants(&f).unwrap().delta;
        let r = Rat::from_integer(f.r.clone());
        let p = s.pairings(&f, &f).unwrap();
        prop_assert_eq!(p.chi_hom.clone(), &r * &r - rat(2, 1) * &r * &r * delta);
        prop_assert_eq!(p.chi_hom, oracle_chi_hom(&s, &f, &f));
    }

    #[test]
    fn pairings_match_chern_character_oracle(
        (s, f1, f2) in arb_shape().prop_flat_map(|s| {
            let (a, b) = (arb_class(&s, 4, 8), arb_class(&s, 4, 8));
            (Just(s), a, b)
        })
    ) {
        let p = s.pairings(&f1, &f2).unwrap();
        prop_assert_eq!(p.chi_hom.clone(), oracle_chi_hom(&s, &f1, &f2));
        prop_assert_eq!(p.chi_tensor, oracle_chi_tensor(&s, &f1, &f2));
        prop_assert_eq!(Rat::from_integer(s.chi_pair(&f1, &f2).unwrap()), p.chi_hom);
    }

    #[test]
    fn sigma_rho_orthogonal(
        (s, l) in arb_shape_divisor(10),
        r in 1i64..=6,
        ell in 1i64..=5,
    ) {
        let sigma = NumClass::new(int(r), l, int(r * ell));
        let rho = NumClass::new(int(1), s.zero(), int(1 - ell));
        prop_assert!(s.pairings(&sigma, &rho).unwrap().chi_tensor.is_zero());
        prop_assert!(oracle_chi_tensor(&s, &sigma, &rho).is_zero());
    }

    #[test]
    fn twist_preserves_rank_and_discriminant(
        (s, f, d) in arb_shape().prop_flat_map(|s| {
            let (f, d) = (arb_class(&s, 4, 8), arb_divisor(&s, 6));
            (Just(s), f, d)
        })
    ) {
        let g = s.twist(&f, &d).unwrap();
        prop_assert_eq!(&g.r, &f.r);
        prop_assert_eq!(s.invariants(&g).unwrap().delta, s.invariants(&f).unwrap().delta);
        prop_assert_eq!(s.twist(&g, &-&d).unwrap(), f);
    }

    #[test]
    fn line_class_chi_is_riemann_roch((s, d) in arb_shape_divisor(12)) {
        let f = s.line_class(&d).unwrap();
        let k = oracle_k(&s);
        let rr = rat(1, 1) + rat(1, 2) * oracle_dot(&s, &d, &(&d - &k));
        prop_assert_eq!(Rat::from_integer(f.chi), rr);
    }
}

#[test]
fn canonical_self_intersection() {
    // K² = 8 − t on blowups of 𝔽ₑ and 9 on ℙ².
    for s in shapes() {
        let k = s.canonical();
        let expected = if s.is_p2() { 9 } else { 8 - s.t() as i64 };
        assert_eq!(s.intersect(&k, &k).unwrap(), rat(expected, 1), "{s:?}");
    }
}

#[test]
fn admissibility_rules() {
    assert!(SurfaceConfig::hirzebruch(0).admissible());
    assert!(!blowup(0, 1, &[]).admissible());
    assert!(blowup(1, 1, &[0]).admissible());
    assert!(!SurfaceConfig::blowup_with_flags(2, 1, vec![], false, true).unwrap().admissible());
    assert!(!SurfaceConfig::blowup_with_flags(2, 1, vec![], true, false).unwrap().admissible());
    assert!(SurfaceConfig::blowup(1, 1, vec![1]).is_err());
}
