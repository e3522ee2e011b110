mod common;

use common::*;
use gaeta_core::arith::{int, Rat};
use gaeta_core::cohomology::{ample_decompose, chi_line, cohom_fe, cohom_x, recompose, weights, CohomResult};
use gaeta_core::surface::{DivClass, SurfaceConfig};
use num::Signed;
use proptest::prelude::*;

#[test]
fn fe_matches_monomials_riemann_roch_and_serre() {
    for e in 0..=4i64 {
        for a in -12..=12i64 {
            for b in -12..=12i64 {
                let [h0, h1, h2] = cohom_fe(e as u32, &int(a), &int(b)).triple().expect("exact on Fe");
                assert_eq!(h0, int(monomial_h0(e, a, b)), "e={e} a={a} b={b}");
                assert_eq!(&h0 - &h1 + &h2, int((a + 1) * (b + 1) - e * b * (b + 1) / 2));
                let s = SurfaceConfig::hirzebruch(e as u32);
                assert_eq!(&h0 - &h1 + &h2, chi_line(&s, &DivClass::from_ints(a, b, &[])).unwrap());
                let dual = cohom_fe(e as u32, &int(-e - 2 - a), &int(-2 - b)).triple().unwrap();
                assert_eq!(dual, [h2, h1, h0], "Serre e={e} a={a} b={b}");
            }
        }
    }
}

proptest! {
    #[test]
    fn pullbacks_have_fe_cohomology(s in arb_blowup(), a in -10i64..=10, b in -10i64..=10) {
        let d = DivClass::from_ints(a, b, &vec![0; s.t()]);
        prop_assert_eq!(cohom_x(&s, &d).unwrap(), cohom_fe(s.e(), &int(a), &int(b)));
    }

    #[test]
    fn exact_results_are_consistent((s, d) in arb_shape_divisor(6)) {
        let c = cohom_x(&s, &d).unwrap();
        let chi = chi_line(&s, &d).unwrap();
        prop_assert_eq!(c.chi(), chi.clone());
        if let CohomResult::Exact { h0, h1, h2 } = &c {
            prop_assert!(!h0.is_negative() && !h1.is_negative() && !h2.is_negative());
            prop_assert_eq!(h0 - h1 + h2, chi);
        }
    }

    #[test]
    fn serre_duality_on_blowups((s, d) in arb_blowup().prop_flat_map(|s| {
        let d = arb_divisor(&s, 5);
        (Just(s), d)
    })) {
        let (c, dual) = (cohom_x(&s, &d).unwrap(), cohom_x(&s, &(&s.canonical() - &d)).unwrap());
        if let (Some([h0, h1, h2]), Some(k)) = (c.triple(), dual.triple()) {
            prop_assert_eq!(k, [h2, h1, h0]);
        }
    }

    #[test]
    fn weights_round_trip((s, d) in arb_blowup().prop_flat_map(|s| {
        let d = arb_divisor(&s, 12);
        (Just(s), d)
    })) {
        prop_assert_eq!(recompose(&s, &weights(&s, &d)), d.clone());
        let dec = ample_decompose(&s, &d).unwrap();
        let w = weights(&s, &d);
        let as_rat: Vec<Rat> = dec.weights.iter().map(|x| Rat::from_integer(x.clone())).collect();
        prop_assert_eq!(as_rat, w.iter().cloned().collect::<Vec<_>>());
        prop_assert_eq!(dec.very_ample, w.iter().all(|x| *x >= rat(1, 1)));
    }
}

#[test]
fn exceptional_curve_examples() {
    let x = blowup(1, 1, &[0]);
    for k in 0..x.t() {
        let minus = -&x.e_div(k);
        assert_eq!(cohom_x(&x, &minus).unwrap().triple(), Some([int(0), int(0), int(0)]));
        assert_eq!(cohom_x(&x, &x.e_div(k)).unwrap().h0(), Some(int(1)));
    }
    // |C| is basepoint-free, so the point p₁ imposes exactly one condition.
    let c = x.c_div();
    assert_eq!(cohom_x(&x, &(&c - &x.e_div(0))).unwrap().h0(), Some(int(monomial_h0(1, 1, 1) - 1)));
}
