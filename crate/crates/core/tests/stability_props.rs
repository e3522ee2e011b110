mod common;

use common::*;
use gaeta_core::arith::{int, Rat};
use gaeta_core::cohomology::ample_decompose;
use gaeta_core::stability::{ext1_plus, hypotheses_report, polarization_report, HnFactor};
use gaeta_core::surface::{NumClass, Polarization, SurfaceConfig};
use num::{Integer, Zero};
use proptest::prelude::*;

fn arb_hn(s: &SurfaceConfig) -> impl Strategy<Value = Vec<NumClass>> {
    prop::collection::vec(arb_class(s, 3, 6), 1..=4)
}

fn arb_polarization(t: usize) -> impl Strategy<Value = Polarization> {
    let r = || (1i64..=12, 1i64..=4).prop_map(|(p, q)| rat(p, q));
    (r(), r(), prop::collection::vec(r(), t)).prop_map(|(u, v, d)| Polarization::new(u, v, d).unwrap())
}

proptest! {
    #[test]
    fn ext1_plus_is_minus_sum_of_pairings((s, hn) in arb_shape().prop_flat_map(|s| {
        let hn = arb_hn(&s);
        (Just(s), hn)
    })) {
        let factors: Vec<HnFactor> = hn.iter().map(|f| HnFactor::of_class(&s, f).unwrap()).collect();
        let value = ext1_plus(&s, &factors, None).unwrap().value;
        let mut expected = Rat::zero();
        for i in 0..hn.len() {
            for j in i + 1..hn.len() {
                expected -= oracle_chi_hom(&s, &hn[i], &hn[j]);
            }
        }
        prop_assert_eq!(value.clone(), expected);
        if hn.len() == 1 {
            prop_assert!(value.is_zero());
        }
    }

    #[test]
    fn passing_polarization_is_a_positive_combination((s, h) in arb_blowup().prop_flat_map(|s| {
        let h = arb_polarization(s.t());
        (Just(s), h)
    })) {
        let rep = polarization_report(&s, &h).unwrap();
        if rep.positive_combination {
            // Clear denominators so the weights are integers.
            let n = h.d.iter().chain([&h.u, &h.v]).fold(int(1), |acc, q| acc.lcm(q.denom()));
            let scaled = h.as_div(&s).unwrap().scale(&Rat::from_integer(n));
            prop_assert!(ample_decompose(&s, &scaled).unwrap().very_ample);
        }
    }

    #[test]
    fn reports_are_pure((s, h, f) in arb_blowup().prop_flat_map(|s| {
        let (h, f) = (arb_polarization(s.t()), arb_class(&s, 4, 8));
        (Just(s), h, f)
    })) {
        let a = format!("{:?}", hypotheses_report(&s, &h, &f).unwrap());
        let b = format!("{:?}", hypotheses_report(&s, &h, &f).unwrap());
        prop_assert_eq!(a, b);
    }
}
