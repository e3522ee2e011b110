//! Shapes, generators, and oracles shared by the integration tests. The
//! oracles restate the formulas from scratch rather than calling the library.
#![allow(dead_code)]

use gaeta_core::arith::{int, Int, Rat};
use gaeta_core::gaeta::GaetaExponents;
use gaeta_core::surface::{DivClass, NumClass, SurfaceConfig};
use num::Signed;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn blowup(e: u32, s0: usize, parents: &[usize]) -> SurfaceConfig {
    SurfaceConfig::blowup(e, s0, parents.to_vec()).expect("valid shape")
}

/// ℙ², 𝔽₀..𝔽₄ and a spread of admissible two-step blowups.
pub fn shapes() -> Vec<SurfaceConfig> {
    let mut v = vec![SurfaceConfig::P2];
    v.extend((0..=4).map(SurfaceConfig::hirzebruch));
    v.extend([
        blowup(1, 1, &[]),
        blowup(2, 1, &[0]),
        blowup(1, 2, &[]),
        blowup(3, 2, &[1]),
        blowup(1, 2, &[0, 0]),
        blowup(2, 2, &[0, 1]),
        blowup(4, 3, &[2]),
    ]);
    v
}

pub fn blowup_shapes() -> Vec<SurfaceConfig> {
    shapes().into_iter().filter(|s| !s.is_p2()).collect()
}

/// Every admissible blowup of 𝔽ₑ, 1 ≤ e ≤ e_max, with 1 ≤ t ≤ t_max, over all
/// parent maps from the height-one points to the height-zero points.
pub fn all_blowups(e_max: u32, t_max: usize) -> Vec<SurfaceConfig> {
    let mut out = Vec::new();
    for e in 1..=e_max {
        for t in 1..=t_max {
            for s0 in 1..=t {
                let s1 = t - s0;
                for code in 0..s0.pow(s1 as u32) {
                    let mut c = code;
                    let parents: Vec<usize> = (0..s1)
                        .map(|_| {
                            let p = c % s0;
                            c /= s0;
                            p
                        })
                        .collect();
                    out.push(blowup(e, s0, &parents));
                }
            }
        }
    }
    out
}

pub fn e_of(s: &SurfaceConfig) -> i64 {
    s.e() as i64
}

/// D·D' with A² = 0, A·B = 1, B² = −e, E_k² = −1 (H² = 1 on ℙ²).
pub fn oracle_dot(s: &SurfaceConfig, d1: &DivClass, d2: &DivClass) -> Rat {
    if s.is_p2() {
        return &d1.a * &d2.a;
    }
    let e = Rat::from_integer(int(e_of(s)));
    let mut v = &d1.a * &d2.b + &d1.b * &d2.a - e * &d1.b * &d2.b;
    for (x, y) in d1.g.iter().zip(&d2.g) {
        v -= x * y;
    }
    v
}

pub fn oracle_k(s: &SurfaceConfig) -> DivClass {
    if s.is_p2() {
        DivClass::from_ints(-3, 0, &[])
    } else {
        DivClass::from_ints(-e_of(s) - 2, -2, &vec![1; s.t()])
    }
}

fn ch2(s: &SurfaceConfig, f: &NumClass) -> Rat {
    // χ = r + c₁·(−K)/2 + ch₂ with χ(𝒪) = 1.
    let half = Rat::new(int(1), int(2));
    Rat::from_integer(f.chi.clone()) - Rat::from_integer(f.r.clone()) + half * oracle_dot(s, &f.c1, &oracle_k(s))
}

fn td_pair(s: &SurfaceConfig, r: Rat, c1: &DivClass, c2: Rat) -> Rat {
    let half = Rat::new(int(1), int(2));
    r + c2 - half * oracle_dot(s, c1, &oracle_k(s))
}

/// χ(F₁, F₂) = ∫ ch(F₁)^∨ ch(F₂) td.
pub fn oracle_chi_hom(s: &SurfaceConfig, f1: &NumClass, f2: &NumClass) -> Rat {
    let (r1, r2) = (Rat::from_integer(f1.r.clone()), Rat::from_integer(f2.r.clone()));
    let c1 = &f2.c1.scale(&r1) - &f1.c1.scale(&r2);
    let top = &r1 * ch2(s, f2) + &r2 * ch2(s, f1) - oracle_dot(s, &f1.c1, &f2.c1);
    td_pair(s, &r1 * &r2, &c1, top)
}

/// χ(F₁ ⊗ F₂) = ∫ ch(F₁) ch(F₂) td.
pub fn oracle_chi_tensor(s: &SurfaceConfig, f1: &NumClass, f2: &NumClass) -> Rat {
    let (r1, r2) = (Rat::from_integer(f1.r.clone()), Rat::from_integer(f2.r.clone()));
    let c1 = &f2.c1.scale(&r1) + &f1.c1.scale(&r2);
    let top = &r1 * ch2(s, f2) + &r2 * ch2(s, f1) + oracle_dot(s, &f1.c1, &f2.c1);
    td_pair(s, &r1 * &r2, &c1, top)
}

/// c₂ = c₁²/2 − ch₂.
pub fn oracle_c2(s: &SurfaceConfig, f: &NumClass) -> Rat {
    Rat::new(int(1), int(2)) * oracle_dot(s, &f.c1, &f.c1) - ch2(s, f)
}

/// h⁰(𝔽ₑ, aA + bB) by counting monomials x^i y^j z^k with weights.
pub fn monomial_h0(e: i64, a: i64, b: i64) -> i64 {
    if b < 0 {
        return 0;
    }
    (0..=b).map(|k| (a - e * k + 1).max(0)).sum()
}

/// Exponents with entries in 0..=max and positive rank.
pub fn random_exponents(rng: &mut ChaCha8Rng, s: &SurfaceConfig, max: i64) -> GaetaExponents {
    loop {
        let mut draw = |n: usize| (0..n).map(|_| int(rng.gen_range(0..=max))).collect::<Vec<Int>>();
        let exps = if s.is_p2() {
            let a = draw(3);
            GaetaExponents::P2 {
                a: [a[0].clone(), a[1].clone(), a[2].clone()],
            }
        } else {
            let alpha = draw(4);
            GaetaExponents::Blowup {
                alpha1: alpha[0].clone(),
                alpha2: alpha[1].clone(),
                alpha3: alpha[2].clone(),
                alpha4: alpha[3].clone(),
                gamma_i: draw(s.s0()),
                gamma_j: draw(s.t() - s.s0()),
            }
        };
        if exps.rank().is_positive() {
            return exps;
        }
    }
}

pub fn random_divisor(rng: &mut ChaCha8Rng, s: &SurfaceConfig, bound: i64) -> DivClass {
    let a = rng.gen_range(-bound..=bound);
    let b = if s.is_p2() { 0 } else { rng.gen_range(-bound..=bound) };
    let g: Vec<i64> = (0..s.t()).map(|_| rng.gen_range(-bound..=bound)).collect();
    DivClass::from_ints(a, b, &g)
}

pub fn random_class(rng: &mut ChaCha8Rng, s: &SurfaceConfig, max_rank: i64, bound: i64) -> NumClass {
    let r = rng.gen_range(1..=max_rank);
    NumClass::new(int(r), random_divisor(rng, s, bound), int(rng.gen_range(-bound * bound..=bound * bound)))
}

pub fn arb_shape() -> impl Strategy<Value = SurfaceConfig> {
    prop::sample::select(shapes())
}

pub fn arb_blowup() -> impl Strategy<Value = SurfaceConfig> {
    prop::sample::select(blowup_shapes())
}

pub fn arb_divisor(s: &SurfaceConfig, bound: i64) -> impl Strategy<Value = DivClass> {
    let p2 = s.is_p2();
    (
        -bound..=bound,
        if p2 { 0..=0 } else { -bound..=bound },
        prop::collection::vec(-bound..=bound, s.t()),
    )
        .prop_map(|(a, b, g)| DivClass::from_ints(a, b, &g))
}

pub fn arb_class(s: &SurfaceConfig, max_rank: i64, bound: i64) -> impl Strategy<Value = NumClass> {
    (1..=max_rank, arb_divisor(s, bound), -bound * bound..=bound * bound)
        .prop_map(|(r, c1, chi)| NumClass::new(int(r), c1, int(chi)))
}

pub fn arb_shape_divisor(bound: i64) -> impl Strategy<Value = (SurfaceConfig, DivClass)> {
    arb_shape().prop_flat_map(move |s| {
        let d = arb_divisor(&s, bound);
        (Just(s), d)
    })
}

pub fn arb_shape_class(max_rank: i64, bound: i64) -> impl Strategy<Value = (SurfaceConfig, NumClass)> {
    arb_shape().prop_flat_map(move |s| {
        let f = arb_class(&s, max_rank, bound);
        (Just(s), f)
    })
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}
