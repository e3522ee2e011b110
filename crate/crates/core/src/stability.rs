//! Hypothesis suites for stability of general Gaeta-resolved sheaves: the
//! polarization conditions, the exponent conditions, the discriminant bound,
//! and the ext¹₊ count along a Harder–Narasimhan filtration.

use num::{One, Signed, Zero};

use crate::arith::{int, rat, rat_int, Int, Rat};
use crate::cohomology::{d_family, weights};
use crate::error::{Error, Result};
use crate::gaeta::GaetaExponents;
use crate::surface::{DivClass, NumClass, Polarization, SurfaceConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationReport {
    pub lambda: Rat,
    /// H is a positive combination of the basepoint-free family: every weight
    /// of its triangular decomposition is > 0.
    pub positive_combination: bool,
    /// d_i/v ≤ λ/(λ+1) for every exceptional index.
    pub ratio_bound: bool,
    /// (d_i/v)² ≤ 2λ/t for every exceptional index (vacuous when t = 0).
    pub root_bound: bool,
    /// H·(K+A) < 0.
    pub k_plus_a_negative: bool,
    /// H·(K+2A) < 0.
    pub k_plus_2a_negative: bool,
    pub pass: bool,
}

pub fn polarization_report(s: &SurfaceConfig, h: &Polarization) -> Result<PolarizationReport> {
    s.as_blowup()?;
    let hd = h.as_div(s)?;
    let lambda = h.lambda(s);
    let positive_combination = weights(s, &hd).iter().all(Signed::is_positive);
    let t = s.t();
    let ratio_bound = h.d.iter().all(|d| d / &h.v <= &lambda / (&lambda + Rat::one()));
    let root_bound = t == 0 || {
        let cap = rat(2, 1) * &lambda / rat(t as i64, 1);
        h.d.iter().all(|d| {
            let q = d / &h.v;
            &q * &q <= cap
        })
    };
    let k = s.canonical();
    let k_plus_a_negative = s.intersect(&hd, &(&k + &s.a_div()))?.is_negative();
    let k_plus_2a_negative = s.intersect(&hd, &(&(&k + &s.a_div()) + &s.a_div()))?.is_negative();
    let pass = positive_combination && ratio_bound && root_bound && k_plus_a_negative && k_plus_2a_negative;
    Ok(PolarizationReport {
        lambda,
        positive_combination,
        ratio_bound,
        root_bound,
        k_plus_a_negative,
        k_plus_2a_negative,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentConditions {
    pub rank_at_least_two: bool,
    /// γ_i ≥ 1 + Σ_{j ≻ i} γ_j for every i ∈ S₀.
    pub gammas_exceed_children: bool,
    /// Σ_{S₀} γ_i + α₄ ≥ r + 1.
    pub alpha4_condition: bool,
    pub all_positive: bool,
    pub pass: bool,
}

pub fn exponent_conditions(s: &SurfaceConfig, exps: &GaetaExponents) -> Result<ExponentConditions> {
    GaetaExponents::from_sequence_vector(s, &exps.sequence_vector())?;
    let r = exps.rank();
    let gi = exps.gamma_i();
    let gj = exps.gamma_j();
    let s0 = s.s0();
    let rank_at_least_two = r >= int(2);
    let gammas_exceed_children = (0..s0).all(|i| {
        let below: Int = s.children(i).into_iter().map(|j| gj[j - s0].clone()).sum();
        gi[i] >= below + 1
    });
    let alpha4_condition = gi.iter().sum::<Int>() + exps.last() >= &r + 1;
    let all_positive = exps.sequence_vector().iter().all(Signed::is_positive);
    Ok(ExponentConditions {
        pass: rank_at_least_two && gammas_exceed_children && alpha4_condition && all_positive,
        rank_at_least_two,
        gammas_exceed_children,
        alpha4_condition,
        all_positive,
    })
}

/// (λ+1)²/(4λ) + t/8 + 1/r.
pub fn discriminant_threshold(s: &SurfaceConfig, h: &Polarization, r: &Int) -> Result<Rat> {
    s.as_blowup()?;
    if !r.is_positive() {
        return Err(Error::Precondition("rank must be at least 1".into()));
    }
    let lambda = h.lambda(s);
    if !lambda.is_positive() {
        return Err(Error::Precondition("lambda must be positive".into()));
    }
    let l1 = &lambda + Rat::one();
    Ok(&l1 * &l1 / (rat(4, 1) * &lambda) + rat(s.t() as i64, 8) + Rat::one() / rat_int(r))
}

/// One graded piece of a Harder–Narasimhan filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnFactor {
    pub r: Int,
    pub nu: DivClass,
    pub delta: Rat,
}

impl HnFactor {
    pub fn of_class(s: &SurfaceConfig, f: &NumClass) -> Result<Self> {
        let inv = s.invariants(f)?;
        Ok(HnFactor {
            r: f.r.clone(),
            nu: inv.nu,
            delta: inv.delta,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ext1PlusReport {
    pub value: Rat,
    /// ν₁·H ≥ … ≥ ν_ℓ·H, when a polarization was supplied.
    pub slopes_ordered: Option<bool>,
    pub discriminants_nonnegative: bool,
    /// (ν_i − ν_j)·D ≤ 2 for i < j and D in the basepoint-free family or C+A.
    pub slope_gaps_bounded: bool,
}

/// Σ_{i<j} r_i r_j (Δ_i + Δ_j − P(ν_j − ν_i)).
pub fn ext1_plus(s: &SurfaceConfig, hn: &[HnFactor], h: Option<&Polarization>) -> Result<Ext1PlusReport> {
    if hn.is_empty() {
        return Err(Error::Precondition("empty filtration".into()));
    }
    for g in hn {
        if !g.r.is_positive() {
            return Err(Error::Precondition("graded pieces need positive rank".into()));
        }
        s.validate(&g.nu)?;
    }
    let mut value = Rat::zero();
    for i in 0..hn.len() {
        for j in i + 1..hn.len() {
            let rr = rat_int(&(&hn[i].r * &hn[j].r));
            value += rr * (&hn[i].delta + &hn[j].delta - s.p_of(&(&hn[j].nu - &hn[i].nu))?);
        }
    }
    let slopes_ordered = match h {
        None => None,
        Some(h) => {
            let hd = h.as_div(s)?;
            let slopes = hn.iter().map(|g| s.intersect(&g.nu, &hd)).collect::<Result<Vec<_>>>()?;
            Some(slopes.windows(2).all(|w| w[0] >= w[1]))
        }
    };
    let mut family: Vec<DivClass> = if s.is_p2() {
        vec![s.h_div()]
    } else {
        let mut f: Vec<DivClass> = d_family(s).into_iter().map(|(_, d)| d).collect();
        f.push(&s.c_div() + &s.a_div());
        f
    };
    family.dedup();
    let two = rat(2, 1);
    let mut slope_gaps_bounded = true;
    for i in 0..hn.len() {
        for j in i + 1..hn.len() {
            let diff = &hn[i].nu - &hn[j].nu;
            for d in &family {
                if s.intersect(&diff, d)? > two {
                    slope_gaps_bounded = false;
                }
            }
        }
    }
    Ok(Ext1PlusReport {
        value,
        slopes_ordered,
        discriminants_nonnegative: hn.iter().all(|g| !g.delta.is_negative()),
        slope_gaps_bounded,
    })
}

/// The combined hypotheses under which a general sheaf with a Gaeta
/// resolution is stable: exponent conditions, polarization conditions, and
/// Δ(f) above the threshold. Genericity of H is an assumption, not a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesesReport {
    /// None when f admits no Gaeta resolution.
    pub exponents: Option<ExponentConditions>,
    pub polarization: PolarizationReport,
    pub discriminant: Rat,
    pub threshold: Rat,
    pub discriminant_ok: bool,
    pub pass: bool,
}

pub fn hypotheses_report(s: &SurfaceConfig, h: &Polarization, f: &NumClass) -> Result<HypothesesReport> {
    let polarization = polarization_report(s, h)?;
    let discriminant = s.invariants(f)?.delta;
    let threshold = discriminant_threshold(s, h, &f.r)?;
    let exponents = match crate::gaeta::exponents(s, f)? {
        Ok(exps) => Some(exponent_conditions(s, &exps)?),
        Err(_) => None,
    };
    let discriminant_ok = discriminant >= threshold;
    let pass = polarization.pass && discriminant_ok && exponents.as_ref().is_some_and(|e| e.pass);
    Ok(HypothesesReport {
        exponents,
        polarization,
        discriminant,
        threshold,
        discriminant_ok,
        pass,
    })
}
