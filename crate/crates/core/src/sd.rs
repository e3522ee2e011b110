//! Numerics around the strange duality pairing of σ = (r, L, rℓ) and
//! ρ = (1, 0, 1−ℓ): exponents of v = σ + ρ, the positivity suites on L, the
//! determinant bundle Θ_σ on the Hilbert scheme, the dimension count for the
//! space of diagrams Ξ, and the stratum gap estimate.

use num::{One, Signed, Zero};

use crate::arith::{int, rat, rat_int, to_int, Int, Rat};
use crate::cohomology::{ample_decompose, chi_line, cohom_x};
use crate::error::{Error, Result};
use crate::exceptional::sequence;
use crate::gaeta::{class_of_unchecked, exponents, GaetaExponents};
use crate::stability::discriminant_threshold;
use crate::surface::{DivClass, NumClass, Polarization, SurfaceConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdPair {
    pub r: Int,
    pub ell: Int,
    pub l: DivClass,
    pub sigma: NumClass,
    pub rho: NumClass,
    pub v: NumClass,
}

pub fn make_pair(s: &SurfaceConfig, r: &Int, ell: &Int, l: &DivClass) -> Result<SdPair> {
    if r < &int(2) || ell < &Int::one() {
        return Err(Error::Precondition("need r ≥ 2 and ℓ ≥ 1".into()));
    }
    s.validate(l)?;
    if !l.is_integral() {
        return Err(Error::NonIntegral("L"));
    }
    let sigma = NumClass::new(r.clone(), l.clone(), r * ell);
    let rho = NumClass::new(Int::one(), s.zero(), Int::one() - ell);
    let v = sigma.add(&rho);
    if !s.pairings(&sigma, &rho)?.chi_tensor.is_zero() {
        return Err(Error::Internal("σ and ρ are not orthogonal".into()));
    }
    Ok(SdPair {
        r: r.clone(),
        ell: ell.clone(),
        l: l.clone(),
        sigma,
        rho,
        v,
    })
}

/// Exponents of v from those of σ: ρ contributes ℓ to each left-type
/// exponent and 1 − ℓ to the last one (ℓ, 2ℓ, 1 − ℓ on ℙ²).
pub fn v_exponents(s: &SurfaceConfig, sigma_exps: &GaetaExponents, ell: &Int) -> Result<GaetaExponents> {
    if !sigma_exps.is_nonnegative() {
        return Err(Error::Precondition("σ exponents must be non-negative".into()));
    }
    if ell < &Int::one() {
        return Err(Error::Precondition("ℓ must be at least 1".into()));
    }
    let r = sigma_exps.rank();
    if sigma_exps.last() != &r * ell {
        return Err(Error::Precondition(format!(
            "last exponent {} is not rℓ = {}",
            sigma_exps.last(),
            &r * ell
        )));
    }
    let drop = ell - Int::one();
    let shifted = match sigma_exps {
        GaetaExponents::P2 { a } => GaetaExponents::P2 {
            a: [&a[0] + ell, &a[1] + ell * 2, &a[2] - &drop],
        },
        GaetaExponents::Blowup { alpha1, alpha2, alpha3, alpha4, gamma_i, gamma_j } => GaetaExponents::Blowup {
            alpha1: alpha1 + ell,
            alpha2: alpha2 + ell,
            alpha3: alpha3 + ell,
            alpha4: alpha4 - &drop,
            gamma_i: gamma_i.clone(),
            gamma_j: gamma_j.clone(),
        },
    };
    let sigma = class_of_unchecked(s, sigma_exps)?;
    let v = sigma.add(&NumClass::new(Int::one(), s.zero(), Int::one() - ell));
    match exponents(s, &v)? {
        Ok(direct) if direct == shifted => Ok(shifted),
        _ => Err(Error::Internal("shifted exponents disagree with the exponents of v".into())),
    }
}

/// max{ m(ℓ + r + 1 − m) : 1 ≤ m ≤ ℓ }.
pub fn big_m(r: &Int, ell: &Int) -> Result<Int> {
    if r < &Int::one() || ell < &Int::one() {
        return Err(Error::Precondition("need r ≥ 1 and ℓ ≥ 1".into()));
    }
    let top = ell + r + 1;
    let mut best = Int::zero();
    let mut m = Int::one();
    while &m <= ell {
        best = best.max(&m * (&top - &m));
        m += 1;
    }
    Ok(best)
}

/// One verdict per positivity condition on L, plus the hypotheses of the
/// dimension count for Ξ (checked on the exponents of v).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub big_m: Int,
    /// γ_j ≥ M and γ_i ≥ M + Σ_{j≻i} γ_j.
    pub gammas_vs_m: bool,
    /// α, δ ≥ M + Σ_{S₀} γ_i + r(ℓ − 1).
    pub alpha_delta_vs_m: bool,
    pub p_of_slope: Rat,
    pub discriminant_threshold: Rat,
    /// P(L/r) ≥ (λ+1)²/(4λ) + t/8 + 1/r + ℓ.
    pub discriminant: bool,
    /// The inequalities on γ, δ, α guaranteeing that Θ_σ has no higher cohomology.
    pub theta_vanishing: bool,
    /// σ admits Gaeta resolutions: γ's, χ ≥ 0 and α, δ ≥ Σ_{S₀} γ_i + χ − r.
    pub admits_gaeta: bool,
    /// α₂, α₃ ≥ M, γ_j ≥ M + ℓ, γ_i ≥ M + ℓ + Σ_{j≻i} γ_j for v.
    pub dim_count: bool,
}

impl PositivityReport {
    /// Tagged verdicts in a fixed order.
    pub fn verdicts(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("gammas-vs-M", self.gammas_vs_m),
            ("alpha-delta-vs-M", self.alpha_delta_vs_m),
            ("discriminant", self.discriminant),
            ("theta-vanishing", self.theta_vanishing),
            ("admits-gaeta", self.admits_gaeta),
            ("dim-count", self.dim_count),
        ]
    }

    pub fn pass(&self) -> bool {
        self.verdicts().iter().all(|(_, ok)| *ok)
    }
}

pub fn positivity_report(s: &SurfaceConfig, pair: &SdPair, h: &Polarization) -> Result<PositivityReport> {
    s.as_blowup()?;
    s.require_admissible()?;
    let e = s.e();
    let (r, ell) = (&pair.r, &pair.ell);
    let m = big_m(r, ell)?;
    let l = &pair.l;
    let alpha = to_int(&l.alpha(e)).expect("integral");
    let delta = to_int(&l.delta()).expect("integral");
    let gamma = |k: usize| to_int(&l.gamma(k)).expect("integral");
    let s0 = s.s0_indices();
    let sum_i: Int = s0.clone().map(gamma).sum();
    let child_sum = |i: usize, plus: i64| -> Int { s.children(i).into_iter().map(|j| gamma(j) + plus).sum() };
    let shift = r * (ell - 1);

    let gammas_vs_m = s.s1_indices().all(|j| gamma(j) >= m) && s0.clone().all(|i| gamma(i) >= &m + child_sum(i, 0));
    let floor = &m + &sum_i + &shift;
    let alpha_delta_vs_m = alpha >= floor && delta >= floor;

    let p_of_slope = s.p_of(&l.scale(&(Rat::one() / rat_int(r))))?;
    let threshold = discriminant_threshold(s, h, r)? + rat_int(ell);
    let discriminant = p_of_slope >= threshold;

    let plus_one: Int = s0.clone().map(|i| gamma(i) + 1).sum();
    let theta_vanishing = s.s1_indices().all(|j| gamma(j) >= shift)
        && s0.clone().all(|i| gamma(i) >= &shift + child_sum(i, 1))
        && delta >= &shift - 1 + &plus_one
        && alpha >= &shift - 1 + Int::from(e) + &plus_one;

    let chi = &pair.sigma.chi;
    let admits_gaeta = s.s0_indices().chain(s.s1_indices()).all(|k| !gamma(k).is_negative())
        && !chi.is_negative()
        && alpha >= &sum_i + chi - r
        && delta >= &sum_i + chi - r;

    let dim_count = match exponents(s, &pair.v)? {
        Ok(GaetaExponents::Blowup { alpha2, alpha3, gamma_i, gamma_j, .. }) => {
            let s0n = s.s0();
            alpha2 >= m
                && alpha3 >= m
                && gamma_j.iter().all(|g| g >= &(&m + ell))
                && (0..s0n).all(|i| {
                    let below: Int = s.children(i).into_iter().map(|j| gamma_j[j - s0n].clone()).sum();
                    gamma_i[i] >= &m + ell + below
                })
        }
        _ => false,
    };

    Ok(PositivityReport {
        big_m: m,
        gammas_vs_m,
        alpha_delta_vs_m,
        p_of_slope,
        discriminant_threshold: threshold,
        discriminant,
        theta_vanishing,
        admits_gaeta,
        dim_count,
    })
}

/// A class in Pic S ⊕ ℤ·(E/2) on the Hilbert scheme of points, written
/// base_ℓ + e_coeff·E.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbDivClass {
    pub base: DivClass,
    pub e_coeff: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaReport {
    pub theta: HilbDivClass,
    pub k_hilb: HilbDivClass,
    /// L − K splits into one ℓ-very ample and r − 1 (ℓ−1)-very ample bundles.
    pub vanishing_sufficient: bool,
}

/// Θ_σ = L_ℓ − (r/2)E and K = (K_S)_ℓ, with a sufficient test for the
/// vanishing of the higher cohomology of Θ_σ.
pub fn theta_on_hilb(s: &SurfaceConfig, pair: &SdPair) -> Result<ThetaReport> {
    let theta = HilbDivClass {
        base: pair.l.clone(),
        e_coeff: -rat_int(&pair.r) / rat(2, 1),
    };
    let k = s.canonical();
    let k_hilb = HilbDivClass {
        base: k.clone(),
        e_coeff: Rat::zero(),
    };
    // A combination of the basepoint-free family with all weights ≥ m is
    // m-very ample, and the weights add, so the split exists exactly when
    // every weight reaches ℓ + (r−1)(ℓ−1).
    let need = &pair.ell + (&pair.r - 1) * (&pair.ell - 1);
    let l_minus_k = &pair.l - &k;
    let vanishing_sufficient = if s.is_p2() {
        // 𝒪(m) is m-very ample.
        to_int(&l_minus_k.a).expect("integral") >= need
    } else {
        ample_decompose(s, &l_minus_k)?.weights.iter().all(|w| w >= &need)
    };
    Ok(ThetaReport {
        theta,
        k_hilb,
        vanishing_sufficient,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiDimension {
    pub hom_lambda_omega: Int,
    pub dim_p: Int,
    pub formula_value: Int,
    pub rank_lambda: Int,
    pub rank_omega: Int,
    /// rk Λ − rk Ω = r + 1 and α₄(v) = (r−1)ℓ + 1.
    pub rank_facts_hold: bool,
    pub identity_holds: bool,
}

/// The dual resolution 0 → V* → Λ → Ω → 0 has Λ built from the duals of the
/// right block and Ω from the duals of the left block, so hom(Λ, Ω) is a sum
/// of h⁰(E_right − E_left).
pub fn xi_dimension(s: &SurfaceConfig, pair: &SdPair, v_exps: &GaetaExponents) -> Result<XiDimension> {
    if !v_exps.is_nonnegative() {
        return Err(Error::Precondition("v exponents must be non-negative".into()));
    }
    let seq = sequence(s)?;
    let a = v_exps.sequence_vector();
    if a.len() != seq.len() {
        return Err(Error::Precondition("exponent shape does not match the surface".into()));
    }
    let d = seq.d;
    let mut hom = Int::zero();
    for k in 0..d {
        for m in d..seq.len() {
            if a[k].is_zero() || a[m].is_zero() {
                continue;
            }
            let h0 = cohom_x(s, &(&seq.members[m] - &seq.members[k]))?
                .h0()
                .ok_or_else(|| Error::Incomplete(format!("h0(E{} - E{})", m + 1, k + 1)))?;
            hom += &a[k] * &a[m] * h0;
        }
    }
    let rank_omega: Int = a[..d].iter().sum();
    let rank_lambda: Int = a[d..].iter().sum();
    let (r, ell) = (&pair.r, &pair.ell);
    let alpha4 = v_exps.last();
    let formula_value = &hom - ell * &rank_lambda + (&alpha4 - 1) + (ell * 2 + ell * &rank_omega - 1);
    let dim_p = &hom - 1;
    Ok(XiDimension {
        rank_facts_hold: &rank_lambda - &rank_omega == r + 1 && alpha4 == (r - 1) * ell + 1,
        identity_holds: formula_value == dim_p,
        hom_lambda_omega: hom,
        dim_p,
        formula_value,
        rank_lambda,
        rank_omega,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumGap {
    pub ext1_bound: Int,
    pub stratum_codim: Int,
    pub gap: Int,
}

/// Upper bound for ext¹(Λ, ker ψ) on the stratum with parameters
/// (λ, λ_j, λ_i), the codimension of that stratum, and their difference.
pub fn stratum_gap(
    s: &SurfaceConfig,
    v_exps: &GaetaExponents,
    ell: &Int,
    lam: &Int,
    lam_j: &[Int],
    lam_i: &[Int],
) -> Result<StratumGap> {
    s.as_blowup()?;
    let GaetaExponents::Blowup { alpha1, alpha2, alpha3, alpha4, gamma_i, gamma_j } = v_exps else {
        return Err(Error::Precondition("blowup exponents expected".into()));
    };
    let s0 = s.s0();
    if gamma_i.len() != s0 || gamma_j.len() != s.t() - s0 || lam_i.len() != s0 || lam_j.len() != gamma_j.len() {
        return Err(Error::DimensionMismatch {
            expected: s.t(),
            got: lam_i.len() + lam_j.len(),
        });
    }
    if lam.is_negative() || lam > ell {
        return Err(Error::Precondition("need 0 ≤ λ ≤ ℓ".into()));
    }
    for i in 0..s0 {
        if lam_i[i].is_negative() || &lam_i[i] > lam {
            return Err(Error::Precondition(format!("need 0 ≤ λ_{} ≤ λ", i + 1)));
        }
        for j in s.children(i) {
            let lj = &lam_j[j - s0];
            if lj < &lam_i[i] || lj > ell {
                return Err(Error::Precondition(format!("need λ_{} ≤ λ_{} ≤ ℓ", i + 1, j + 1)));
            }
        }
    }
    let ext1_bound = lam * (alpha2 + alpha3 + alpha4) + (0..s0).map(|i| &lam_i[i] * &gamma_i[i]).sum::<Int>();
    let mut codim = lam * (alpha1 + lam - ell);
    for (lj, gj) in lam_j.iter().zip(gamma_j) {
        codim += lj * (gj + lj - ell);
    }
    for i in 0..s0 {
        let over: Int = s.children(i).into_iter().map(|j| ell - &lam_j[j - s0]).sum();
        codim += &lam_i[i] * (&lam_i[i] - lam + over);
    }
    let gap = &ext1_bound - &codim;

    // The same difference expanded with rk v = r + 1.
    let r = v_exps.rank() - 1;
    let mut expanded = lam * (ell + &r + 1 - lam);
    for i in 0..s0 {
        for j in s.children(i) {
            expanded += (&lam_j[j - s0] - &lam_i[i]) * (ell - &lam_j[j - s0]);
        }
        expanded -= (lam - &lam_i[i]) * (&gamma_i[i] - &lam_i[i]);
    }
    for (lj, gj) in lam_j.iter().zip(gamma_j) {
        expanded -= (lj - lam) * gj;
    }
    if expanded != gap {
        return Err(Error::Internal("stratum gap expansion disagrees".into()));
    }
    Ok(StratumGap {
        ext1_bound,
        stratum_codim: codim,
        gap,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountMatch {
    pub c2_v: Int,
    pub chi_l: Int,
    pub equal: bool,
}

/// At ℓ = 1 the top Chern number of V^[1] = V is c₂(v) and Θ_σ is L.
pub fn numbers_match_l1(s: &SurfaceConfig, pair: &SdPair) -> Result<CountMatch> {
    if !pair.ell.is_one() {
        return Err(Error::Precondition("only ℓ = 1 is supported".into()));
    }
    let c2 = s.invariants(&pair.v)?.c2;
    let c2_v = to_int(&c2).ok_or(Error::NonIntegral("c2"))?;
    let chi_l = chi_line(s, &pair.l)?;
    Ok(CountMatch {
        equal: c2_v == chi_l,
        c2_v,
        chi_l,
    })
}
