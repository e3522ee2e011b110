//! Strong full exceptional sequences of line bundles, their duals, and the
//! K-group combinatorics built on them.

use num::{One, Signed, Zero};

use crate::arith::{int, Int};
use crate::cohomology::{cohom_x, CohomResult};
use crate::error::{Error, Result};
use crate::gaeta::GaetaExponents;
use crate::surface::{DivClass, NumClass, SurfaceConfig};

/// Line bundles E₁..E_n; the first `d` form the left block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcSequence {
    pub members: Vec<DivClass>,
    pub d: usize,
}

impl ExcSequence {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The sequence for ℙ², 𝔽ₑ, or an admissible blowup.
pub fn sequence(s: &SurfaceConfig) -> Result<ExcSequence> {
    if s.is_p2() {
        let h = s.h_div();
        return Ok(ExcSequence {
            members: vec![h.scale(&crate::arith::rat(-2, 1)), -&h, s.zero()],
            d: 1,
        });
    }
    s.require_admissible()?;
    let ca = &s.c_div() + &s.a_div();
    let mut members = vec![-&ca];
    members.extend(s.s1_indices().map(|j| &s.e_div(j) - &ca));
    members.push(-&s.c_div());
    members.push(-&s.a_div());
    members.extend(s.s0_indices().map(|i| -&s.e_div(i)));
    members.push(s.zero());
    Ok(ExcSequence {
        members,
        d: 1 + s.s1_indices().len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualLabel {
    LineBundle(DivClass),
    /// 𝒪_{E_k}, 0-based exceptional index.
    ExceptionalStructureSheaf(usize),
    /// T_{ℙ²}(−1).
    TangentTwist,
}

/// A member of the dual collection, placed in cohomological degree `shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualObject {
    /// 0-based position of the sequence member this object is dual to.
    pub index: usize,
    pub label: DualLabel,
    pub shift: u32,
    pub kclass: NumClass,
    /// K-class as an integer combination of line bundles.
    pub lines: Vec<(Int, DivClass)>,
    /// Two-term line-bundle resolution 0 → sub → mid → G → 0 when G is not a line bundle.
    pub resolution: Option<(Vec<(Int, DivClass)>, Vec<(Int, DivClass)>)>,
}

impl DualObject {
    fn line(s: &SurfaceConfig, index: usize, d: DivClass, shift: u32) -> Result<Self> {
        Ok(DualObject {
            index,
            kclass: s.line_class(&d)?,
            lines: vec![(Int::one(), d.clone())],
            label: DualLabel::LineBundle(d),
            shift,
            resolution: None,
        })
    }

    fn resolved(
        s: &SurfaceConfig,
        index: usize,
        label: DualLabel,
        shift: u32,
        sub: Vec<(Int, DivClass)>,
        mid: Vec<(Int, DivClass)>,
    ) -> Result<Self> {
        let mut lines = mid.clone();
        lines.extend(sub.iter().map(|(m, d)| (-m, d.clone())));
        let kclass = combination(s, &lines)?;
        Ok(DualObject {
            index,
            label,
            shift,
            kclass,
            lines,
            resolution: Some((sub, mid)),
        })
    }
}

fn combination(s: &SurfaceConfig, lines: &[(Int, DivClass)]) -> Result<NumClass> {
    let mut total = NumClass::new(Int::zero(), s.zero(), Int::zero());
    for (m, d) in lines {
        total = total.add(&s.line_class(d)?.scale(m));
    }
    Ok(total)
}

/// The dual collection, listed from the dual of E_n down to the dual of E₁.
pub fn dual_sequence(s: &SurfaceConfig) -> Result<Vec<DualObject>> {
    let seq = sequence(s)?;
    let n = seq.len();
    if s.is_p2() {
        let h = s.h_div();
        return Ok(vec![
            DualObject::line(s, 2, s.zero(), 0)?,
            DualObject::resolved(
                s,
                1,
                DualLabel::TangentTwist,
                1,
                vec![(Int::one(), -&h)],
                vec![(int(3), s.zero())],
            )?,
            DualObject::line(s, 0, h, 2)?,
        ]);
    }
    let structure_sheaf = |k: usize, index: usize, shift: u32| {
        DualObject::resolved(
            s,
            index,
            DualLabel::ExceptionalStructureSheaf(k),
            shift,
            vec![(Int::one(), -&s.e_div(k))],
            vec![(Int::one(), s.zero())],
        )
    };
    let s0 = s.s0();
    let s1 = s.t() - s0;
    let sum_i = s.s0_indices().fold(s.zero(), |acc, i| &acc + &s.e_div(i));
    let sum_j = s.s1_indices().fold(s.zero(), |acc, j| &acc + &s.e_div(j));
    // Member positions: 0 ↦ −C−A, 1..=s1 ↦ −C−A+E_j, then −C, −A, the −E_i, and 𝒪.
    let pos_c = 1 + s1;
    let pos_a = pos_c + 1;
    let mut out = vec![DualObject::line(s, n - 1, s.zero(), 0)?];
    for i in s.s0_indices().rev() {
        out.push(structure_sheaf(i, pos_a + 1 + i, 1)?);
    }
    out.push(DualObject::line(s, pos_a, &s.a_div() - &sum_i, 1)?);
    out.push(DualObject::line(s, pos_c, &s.b_div() - &sum_i, 1)?);
    for j in s.s1_indices().rev() {
        out.push(structure_sheaf(j, 1 + (j - s0), 2)?);
    }
    out.push(DualObject::line(s, 0, &(&(&s.a_div() + &s.b_div()) - &sum_i) - &sum_j, 2)?);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    /// 0-based positions; the triple is h^*(E_j − E_i) = ext^*(E_i, E_j).
    pub i: usize,
    pub j: usize,
    pub h: [Int; 3],
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceReport {
    pub pairs: Vec<PairCheck>,
    pub pass: bool,
}

impl SequenceReport {
    pub fn failures(&self) -> impl Iterator<Item = &PairCheck> {
        self.pairs.iter().filter(|p| !p.ok)
    }
}

pub fn verify_sequence(s: &SurfaceConfig) -> Result<SequenceReport> {
    verify_sequence_of(s, &sequence(s)?)
}

/// Checks exceptionality and strongness of an arbitrary line-bundle list.
pub fn verify_sequence_of(s: &SurfaceConfig, seq: &ExcSequence) -> Result<SequenceReport> {
    let n = seq.len();
    let mut pairs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let d = &seq.members[j] - &seq.members[i];
            let h = exact(s, &d, || format!("ext(E{}, E{})", i + 1, j + 1))?;
            let ok = match i.cmp(&j) {
                std::cmp::Ordering::Greater => h.iter().all(Zero::is_zero),
                std::cmp::Ordering::Less => h[1].is_zero() && h[2].is_zero(),
                std::cmp::Ordering::Equal => h == [Int::one(), Int::zero(), Int::zero()],
            };
            pairs.push(PairCheck { i, j, h, ok });
        }
    }
    let pass = pairs.iter().all(|p| p.ok);
    Ok(SequenceReport { pairs, pass })
}

fn exact(s: &SurfaceConfig, d: &DivClass, what: impl Fn() -> String) -> Result<[Int; 3]> {
    match cohom_x(s, d)? {
        CohomResult::Exact { h0, h1, h2 } => Ok([h0, h1, h2]),
        CohomResult::Unknown { .. } => Err(Error::Incomplete(what())),
    }
}

/// How far a dual pairing was certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairLevel {
    /// ext^q(G, E) for q = 0, 1, 2, all computed.
    Full([Int; 3]),
    /// Only the Euler characteristic is available.
    EulerOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPair {
    /// Position of the dual object in the listed order.
    pub dual: usize,
    /// 0-based sequence member.
    pub member: usize,
    /// (−1)^shift χ(G, E), which must be the Kronecker delta.
    pub signed_chi: Int,
    pub level: PairLevel,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualReport {
    /// Rows indexed by the sequence member each dual object is paired with.
    pub matrix: Vec<Vec<Int>>,
    pub euler_ok: bool,
    /// The K-class agrees with the line-bundle combination under both pairings.
    pub kclass_consistent: bool,
    pub pairs: Vec<DualPair>,
    pub full_checks: usize,
    pub pass: bool,
}

pub fn verify_dual(s: &SurfaceConfig) -> Result<DualReport> {
    verify_dual_of(s, &sequence(s)?, &dual_sequence(s)?)
}

/// Checks χ(ᵛE_i, E_j[ℓ]) = δ_ij δ_ℓ0 against every member. Ext groups are
/// computed when the dual is a line bundle, when the member restricts
/// trivially to an exceptional curve, by duality on an irreducible
/// exceptional curve, or when one term of the resolution has no cohomology.
pub fn verify_dual_of(s: &SurfaceConfig, seq: &ExcSequence, duals: &[DualObject]) -> Result<DualReport> {
    let n = seq.len();
    let mut matrix = vec![vec![Int::zero(); n]; n];
    let mut pairs = Vec::new();
    let mut kclass_consistent = true;
    for (pos, g) in duals.iter().enumerate() {
        let sign = if g.shift % 2 == 0 { Int::one() } else { -Int::one() };
        for (b, member) in seq.members.iter().enumerate() {
            let mut chi = Int::zero();
            for (m, l) in &g.lines {
                chi += m * crate::cohomology::chi_line(s, &(member - l))?;
            }
            if s.chi_pair(&g.kclass, &s.line_class(member)?)? != chi {
                kclass_consistent = false;
            }
            let signed_chi = &sign * &chi;
            let expect_one = g.index == b;
            let level = full_level(s, g, member, || format!("dual {} against E{}", pos + 1, b + 1))?;
            let ok = match &level {
                PairLevel::Full(ext) => (0..3).all(|q| {
                    let want = if expect_one && q == g.shift as usize { Int::one() } else { Int::zero() };
                    ext[q] == want
                }),
                PairLevel::EulerOnly => signed_chi == if expect_one { Int::one() } else { Int::zero() },
            };
            if g.index < n {
                matrix[g.index][b] = signed_chi.clone();
            }
            pairs.push(DualPair {
                dual: pos,
                member: b,
                signed_chi,
                level,
                ok,
            });
        }
    }
    let identity = (0..n).all(|i| (0..n).all(|j| matrix[i][j] == if i == j { Int::one() } else { Int::zero() }));
    let indices_ok = duals.len() == n && {
        let mut seen: Vec<usize> = duals.iter().map(|g| g.index).collect();
        seen.sort_unstable();
        seen == (0..n).collect::<Vec<_>>()
    };
    let euler_ok = identity && indices_ok;
    let full_checks = pairs.iter().filter(|p| matches!(p.level, PairLevel::Full(_))).count();
    let pass = euler_ok && kclass_consistent && pairs.iter().all(|p| p.ok);
    Ok(DualReport {
        matrix,
        euler_ok,
        kclass_consistent,
        pairs,
        full_checks,
        pass,
    })
}

fn full_level(
    s: &SurfaceConfig,
    g: &DualObject,
    member: &DivClass,
    what: impl Fn() -> String,
) -> Result<PairLevel> {
    let Some((sub, mid)) = &g.resolution else {
        // ext^q(𝒪(M), 𝒪(L)) = h^q(L − M)
        let (_, m) = &g.lines[0];
        return Ok(PairLevel::Full(exact(s, &(member - m), what)?));
    };
    if let DualLabel::ExceptionalStructureSheaf(k) = g.label {
        let trivial = member.gamma(k).is_zero() && s.children(k).iter().all(|&c| member.gamma(c).is_zero());
        if s.children(k).is_empty() {
            // E_k ≅ ℙ¹ and Serre duality gives ext^q(𝒪_E, L) = h^{2−q}(𝒪_{ℙ¹}(m)),
            // m = (K − L)·E_k.
            let m: Int = s.dot(&(&s.canonical() - member), &s.e_div(k)).to_integer();
            let h0: Int = Ord::max(&m + 1i32, Int::zero());
            let h1: Int = Ord::max(-&m - 1i32, Int::zero());
            return Ok(PairLevel::Full([Int::zero(), h1, h0]));
        }
        if trivial {
            // H^*(L) → H^*(L(E_k)) is an isomorphism, so every Ext vanishes.
            return Ok(PairLevel::Full([Int::zero(), Int::zero(), Int::zero()]));
        }
    }
    let side = |terms: &[(Int, DivClass)]| -> Result<Option<[Int; 3]>> {
        let mut total = [Int::zero(), Int::zero(), Int::zero()];
        for (m, d) in terms {
            match cohom_x(s, &(member - d))? {
                CohomResult::Exact { h0, h1, h2 } => {
                    for (t, h) in total.iter_mut().zip([h0, h1, h2]) {
                        *t += m * h;
                    }
                }
                CohomResult::Unknown { .. } => return Ok(None),
            }
        }
        Ok(Some(total))
    };
    let (Some(hs), Some(hm)) = (side(sub)?, side(mid)?) else {
        return Ok(PairLevel::EulerOnly);
    };
    let zero = |h: &[Int; 3]| h.iter().all(Zero::is_zero);
    // 0 → Hom(G, L) → Hom(mid, L) → Hom(sub, L) → Ext¹(G, L) → …
    if zero(&hm) && hs[2].is_zero() {
        return Ok(PairLevel::Full([Int::zero(), hs[0].clone(), hs[1].clone()]));
    }
    if zero(&hs) {
        return Ok(PairLevel::Full(hm));
    }
    Ok(PairLevel::EulerOnly)
}

/// The change-of-basis matrix [sgn(i − d − ½) χ(E_j, E_i)]; lower triangular
/// with ±1 on the diagonal.
pub fn lambda_matrix(s: &SurfaceConfig, exps: &GaetaExponents) -> Result<Vec<Vec<Int>>> {
    let seq = sequence(s)?;
    let n = seq.len();
    if exps.sequence_vector().len() != n || exps.split() != seq.d {
        return Err(Error::Precondition("exponent shape does not match the surface".into()));
    }
    let mut m = vec![vec![Int::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        let sign = if i < seq.d { -Int::one() } else { Int::one() };
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = &sign * crate::cohomology::chi_line(s, &(&seq.members[i] - &seq.members[j]))?;
        }
    }
    for (i, row) in m.iter().enumerate() {
        if !row[i].abs().is_one() || row[i + 1..].iter().any(|x| !x.is_zero()) {
            return Err(Error::Internal(format!("lambda matrix row {} is not lower unitriangular up to sign", i + 1)));
        }
    }
    Ok(m)
}

/// Whether w = Σ w_i [E_i^∨] lies in f^⊥, i.e. Σ w_i χ(E_i, f) = 0.
pub fn perp_test(s: &SurfaceConfig, w: &[Int], f: &NumClass) -> Result<bool> {
    Ok(perp_value(s, w, f)?.is_zero())
}

/// The linear functional Σ w_i χ(E_i, f).
pub fn perp_value(s: &SurfaceConfig, w: &[Int], f: &NumClass) -> Result<Int> {
    let seq = sequence(s)?;
    if w.len() != seq.len() {
        return Err(Error::DimensionMismatch {
            expected: seq.len(),
            got: w.len(),
        });
    }
    let mut total = Int::zero();
    for (wi, m) in w.iter().zip(&seq.members) {
        if !wi.is_zero() {
            total += wi * s.chi_pair(&s.line_class(m)?, f)?;
        }
    }
    Ok(total)
}

/// χ(E_i, f) for each member, the coefficients of the functional in [`perp_value`].
pub fn chi_against(s: &SurfaceConfig, f: &NumClass) -> Result<Vec<Int>> {
    sequence(s)?
        .members
        .iter()
        .map(|m| s.chi_pair(&s.line_class(m)?, f))
        .collect()
}
