//! Base surfaces, their Picard lattices, and numerical sheaf classes.
//!
//! A blowup surface is 𝔽ₑ blown up at `s0` points, then at one point on the
//! exceptional curve over some of them. Exceptional indices are 0-based here:
//! `0..s0` is S₀, `s0..t` is S₁, and `parents[k - s0]` is the S₀ index under
//! the height-one point `k`. Divisors use the basis A, B, E₁..E_t (on ℙ² the
//! `a` coefficient is the multiple of H and `b`, `g` must be empty/zero).

use std::ops::{Add, Neg, Sub};

use num::{One, Signed, Zero};

use crate::arith::{choose2, half, int, rat_int, to_int, Int, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blowup {
    pub e: u32,
    pub s0: usize,
    pub parents: Vec<usize>,
    pub avoids_b: bool,
    pub avoids_fiber_directions: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceConfig {
    P2,
    Blowup(Blowup),
}

impl SurfaceConfig {
    pub fn p2() -> Self {
        SurfaceConfig::P2
    }

    pub fn hirzebruch(e: u32) -> Self {
        SurfaceConfig::Blowup(Blowup {
            e,
            s0: 0,
            parents: Vec::new(),
            avoids_b: true,
            avoids_fiber_directions: true,
        })
    }

    /// A blowup in general position (both admissibility flags set).
    pub fn blowup(e: u32, s0: usize, parents: Vec<usize>) -> Result<Self> {
        Self::blowup_with_flags(e, s0, parents, true, true)
    }

    pub fn blowup_with_flags(
        e: u32,
        s0: usize,
        parents: Vec<usize>,
        avoids_b: bool,
        avoids_fiber_directions: bool,
    ) -> Result<Self> {
        if let Some(p) = parents.iter().find(|&&p| p >= s0) {
            return Err(Error::InvalidSurface(format!(
                "parent index {p} is not a height-0 point (s0 = {s0})"
            )));
        }
        Ok(SurfaceConfig::Blowup(Blowup {
            e,
            s0,
            parents,
            avoids_b,
            avoids_fiber_directions,
        }))
    }

    pub fn is_p2(&self) -> bool {
        matches!(self, SurfaceConfig::P2)
    }

    pub fn as_blowup(&self) -> Result<&Blowup> {
        match self {
            SurfaceConfig::P2 => Err(Error::P2Unsupported),
            SurfaceConfig::Blowup(b) => Ok(b),
        }
    }

    /// The Hirzebruch index e (0 on ℙ², where it is never used).
    pub fn e(&self) -> u32 {
        match self {
            SurfaceConfig::P2 => 0,
            SurfaceConfig::Blowup(b) => b.e,
        }
    }

    pub fn t(&self) -> usize {
        match self {
            SurfaceConfig::P2 => 0,
            SurfaceConfig::Blowup(b) => b.s0 + b.parents.len(),
        }
    }

    pub fn s0(&self) -> usize {
        match self {
            SurfaceConfig::P2 => 0,
            SurfaceConfig::Blowup(b) => b.s0,
        }
    }

    pub fn s0_indices(&self) -> std::ops::Range<usize> {
        0..self.s0()
    }

    pub fn s1_indices(&self) -> std::ops::Range<usize> {
        self.s0()..self.t()
    }

    /// Parent of a height-one index, `None` for height-zero indices.
    pub fn parent(&self, k: usize) -> Option<usize> {
        match self {
            SurfaceConfig::P2 => None,
            SurfaceConfig::Blowup(b) => k.checked_sub(b.s0).map(|j| b.parents[j]),
        }
    }

    /// Height-one indices lying over the height-zero index `i`.
    pub fn children(&self, i: usize) -> Vec<usize> {
        self.s1_indices()
            .filter(|&j| self.parent(j) == Some(i))
            .collect()
    }

    pub fn admissible(&self) -> bool {
        match self {
            SurfaceConfig::P2 => false,
            SurfaceConfig::Blowup(b) => {
                let t = b.s0 + b.parents.len();
                t == 0 || (b.e > 0 && b.avoids_b && b.avoids_fiber_directions)
            }
        }
    }

    pub(crate) fn require_admissible(&self) -> Result<()> {
        if self.admissible() {
            Ok(())
        } else {
            Err(Error::InadmissibleSurface)
        }
    }

    pub fn validate(&self, d: &DivClass) -> Result<()> {
        if d.g.len() != self.t() {
            return Err(Error::DimensionMismatch {
                expected: self.t(),
                got: d.g.len(),
            });
        }
        if self.is_p2() && !d.b.is_zero() {
            return Err(Error::P2HasB);
        }
        Ok(())
    }

    pub fn zero(&self) -> DivClass {
        DivClass::zero(self.t())
    }

    /// Fiber class A (the hyperplane H on ℙ²).
    pub fn a_div(&self) -> DivClass {
        DivClass::from_ints(1, 0, &vec![0; self.t()])
    }

    pub fn b_div(&self) -> DivClass {
        DivClass::from_ints(0, 1, &vec![0; self.t()])
    }

    /// C = eA + B.
    pub fn c_div(&self) -> DivClass {
        DivClass::from_ints(self.e() as i64, 1, &vec![0; self.t()])
    }

    pub fn e_div(&self, k: usize) -> DivClass {
        let mut g = vec![0; self.t()];
        g[k] = 1;
        DivClass::from_ints(0, 0, &g)
    }

    pub fn h_div(&self) -> DivClass {
        DivClass::from_ints(1, 0, &[])
    }

    pub fn intersect(&self, d1: &DivClass, d2: &DivClass) -> Result<Rat> {
        self.validate(d1)?;
        self.validate(d2)?;
        Ok(self.dot(d1, d2))
    }

    /// Intersection without validation; callers have checked dimensions.
    pub(crate) fn dot(&self, d1: &DivClass, d2: &DivClass) -> Rat {
        match self {
            SurfaceConfig::P2 => &d1.a * &d2.a,
            SurfaceConfig::Blowup(b) => {
                let e = Rat::from_integer(Int::from(b.e));
                let mut s = &d1.a * &d2.b + &d2.a * &d1.b - e * &d1.b * &d2.b;
                for (x, y) in d1.g.iter().zip(&d2.g) {
                    s -= x * y;
                }
                s
            }
        }
    }

    pub fn canonical(&self) -> DivClass {
        match self {
            SurfaceConfig::P2 => DivClass::from_ints(-3, 0, &[]),
            SurfaceConfig::Blowup(b) => {
                DivClass::from_ints(-(b.e as i64) - 2, -2, &vec![1; self.t()])
            }
        }
    }

    /// P(ν) = 1 + ½ ν·(ν − K).
    pub fn p_of(&self, nu: &DivClass) -> Result<Rat> {
        self.validate(nu)?;
        Ok(self.p_unchecked(nu))
    }

    pub(crate) fn p_unchecked(&self, nu: &DivClass) -> Rat {
        let k = self.canonical();
        Rat::one() + half() * self.dot(nu, &(nu - &k))
    }

    pub fn validate_class(&self, f: &NumClass) -> Result<()> {
        self.validate(&f.c1)?;
        if f.r.is_negative() {
            return Err(Error::NegativeRank);
        }
        if !f.c1.is_integral() {
            return Err(Error::NonIntegral("first Chern class"));
        }
        Ok(())
    }

    pub fn invariants(&self, f: &NumClass) -> Result<Invariants> {
        self.validate_class(f)?;
        if f.r.is_zero() {
            return Err(Error::RankZero);
        }
        let r = rat_int(&f.r);
        let nu = f.c1.scale(&(Rat::one() / &r));
        let p_nu = self.p_unchecked(&nu);
        let delta = &p_nu - rat_int(&f.chi) / &r;
        let nu2 = self.dot(&nu, &nu);
        let ch2 = &r * (half() * &nu2 - &delta);
        let c2 = choose2(&f.r) * &nu2 + &r * &delta;
        Ok(Invariants {
            nu,
            p_nu,
            delta,
            ch2,
            c2,
        })
    }

    pub fn twist(&self, f: &NumClass, d: &DivClass) -> Result<NumClass> {
        self.validate_class(f)?;
        self.validate(d)?;
        if !d.is_integral() {
            return Err(Error::NonIntegral("twisting divisor"));
        }
        if f.r.is_zero() {
            let chi = rat_int(&f.chi) + self.dot(d, &f.c1);
            return Ok(NumClass::new(f.r.clone(), f.c1.clone(), integral(chi, "twisted χ")?));
        }
        let inv = self.invariants(f)?;
        let r = rat_int(&f.r);
        let chi = &r * (self.p_unchecked(&(&inv.nu + d)) - &inv.delta);
        Ok(NumClass::new(
            f.r.clone(),
            &f.c1 + &d.scale(&r),
            integral(chi, "twisted χ")?,
        ))
    }

    pub fn pairings(&self, f1: &NumClass, f2: &NumClass) -> Result<Pairings> {
        let i1 = self.invariants(f1)?;
        let i2 = self.invariants(f2)?;
        let rr = rat_int(&(&f1.r * &f2.r));
        let chi_hom = &rr * (self.p_unchecked(&(&i2.nu - &i1.nu)) - &i1.delta - &i2.delta);
        let chi_tensor = &rr * (self.p_unchecked(&(&i1.nu + &i2.nu)) - &i1.delta - &i2.delta);
        Ok(Pairings {
            chi_hom,
            chi_tensor,
        })
    }

    /// χ(F₁, F₂) from Chern characters; valid for every rank, including 0.
    pub fn chi_pair(&self, f1: &NumClass, f2: &NumClass) -> Result<Int> {
        self.validate_class(f1)?;
        self.validate_class(f2)?;
        let k = self.canonical();
        let ch2 = |f: &NumClass| rat_int(&f.chi) + half() * self.dot(&f.c1, &k) - rat_int(&f.r);
        let (r1, r2) = (rat_int(&f1.r), rat_int(&f2.r));
        let deg1 = &f2.c1.scale(&r1) - &f1.c1.scale(&r2);
        let deg2 = &r1 * ch2(f2) + &r2 * ch2(f1) - self.dot(&f1.c1, &f2.c1);
        let chi = deg2 - half() * self.dot(&deg1, &k) + r1 * r2;
        integral(chi, "Euler pairing")
    }

    /// The class (1, D, χ(D)) of a line bundle, χ by Riemann–Roch.
    pub fn line_class(&self, d: &DivClass) -> Result<NumClass> {
        self.validate(d)?;
        if !d.is_integral() {
            return Err(Error::NonIntegral("line bundle divisor"));
        }
        let chi = integral(self.p_unchecked(d), "χ of line bundle")?;
        Ok(NumClass::new(Int::one(), d.clone(), chi))
    }
}

fn integral(q: Rat, what: &str) -> Result<Int> {
    to_int(&q).ok_or_else(|| Error::Internal(format!("{what} is not integral")))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivClass {
    pub a: Rat,
    pub b: Rat,
    pub g: Vec<Rat>,
}

impl DivClass {
    pub fn new(a: Rat, b: Rat, g: Vec<Rat>) -> Self {
        DivClass { a, b, g }
    }

    pub fn from_ints(a: i64, b: i64, g: &[i64]) -> Self {
        DivClass {
            a: Rat::from_integer(int(a)),
            b: Rat::from_integer(int(b)),
            g: g.iter().map(|&x| Rat::from_integer(int(x))).collect(),
        }
    }

    pub fn zero(t: usize) -> Self {
        DivClass::from_ints(0, 0, &vec![0; t])
    }

    pub fn t(&self) -> usize {
        self.g.len()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.g.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer() && self.g.iter().all(Rat::is_integer)
    }

    pub fn is_pullback(&self) -> bool {
        self.g.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        DivClass {
            a: &self.a * k,
            b: &self.b * k,
            g: self.g.iter().map(|x| x * k).collect(),
        }
    }

    /// α = a − e·b, the A-coefficient in the basis A, C.
    pub fn alpha(&self, e: u32) -> Rat {
        &self.a - Rat::from_integer(Int::from(e)) * &self.b
    }

    /// δ = b, the C-coefficient in the basis A, C.
    pub fn delta(&self) -> Rat {
        self.b.clone()
    }

    pub fn from_c_basis(e: u32, alpha: Rat, delta: Rat, g: Vec<Rat>) -> Self {
        let a = alpha + Rat::from_integer(Int::from(e)) * &delta;
        DivClass { a, b: delta, g }
    }

    /// γ_k = −g_k, the convention c₁ = αA + βB − Σ γ_k E_k.
    pub fn gamma(&self, k: usize) -> Rat {
        -&self.g[k]
    }

    /// Pullback part aA + bB with the exceptional coefficients dropped.
    pub fn pullback_part(&self) -> Self {
        DivClass {
            a: self.a.clone(),
            b: self.b.clone(),
            g: vec![Rat::zero(); self.g.len()],
        }
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, o: &DivClass) -> DivClass {
        assert_eq!(self.g.len(), o.g.len(), "divisor dimension mismatch");
        DivClass {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            g: self.g.iter().zip(&o.g).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, o: &DivClass) -> DivClass {
        self + &(-o)
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass {
            a: -&self.a,
            b: -&self.b,
            g: self.g.iter().map(|x| -x).collect(),
        }
    }
}

/// Numerical class (r, c₁, χ) in the Grothendieck group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumClass {
    pub r: Int,
    pub c1: DivClass,
    pub chi: Int,
}

impl NumClass {
    pub fn new(r: Int, c1: DivClass, chi: Int) -> Self {
        NumClass { r, c1, chi }
    }

    pub fn from_ints(r: i64, c1: DivClass, chi: i64) -> Self {
        NumClass::new(int(r), c1, int(chi))
    }

    /// [𝒪_S].
    pub fn structure_sheaf(s: &SurfaceConfig) -> Self {
        NumClass::from_ints(1, s.zero(), 1)
    }

    pub fn add(&self, o: &NumClass) -> NumClass {
        NumClass::new(&self.r + &o.r, &self.c1 + &o.c1, &self.chi + &o.chi)
    }

    pub fn scale(&self, k: &Int) -> NumClass {
        NumClass::new(&self.r * k, self.c1.scale(&rat_int(k)), &self.chi * k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub nu: DivClass,
    pub p_nu: Rat,
    pub delta: Rat,
    pub ch2: Rat,
    pub c2: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairings {
    pub chi_hom: Rat,
    pub chi_tensor: Rat,
}

/// H = uA + vC − Σ d_i E_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub u: Rat,
    pub v: Rat,
    pub d: Vec<Rat>,
}

impl Polarization {
    pub fn new(u: Rat, v: Rat, d: Vec<Rat>) -> Result<Self> {
        if !u.is_positive() || !v.is_positive() || d.iter().any(|x| !x.is_positive()) {
            return Err(Error::Precondition("polarization coefficients must be positive".into()));
        }
        Ok(Polarization { u, v, d })
    }

    pub fn as_div(&self, s: &SurfaceConfig) -> Result<DivClass> {
        let h = DivClass::from_c_basis(s.e(), self.u.clone(), self.v.clone(), self.d.iter().map(|x| -x).collect());
        s.validate(&h)?;
        Ok(h)
    }

    /// λ = u/v + e/2.
    pub fn lambda(&self, s: &SurfaceConfig) -> Rat {
        &self.u / &self.v + Rat::new(Int::from(s.e()), int(2))
    }
}
