//! Exact integer and rational helpers shared by every module.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn rat_int(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

pub fn half() -> Rat {
    rat(1, 2)
}

/// Returns the integer value of `q`, or `None` when `q` has a denominator.
pub fn to_int(q: &Rat) -> Option<Int> {
    if q.is_integer() {
        Some(q.to_integer())
    } else {
        None
    }
}

pub fn floor(q: &Rat) -> Int {
    q.floor().to_integer()
}

pub fn ceil(q: &Rat) -> Int {
    q.ceil().to_integer()
}

/// Smallest non-negative integer n with n² ≥ q (0 for q ≤ 0).
pub fn ceil_sqrt(q: &Rat) -> Int {
    if !q.is_positive() {
        return Int::zero();
    }
    let c = ceil(q);
    let mut n = c.sqrt();
    while rat_int(&(&n * &n)) < *q {
        n += 1;
    }
    while n.is_positive() {
        let m = &n - 1;
        if rat_int(&(&m * &m)) >= *q {
            n = m;
        } else {
            break;
        }
    }
    n
}

/// n choose 2 as a rational, for any integer n.
pub fn choose2(n: &Int) -> Rat {
    rat_int(&(n * (n - Int::one()))) / rat(2, 1)
}

/// Formats a rational as `p/q`, or `p` when integral.
pub fn fmt_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<Int>().ok().map(Rat::from_integer),
        Some((p, q)) => {
            let p = p.trim().parse::<Int>().ok()?;
            let q = q.trim().parse::<Int>().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
    }
}

pub fn max_int(a: Int, b: Int) -> Int {
    if a >= b {
        a
    } else {
        b
    }
}

/// Floor division for integers (rounds toward negative infinity).
pub fn div_floor(a: &Int, b: &Int) -> Int {
    a.div_floor(b)
}
