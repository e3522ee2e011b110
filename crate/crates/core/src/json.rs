//! JSON encoding of surfaces, divisors, classes, exponents, and
//! polarizations. Rationals are written as numbers when integral and as
//! "p/q" strings otherwise; both forms are accepted on input. Objects use
//! sorted keys so output is byte-stable.
//!
//! Exceptional indices are 1-based in JSON: `s1_parents[k]` is the parent
//! (in 1..=s0) of the point s0+k+1.

use num::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::arith::{fmt_rat, parse_rat, rat_int, to_int, Int, Rat};
use crate::error::{Error, Result};
use crate::gaeta::GaetaExponents;
use crate::surface::{DivClass, NumClass, Polarization, SurfaceConfig};

fn err(path: &str, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        msg: msg.into(),
    }
}

/// Parses text; syntax errors carry their line and column.
pub fn parse_text(text: &str, path: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| err(path, e.to_string()))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| err(path, format!("missing key \"{key}\"")))
}

pub fn rat_from(v: &Value, path: &str) -> Result<Rat> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rat_int(&Int::from(i)))
            } else if let Some(u) = n.as_u64() {
                Ok(rat_int(&Int::from(u)))
            } else {
                Err(err(path, "non-integral numbers must be written as \"p/q\""))
            }
        }
        Value::String(s) => parse_rat(s).ok_or_else(|| err(path, format!("not a rational: {s:?}"))),
        _ => Err(err(path, "expected a rational")),
    }
}

pub fn int_from(v: &Value, path: &str) -> Result<Int> {
    let q = rat_from(v, path)?;
    to_int(&q).ok_or_else(|| err(path, "expected an integer"))
}

fn list<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn rat_list(v: &Value, path: &str) -> Result<Vec<Rat>> {
    list(v, path)?
        .iter()
        .enumerate()
        .map(|(k, x)| rat_from(x, &format!("{path}[{k}]")))
        .collect()
}

fn int_list(v: &Value, path: &str) -> Result<Vec<Int>> {
    list(v, path)?
        .iter()
        .enumerate()
        .map(|(k, x)| int_from(x, &format!("{path}[{k}]")))
        .collect()
}

pub fn rat_to(q: &Rat) -> Value {
    match to_int(q) {
        Some(i) => int_to(&i),
        None => Value::String(fmt_rat(q)),
    }
}

pub fn int_to(i: &Int) -> Value {
    match i.to_i64() {
        Some(n) => json!(n),
        None => Value::String(i.to_string()),
    }
}

pub fn surface_from(v: &Value, path: &str) -> Result<SurfaceConfig> {
    let o = object(v, path)?;
    let kind = field(o, "kind", path)?
        .as_str()
        .ok_or_else(|| err(&format!("{path}.kind"), "expected a string"))?;
    match kind {
        "p2" => Ok(SurfaceConfig::P2),
        "blowup" => {
            let small = |key: &str, default: Option<u64>| -> Result<u64> {
                match (o.get(key), default) {
                    (None, Some(d)) => Ok(d),
                    (None, None) => Err(err(path, format!("missing key \"{key}\""))),
                    (Some(x), _) => x
                        .as_u64()
                        .ok_or_else(|| err(&format!("{path}.{key}"), "expected a non-negative integer")),
                }
            };
            let flag = |key: &str| -> Result<bool> {
                match o.get(key) {
                    None => Ok(true),
                    Some(x) => x.as_bool().ok_or_else(|| err(&format!("{path}.{key}"), "expected a boolean")),
                }
            };
            let e = u32::try_from(small("e", None)?).map_err(|_| err(&format!("{path}.e"), "too large"))?;
            let s0 = small("s0", Some(0))? as usize;
            let parents = match o.get("s1_parents") {
                None => Vec::new(),
                Some(p) => {
                    let ppath = format!("{path}.s1_parents");
                    list(p, &ppath)?
                        .iter()
                        .enumerate()
                        .map(|(k, x)| {
                            let kp = format!("{ppath}[{k}]");
                            match x.as_u64() {
                                Some(n) if n >= 1 && (n as usize) <= s0 => Ok(n as usize - 1),
                                _ => Err(err(&kp, format!("expected a parent index in 1..={s0}"))),
                            }
                        })
                        .collect::<Result<Vec<_>>>()?
                }
            };
            SurfaceConfig::blowup_with_flags(e, s0, parents, flag("avoids_b")?, flag("avoids_fiber_directions")?)
                .map_err(|e| err(path, e.to_string()))
        }
        other => Err(err(&format!("{path}.kind"), format!("unknown surface kind {other:?}"))),
    }
}

pub fn surface_to(s: &SurfaceConfig) -> Value {
    match s {
        SurfaceConfig::P2 => json!({"kind": "p2"}),
        SurfaceConfig::Blowup(b) => json!({
            "kind": "blowup",
            "e": b.e,
            "s0": b.s0,
            "s1_parents": b.parents.iter().map(|p| p + 1).collect::<Vec<_>>(),
            "avoids_b": b.avoids_b,
            "avoids_fiber_directions": b.avoids_fiber_directions,
        }),
    }
}

/// A divisor on `s`; `b` and `e` may be omitted when zero.
pub fn divisor_from(s: &SurfaceConfig, v: &Value, path: &str) -> Result<DivClass> {
    let o = object(v, path)?;
    let a = rat_from(field(o, "a", path)?, &format!("{path}.a"))?;
    let b = match o.get("b") {
        None => Rat::from_integer(Int::from(0)),
        Some(x) => rat_from(x, &format!("{path}.b"))?,
    };
    let g = match o.get("e") {
        None => vec![Rat::from_integer(Int::from(0)); s.t()],
        Some(x) => rat_list(x, &format!("{path}.e"))?,
    };
    let d = DivClass::new(a, b, g);
    s.validate(&d).map_err(|e| err(path, e.to_string()))?;
    Ok(d)
}

pub fn divisor_to(d: &DivClass) -> Value {
    json!({
        "a": rat_to(&d.a),
        "b": rat_to(&d.b),
        "e": d.g.iter().map(rat_to).collect::<Vec<_>>(),
    })
}

pub fn class_from(s: &SurfaceConfig, v: &Value, path: &str) -> Result<NumClass> {
    let o = object(v, path)?;
    let r = int_from(field(o, "r", path)?, &format!("{path}.r"))?;
    let c1 = divisor_from(s, field(o, "c1", path)?, &format!("{path}.c1"))?;
    let chi = int_from(field(o, "chi", path)?, &format!("{path}.chi"))?;
    let f = NumClass::new(r, c1, chi);
    s.validate_class(&f).map_err(|e| err(path, e.to_string()))?;
    Ok(f)
}

pub fn class_to(f: &NumClass) -> Value {
    json!({"r": int_to(&f.r), "c1": divisor_to(&f.c1), "chi": int_to(&f.chi)})
}

pub fn polarization_from(v: &Value, path: &str) -> Result<Polarization> {
    let o = object(v, path)?;
    let u = rat_from(field(o, "u", path)?, &format!("{path}.u"))?;
    let vv = rat_from(field(o, "v", path)?, &format!("{path}.v"))?;
    let d = match o.get("d") {
        None => Vec::new(),
        Some(x) => rat_list(x, &format!("{path}.d"))?,
    };
    Polarization::new(u, vv, d).map_err(|e| err(path, e.to_string()))
}

pub fn polarization_to(h: &Polarization) -> Value {
    json!({"u": rat_to(&h.u), "v": rat_to(&h.v), "d": h.d.iter().map(rat_to).collect::<Vec<_>>()})
}

/// `{"a": [a1, a2, a3]}` on ℙ², `{"alpha": [α1..α4], "gamma_i": [..], "gamma_j": [..]}` otherwise.
pub fn exponents_from(s: &SurfaceConfig, v: &Value, path: &str) -> Result<GaetaExponents> {
    let o = object(v, path)?;
    if s.is_p2() {
        let a = int_list(field(o, "a", path)?, &format!("{path}.a"))?;
        return GaetaExponents::from_sequence_vector(s, &a).map_err(|e| err(path, e.to_string()));
    }
    let alpha = int_list(field(o, "alpha", path)?, &format!("{path}.alpha"))?;
    if alpha.len() != 4 {
        return Err(err(&format!("{path}.alpha"), "expected four entries"));
    }
    let opt = |key: &str| -> Result<Vec<Int>> {
        match o.get(key) {
            None => Ok(Vec::new()),
            Some(x) => int_list(x, &format!("{path}.{key}")),
        }
    };
    let (gamma_i, gamma_j) = (opt("gamma_i")?, opt("gamma_j")?);
    if gamma_i.len() != s.s0() || gamma_j.len() != s.t() - s.s0() {
        return Err(err(path, "gamma lengths do not match the surface"));
    }
    let [alpha1, alpha2, alpha3, alpha4]: [Int; 4] = alpha.try_into().expect("length checked");
    Ok(GaetaExponents::Blowup {
        alpha1,
        alpha2,
        alpha3,
        alpha4,
        gamma_i,
        gamma_j,
    })
}

pub fn exponents_to(e: &GaetaExponents) -> Value {
    match e {
        GaetaExponents::P2 { a } => json!({"a": a.iter().map(int_to).collect::<Vec<_>>()}),
        GaetaExponents::Blowup { alpha1, alpha2, alpha3, alpha4, gamma_i, gamma_j } => json!({
            "alpha": [int_to(alpha1), int_to(alpha2), int_to(alpha3), int_to(alpha4)],
            "gamma_i": gamma_i.iter().map(int_to).collect::<Vec<_>>(),
            "gamma_j": gamma_j.iter().map(int_to).collect::<Vec<_>>(),
        }),
    }
}
