//! JSON forms of fields, places, certificates and verdicts. Rationals are
//! strings "num/den" (integers without "/1"); certificate coefficients are
//! exact JSON integers.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Number, Value};

use crate::arith::{fmt_rat, parse_rat, Rat};
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::field::{FieldElem, NumberField};
use crate::membership::{AlphaPConstruction, Classification, Generator, GeneratorAlphaP, MembershipVerdict, ValuationWitness};
use crate::padic::{Place, Val};
use crate::poly::IntPoly;

pub fn rat(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn int(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

fn big_number(n: &BigUint) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal digits"))
}

pub fn elem(e: &FieldElem) -> Value {
    Value::Array(e.coords().iter().map(rat).collect())
}

pub fn poly(p: &IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(int).collect())
}

pub fn val(v: Val) -> Value {
    match v {
        Val::Finite(x) => Value::String(x.to_string()),
        Val::Infinity => Value::String("inf".into()),
    }
}

pub fn field(k: &NumberField) -> Value {
    json!({
        "min_poly": poly(k.min_poly()),
        "delta": int(k.delta()),
        "theta_min_poly": poly(k.theta_poly()),
        "disc": int(k.disc()),
    })
}

/// Exact roots carry `"precision": null`.
pub fn place(pl: &Place) -> Value {
    let exact = pl.root.is_exact();
    json!({
        "p": pl.p,
        "root_mod": int(&pl.root.residue()),
        "precision": if exact { Value::Null } else { json!(pl.root.precision) },
        "v_alpha": val(pl.alpha_val),
    })
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "target": elem(&c.target),
        "terms": c.terms.iter().map(|(k, a)| json!([k, big_number(a)])).collect::<Vec<_>>(),
    })
}

pub fn witness(w: &ValuationWitness) -> Value {
    json!({
        "p": w.p,
        "place": place(&w.place),
        "v_alpha": val(w.alpha_val),
        "v_beta": w.beta_val.to_string(),
    })
}

pub fn verdict(v: &MembershipVerdict) -> Value {
    json!({
        "member": v.member,
        "method": v.method.as_str(),
        "witness": v.witness.as_ref().map_or(Value::Null, witness),
        "certificate": v.certificate.as_ref().map_or(Value::Null, certificate),
        "places_checked": v.places_checked.iter().map(|(p, n)| json!([p, n])).collect::<Vec<_>>(),
    })
}

fn ints(xs: &[u32]) -> Value {
    json!(xs)
}

pub fn alpha_p(g: &GeneratorAlphaP) -> Value {
    let mut m = Map::new();
    m.insert("p".into(), json!(g.p));
    m.insert("element".into(), elem(&g.element));
    m.insert("trivial".into(), json!(g.trivial));
    m.insert("has_nonlinear".into(), json!(g.has_nonlinear));
    match &g.construction {
        AlphaPConstruction::FastPath { roots } => {
            m.insert("construction".into(), json!("fast-path"));
            m.insert("r".into(), Value::Array(roots.iter().map(int).collect()));
        }
        AlphaPConstruction::General { roots, k, k_i, big_k, m_i, n, r_i } => {
            m.insert("construction".into(), json!("general"));
            m.insert("roots_mod".into(), Value::Array(roots.iter().map(int).collect()));
            m.insert("k".into(), json!(k));
            m.insert("k_i".into(), ints(k_i));
            m.insert("K".into(), json!(big_k));
            m.insert("m_i".into(), ints(m_i));
            m.insert("N".into(), json!(n));
            m.insert("r".into(), Value::Array(r_i.iter().map(int).collect()));
        }
    }
    Value::Object(m)
}

pub fn generator(g: &Generator) -> Value {
    match g {
        Generator::AlphaP(a) => alpha_p(a),
        Generator::Alpha(e) => json!({ "alpha": elem(e) }),
    }
}

pub fn classification(c: &Classification) -> Value {
    match c {
        Classification::Integer { nonnegative } => json!({ "kind": "integer", "nonnegative": nonnegative }),
        Classification::Rational { denominator } => json!({ "kind": "rational", "denominator": int(denominator) }),
        Classification::Quadratic { d } => json!({ "kind": "quadratic", "d": int(d) }),
        Classification::Cyclotomic { m } => json!({ "kind": "cyclotomic", "m": m }),
        Classification::General => json!({ "kind": "general" }),
    }
}

/// Reads a certificate written by [`certificate`]; coefficients may also be strings.
pub fn parse_certificate(k: &NumberField, v: &Value) -> Result<Certificate> {
    let bad = |what: &str| Error::Parse(format!("certificate JSON: {what}"));
    let target = v.get("target").and_then(Value::as_array).ok_or_else(|| bad("missing target"))?;
    let coords = target
        .iter()
        .map(|c| match c {
            Value::String(s) => parse_rat(s),
            Value::Number(n) => parse_rat(&n.to_string()),
            _ => Err(bad("target coordinates must be strings")),
        })
        .collect::<Result<Vec<_>>>()?;
    let target = k.elem(coords)?;
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
    let mut out = Vec::new();
    for t in terms {
        let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("terms are [k, a] pairs"))?;
        let idx = match &pair[0] {
            Value::Number(n) => n.to_string().parse::<u64>().ok(),
            _ => None,
        }
        .ok_or_else(|| bad("index must be a nonnegative integer"))?;
        let text = match &pair[1] {
            Value::Number(n) => n.to_string(),
            Value::String(s) => s.clone(),
            _ => return Err(bad("coefficient must be an integer")),
        };
        let a = BigUint::from_str(text.trim()).map_err(|_| bad("coefficient must be a nonnegative integer"))?;
        out.push((idx, a));
    }
    Ok(Certificate { target, terms: out })
}

/// Compact rendering with a trailing newline.
pub fn to_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

/// Indented rendering with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
