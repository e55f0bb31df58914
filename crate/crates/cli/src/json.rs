//! JSON renderings of exact values.

use serde_json::{json, Map, Value};
use vpf_core::counting::Quasipolynomial;
use vpf_core::exact_core::{Monomial, Polynomial, Rational};

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

fn monomial_key(m: &Monomial, names: &[String]) -> String {
    let parts: Vec<String> = m
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// {"monomial": "coeff"}.
pub fn polynomial(p: &Polynomial, names: &[String]) -> Value {
    let mut map = Map::new();
    for (m, c) in p.terms().rev() {
        map.insert(monomial_key(m, names), rational(c));
    }
    Value::Object(map)
}

pub fn quasipolynomial(q: &Quasipolynomial) -> Value {
    let terms: Vec<Value> = q
        .terms
        .iter()
        .map(|t| json!({"character": t.character, "poly": polynomial(&t.poly, &q.vars)}))
        .collect();
    json!({"variables": q.vars, "terms": terms})
}
