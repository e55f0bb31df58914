//! Exact Fourier-Motzkin elimination for small systems of linear inequalities.

use crate::exact_core::{rat, Rational};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::HashMap;

/// a . x >= b
#[derive(Clone, Debug, PartialEq)]
pub struct Ineq {
    pub a: Vec<Rational>,
    pub b: Rational,
}

impl Ineq {
    pub fn new(a: Vec<Rational>, b: Rational) -> Self {
        Ineq { a, b }
    }
}

/// Scale so the coefficients are coprime integers; keeps the direction of the inequality.
fn normalize(mut q: Ineq) -> Ineq {
    let mut l = num_bigint::BigInt::from(1);
    for x in q.a.iter().chain(std::iter::once(&q.b)) {
        l = l.lcm(x.denom());
    }
    let mut g = num_bigint::BigInt::from(0);
    for x in &q.a {
        g = g.gcd(&(x * Rational::from_integer(l.clone())).to_integer());
    }
    if g.is_zero() {
        return q;
    }
    let f = Rational::new(l, g);
    for x in q.a.iter_mut() {
        *x *= &f;
    }
    q.b *= &f;
    q
}

/// Drop duplicate directions, keeping the tightest right-hand side.
fn dedupe(rows: Vec<Ineq>) -> Vec<Ineq> {
    let mut best: HashMap<Vec<Rational>, Rational> = HashMap::new();
    let mut order = Vec::new();
    for r in rows {
        let r = normalize(r);
        match best.get_mut(&r.a) {
            Some(b) => {
                if r.b > *b {
                    *b = r.b;
                }
            }
            None => {
                order.push(r.a.clone());
                best.insert(r.a, r.b);
            }
        }
    }
    order
        .into_iter()
        .map(|a| {
            let b = best[&a].clone();
            Ineq { a, b }
        })
        .collect()
}

/// Some point satisfying all inequalities, or `None` when the system is infeasible.
pub fn feasible_point(rows: &[Ineq], dim: usize) -> Option<Vec<Rational>> {
    // levels[k] holds the system in x_0..x_{k-1}
    let mut levels: Vec<Vec<Ineq>> = vec![Vec::new(); dim + 1];
    levels[dim] = dedupe(rows.to_vec());
    for k in (1..=dim).rev() {
        let var = k - 1;
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for r in &levels[k] {
            if r.a[var].is_positive() {
                pos.push(r);
            } else if r.a[var].is_negative() {
                neg.push(r);
            } else {
                next.push(r.clone());
            }
        }
        for p in &pos {
            for n in &neg {
                let (ap, an) = (p.a[var].clone(), -n.a[var].clone());
                let a: Vec<Rational> = p.a.iter().zip(&n.a).map(|(x, y)| x * &an + y * &ap).collect();
                next.push(Ineq { a, b: &p.b * &an + &n.b * &ap });
            }
        }
        let mut kept = Vec::new();
        for r in dedupe(next) {
            if r.a.iter().all(|x| x.is_zero()) {
                if r.b.is_positive() {
                    return None;
                }
            } else {
                kept.push(r);
            }
        }
        levels[k - 1] = kept;
    }
    let mut x: Vec<Rational> = vec![rat(0); dim];
    for (var, level) in levels.iter().enumerate().skip(1).map(|(k, l)| (k - 1, l)) {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for r in level {
            let c = &r.a[var];
            if c.is_zero() {
                continue;
            }
            let rest: Rational = (0..var).map(|i| &r.a[i] * &x[i]).sum();
            let bound = (&r.b - rest) / c;
            if c.is_positive() {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        x[var] = match (lo, hi) {
            (None, None) => rat(0),
            (Some(l), None) => l.ceil(),
            (None, Some(h)) => h.floor(),
            (Some(l), Some(h)) => {
                let c = l.ceil();
                if c <= h {
                    c
                } else {
                    (l + h) / rat(2)
                }
            }
        };
    }
    Some(x)
}
