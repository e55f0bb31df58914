//! Independent checks: dynamic-programming point counts, exact quasipolynomial
//! fitting, and volumes read off fitted Ehrhart leading coefficients.

use crate::counting::{QuasiTerm, Quasipolynomial};
use crate::exact_core::{rat, BigInt, Monomial, Polynomial, Rational};
use crate::root_systems::{cone_contains_int, lattice_contains, positive_roots, Family, RootSystemType};
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Default bound on sum |h_i| accepted by `brute_count`.
pub const DEFAULT_GUARD: u64 = 60;

/// Twice the simple-root coordinates of an ambient vector.
fn simple_coords2(t: RootSystemType, v: &[i64]) -> Vec<i64> {
    let n = v.len();
    let mut prefix = Vec::with_capacity(n);
    let mut s = 0;
    for &x in v {
        s += x;
        prefix.push(s);
    }
    let total = s;
    match t.family {
        Family::A => prefix[..n - 1].iter().map(|p| 2 * p).collect(),
        Family::B => {
            let mut c: Vec<i64> = prefix[..n - 1].iter().map(|p| 2 * p).collect();
            c.push(2 * total);
            c
        }
        Family::C => {
            let mut c: Vec<i64> = prefix[..n - 1].iter().map(|p| 2 * p).collect();
            c.push(total);
            c
        }
        Family::D => {
            let mut c: Vec<i64> = prefix[..n - 2].iter().map(|p| 2 * p).collect();
            c.push(prefix[n - 2] - v[n - 1]);
            c.push(total);
            c
        }
    }
}

/// Twice the height: a strictly positive linear functional on positive roots.
fn height2(t: RootSystemType, v: &[i64]) -> i64 {
    simple_coords2(t, v).iter().sum()
}

fn is_simple_combination(t: RootSystemType, v: &[i64]) -> bool {
    simple_coords2(t, v).iter().all(|&c| c >= 0 && c % 2 == 0)
}

struct Dp<'a> {
    t: RootSystemType,
    roots: &'a [Vec<i64>],
    heights: Vec<i64>,
    memo: HashMap<(usize, Vec<i64>), BigInt>,
}

impl Dp<'_> {
    fn count(&mut self, idx: usize, rest: Vec<i64>) -> BigInt {
        if idx == self.roots.len() {
            return if is_simple_combination(self.t, &rest) { BigInt::one() } else { BigInt::zero() };
        }
        if !cone_contains_int(self.t, &rest).unwrap_or(false) {
            return BigInt::zero();
        }
        let key = (idx, rest);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (_, rest) = &key;
        let root = &self.roots[idx];
        let max = height2(self.t, rest) / self.heights[idx];
        let mut total = BigInt::zero();
        let mut cur = rest.clone();
        for _ in 0..=max {
            total += self.count(idx + 1, cur.clone());
            for (c, r) in cur.iter_mut().zip(root) {
                *c -= r;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// Number of non-negative integer solutions of sum x_alpha alpha = h, by
/// enumerating multiplicities of the non-simple roots; the simple roots are a
/// basis and settle the remainder.
pub fn brute_count(t: RootSystemType, h: &[i64]) -> Result<BigInt> {
    brute_count_with_guard(t, h, DEFAULT_GUARD)
}

pub fn brute_count_with_guard(t: RootSystemType, h: &[i64], guard: u64) -> Result<BigInt> {
    brute_count_ordered(t, h, guard, &[])
}

/// As `brute_count_with_guard`, processing the non-simple roots in the order
/// given by `order` (indices into their default order; empty keeps it).
pub fn brute_count_ordered(t: RootSystemType, h: &[i64], guard: u64, order: &[usize]) -> Result<BigInt> {
    if h.len() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), got: h.len() });
    }
    let size: u64 = h.iter().map(|x| x.unsigned_abs()).sum();
    if size > guard {
        return Err(Error::TooLarge { size, limit: guard });
    }
    if !lattice_contains(t, h) || !cone_contains_int(t, h)? {
        return Ok(BigInt::zero());
    }
    let roots: Vec<Vec<i64>> = positive_roots(t)
        .into_iter()
        .map(|r| r.coords)
        .filter(|c| !is_simple(t, c))
        .collect();
    let roots: Vec<Vec<i64>> = if order.is_empty() {
        roots
    } else {
        if order.len() != roots.len() {
            return Err(Error::DimensionMismatch { expected: roots.len(), got: order.len() });
        }
        order.iter().map(|&i| roots[i].clone()).collect()
    };
    let heights = roots.iter().map(|r| height2(t, r)).collect();
    let mut dp = Dp { t, roots: &roots, heights, memo: HashMap::new() };
    Ok(dp.count(0, h.to_vec()))
}

fn is_simple(t: RootSystemType, c: &[i64]) -> bool {
    let s = simple_coords2(t, c);
    s.iter().filter(|&&x| x != 0).count() == 1 && s.iter().all(|&x| x == 0 || x == 2)
}

/// Exact interpolation of (k, value) samples by a quasipolynomial of the given
/// degree and period (1 or 2); surplus samples must agree.
pub fn fit_quasipolynomial(values: &[(i64, Rational)], degree: usize, period: usize) -> Result<Quasipolynomial> {
    if period != 1 && period != 2 {
        return Err(Error::InvalidInput(format!("unsupported period {period}")));
    }
    let mut classes: Vec<Polynomial> = Vec::new();
    for class in 0..period as i64 {
        let pts: Vec<&(i64, Rational)> = values.iter().filter(|(k, _)| k.rem_euclid(period as i64) == class).collect();
        if pts.len() < degree + 1 {
            return Err(Error::InconsistentSamples { degree, period });
        }
        let poly = interpolate(&pts[..degree + 1]);
        for (k, v) in &pts[degree + 1..] {
            if poly.eval(&[rat(*k)]) != *v {
                return Err(Error::InconsistentSamples { degree, period });
            }
        }
        classes.push(poly);
    }
    let terms = if period == 1 {
        vec![QuasiTerm { character: vec![1], poly: classes.pop().unwrap() }]
    } else {
        let half = Rational::new(1.into(), 2.into());
        vec![
            QuasiTerm { character: vec![1], poly: classes[0].add(&classes[1]).scale(&half) },
            QuasiTerm { character: vec![-1], poly: classes[0].sub(&classes[1]).scale(&half) },
        ]
    };
    Ok(Quasipolynomial::new(vec!["k".to_string()], terms))
}

/// Lagrange interpolation in the variable k.
fn interpolate(pts: &[&(i64, Rational)]) -> Polynomial {
    let k = Polynomial::var(0);
    let mut out = Polynomial::zero();
    for (i, (ki, vi)) in pts.iter().map(|p| (p.0, &p.1)).enumerate() {
        let mut basis = Polynomial::constant(vi.clone());
        for (j, p) in pts.iter().enumerate() {
            if i != j {
                let factor = k.sub(&Polynomial::constant(rat(p.0)));
                basis = basis.mul(&factor).scale(&(rat(1) / rat(ki - p.0)));
            }
        }
        out = out.add(&basis);
    }
    out
}

/// Degree N - r coefficient of the fitted Ehrhart quasipolynomial of h.
pub fn volume_leading(t: RootSystemType, h: &[i64]) -> Result<Rational> {
    volume_leading_with_guard(t, h, DEFAULT_GUARD)
}

pub fn volume_leading_with_guard(t: RootSystemType, h: &[i64], guard: u64) -> Result<Rational> {
    let degree = t.num_roots() - t.rank;
    let period = if t.family == Family::A { 1 } else { 2 };
    // one surplus sample per class as a consistency check
    let samples = period * (degree + 2);
    let mut values = Vec::with_capacity(samples);
    for k in 0..samples as i64 {
        let hk: Vec<i64> = h.iter().map(|x| x * k).collect();
        values.push((k, Rational::from(brute_count_with_guard(t, &hk, guard)?)));
    }
    let q = fit_quasipolynomial(&values, degree, period)?;
    let top = Monomial::new(vec![degree as u32]);
    let mut lead = rat(0);
    for term in &q.terms {
        let c = term.poly.coefficient(&top);
        if term.character == [1] {
            lead = c;
        } else if !c.is_zero() {
            return Err(Error::InconsistentSamples { degree, period });
        }
    }
    Ok(lead)
}
