//! Iterated residues of Kostant and volume fractions along residue paths.
//!
//! Count fractions live in the multiplicative variables E_i = e^{u_i}: every
//! denominator atom is E^lambda - c with c = +-1, and the numerator is a
//! monomial prefactor E^shift (symbolic in parametric mode) times a Laurent
//! polynomial. Volume fractions live in the linear variables u_i.

mod laurent;
mod lin;

pub use laurent::{Exps, Laurent};
pub use lin::{basic_fraction, volume_fraction, LinFraction};

use crate::exact_core::{binom_rational, rat, Affine, Coeff, Exponent, Polynomial, Rational, Ring};
use crate::mpns::{root_form, PathStep, ResiduePath};
use crate::root_systems::{lattice_contains, positive_roots, Family, RootSystemType};
use crate::{Error, Result};
use laurent::{axpy, exp_at};
use std::collections::{BTreeMap, HashMap};

/// Sign vector g in {+-1}^n.
pub type SignVector = Vec<i8>;

/// The finite set of torus points summed over, with its global multiplier.
pub fn group_f(t: RootSystemType) -> (Vec<SignVector>, Rational) {
    let n = t.dim();
    match t.family {
        Family::A => (vec![vec![1; n]], rat(1)),
        Family::B => {
            let mut out = Vec::new();
            for mask in 0u32..(1 << n) {
                if mask != 0 && mask.count_ones() < 2 {
                    continue;
                }
                out.push((0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
            }
            out.sort_by(|a: &SignVector, b| b.cmp(a));
            (out, rat(1))
        }
        Family::C | Family::D => {
            let mut out: Vec<SignVector> = (0u32..(1 << (n - 1)))
                .map(|mask| (0..n).map(|i| if i < n - 1 && mask >> i & 1 == 1 { -1 } else { 1 }).collect())
                .collect();
            out.sort_by(|a, b| b.cmp(a));
            (out, rat(2))
        }
    }
}

/// g^alpha for an integer vector alpha.
pub fn character_value(g: &[i8], alpha: &[i64]) -> i8 {
    let mut s = 1i8;
    for (gi, ai) in g.iter().zip(alpha) {
        if *gi < 0 && ai.rem_euclid(2) == 1 {
            s = -s;
        }
    }
    s
}

/// A path root whose coordinates are all new at its step must have g^alpha = 1;
/// otherwise the pair contributes nothing.
pub fn g_compatible(p: &ResiduePath, g: &[i8]) -> bool {
    let mut seen = vec![false; g.len()];
    for step in &p.steps {
        let idx = step.root.indices();
        if idx.iter().all(|&i| !seen[i]) && character_value(g, &step.root.coords) != 1 {
            return false;
        }
        for i in idx {
            seen[i] = true;
        }
    }
    true
}

/// Denominator atom E^lambda - sign.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpAtom {
    pub lambda: Vec<i32>,
    pub sign: i8,
}

/// E^shift * numer / prod atom^exp in the variables E_0..E_(nvars-1).
#[derive(Clone, Debug)]
pub struct ExpFraction<K: Coeff> {
    pub nvars: usize,
    pub shift: Vec<K::Exp>,
    pub numer: Laurent<K>,
    pub atoms: BTreeMap<ExpAtom, u32>,
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

impl<K: Coeff> ExpFraction<K> {
    fn zero(nvars: usize) -> Self {
        ExpFraction {
            nvars,
            shift: vec![K::Exp::constant(0); nvars],
            numer: Laurent::zero(),
            atoms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// Divide by (E^lambda - sign)^e, keeping atoms canonical: first nonzero
    /// entry positive, and E^(2k) - 1 split into (E^k - 1)(E^k + 1).
    pub fn divide_by(&mut self, mut lambda: Vec<i32>, sign: i8, e: u32) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        let Some(first) = lambda.iter().position(|&x| x != 0) else {
            if sign == 1 {
                return Err(Error::InvalidInput("denominator vanishes identically".into()));
            }
            self.numer = self.numer.scale(&K::from_rational(Rational::new(1.into(), num_bigint::BigInt::from(2).pow(e))));
            return Ok(());
        };
        if lambda[first] < 0 {
            // E^l - c = -c E^l (E^-l - c)
            let shift: Vec<i32> = lambda.iter().map(|x| -(e as i32) * x).collect();
            self.numer = self.numer.shifted(&shift);
            if sign == 1 && e % 2 == 1 {
                self.numer = self.numer.negate();
            }
            lambda.iter_mut().for_each(|x| *x = -*x);
        }
        let d = lambda.iter().fold(0i64, |g, &x| gcd(g, x as i64));
        if sign == 1 && d > 1 {
            if d != 2 {
                return Err(Error::InvalidInput(format!("unsupported atom multiple {d}")));
            }
            let half: Vec<i32> = lambda.iter().map(|x| x / 2).collect();
            self.divide_by(half.clone(), 1, e)?;
            return self.divide_by(half, -1, e);
        }
        *self.atoms.entry(ExpAtom { lambda, sign }).or_insert(0) += e;
        Ok(())
    }

    /// Multiply by g^h-type constants or other scalars.
    pub fn scale(&mut self, c: &Rational) {
        self.numer = self.numer.scale(&K::from_rational(c.clone()));
    }
}

/// binom(g, j) for integer g and j < m, cached per g.
struct BinomCache(HashMap<i32, Vec<Rational>>, usize);

impl BinomCache {
    fn get(&mut self, g: i32) -> &[Rational] {
        let m = self.1;
        self.0
            .entry(g)
            .or_insert_with(|| (0..m).map(|j| binom_rational(&rat(g as i64), j)).collect())
    }
}

fn series_product<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let m = a.len().min(b.len());
    let mut out = vec![R::zero(); m];
    for (i, x) in a.iter().enumerate().take(m) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().take(m - i).enumerate() {
            if !y.is_zero() {
                out[i + j].add_to(&x.times(y));
            }
        }
    }
    out
}

fn pick_last<R: Ring>(a: &[R], b: &[R]) -> R {
    let m = a.len();
    let mut acc = R::zero();
    for i in 0..m {
        if !a[i].is_zero() && !b[m - 1 - i].is_zero() {
            acc.add_to(&a[i].times(&b[m - 1 - i]));
        }
    }
    acc
}

/// Fractions that can be pushed through a residue path.
pub trait ResidueFraction: Sized {
    type Value: Coeff;
    /// One-variable residue at the step's pole, eliminating the step's variable.
    fn residue_step(self, step: &PathStep) -> Result<Self>;
    /// The value once every variable has been eliminated.
    fn into_value(self) -> Result<Self::Value>;
}

impl<K: Coeff> ResidueFraction for ExpFraction<K> {
    type Value = K;

    fn residue_step(self, step: &PathStep) -> Result<Self> {
        exp_step(self, step)
    }

    fn into_value(self) -> Result<K> {
        if !self.atoms.is_empty() && !self.numer.is_zero() {
            return Err(Error::InvalidInput("atoms left after the last residue".into()));
        }
        self.numer
            .as_constant()
            .ok_or_else(|| Error::InvalidInput("variables left after the last residue".into()))
    }
}

fn exp_step<K: Coeff>(f: ExpFraction<K>, step: &PathStep) -> Result<ExpFraction<K>> {
    let nvars = f.nvars;
    if f.is_zero() {
        return Ok(ExpFraction::zero(nvars));
    }
    let kappa: Vec<i32> = step.image.iter().map(|&x| x as i32).collect();
    let a = step.var;
    let ExpFraction { shift, mut numer, mut atoms, .. } = f;
    let declared = atoms.remove(&ExpAtom { lambda: kappa.clone(), sign: 1 }).unwrap_or(0) as usize;
    // certify the true pole order by exact division of the numerator
    let mut m = declared;
    while m > 0 {
        match numer.div_atom(&kappa, a) {
            Some(q) => {
                numer = q;
                m -= 1;
            }
            None => break,
        }
    }
    if m == 0 || numer.is_zero() {
        return Ok(ExpFraction::zero(nvars));
    }
    if m > step.bound {
        return Err(Error::BoundViolated { found: m, bound: step.bound });
    }

    // E_a = mu (1+t), mu = E^(kappa_a e_a - kappa): monomials E^gamma become E^(gamma - gamma_a kappa) (1+t)^gamma_a
    let mut binoms = BinomCache(HashMap::new(), m);
    let mut series: Vec<Laurent<K>> = vec![Laurent::zero(); m];
    for (e, c) in numer.terms() {
        let g = exp_at(e, a);
        let rest = axpy(e, -g, &kappa);
        for (j, b) in binoms.get(g).iter().enumerate() {
            if !num_traits::Zero::is_zero(b) {
                series[j].add_term(rest.clone(), c.scale(b));
            }
        }
    }
    drop(numer);
    let beta_a = shift[a].clone();
    if m > 1 {
        let prefactor: Vec<K> = (0..m).map(|j| K::binom(&beta_a, j)).collect();
        series = series
            .iter()
            .enumerate()
            .map(|(j, _)| {
                let mut acc = Laurent::zero();
                for i in 0..=j {
                    if !prefactor[i].is_zero() && !series[j - i].is_zero() {
                        acc.add_to(&series[j - i].scale(&prefactor[i]));
                    }
                }
                acc
            })
            .collect();
    }

    // atoms depending on E_a
    let mut new_atoms: Vec<(Vec<i32>, i8, u32)> = Vec::new();
    let mut factors: Vec<Vec<Laurent<K>>> = Vec::new();
    let kept: BTreeMap<ExpAtom, u32> = std::mem::take(&mut atoms);
    let mut untouched = BTreeMap::new();
    for (atom, e) in kept {
        let l = atom.lambda[a];
        if l == 0 {
            untouched.insert(atom, e);
            continue;
        }
        let lam: Vec<i32> = atom.lambda.iter().zip(&kappa).map(|(x, k)| x - l * k).collect();
        let c = atom.sign;
        let base = if lam.iter().all(|&x| x == 0) {
            if c == 1 {
                return Err(Error::InvalidInput("second pole on the residue hyperplane".into()));
            }
            None
        } else {
            Some(laurent::strip(lam.clone()))
        };
        if m > 1 {
            // (A(1+t)^l - c)^-e over the common denominator D^(e+m-1), D = A - c
            let mono = |k: u32| match &base {
                Some(b) => Laurent::monomial(b.iter().map(|x| x * k as i32).collect(), K::one()),
                None => Laurent::one(),
            };
            let d = match &base {
                Some(b) => {
                    let mut d = Laurent::monomial(b.clone(), K::one());
                    d.add_term(Vec::new(), K::from_int(-(c as i64)));
                    d
                }
                None => Laurent::constant(K::from_int(1 - c as i64)),
            };
            let mut dpow = vec![Laurent::one()];
            for k in 1..m {
                dpow.push(dpow[k - 1].times(&d));
            }
            // q = (1+t)^l - 1 and its powers, as rational series
            let q: Vec<Rational> = (0..m)
                .map(|j| if j == 0 { rat(0) } else { binom_rational(&rat(l as i64), j) })
                .collect();
            let mut qpow: Vec<Vec<Rational>> = vec![{
                let mut one = vec![rat(0); m];
                one[0] = rat(1);
                one
            }];
            for k in 1..m {
                qpow.push(series_product(&qpow[k - 1], &q));
            }
            let mut s: Vec<Laurent<K>> = vec![Laurent::zero(); m];
            for k in 0..m {
                let b = binom_rational(&rat(-(e as i64)), k);
                let term = mono(k as u32).times(&dpow[m - 1 - k]);
                for (j, sj) in s.iter_mut().enumerate().skip(k) {
                    let coef = &b * &qpow[k][j];
                    if !num_traits::Zero::is_zero(&coef) {
                        sj.add_to(&term.scale(&K::from_rational(coef)));
                    }
                }
            }
            factors.push(s);
        }
        new_atoms.push((lam, c, e + m as u32 - 1));
    }

    let value = if m == 1 {
        series.pop().unwrap()
    } else {
        let last = factors.pop();
        for fct in &factors {
            series = series_product(&series, fct);
        }
        match last {
            Some(fct) => pick_last(&series, &fct),
            None => series.pop().unwrap(),
        }
    };

    let shift_next: Vec<K::Exp> = shift
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if i == a {
                K::Exp::constant(0)
            } else if kappa[i] == 0 {
                s.clone()
            } else {
                s.plus(&beta_a.add_const(1).scaled(-(kappa[i] as i64)))
            }
        })
        .collect();
    let mut out = ExpFraction { nvars, shift: shift_next, numer: value, atoms: untouched };
    for (lam, c, e) in new_atoms {
        out.divide_by(lam, c, e)?;
    }
    Ok(out)
}

/// Raw iterated residue: |prod of path scales| times the chained one-variable residues.
/// Counting divides by vol(M) and applies the path sign.
pub fn iterated_residue<F: ResidueFraction>(p: &ResiduePath, f: F) -> Result<F::Value> {
    let mut cur = f;
    for step in &p.steps {
        cur = cur.residue_step(step)?;
    }
    Ok(cur.into_value()?.scale(&p.vol))
}

fn build_kostant<K: Coeff>(t: RootSystemType, h: Vec<K::Exp>, g: &[i8]) -> Result<ExpFraction<K>> {
    let r = t.rank;
    if g.len() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), got: g.len() });
    }
    let roots = positive_roots(t);
    let mut sum = vec![0i64; r];
    let forms: Vec<Vec<i64>> = roots.iter().map(|a| root_form(t, &a.coords)).collect();
    for f in &forms {
        for (s, x) in sum.iter_mut().zip(f) {
            *s += x;
        }
    }
    let shift = (0..r).map(|i| h[i].add_const(sum[i] - 1)).collect();
    let mut frac = ExpFraction { nvars: r, shift, numer: Laurent::one(), atoms: BTreeMap::new() };
    for (root, form) in roots.iter().zip(&forms) {
        let c = character_value(g, &root.coords);
        frac.divide_by(form.iter().map(|&x| x as i32).collect(), c, 1)?;
    }
    Ok(frac)
}

/// Kostant fraction at a concrete lattice vector, with g^h folded into the numerator.
pub fn kostant_fraction(t: RootSystemType, h: &[i64], g: &[i8]) -> Result<ExpFraction<Rational>> {
    if h.len() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), got: h.len() });
    }
    if !lattice_contains(t, h) {
        return Err(Error::LatticeViolation);
    }
    let mut frac = build_kostant::<Rational>(t, h.to_vec(), g)?;
    if character_value(g, h) < 0 {
        frac.scale(&rat(-1));
    }
    Ok(frac)
}

/// Kostant fraction with symbolic exponents h_1..h_n (parameter i is h_(i+1)).
/// The character g^h is left to the caller.
pub fn kostant_fraction_parametric(t: RootSystemType, g: &[i8]) -> Result<ExpFraction<Polynomial>> {
    let h = (0..t.dim()).map(Affine::param).collect();
    build_kostant(t, h, g)
}

/// Kostant fraction along the ray k*h0, with the single parameter k.
/// The character (g^h0)^k is left to the caller.
pub fn kostant_fraction_ray(t: RootSystemType, h0: &[i64], g: &[i8]) -> Result<ExpFraction<Polynomial>> {
    if h0.len() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), got: h0.len() });
    }
    let h = h0.iter().map(|&x| Affine::param(0).scaled(x)).collect();
    build_kostant(t, h, g)
}
