use super::{pick_last, series_product, ResidueFraction};
use crate::exact_core::{binom_rational, rat, Monomial, Polynomial, Rational, Ring};
use crate::mpns::{root_form, PathStep};
use crate::root_systems::{positive_roots, RootSystemType};
use crate::{Error, Result};
use num_integer::Integer;
use std::collections::BTreeMap;

/// numer / prod (lambda . u)^exp in the linear variables u_0..u_(nvars-1).
#[derive(Clone, Debug)]
pub struct LinFraction {
    pub nvars: usize,
    pub numer: Polynomial,
    /// Primitive linear forms with positive first nonzero entry.
    pub atoms: BTreeMap<Vec<i64>, u32>,
}

fn linear_form(lambda: &[i64]) -> Polynomial {
    let mut p = Polynomial::zero();
    for (i, &c) in lambda.iter().enumerate() {
        p.add_term(Monomial::var(i), rat(c));
    }
    p
}

impl LinFraction {
    pub fn new(nvars: usize, numer: Polynomial) -> Self {
        LinFraction { nvars, numer, atoms: BTreeMap::new() }
    }

    /// Divide by (lambda . u)^e.
    pub fn divide_by(&mut self, lambda: &[i64], e: u32) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        let first = lambda
            .iter()
            .position(|&x| x != 0)
            .ok_or_else(|| Error::InvalidInput("zero linear form in a denominator".into()))?;
        let d = lambda.iter().fold(0i64, |g, x| g.gcd(x));
        let s = if lambda[first] < 0 { -d } else { d };
        if s != 1 {
            let f = Rational::new(1.into(), num_bigint::BigInt::from(s).pow(e));
            self.numer = self.numer.scale(&f);
        }
        let key: Vec<i64> = lambda.iter().map(|x| x / s).collect();
        *self.atoms.entry(key).or_insert(0) += e;
        Ok(())
    }
}

/// <v,u>^(N-r)/(N-r)! over the product of all positive root forms.
pub fn volume_fraction(t: RootSystemType, v: &[Rational]) -> Result<LinFraction> {
    if v.len() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), got: v.len() });
    }
    let r = t.rank;
    let roots = positive_roots(t);
    let deg = roots.len() - r;
    let mut pairing = Polynomial::zero();
    for (i, vi) in v.iter().enumerate().take(r) {
        pairing.add_term(Monomial::var(i), vi.clone());
    }
    let fact: Rational = (1..=deg as i64).map(rat).product();
    let mut frac = LinFraction::new(r, pairing.pow(deg as u32).scale(&fact.recip()));
    for root in &roots {
        frac.divide_by(&root_form(t, &root.coords), 1)?;
    }
    Ok(frac)
}

/// numer / prod over the given roots (ambient coordinates) of their linear forms.
pub fn basic_fraction(t: RootSystemType, roots: &[Vec<i64>], numer: Polynomial) -> Result<LinFraction> {
    let mut frac = LinFraction::new(t.rank, numer);
    for root in roots {
        if root.len() != t.dim() {
            return Err(Error::DimensionMismatch { expected: t.dim(), got: root.len() });
        }
        frac.divide_by(&root_form(t, root), 1)?;
    }
    Ok(frac)
}

impl ResidueFraction for LinFraction {
    type Value = Rational;

    fn residue_step(self, step: &PathStep) -> Result<Self> {
        let nvars = self.nvars;
        let kappa = &step.image;
        let a = step.var;
        let LinFraction { numer, mut atoms, .. } = self;
        let m = atoms.remove(kappa).unwrap_or(0) as usize;
        if m == 0 || numer.is_empty() {
            return Ok(LinFraction::new(nvars, Polynomial::zero()));
        }
        // u_a = t + ell
        let mut ell = Polynomial::zero();
        for (i, &k) in kappa.iter().enumerate() {
            if i != a && k != 0 {
                ell.add_term(Monomial::var(i), rat(-k));
            }
        }
        let top = numer.terms().map(|(mono, _)| mono.exp(a)).max().unwrap_or(0);
        let mut ell_pow = vec![Polynomial::constant(rat(1))];
        for k in 1..=top as usize {
            ell_pow.push(ell_pow[k - 1].mul(&ell));
        }
        let mut series = vec![Polynomial::zero(); m];
        for (mono, c) in numer.terms() {
            let g = mono.exp(a) as usize;
            let mut rest = mono.exps().to_vec();
            if a < rest.len() {
                rest[a] = 0;
            }
            let rest = Polynomial::from_terms([(Monomial::new(rest), c.clone())]);
            for (j, sj) in series.iter_mut().enumerate().take(g.min(m - 1) + 1) {
                let b = binom_rational(&rat(g as i64), j);
                sj.add_to(&rest.mul(&ell_pow[g - j]).scale(&b));
            }
        }

        let mut factors = Vec::new();
        let mut untouched = BTreeMap::new();
        let mut new_atoms = Vec::new();
        for (lambda, e) in atoms {
            let l = lambda[a];
            if l == 0 {
                untouched.insert(lambda, e);
                continue;
            }
            let lam: Vec<i64> = lambda.iter().zip(kappa).map(|(x, k)| x - l * k).collect();
            if lam.iter().all(|&x| x == 0) {
                return Err(Error::InvalidInput("second pole on the residue hyperplane".into()));
            }
            if m > 1 {
                // (l t + L)^-e over L^(e+m-1)
                let form = linear_form(&lam);
                let mut lpow = vec![Polynomial::constant(rat(1))];
                for k in 1..m {
                    lpow.push(lpow[k - 1].mul(&form));
                }
                let s: Vec<Polynomial> = (0..m)
                    .map(|j| {
                        let coef = binom_rational(&rat(-(e as i64)), j) * rat(l).pow(j as i32);
                        lpow[m - 1 - j].scale(&coef)
                    })
                    .collect();
                factors.push(s);
            }
            new_atoms.push((lam, e + m as u32 - 1));
        }

        let value = if m == 1 {
            series.pop().unwrap()
        } else {
            let last = factors.pop();
            for f in &factors {
                series = series_product(&series, f);
            }
            match last {
                Some(f) => pick_last(&series, &f),
                None => series.pop().unwrap(),
            }
        };
        let mut out = LinFraction { nvars, numer: value, atoms: untouched };
        for (lam, e) in new_atoms {
            out.divide_by(&lam, e)?;
        }
        Ok(out)
    }

    fn into_value(self) -> Result<Rational> {
        if !self.atoms.is_empty() && !self.numer.is_empty() {
            return Err(Error::InvalidInput("atoms left after the last residue".into()));
        }
        self.numer
            .as_constant()
            .ok_or_else(|| Error::InvalidInput("variables left after the last residue".into()))
    }
}
