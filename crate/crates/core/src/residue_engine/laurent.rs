use crate::exact_core::{Coeff, Ring};
use std::collections::HashMap;

/// Exponent vector with trailing zeros stripped.
pub type Exps = Vec<i32>;

pub(crate) fn strip(mut e: Exps) -> Exps {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

pub(crate) fn exp_at(e: &[i32], i: usize) -> i32 {
    e.get(i).copied().unwrap_or(0)
}

/// a + k * b, stripped.
pub(crate) fn axpy(a: &[i32], k: i32, b: &[i32]) -> Exps {
    let n = a.len().max(b.len());
    strip((0..n).map(|i| exp_at(a, i) + k * exp_at(b, i)).collect())
}

/// Laurent polynomial in E_0, E_1, ... with coefficients in K.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<K: Coeff> {
    terms: HashMap<Exps, K>,
}

impl<K: Coeff> Laurent<K> {
    pub fn constant(c: K) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn monomial(e: Exps, c: K) -> Self {
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(strip(e), c);
        }
        Laurent { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &K)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: Exps, c: K) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_to(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { terms: self.terms.iter().map(|(e, x)| (e.clone(), x.times(c))).collect() }
    }

    /// Multiply by the monomial E^shift.
    pub fn shifted(&self, shift: &[i32]) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, x)| (axpy(e, 1, shift), x.clone())).collect() }
    }

    /// The constant coefficient when no variable occurs.
    pub fn as_constant(&self) -> Option<K> {
        match self.terms.len() {
            0 => Some(K::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.times(self);
        }
        acc
    }

    /// Exact quotient by (E^kappa - 1) where kappa_a = 1, if it divides.
    pub fn div_atom(&self, kappa: &[i32], a: usize) -> Option<Self> {
        if self.terms.is_empty() {
            return Some(self.clone());
        }
        // E^kappa - 1 = X (E_a - mu), X = E^(kappa without a), mu = X^-1
        let mut x = kappa.to_vec();
        x[a] = 0;
        let mu: Exps = x.iter().map(|v| -v).collect();
        let mut groups: std::collections::BTreeMap<i32, Vec<(Exps, K)>> = std::collections::BTreeMap::new();
        for (e, c) in &self.terms {
            let ea = exp_at(e, a);
            let mut rest = e.clone();
            if a < rest.len() {
                rest[a] = 0;
            }
            groups.entry(ea).or_default().push((strip(rest), c.clone()));
        }
        let lo = *groups.keys().next().unwrap();
        let hi = *groups.keys().next_back().unwrap();
        // synthetic division from the top: q_(j-1) = p_j + mu q_j
        let mut q: Vec<Laurent<K>> = Vec::with_capacity((hi - lo) as usize);
        let mut carry = Laurent::zero();
        for j in (lo..=hi).rev() {
            let mut p = carry.shifted(&mu);
            if let Some(terms) = groups.get(&j) {
                for (e, c) in terms {
                    p.add_term(e.clone(), c.clone());
                }
            }
            if j == lo {
                if !p.is_zero() {
                    return None;
                }
            } else {
                q.push(p.clone());
            }
            carry = p;
        }
        // q holds coefficients of E_a^(hi-1), ..., E_a^lo; quotient by E^kappa - 1 is Q * mu
        let mut out = Laurent::zero();
        for (idx, poly) in q.into_iter().enumerate() {
            let j = hi - 1 - idx as i32;
            let mut unit = vec![0; a + 1];
            unit[a] = j;
            let shift = axpy(&mu, 1, &unit);
            for (e, c) in poly.terms {
                out.add_term(axpy(&e, 1, &shift), c);
            }
        }
        Some(out)
    }
}

impl<K: Coeff> Ring for Laurent<K> {
    fn zero() -> Self {
        Laurent { terms: HashMap::new() }
    }
    fn one() -> Self {
        Self::constant(K::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_to(other);
        out
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }
    fn times(&self, other: &Self) -> Self {
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut out: HashMap<Exps, K> = HashMap::with_capacity(big.len() * small.len().min(4));
        for (e2, c2) in &small.terms {
            for (e1, c1) in &big.terms {
                let e = axpy(e1, 1, e2);
                let c = c1.times(c2);
                match out.get_mut(&e) {
                    Some(x) => x.add_to(&c),
                    None => {
                        out.insert(e, c);
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Laurent { terms: out }
    }
    fn negate(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.negate())).collect() }
    }
    fn add_to(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            let inv = c.try_inverse()?;
            return Some(Laurent::monomial(e.iter().map(|x| -x).collect(), inv));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::{rat, Rational};

    fn lp(terms: &[(&[i32], i64)]) -> Laurent<Rational> {
        let mut l = Laurent::zero();
        for (e, c) in terms {
            l.add_term(strip(e.to_vec()), rat(*c));
        }
        l
    }

    #[test]
    fn divides_by_binomial_atom() {
        // (E0 E1^-1 - 1) * (3 E0^2 + E1^-2 - 5)
        let atom = lp(&[(&[1, -1], 1), (&[], -1)]);
        let other = lp(&[(&[2], 3), (&[0, -2], 1), (&[], -5)]);
        let prod = atom.times(&other);
        assert_eq!(prod.div_atom(&[1, -1], 0), Some(other.clone()));
        assert_eq!(other.div_atom(&[1, -1], 0), None);
        let squared = prod.times(&atom);
        let once = squared.div_atom(&[1, -1], 0).unwrap();
        assert_eq!(once.div_atom(&[1, -1], 0), Some(other));
    }
}
