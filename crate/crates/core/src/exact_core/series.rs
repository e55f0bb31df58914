use super::{Coeff, Ring};
use crate::Error;

/// Power series in one variable truncated after `order` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> Series<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        Series { coeffs }
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut coeffs = vec![R::zero(); order];
        if order > 0 {
            coeffs[0] = c;
        }
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, j: usize) -> &R {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Product truncated to the shorter order.
    pub fn mul(&self, other: &Series<R>) -> Series<R> {
        let order = self.order().min(other.order());
        let mut out = vec![R::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order - i).enumerate() {
                if !b.is_zero() {
                    out[i + j].add_to(&a.times(b));
                }
            }
        }
        Series { coeffs: out }
    }

    pub fn add(&self, other: &Series<R>) -> Series<R> {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..order).map(|j| self.coeffs[j].plus(&other.coeffs[j])).collect(),
        }
    }
}

/// Reciprocal of a series with invertible constant term.
pub fn series_inv_unit<R: Ring>(f: &Series<R>) -> Result<Series<R>, Error> {
    let order = f.order();
    if order == 0 {
        return Ok(Series::new(Vec::new()));
    }
    let inv0 = f.coeffs[0].try_inverse().ok_or(Error::ZeroConstantTerm)?;
    let mut out: Vec<R> = Vec::with_capacity(order);
    out.push(inv0.clone());
    for j in 1..order {
        let mut acc = R::zero();
        for i in 1..=j {
            acc.add_to(&f.coeffs[i].times(&out[j - i]));
        }
        out.push(acc.times(&inv0).negate());
    }
    Ok(Series::new(out))
}

/// (1+t)^b truncated after `order` coefficients.
pub fn binomial_series<K: Coeff>(b: &K::Exp, order: usize) -> Series<K> {
    Series::new((0..order).map(|j| K::binom(b, j)).collect())
}

/// Coefficient of t^(m-1) in the product of two series: sum of g_i * h_(m-1-i).
pub fn convolve_pick<R: Ring>(g: &Series<R>, h: &Series<R>, m: usize) -> Result<R, Error> {
    if g.order() < m || h.order() < m {
        return Err(Error::TruncationTooShort {
            needed: m,
            have: g.order().min(h.order()),
        });
    }
    let mut acc = R::zero();
    for i in 0..m {
        let (a, b) = (&g.coeffs[i], &h.coeffs[m - 1 - i]);
        if !a.is_zero() && !b.is_zero() {
            acc.add_to(&a.times(b));
        }
    }
    Ok(acc)
}
