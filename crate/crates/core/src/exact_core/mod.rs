//! Exact scalars, truncated power series and sparse polynomials.

mod poly;
mod series;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::{Affine, Monomial, Polynomial};
pub use series::{binomial_series, convolve_pick, series_inv_unit, Series};

use num_traits::{Signed, ToPrimitive};
use std::fmt;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Commutative ring operations used by series and the residue engine.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn add_to(&mut self, other: &Self) {
        *self = self.plus(other);
    }
    /// Inverse when it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;
}

/// Exponents attached to the monomial prefactor of a fraction: plain integers
/// for concrete vectors, affine forms in the parameters for parametric runs.
pub trait Exponent: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn constant(c: i64) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn scaled(&self, k: i64) -> Self;
    fn add_const(&self, c: i64) -> Self;
}

/// Coefficient field of the fractions: rationals, or polynomials in the parameters.
pub trait Coeff: Ring {
    type Exp: Exponent;
    fn from_rational(r: Rational) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// binom(b, j) as an element of the ring.
    fn binom(b: &Self::Exp, j: usize) -> Self;
    fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn try_inverse(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Exponent for i64 {
    fn constant(c: i64) -> Self {
        c
    }
    fn plus(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("exponent overflow")
    }
    fn scaled(&self, k: i64) -> Self {
        self.checked_mul(k).expect("exponent overflow")
    }
    fn add_const(&self, c: i64) -> Self {
        self.checked_add(c).expect("exponent overflow")
    }
}

impl Coeff for Rational {
    type Exp = i64;
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn binom(b: &i64, j: usize) -> Self {
        binom_rational(&rat(*b), j)
    }
}

/// binom(b, j) = b(b-1)...(b-j+1)/j! for any rational b.
pub fn binom_rational(b: &Rational, j: usize) -> Rational {
    let mut acc: Rational = num_traits::One::one();
    for i in 0..j {
        acc = acc * (b - rat(i as i64)) / rat(i as i64 + 1);
    }
    acc
}

/// Exact integer conversion, `None` when the rational is not integral.
pub fn to_integer(r: &Rational) -> Option<BigInt> {
    if r.is_integer() {
        Some(r.to_integer())
    } else {
        None
    }
}

pub fn to_i64(r: &Rational) -> Option<i64> {
    to_integer(r).and_then(|n| n.to_i64())
}

pub fn sign_of(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}
