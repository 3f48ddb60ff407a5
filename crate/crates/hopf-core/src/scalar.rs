//! Scalar rings used throughout: `f64`, `BigRational`, and ordinary complex numbers.
//! Split-complex numbers live in [`crate::splitnum`].

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `zero`, `one` and `is_zero` come from `num_traits`.
pub trait Ring:
    Clone + PartialEq + Debug + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    /// Largest absolute value among the real components, as a float.
    fn mag(&self) -> f64;
}

/// A ring with a conjugation `*`.
pub trait Involutive: Ring {
    fn conj(&self) -> Self;
}

/// Coefficient fields: `f64` for geometry, `BigRational` for exact checks.
pub trait Real: Involutive + PartialOrd + Num {
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn ratio(n: i64, d: i64) -> Self;
    fn recip(&self) -> Self;
    fn abs(&self) -> Self;
    /// Square root when it exists in the field: always for non-negative floats,
    /// only for ratios of perfect squares over the rationals.
    fn sqrt_exact(&self) -> Option<Self>;

    fn half() -> Self {
        Self::ratio(1, 2)
    }
}

/// A two-dimensional ring `re + u·im` over a real field, where the unit `u` is
/// the split-imaginary `j` (u² = +1) or the ordinary `i` (u² = −1).
pub trait UnitRing: Involutive {
    type Re: Real;
    const UNIT_SQUARE: i64;

    fn new(re: Self::Re, im: Self::Re) -> Self;
    fn re(&self) -> Self::Re;
    fn im(&self) -> Self::Re;

    fn unit() -> Self {
        Self::new(Self::Re::zero(), Self::Re::one())
    }

    fn from_re(r: Self::Re) -> Self {
        Self::new(r, Self::Re::zero())
    }

    fn scale(&self, r: &Self::Re) -> Self {
        Self::new(self.re() * r.clone(), self.im() * r.clone())
    }
}

impl Ring for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn mag(&self) -> f64 {
        f64::abs(*self)
    }
}

impl Involutive for f64 {
    fn conj(&self) -> Self {
        *self
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
    fn recip(&self) -> Self {
        1.0 / self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt_exact(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

impl Ring for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn mag(&self) -> f64 {
        ToPrimitive::to_f64(&Signed::abs(self)).unwrap_or(f64::INFINITY)
    }
}

impl Involutive for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Real for BigRational {
    /// Exact binary expansion of the float.
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite float")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn ratio(n: i64, d: i64) -> Self {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
    fn recip(&self) -> Self {
        BigRational::recip(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn sqrt_exact(&self) -> Option<Self> {
        if Signed::is_negative(self) {
            return None;
        }
        let (n, d) = (self.numer(), self.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
    }
}

impl<R: Real> Ring for Complex<R> {
    fn from_i64(n: i64) -> Self {
        Complex::new(R::from_i64(n), R::zero())
    }
    fn mag(&self) -> f64 {
        self.re.mag().max(self.im.mag())
    }
}

impl<R: Real> Involutive for Complex<R> {
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
}

impl<R: Real> UnitRing for Complex<R> {
    type Re = R;
    const UNIT_SQUARE: i64 = -1;

    fn new(re: R, im: R) -> Self {
        Complex::new(re, im)
    }
    fn re(&self) -> R {
        self.re.clone()
    }
    fn im(&self) -> R {
        self.im.clone()
    }
}

/// Shorthand for an exact rational `n/d`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_unit_squares_to_minus_one() {
        let i = Complex::<Rational>::unit();
        assert_eq!(i.clone() * i, Complex::<Rational>::from_i64(-1));
    }

    #[test]
    fn rational_from_float_is_exact() {
        let r = Rational::from_f64(0.375);
        assert_eq!(r, q(3, 8));
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(q(64, 25).sqrt_exact(), Some(q(8, 5)));
        assert_eq!(q(2, 1).sqrt_exact(), None);
        assert_eq!(q(-4, 1).sqrt_exact(), None);
    }
}
