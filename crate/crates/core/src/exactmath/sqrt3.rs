//! The quadratic field `Q(sqrt 3)`, used to express hexagonal-frame vectors in
//! Cartesian coordinates without rounding.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{rational_to_f64, Rational};

/// `a + b * sqrt(3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt3 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt3 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt3 { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        QSqrt3 { a, b: Rational::zero() }
    }

    pub fn sqrt3() -> Self {
        QSqrt3 { a: Rational::zero(), b: Rational::one() }
    }

    fn conj(&self) -> Self {
        QSqrt3 { a: self.a.clone(), b: -self.b.clone() }
    }

    /// `(a + b sqrt 3)(a - b sqrt 3)`, a rational.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(3.into()) * &self.b * &self.b
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * 3f64.sqrt()
    }
}

impl Zero for QSqrt3 {
    fn zero() -> Self {
        QSqrt3::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt3 {
    fn one() -> Self {
        QSqrt3::rational(Rational::one())
    }
}

impl Add for QSqrt3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        QSqrt3 { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for QSqrt3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        QSqrt3 { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for QSqrt3 {
    type Output = Self;
    fn neg(self) -> Self {
        QSqrt3 { a: -self.a, b: -self.b }
    }
}

impl Mul for QSqrt3 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let three = Rational::from_integer(3.into());
        QSqrt3 { a: &self.a * &o.a + three * &self.b * &o.b, b: &self.a * &o.b + &self.b * &o.a }
    }
}

impl Div for QSqrt3 {
    type Output = Self;
    /// Panics on division by zero, like the rational division it wraps.
    fn div(self, o: Self) -> Self {
        let n = o.norm();
        let p = self * o.conj();
        QSqrt3 { a: p.a / n.clone(), b: p.b / n }
    }
}

impl fmt::Display for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt3", self.a, self.b)
        }
    }
}
