//! Helpers around `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::{Mat3, Vec3};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qvec(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> Vec3<Rational> {
    Vec3::new(rat(x.0, x.1), rat(y.0, y.1), rat(z.0, z.1))
}

pub fn ivec_to_q(v: &Vec3<BigInt>) -> Vec3<Rational> {
    v.map(|c| Rational::from_integer(c.clone()))
}

pub fn i64vec_to_q(v: &Vec3<i64>) -> Vec3<Rational> {
    v.map(|&c| int(c))
}

pub fn i64mat_to_q(m: &Mat3<i64>) -> Mat3<Rational> {
    m.map(|&c| int(c))
}

/// Integer matrix from a rational one, if every entry is integral and fits.
pub fn q_to_i64mat(m: &Mat3<Rational>) -> Option<Mat3<i64>> {
    let mut out = Mat3::<i64>::identity();
    for i in 0..3 {
        for j in 0..3 {
            let x = &m.rows[i][j];
            if !x.is_integer() {
                return None;
            }
            out.rows[i][j] = x.to_integer().to_i64()?;
        }
    }
    Some(out)
}

pub fn q_to_ivec(v: &Vec3<Rational>) -> Option<Vec3<BigInt>> {
    if v.iter().all(|c| c.is_integer()) {
        Some(v.map(|c| c.to_integer()))
    } else {
        None
    }
}

/// Split `v` into `(frac, floor)` with every component of `frac` in `[0, 1)`.
pub fn split_frac(v: &Vec3<Rational>) -> (Vec3<Rational>, Vec3<BigInt>) {
    let fl = v.map(|c| c.floor().to_integer());
    let fr = v - &ivec_to_q(&fl);
    (fr, fl)
}

/// Greatest common divisor of two positive rationals: the largest `g` with
/// `a/g` and `b/g` both integers.
pub fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    let num = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    Rational::new(num, a.denom() * b.denom())
}

/// Least common multiple of the denominators of `xs`.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scale a rational vector to the primitive integer vector with the same
/// direction (positive multiple). Returns `None` for the zero vector.
pub fn primitive_direction(v: &Vec3<Rational>) -> Option<Vec3<BigInt>> {
    if v.is_zero() {
        return None;
    }
    let den = common_denominator(v.iter());
    let iv = v.map(|c| (c * Rational::from_integer(den.clone())).to_integer());
    let g = iv.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    Some(iv.map(|c| c / &g))
}

/// Flip sign so the first nonzero entry is positive.
pub fn lex_positive(v: Vec3<BigInt>) -> Vec3<BigInt> {
    match v.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => -v,
        _ => v,
    }
}

/// Parse `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_halves() {
        assert_eq!(rational_gcd(&rat(1, 2), &int(1)), rat(1, 2));
        assert_eq!(rational_gcd(&rat(3, 4), &rat(1, 6)), rat(1, 12));
        assert_eq!(rational_gcd(&int(6), &int(4)), int(2));
    }

    #[test]
    fn split_negative_components() {
        let (fr, fl) = split_frac(&qvec((-1, 4), (5, 2), (0, 1)));
        assert_eq!(fr, qvec((3, 4), (1, 2), (0, 1)));
        assert_eq!(fl, Vec3::new(BigInt::from(-1), BigInt::from(2), BigInt::from(0)));
    }

    #[test]
    fn primitive_directions() {
        let d = primitive_direction(&qvec((1, 2), (-1, 2), (0, 1))).unwrap();
        assert_eq!(d, Vec3::new(BigInt::from(1), BigInt::from(-1), BigInt::from(0)));
        assert_eq!(lex_positive(-d.clone()), d);
        assert!(primitive_direction(&Vec3::zero()).is_none());
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(rat(-1, 2).to_string(), "-1/2");
    }
}
