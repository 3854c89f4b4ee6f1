//! Exact Gaussian rationals `ℚ(i)`, the coefficient field of every element.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A Gaussian rational `re + im·i` with arbitrary-precision parts.
pub type Scalar = Complex<BigRational>;

pub fn from_int(n: i64) -> Scalar {
    Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
}

pub fn from_ratio(num: i64, den: i64) -> Scalar {
    Complex::new(
        BigRational::new(BigInt::from(num), BigInt::from(den)),
        BigRational::zero(),
    )
}

pub fn from_parts(re: BigRational, im: BigRational) -> Scalar {
    Complex::new(re, im)
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Multiplicative inverse, `None` for zero.
pub fn inverse(s: &Scalar) -> Option<Scalar> {
    if s.is_zero() {
        return None;
    }
    let norm = &s.re * &s.re + &s.im * &s.im;
    Some(Complex::new(&s.re / &norm, -(&s.im / &norm)))
}

/// Canonical `num/den` text of a rational; the denominator is always present.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `num/den` or a bare integer `num`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Human-readable rendering used in error messages and `Display`.
pub fn display(s: &Scalar) -> String {
    fn q(x: &BigRational) -> String {
        if x.is_integer() {
            x.numer().to_string()
        } else {
            format!("{}/{}", x.numer(), x.denom())
        }
    }
    match (s.re.is_zero(), s.im.is_zero()) {
        (_, true) => q(&s.re),
        (true, false) => format!("{}i", q(&s.im)),
        (false, false) => format!("({}{}{}i)", q(&s.re), if s.im > BigRational::zero() { "+" } else { "" }, q(&s.im)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_gaussian() {
        let z = from_parts(BigRational::from_integer(1.into()), BigRational::from_integer(2.into()));
        let w = inverse(&z).unwrap();
        assert_eq!(&z * &w, one());
        assert!(inverse(&zero()).is_none());
    }

    #[test]
    fn rational_text() {
        let q = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7/1");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }
}
