//! Exact scalar fields.
//!
//! Everything in the crate is generic over [`Scalar`], a commutative field
//! with an explicit conjugation. Two instances ship: [`Rational`] (reduced
//! fractions of big integers) and [`GaussianRational`] (pairs of rationals).

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// `a + b i` with rational `a`, `b`.
pub type GaussianRational = Complex<Rational>;

/// An exact field usable by the linear algebra and exterior algebra layers.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// Integral domain the field is the fraction field of; used for
    /// fraction-free elimination.
    type Integral: Clone + Num + fmt::Debug;

    fn conj(&self) -> Self;

    fn from_rational(q: &Rational) -> Self;

    fn is_real(&self) -> bool;

    /// Real part. Hermitian forms have real diagonal minors, so this is
    /// enough for positivity tests.
    fn real_part(&self) -> Rational;

    /// Multiplies a row by a common denominator so every entry is integral.
    fn clear_denominators(row: &[Self]) -> Vec<Self::Integral>;

    /// The imaginary unit when the field contains one.
    fn imaginary_unit() -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn is_nonzero(&self) -> bool {
        !self.is_zero()
    }
}

impl Scalar for Rational {
    type Integral = BigInt;

    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn is_real(&self) -> bool {
        true
    }

    fn real_part(&self) -> Rational {
        self.clone()
    }

    fn clear_denominators(row: &[Self]) -> Vec<BigInt> {
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        row.iter()
            .map(|q| q.numer() * (&lcm / q.denom()))
            .collect()
    }

    fn imaginary_unit() -> Option<Self> {
        None
    }
}

impl Scalar for GaussianRational {
    type Integral = Complex<BigInt>;

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_rational(q: &Rational) -> Self {
        Complex::new(q.clone(), Rational::zero())
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn real_part(&self) -> Rational {
        self.re.clone()
    }

    fn clear_denominators(row: &[Self]) -> Vec<Complex<BigInt>> {
        let lcm = row.iter().fold(BigInt::one(), |acc, z| {
            acc.lcm(z.re.denom()).lcm(z.im.denom())
        });
        row.iter()
            .map(|z| {
                Complex::new(
                    z.re.numer() * (&lcm / z.re.denom()),
                    z.im.numer() * (&lcm / z.im.denom()),
                )
            })
            .collect()
    }

    fn imaginary_unit() -> Option<Self> {
        Some(Complex::new(Rational::zero(), Rational::one()))
    }
}

/// Embeds a rational into the Gaussian rationals.
pub fn complexify(q: &Rational) -> GaussianRational {
    GaussianRational::from_rational(q)
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `i`
pub fn imag_unit() -> GaussianRational {
    Complex::new(Rational::zero(), Rational::one())
}

/// Error returned when a scalar literal cannot be read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarParseError(pub String);

impl fmt::Display for ScalarParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal {:?}", self.0)
    }
}

impl std::error::Error for ScalarParseError {}

/// Parses `"p"`, `"p/q"` or `"-p/q"`. Whitespace around the tokens is ignored.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarParseError> {
    let err = || ScalarParseError(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Compact display of a Gaussian rational, e.g. `1/2-3i`.
pub fn format_gaussian(z: &GaussianRational) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => format_rational(&z.re),
        (true, false) => format!("{}i", format_rational(&z.im)),
        (false, false) => {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            format!(
                "{}{}{}i",
                format_rational(&z.re),
                sign,
                format_rational(&z.im.abs())
            )
        }
    }
}

/// Sign of a rational as `-1`, `0`, `1`.
pub fn signum(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_are_canonical() {
        let q = parse_rational(" 6/-4 ").unwrap();
        assert_eq!(q, rational(-3, 2));
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&integer(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn gaussian_field_axioms_on_samples() {
        let a = Complex::new(rational(1, 2), rational(-3, 4));
        let b = Complex::new(rational(2, 3), rational(5, 1));
        let one = GaussianRational::one();
        assert_eq!(a.clone() * (one.clone() / a.clone()), one);
        assert_eq!(
            (a.clone() + b.clone()).conj(),
            Scalar::conj(&a) + Scalar::conj(&b)
        );
        let i = imag_unit();
        assert_eq!(i.clone() * i, -one);
        assert_eq!(format_gaussian(&a), "1/2-3/4i");
    }

    #[test]
    fn clearing_denominators_is_a_common_multiple() {
        let row = vec![rational(1, 2), rational(-2, 3), integer(0)];
        assert_eq!(
            Rational::clear_denominators(&row),
            vec![BigInt::from(3), BigInt::from(-4), BigInt::from(0)]
        );
        let zrow = vec![Complex::new(rational(1, 2), rational(1, 3))];
        assert_eq!(
            GaussianRational::clear_denominators(&zrow),
            vec![Complex::new(BigInt::from(3), BigInt::from(2))]
        );
    }
}
