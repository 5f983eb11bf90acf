use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::bigfloat::{BigFloat, Interval};
use crate::{Error, Result};

/// Dense univariate polynomial with big-integer coefficients, stored from
/// the constant term upward with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// All odd-power coefficients vanish.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// Bit length of the largest coefficient in absolute value.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// `p(x^2)`.
    pub fn compose_square(&self) -> Self {
        let mut out = vec![BigInt::zero(); (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.clone();
        }
        IntPolynomial::new(out)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Horner evaluation with outward rounding at `prec` working bits.
    pub fn eval_interval(&self, x: &Interval, prec: u32) -> Interval {
        let mut acc = Interval::point(BigFloat::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(x, prec)
                .add(&Interval::point(BigFloat::from_bigint(c.clone())), prec);
        }
        acc
    }

    /// Space-separated coefficients from the constant term upward.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(BigInt::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let coeffs = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<BigInt>().map_err(|_| Error::Parse {
                    line: 1,
                    message: format!("expected an integer coefficient, found `{tok}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}x")?,
                _ => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn trims_and_reports_degree() {
        let p = IntPolynomial::from_i64(&[1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(IntPolynomial::from_i64(&[0, 0]).degree(), None);
    }

    #[test]
    fn text_round_trip() {
        let p = IntPolynomial::from_i64(&[3, 0, -18, 0, 23]);
        assert_eq!(p.to_text(), "3 0 -18 0 23");
        assert_eq!(IntPolynomial::parse_text("3 0 -18 0 23").unwrap(), p);
        assert!(IntPolynomial::parse_text("3 x").is_err());
        assert_eq!(p.to_string(), "23x^4 - 18x^2 + 3");
        assert_eq!(IntPolynomial::from_i64(&[-1, 0, 3]).to_string(), "3x^2 - 1");
        assert_eq!(IntPolynomial::from_i64(&[0, -2]).to_string(), "-2x");
    }

    #[test]
    fn evaluation() {
        let p = IntPolynomial::from_i64(&[3, 0, -18, 0, 23]);
        // 23/81 - 18/9 + 3
        assert_eq!(
            p.eval_rational(&rat(1, 3)),
            rat(23, 81) - rat(2, 1) + rat(3, 1)
        );
        assert!(p.is_even());
        assert!(!IntPolynomial::from_i64(&[0, 1]).is_even());
        assert_eq!(
            IntPolynomial::from_i64(&[-1, 3]).compose_square(),
            IntPolynomial::from_i64(&[-1, 0, 3])
        );
    }

    #[test]
    fn interval_evaluation_encloses_exact_value() {
        let p = IntPolynomial::from_i64(&[3, 0, -18, 0, 23]);
        let x = BigFloat::from_f64(0.7).unwrap();
        let enclosure = p.eval_interval(&Interval::point(x.clone()), 64);
        let exact = p.eval_rational(&rat(7, 10));
        let to_rat = |b: &BigFloat| {
            let m = BigRational::from_integer(b.mantissa().clone());
            let e = b.exponent();
            if e >= 0 {
                m * BigRational::from_integer(BigInt::from(2).pow(e as u32))
            } else {
                m / BigRational::from_integer(BigInt::from(2).pow((-e) as u32))
            }
        };
        // x is the binary double nearest to 0.7, not 0.7 itself
        let xr = to_rat(&x);
        let exact_at_x = p.eval_rational(&xr);
        assert!(to_rat(&enclosure.lo) <= exact_at_x && exact_at_x <= to_rat(&enclosure.hi));
        assert!((to_rat(&enclosure.lo) - exact).abs() < rat(1, 1_000_000));
    }
}
