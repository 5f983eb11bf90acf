//! Dyadic floating point numbers `mantissa * 2^exponent` backed by
//! `num-bigint`, with explicit precision and rounding direction on every
//! inexact operation.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Smallest working precision accepted by the public numeric entry points.
pub const MIN_PRECISION: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
    /// To nearest, ties to even.
    Nearest,
}

/// Exact value `mantissa * 2^exponent`.
///
/// The mantissa is kept odd (or zero with exponent 0), so the derived
/// structural equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BigFloat {
    mantissa: BigInt,
    exponent: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        BigFloat::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        BigFloat::from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        BigFloat::normalized(v, 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        BigFloat {
            mantissa: BigInt::one(),
            exponent: e,
        }
    }

    /// Exact conversion; `None` for NaN and infinities.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(BigFloat::zero());
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        let m = if negative {
            -BigInt::from(m)
        } else {
            BigInt::from(m)
        };
        Some(BigFloat::normalized(m, e))
    }

    fn normalized(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return BigFloat::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        BigFloat {
            mantissa: mantissa >> tz,
            exponent: exponent + tz as i64,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// Significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mantissa.bits()
    }

    /// Smallest `e` with `|self| < 2^e`; `None` for zero.
    pub fn magnitude_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.exponent + self.bits() as i64)
    }

    /// Approximate `log2 |self|`, `-inf` for zero.
    pub fn log2_approx(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.bits() as i64;
        let drop = (bits - 60).max(0);
        let top = (self.mantissa.abs() >> drop as usize)
            .to_f64()
            .unwrap_or(f64::MAX);
        top.log2() + (self.exponent + drop) as f64
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Exact multiplication by `2^e`.
    pub fn mul_pow2(&self, e: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + e,
        }
    }

    /// Round to `prec` significant bits.
    pub fn round(&self, prec: u32, rnd: Round) -> Self {
        round_signed(self.mantissa.clone(), self.exponent, prec, rnd)
    }

    pub fn add_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as usize;
        let b = &other.mantissa << (other.exponent - e) as usize;
        BigFloat::normalized(a + b, e)
    }

    pub fn mul_exact(&self, other: &Self) -> Self {
        BigFloat::normalized(
            &self.mantissa * &other.mantissa,
            self.exponent + other.exponent,
        )
    }

    pub fn add(&self, other: &Self, prec: u32, rnd: Round) -> Self {
        self.add_exact(other).round(prec, rnd)
    }

    pub fn sub(&self, other: &Self, prec: u32, rnd: Round) -> Self {
        self.add_exact(&other.neg()).round(prec, rnd)
    }

    pub fn mul(&self, other: &Self, prec: u32, rnd: Round) -> Self {
        self.mul_exact(other).round(prec, rnd)
    }

    /// Correctly rounded quotient.
    ///
    /// # Panics
    /// On division by zero.
    pub fn div(&self, other: &Self, prec: u32, rnd: Round) -> Self {
        assert!(!other.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return BigFloat::zero();
        }
        let negative = self.is_negative() != other.is_negative();
        let a = self.mantissa.magnitude();
        let b = other.mantissa.magnitude();
        let shift = (prec as i64 + 2 + b.bits() as i64 - a.bits() as i64).max(0);
        let num = a << shift as usize;
        let q = &num / b;
        let sticky = !(&num % b).is_zero();
        let mag = (q << 1usize) | BigUint::from(sticky as u8);
        round_magnitude(
            mag,
            self.exponent - other.exponent - shift - 1,
            negative,
            prec,
            rnd,
        )
    }

    /// Correctly rounded square root.
    ///
    /// # Panics
    /// On a negative argument.
    pub fn sqrt(&self, prec: u32, rnd: Round) -> Self {
        assert!(!self.is_negative(), "BigFloat sqrt of a negative number");
        if self.is_zero() {
            return BigFloat::zero();
        }
        let a = self.mantissa.magnitude();
        let mut shift = (2 * (prec as i64 + 2) - a.bits() as i64).max(0);
        if (self.exponent - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let num = a << shift as usize;
        let root = num.sqrt();
        let sticky = &root * &root != num;
        let mag = (root << 1usize) | BigUint::from(sticky as u8);
        round_magnitude(mag, (self.exponent - shift) / 2 - 1, false, prec, rnd)
    }

    /// Nearest `f64` (may under- or overflow to 0 / infinity).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(53, Round::Nearest);
        let m = r.mantissa.to_i64().expect("53-bit mantissa fits in i64") as f64;
        ldexp(m, r.exponent)
    }

    /// Decimal expansion truncated toward zero after `digits` fractional
    /// digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scaled = self.mantissa.abs() * BigInt::from(10u32).pow(digits as u32);
        let int = if self.exponent >= 0 {
            scaled << self.exponent as usize
        } else {
            scaled >> (-self.exponent) as usize
        };
        let mut s = int.to_string();
        if s.len() <= digits {
            s = "0".repeat(digits + 1 - s.len()) + &s;
        }
        let (whole, frac) = s.split_at(s.len() - digits);
        let sign = if self.is_negative() { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{whole}")
        } else {
            format!("{sign}{whole}.{frac}")
        }
    }
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

fn round_signed(m: BigInt, e: i64, prec: u32, rnd: Round) -> BigFloat {
    let (sign, mag) = m.into_parts();
    round_magnitude(mag, e, sign == Sign::Minus, prec, rnd)
}

fn round_magnitude(mag: BigUint, e: i64, negative: bool, prec: u32, rnd: Round) -> BigFloat {
    let sign = if negative { Sign::Minus } else { Sign::Plus };
    let bits = mag.bits();
    if bits <= prec as u64 {
        return BigFloat::normalized(BigInt::from_biguint(sign, mag), e);
    }
    let shift = (bits - prec as u64) as usize;
    let mut q = &mag >> shift;
    let rem = &mag - (&q << shift);
    if !rem.is_zero() {
        let away = match rnd {
            Round::Down => negative,
            Round::Up => !negative,
            Round::Nearest => {
                let half = BigUint::one() << (shift - 1);
                match rem.cmp(&half) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => q.bit(0),
                }
            }
        };
        if away {
            q += 1u32;
        }
    }
    BigFloat::normalized(BigInt::from_biguint(sign, q), e + shift as i64)
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.add_exact(&other.neg());
        diff.mantissa.sign().cmp(&Sign::NoSign)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(d) => f.write_str(&self.to_decimal(d)),
            None => write!(f, "{}*2^{}", self.mantissa, self.exponent),
        }
    }
}

/// Serialized as the exact pair `{ "mantissa": "<decimal>", "exponent": e }`.
impl Serialize for BigFloat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BigFloat", 2)?;
        st.serialize_field("mantissa", &self.mantissa.to_string())?;
        st.serialize_field("exponent", &self.exponent)?;
        st.end()
    }
}

/// Closed interval `[lo, hi]` with outward rounding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigFloat,
    pub hi: BigFloat,
}

impl Interval {
    pub fn point(x: BigFloat) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn new(lo: BigFloat, hi: BigFloat) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn contains(&self, x: &BigFloat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> BigFloat {
        self.hi.add_exact(&self.lo.neg())
    }

    /// Largest absolute value over the interval.
    pub fn mag(&self) -> BigFloat {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn midpoint(&self, prec: u32) -> BigFloat {
        self.lo
            .add_exact(&self.hi)
            .mul_pow2(-1)
            .round(prec, Round::Nearest)
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        Interval {
            lo: self.lo.add(&other.lo, prec, Round::Down),
            hi: self.hi.add(&other.hi, prec, Round::Up),
        }
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let products = [
            self.lo.mul_exact(&other.lo),
            self.lo.mul_exact(&other.hi),
            self.hi.mul_exact(&other.lo),
            self.hi.mul_exact(&other.hi),
        ];
        let lo = products.iter().min().unwrap().round(prec, Round::Down);
        let hi = products.iter().max().unwrap().round(prec, Round::Up);
        Interval { lo, hi }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(x: f64) -> BigFloat {
        BigFloat::from_f64(x).unwrap()
    }

    #[test]
    fn f64_round_trip() {
        for x in [
            0.0,
            1.0,
            -2.5,
            1e-300,
            3.0e300,
            f64::MIN_POSITIVE / 8.0,
            0.1,
        ] {
            assert_eq!(bf(x).to_f64(), x);
        }
        assert!(BigFloat::from_f64(f64::NAN).is_none());
    }

    #[test]
    fn normalization_makes_equality_structural() {
        assert_eq!(BigFloat::from_int(12), bf(12.0));
        assert_eq!(BigFloat::from_int(12).mantissa(), &BigInt::from(3));
        assert_eq!(BigFloat::from_int(12).exponent(), 2);
    }

    #[test]
    fn directed_rounding_brackets_one_third() {
        let one = BigFloat::one();
        let three = BigFloat::from_int(3);
        for prec in [64, 65, 100, 256] {
            let lo = one.div(&three, prec, Round::Down);
            let hi = one.div(&three, prec, Round::Up);
            // 3*lo < 1 < 3*hi, and the gap is one ulp.
            assert!(lo.mul_exact(&three) < one);
            assert!(hi.mul_exact(&three) > one);
            assert!(hi.add_exact(&lo.neg()) <= BigFloat::pow2(-(prec as i64) - 1));
        }
        let neg = one.neg().div(&three, 64, Round::Down);
        assert!(neg.mul_exact(&three) < one.neg());
    }

    #[test]
    fn nearest_ties_to_even() {
        // 0b1011 at 3 bits is exactly halfway between 0b101 and 0b110.
        assert_eq!(
            BigFloat::from_int(11).round(3, Round::Nearest),
            BigFloat::from_int(12)
        );
        assert_eq!(
            BigFloat::from_int(9).round(3, Round::Nearest),
            BigFloat::from_int(8)
        );
        assert_eq!(
            BigFloat::from_int(-11).round(3, Round::Down),
            BigFloat::from_int(-12)
        );
        assert_eq!(
            BigFloat::from_int(-11).round(3, Round::Up),
            BigFloat::from_int(-10)
        );
    }

    #[test]
    fn sqrt_brackets() {
        let two = BigFloat::from_int(2);
        for prec in [64, 128, 512] {
            let lo = two.sqrt(prec, Round::Down);
            let hi = two.sqrt(prec, Round::Up);
            assert!(lo.mul_exact(&lo) < two);
            assert!(hi.mul_exact(&hi) > two);
            assert!(lo.bits() <= prec as u64 && hi.bits() <= prec as u64);
        }
        assert_eq!(
            BigFloat::from_int(49).sqrt(64, Round::Down),
            BigFloat::from_int(7)
        );
        let quarter = BigFloat::pow2(-3);
        let s = quarter.sqrt(64, Round::Nearest).to_f64();
        assert!((s - 0.125f64.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn arithmetic_agrees_with_f64() {
        let a = bf(1.2345);
        let b = bf(-0.75);
        assert_eq!(a.add(&b, 53, Round::Nearest).to_f64(), 1.2345 + -0.75);
        assert_eq!(a.mul(&b, 53, Round::Nearest).to_f64(), 1.2345 * -0.75);
        assert_eq!(a.div(&b, 53, Round::Nearest).to_f64(), 1.2345 / -0.75);
        assert_eq!(a.sub(&b, 53, Round::Nearest).to_f64(), 1.2345 - -0.75);
    }

    #[test]
    fn decimal_output() {
        assert_eq!(bf(0.5).to_decimal(3), "0.500");
        assert_eq!(bf(-2.25).to_decimal(1), "-2.2");
        assert_eq!(BigFloat::from_int(7).to_decimal(0), "7");
        assert_eq!(format!("{:.4}", bf(0.03125)), "0.0312");
    }

    #[test]
    fn magnitude_helpers() {
        assert_eq!(BigFloat::pow2(-128).magnitude_exponent(), Some(-127));
        assert!((BigFloat::pow2(-128).log2_approx() + 128.0).abs() < 1e-12);
        assert!((bf(3.0).log2_approx() - 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn interval_mul_handles_signs() {
        let a = Interval::new(bf(-1.0), bf(2.0));
        let b = Interval::new(bf(-3.0), bf(0.5));
        let c = a.mul(&b, 64);
        assert_eq!(c.lo, bf(-6.0));
        assert_eq!(c.hi, bf(3.0));
        assert_eq!(c.mag(), bf(6.0));
    }
}
