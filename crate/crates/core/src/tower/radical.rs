use super::bigfloat::{BigFloat, Interval, Round, MIN_PRECISION};
use super::intpoly::IntPolynomial;
use crate::{Error, Result};

const GUARD_BITS: u32 = 32;

fn check_args(k: u32, prec: u32) -> Result<()> {
    if k < 1 {
        return Err(Error::invalid("nested radical level must be at least 1"));
    }
    if prec < MIN_PRECISION {
        return Err(Error::invalid(format!(
            "precision must be at least {MIN_PRECISION} bits"
        )));
    }
    Ok(())
}

/// Rigorous enclosure of `mu_k`, where `mu_0 = 0` and
/// `mu_{j+1} = 1 / sqrt(3 - 2 mu_j)`, computed with `prec` working bits.
///
/// The map is increasing, so lower and upper endpoints are pushed through
/// it separately with opposite rounding directions.
pub fn nested_radical_enclosure(k: u32, prec: u32) -> Result<Interval> {
    check_args(k, prec)?;
    let one = BigFloat::one();
    let three = BigFloat::from_int(3);
    let mut lo = BigFloat::zero();
    let mut hi = BigFloat::zero();
    for _ in 0..k {
        let d_lo = three.add_exact(&lo.mul_pow2(1).neg());
        let d_hi = three.add_exact(&hi.mul_pow2(1).neg());
        lo = one.div(&d_lo.sqrt(prec, Round::Up), prec, Round::Down);
        hi = one.div(&d_hi.sqrt(prec, Round::Down), prec, Round::Up);
    }
    Ok(Interval::new(lo, hi))
}

/// `mu_k` rounded to `prec` bits; the error is below `2^(8 - prec)`.
pub fn nested_radical(k: u32, prec: u32) -> Result<BigFloat> {
    check_args(k, prec)?;
    Ok(nested_radical_enclosure(k, prec + GUARD_BITS)?.midpoint(prec))
}

/// `1 - mu_k`, the distance to the fixed point 1 of the recursion.
pub fn limit_gap(k: u32, prec: u32) -> Result<BigFloat> {
    check_args(k, prec)?;
    let mu = nested_radical(k, prec + GUARD_BITS)?;
    Ok(BigFloat::one().sub(&mu, prec, Round::Nearest))
}

/// Rigorous upper bound on `|poly(value)|`.
///
/// Horner's rule runs on intervals with outward rounding at a working
/// precision that exceeds `prec` by the coefficient size, so the rounding
/// slack sits far below `2^-prec` and the bound is dominated by the true
/// residual at `value`.
pub fn verify_root(poly: &IntPolynomial, value: &BigFloat, prec: u32) -> BigFloat {
    let degree_bits = 64 - (poly.coeffs().len() as u64).leading_zeros() as u64;
    let working = prec as u64 + poly.max_coeff_bits() + degree_bits + 64;
    let working = u32::try_from(working).unwrap_or(u32::MAX);
    let enclosure = poly.eval_interval(&Interval::point(value.clone()), working);
    enclosure.mag().round(prec.max(MIN_PRECISION), Round::Up)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_levels() {
        let mu1 = nested_radical(1, 256).unwrap().to_f64();
        assert_eq!(mu1, 0.577_350_269_189_625_7);
        // 1/sqrt(3 - 2/sqrt(3)), frozen from a 2048-bit mpmath evaluation
        let mu2 = nested_radical(2, 256).unwrap().to_f64();
        assert!((mu2 - 0.736_150_434_033_512_2).abs() < 1e-15);
        assert_eq!(
            nested_radical(2, 256).unwrap().to_decimal(20),
            "0.73615043403351224289"
        );
    }

    #[test]
    fn enclosure_is_tight_and_ordered() {
        for k in 1..=12 {
            let enc = nested_radical_enclosure(k, 256).unwrap();
            assert!(enc.lo <= enc.hi);
            assert!(enc.width() <= BigFloat::pow2(-250));
            assert!(enc.lo > BigFloat::zero() && enc.hi < BigFloat::one());
        }
    }

    #[test]
    fn strictly_increasing_and_gap_decreasing() {
        for k in 1..=12 {
            assert!(nested_radical(k + 1, 256).unwrap() > nested_radical(k, 256).unwrap());
            assert!(limit_gap(k + 1, 256).unwrap() < limit_gap(k, 256).unwrap());
        }
        assert!((limit_gap(1, 128).unwrap().to_f64() - 0.422_649_730_810_374_2).abs() < 1e-15);
        assert!((limit_gap(2, 128).unwrap().to_f64() - 0.263_849_565_966_487_8).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(nested_radical(0, 256).is_err());
        assert!(nested_radical(1, 32).is_err());
    }

    #[test]
    fn residual_examples() {
        let p1 = IntPolynomial::from_i64(&[-1, 0, 3]);
        let p2 = IntPolynomial::from_i64(&[3, 0, -18, 0, 23]);
        let mu1 = nested_radical(1, 256).unwrap();
        let mu2 = nested_radical(2, 256).unwrap();
        assert!(verify_root(&p1, &mu1, 256) <= BigFloat::pow2(-240));
        assert!(verify_root(&p2, &mu2, 256) <= BigFloat::pow2(-200));
        // p_2(1/sqrt 3) = 23/9 - 6 + 3 = -4/9
        let wrong = verify_root(&p2, &mu1, 256).to_f64();
        assert!((wrong - 4.0 / 9.0).abs() < 1e-15);
    }
}
