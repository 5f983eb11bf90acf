use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::polynomial::SimplexVector;
use crate::pattern::{build_pk, pk_edge_count, Pattern};
use crate::tower::{nested_radical, BigFloat, Round};
use crate::{Error, Result};

const CLOSED_FORM_PRECISION: u32 = 256;

/// `lambda(P + s) / lambda(P) = r^r (s+r)! / ((r+s)^(r+s) r!)`.
pub fn plus_s_factor(r: usize, s: usize) -> Result<BigRational> {
    if r < 2 || s < 1 {
        return Err(Error::invalid("the lifting factor needs r >= 2 and s >= 1"));
    }
    let fact = |n: usize| (1..=n).fold(BigInt::one(), |acc, i| acc * i);
    let num = BigInt::from(r).pow(r as u32) * fact(r + s);
    let den = BigInt::from(r + s).pow((r + s) as u32) * fact(r);
    Ok(BigRational::new(num, den))
}

/// `Some(k)` when the pattern is exactly `P_k`.
pub fn recognize_pk(pattern: &Pattern) -> Option<usize> {
    if pattern.r() != 3 || pattern.m() < 3 || pattern.m().is_multiple_of(2) {
        return None;
    }
    let k = (pattern.m() - 1) / 2;
    if pattern.edge_count() != pk_edge_count(k) {
        return None;
    }
    (build_pk(k).ok()? == *pattern).then_some(k)
}

/// `lambda(P_k)` as a double, from the nested radical.
pub fn pk_closed_form(k: usize) -> Result<f64> {
    Ok(nested_radical(k as u32, CLOSED_FORM_PRECISION)?.to_f64())
}

/// High-precision optimal vector of `P_k` given `lambda(P_{k-1})`.
///
/// The two outer parts get `(1 - s) / 2` each and the inner copy of
/// `P_{k-1}` gets its own optimal vector scaled by `s = 1/sqrt(3 - 2 lambda)`.
/// Levels further in recover their `lambda` by inverting the recursion,
/// `lambda_{j-1} = (3 - lambda_j^-2) / 2`.
pub fn pk_optimal_vector_hp(k: usize, lambda_prev: &BigFloat, prec: u32) -> Result<Vec<BigFloat>> {
    if k < 1 {
        return Err(Error::invalid("P_k is defined for k >= 1"));
    }
    if lambda_prev.is_negative() || *lambda_prev >= BigFloat::one() {
        return Err(Error::invalid("lambda(P_{k-1}) must lie in [0, 1)"));
    }
    let one = BigFloat::one();
    let three = BigFloat::from_int(3);
    let denom = three.add_exact(&lambda_prev.mul_pow2(1).neg());
    let scale = one.div(
        &denom.sqrt(prec + 16, Round::Nearest),
        prec + 16,
        Round::Nearest,
    );
    let outer = one.sub(&scale, prec, Round::Nearest).mul_pow2(-1);

    let inner = if k == 1 {
        vec![one.clone()]
    } else {
        let sq = lambda_prev.mul(lambda_prev, prec + 16, Round::Nearest);
        let inv = one.div(&sq, prec + 16, Round::Nearest);
        let deeper = three.sub(&inv, prec + 16, Round::Nearest).mul_pow2(-1);
        let deeper = if deeper.is_negative() {
            BigFloat::zero()
        } else {
            deeper
        };
        pk_optimal_vector_hp(k - 1, &deeper, prec)?
    };

    let mut out = vec![outer.clone(), outer];
    out.extend(inner.iter().map(|y| y.mul(&scale, prec, Round::Nearest)));
    Ok(out)
}

pub fn pk_optimal_vector(k: usize, lambda_prev: &BigFloat) -> Result<SimplexVector> {
    let hp = pk_optimal_vector_hp(k, lambda_prev, CLOSED_FORM_PRECISION)?;
    SimplexVector::new(hp.iter().map(BigFloat::to_f64).collect())
}

/// [`pk_optimal_vector`] with `lambda(P_{k-1})` taken from the nested
/// radical (`lambda_0 = 0`).
pub fn pk_optimal_vector_for(k: usize) -> Result<SimplexVector> {
    let prev = if k <= 1 {
        BigFloat::zero()
    } else {
        nested_radical(k as u32 - 1, CLOSED_FORM_PRECISION + 64)?
    };
    pk_optimal_vector(k, &prev)
}
