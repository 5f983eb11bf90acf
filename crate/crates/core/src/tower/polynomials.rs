use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::intpoly::IntPolynomial;
use crate::{Error, Result};

/// Highest tower level computed unless a caller raises the cap.
pub const DEFAULT_TOWER_CAP: u32 = 12;

/// One level of the tower: given `p` of degree at most `n`, return
/// `sum_i c_i (3x^2 - 1)^i (2x^2)^(n - i)`, i.e. `(2x^2)^n p((3x^2-1)/(2x^2))`
/// without any division.
///
/// The sum is accumulated in `t = x^2` by a homogeneous Horner scheme that
/// multiplies by `3t - 1` once per coefficient.
pub fn tower_step(p: &IntPolynomial, n: usize) -> IntPolynomial {
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    for i in (0..=n).rev() {
        // acc <- acc * (3t - 1)
        for j in (0..=n).rev() {
            let lower = if j > 0 {
                &acc[j - 1] * 3u32
            } else {
                BigInt::zero()
            };
            acc[j] = lower - &acc[j];
        }
        let c = p.coeff(i);
        if !c.is_zero() {
            acc[n - i] += c << (n - i);
        }
    }
    IntPolynomial::new(acc).compose_square()
}

/// `p_1, ..., p_k`, with `p_1 = 3x^2 - 1`.
pub fn tower_sequence(k: u32, cap: u32) -> Result<Vec<IntPolynomial>> {
    if k < 1 {
        return Err(Error::invalid("tower level must be at least 1"));
    }
    if k > cap {
        return Err(Error::TowerCapExceeded { k, cap });
    }
    let mut out = vec![IntPolynomial::from_i64(&[-1, 0, 3])];
    for level in 1..k {
        let next = tower_step(out.last().unwrap(), 1usize << level);
        out.push(next);
    }
    Ok(out)
}

pub fn tower_polynomial(k: u32) -> Result<IntPolynomial> {
    tower_polynomial_capped(k, DEFAULT_TOWER_CAP)
}

pub fn tower_polynomial_capped(k: u32, cap: u32) -> Result<IntPolynomial> {
    Ok(tower_sequence(k, cap)?.pop().unwrap())
}

/// `b_{k,i} = c_{k,i}` for even `k` and `c_{k, 2^k - i}` for odd `k`.
pub fn flip_coefficients(k: u32, poly: &IntPolynomial) -> Result<Vec<BigInt>> {
    let n = 1usize << k;
    match poly.degree() {
        Some(d) if d == n => {}
        d => {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: d.unwrap_or(0),
            })
        }
    }
    let mut b = poly.coeffs().to_vec();
    if k % 2 == 1 {
        b.reverse();
    }
    Ok(b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub k: u32,
    pub b_sequence_checked: bool,
    /// Number of `b_{k,i}` examined, always `2^k + 1` for a complete report.
    pub examined: usize,
    /// `3 | b_{k,i}` exactly when `i != 2^k`.
    pub cond_i_holds: bool,
    /// `9` does not divide `b_{k,0}`.
    pub cond_ii_holds: bool,
    pub failing_indices: Vec<usize>,
}

impl DivisibilityReport {
    pub fn passed(&self) -> bool {
        self.b_sequence_checked && self.cond_i_holds && self.cond_ii_holds
    }
}

pub fn check_divisibility(k: u32) -> Result<DivisibilityReport> {
    check_divisibility_of(k, &tower_polynomial(k)?)
}

pub fn check_divisibility_of(k: u32, poly: &IntPolynomial) -> Result<DivisibilityReport> {
    let b = flip_coefficients(k, poly)?;
    let top = 1usize << k;
    let three = BigInt::from(3);
    let nine = BigInt::from(9);
    let mut failing: Vec<usize> = b
        .iter()
        .enumerate()
        .filter(|(i, bi)| bi.is_multiple_of(&three) == (*i == top))
        .map(|(i, _)| i)
        .collect();
    let cond_i_holds = failing.is_empty();
    let cond_ii_holds = !b[0].is_multiple_of(&nine);
    if !cond_ii_holds && !failing.contains(&0) {
        failing.insert(0, 0);
    }
    Ok(DivisibilityReport {
        k,
        b_sequence_checked: b.len() == top + 1,
        examined: b.len(),
        cond_i_holds,
        cond_ii_holds,
        failing_indices: failing,
    })
}

/// Where the coefficient not divisible by `q` sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Leading,
    Constant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EisensteinWitness {
    pub prime: u64,
    pub passed: bool,
    pub orientation: Option<Orientation>,
    #[serde(serialize_with = "ser_bigint")]
    pub leading_mod_q2: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub constant_mod_q2: BigInt,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Eisenstein's criterion at `q`, in either orientation: `q` divides every
/// coefficient except exactly one of the two boundary coefficients, and `q^2`
/// does not divide the other boundary coefficient.
pub fn eisenstein_check(poly: &IntPolynomial, q: u64) -> Result<EisensteinWitness> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let Some(n) = poly.degree() else {
        return Err(Error::invalid(
            "Eisenstein's criterion needs a nonzero polynomial",
        ));
    };
    let qb = BigInt::from(q);
    let q2 = &qb * &qb;
    let c = poly.coeffs();
    let leading_mod_q2 = c[n].mod_floor(&q2);
    let constant_mod_q2 = c[0].mod_floor(&q2);

    let divides = |x: &BigInt| x.is_multiple_of(&qb);
    let inner_ok = n >= 1 && c[1..n].iter().all(divides);
    let orientation = if !inner_ok {
        None
    } else if !divides(&c[n]) && divides(&c[0]) && !constant_mod_q2.is_zero() {
        Some(Orientation::Leading)
    } else if !divides(&c[0]) && divides(&c[n]) && !leading_mod_q2.is_zero() {
        Some(Orientation::Constant)
    } else {
        None
    };
    Ok(EisensteinWitness {
        prime: q,
        passed: orientation.is_some(),
        orientation,
        leading_mod_q2,
        constant_mod_q2,
    })
}
