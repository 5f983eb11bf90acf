use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::pattern::Pattern;
use crate::{Error, Result};

/// A point of the standard simplex: nonnegative coordinates summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SimplexVector {
    coords: Vec<f64>,
}

impl SimplexVector {
    /// Renormalizes `coords` onto the simplex. Entries in `[-1e-12, 0)` are
    /// treated as rounding noise and clamped to zero.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid(
                "simplex vector needs at least one coordinate",
            ));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite() || **c < -1e-12) {
            return Err(Error::invalid(format!(
                "coordinate {bad} is not a nonnegative real"
            )));
        }
        let clamped: Vec<f64> = coords.into_iter().map(|c| c.max(0.0)).collect();
        let sum: f64 = clamped.iter().sum();
        if sum <= 0.0 {
            return Err(Error::invalid(
                "simplex vector must have positive total mass",
            ));
        }
        Ok(SimplexVector {
            coords: clamped.into_iter().map(|c| c / sum).collect(),
        })
    }

    pub fn uniform(m: usize) -> Self {
        SimplexVector {
            coords: vec![1.0 / m as f64; m],
        }
    }

    /// The standard basis vector `e_i`, 1-based.
    pub fn vertex(m: usize, i: usize) -> Result<Self> {
        if i < 1 || i > m {
            return Err(Error::IndexOutOfRange { index: i, bound: m });
        }
        let mut coords = vec![0.0; m];
        coords[i - 1] = 1.0;
        Ok(SimplexVector { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// One monomial `coefficient * prod x_var^exp` of a Lagrange polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    /// `(0-based variable, exponent)` in increasing variable order.
    pub powers: Vec<(usize, u32)>,
    /// The multinomial `r! / prod E(i)!`.
    pub coefficient: BigUint,
    coefficient_f64: f64,
}

impl Term {
    pub fn coefficient_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.coefficient.clone()))
    }

    fn monomial(&self, x: &[f64]) -> f64 {
        self.powers
            .iter()
            .map(|&(v, e)| x[v].powi(e as i32))
            .product()
    }
}

/// `lambda_E(x) = r! sum_{E} prod_i x_i^{E(i)} / E(i)!`, homogeneous of
/// degree `r` in `m` variables with one term per edge.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangePolynomial {
    m: usize,
    r: usize,
    terms: Vec<Term>,
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

impl LagrangePolynomial {
    pub fn from_pattern(pattern: &Pattern) -> Self {
        let r_fact = factorial(pattern.r());
        let terms = pattern
            .edges()
            .iter()
            .map(|e| {
                let runs = e.runs();
                let denom = runs
                    .iter()
                    .fold(BigUint::one(), |acc, &(_, t)| acc * factorial(t));
                let coefficient = &r_fact / denom;
                Term {
                    powers: runs
                        .iter()
                        .map(|&(i, t)| (i as usize - 1, t as u32))
                        .collect(),
                    coefficient_f64: coefficient.to_f64().unwrap_or(f64::INFINITY),
                    coefficient,
                }
            })
            .collect();
        LagrangePolynomial {
            m: pattern.m(),
            r: pattern.r(),
            terms,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Degree of homogeneity.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Dense exponent vector of a term.
    pub fn exponent_vector(&self, term: &Term) -> Vec<u32> {
        let mut v = vec![0; self.m];
        for &(i, e) in &term.powers {
            v[i] = e;
        }
        v
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got,
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &SimplexVector) -> Result<f64> {
        self.evaluate_at(x.coords())
    }

    /// Evaluation at an arbitrary real point.
    pub fn evaluate_at(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coefficient_f64 * t.monomial(x))
            .sum()
    }

    pub fn evaluate_exact(&self, x: &[BigRational]) -> Result<BigRational> {
        self.check_dim(x.len())?;
        let mut acc = BigRational::zero();
        for t in &self.terms {
            let mut mono = t.coefficient_rational();
            for &(v, e) in &t.powers {
                mono *= num_traits::pow(x[v].clone(), e as usize);
            }
            acc += mono;
        }
        Ok(acc)
    }

    pub fn gradient(&self, x: &SimplexVector) -> Result<Vec<f64>> {
        self.gradient_at(x.coords())
    }

    pub fn gradient_at(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x.len())?;
        let mut g = vec![0.0; self.m];
        self.gradient_into(x, &mut g);
        Ok(g)
    }

    pub(crate) fn gradient_into(&self, x: &[f64], g: &mut [f64]) {
        g.iter_mut().for_each(|gi| *gi = 0.0);
        for t in &self.terms {
            for (k, &(v, e)) in t.powers.iter().enumerate() {
                let mut d = t.coefficient_f64 * e as f64 * x[v].powi(e as i32 - 1);
                for (j, &(w, f)) in t.powers.iter().enumerate() {
                    if j != k {
                        d *= x[w].powi(f as i32);
                    }
                }
                g[v] += d;
            }
        }
    }

    /// Largest violation of the first-order conditions for a maximum on the
    /// simplex: on the support every partial derivative equals `r * lambda`,
    /// off it none exceeds that value. Zero at an exact KKT point.
    pub fn kkt_residual(&self, x: &SimplexVector, support_tol: f64) -> Result<f64> {
        let g = self.gradient(x)?;
        let level = self.r as f64 * self.evaluate(x)?;
        Ok(x.coords()
            .iter()
            .zip(&g)
            .map(|(&xi, &gi)| {
                if xi > support_tol {
                    (gi - level).abs()
                } else {
                    (gi - level).max(0.0)
                }
            })
            .fold(0.0, f64::max))
    }
}
