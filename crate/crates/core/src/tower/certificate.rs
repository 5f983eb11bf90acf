use serde::Serialize;

use super::bigfloat::BigFloat;
use super::intpoly::IntPolynomial;
use super::polynomials::{
    check_divisibility_of, eisenstein_check, tower_polynomial_capped, DivisibilityReport,
    EisensteinWitness, DEFAULT_TOWER_CAP,
};
use super::radical::{nested_radical, verify_root};
use crate::Result;

/// Prime used for the irreducibility check of every `p_k`.
pub const EISENSTEIN_PRIME: u64 = 3;

/// Working precision that keeps residuals well below `2^-(prec/2)`: 256 bits
/// up to `k = 5`, 512 up to `k = 8`, then doubling per level since the
/// coefficient size of `p_k` roughly doubles per level.
pub fn default_precision(k: u32) -> u32 {
    match k {
        0..=5 => 256,
        6..=8 => 512,
        _ => 512u32.saturating_mul(1 << (k - 8).min(20)),
    }
}

/// Evidence that `mu_k` has algebraic degree `2^k`: `p_k` has degree `2^k`,
/// vanishes at `mu_k` up to a rigorous residual bound, and is irreducible by
/// Eisenstein at 3.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeCertificate {
    pub k: u32,
    pub claimed_degree: u64,
    pub precision_bits: u32,
    pub residual_bound: BigFloat,
    pub residual_log2: f64,
    /// Certificates require `residual_bound <= 2^-(precision_bits / 2)`.
    pub residual_tolerance_log2: i64,
    pub eisenstein: EisensteinWitness,
    pub divisibility: DivisibilityReport,
    pub degree_exact: bool,
    pub valid: bool,
    pub reason: Option<String>,
    #[serde(skip)]
    pub polynomial: IntPolynomial,
}

impl DegreeCertificate {
    pub fn residual_ok(&self) -> bool {
        self.residual_bound <= BigFloat::pow2(self.residual_tolerance_log2)
    }
}

pub fn degree_certificate(k: u32, precision_bits: u32) -> Result<DegreeCertificate> {
    degree_certificate_capped(k, precision_bits, DEFAULT_TOWER_CAP)
}

pub fn degree_certificate_capped(
    k: u32,
    precision_bits: u32,
    cap: u32,
) -> Result<DegreeCertificate> {
    let poly = tower_polynomial_capped(k, cap)?;
    let mu = nested_radical(k, precision_bits)?;
    let residual_bound = verify_root(&poly, &mu, precision_bits);
    let eisenstein = eisenstein_check(&poly, EISENSTEIN_PRIME)?;
    let divisibility = check_divisibility_of(k, &poly)?;
    let claimed_degree = 1u64 << k;
    let degree_exact = poly.degree() == Some(claimed_degree as usize);
    let residual_tolerance_log2 = -(precision_bits as i64 / 2);

    let mut cert = DegreeCertificate {
        k,
        claimed_degree,
        precision_bits,
        residual_log2: residual_bound.log2_approx(),
        residual_bound,
        residual_tolerance_log2,
        eisenstein,
        divisibility,
        degree_exact,
        valid: false,
        reason: None,
        polynomial: poly,
    };
    let reason = if !cert.degree_exact {
        Some("degree of p_k differs from 2^k")
    } else if !cert.residual_ok() {
        Some("residual above tolerance")
    } else if !cert.eisenstein.passed {
        Some("criterion not applicable")
    } else if !cert.divisibility.passed() {
        Some("divisibility condition failed")
    } else {
        None
    };
    cert.valid = reason.is_none();
    cert.reason = reason.map(str::to_string);
    Ok(cert)
}
