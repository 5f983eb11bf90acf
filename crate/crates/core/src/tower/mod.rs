//! The exact side: nested radicals `mu_k`, the integer polynomials `p_k`
//! with `p_k(mu_k) = 0`, and the certificates that `mu_k` has degree `2^k`.

mod bigfloat;
mod certificate;
mod intpoly;
mod polynomials;
mod radical;

pub use bigfloat::{BigFloat, Interval, Round, MIN_PRECISION};
pub use certificate::{
    default_precision, degree_certificate, degree_certificate_capped, DegreeCertificate,
    EISENSTEIN_PRIME,
};
pub use intpoly::IntPolynomial;
pub use polynomials::{
    check_divisibility, check_divisibility_of, eisenstein_check, flip_coefficients,
    tower_polynomial, tower_polynomial_capped, tower_sequence, tower_step, DivisibilityReport,
    EisensteinWitness, Orientation, DEFAULT_TOWER_CAP,
};
pub use radical::{limit_gap, nested_radical, nested_radical_enclosure, verify_root};
