//! Hypergraph patterns, their Lagrangians, and the integer polynomial tower
//! that certifies the algebraic degree of the Lagrangians of the recursive
//! family `P_k`.
//!
//! The crate is split along three lines:
//!
//! * [`pattern`]: multisets, patterns, profiles, blowups and the pattern
//!   builders (`P + s`, `P - i`, `P_k`, named patterns, text format).
//! * [`lagrangian`]: Lagrange polynomials, simplex maximization by
//!   multiplicative ascent, minimality reports and the closed forms for
//!   `P + s` and `P_k`.
//! * [`tower`]: dyadic big floats with directed rounding, the nested radical
//!   sequence `mu_k`, the integer polynomials `p_k`, Eisenstein checks and
//!   degree certificates.

pub mod error;
pub mod lagrangian;
pub mod pattern;
pub mod tower;

pub use error::{Error, Result};
