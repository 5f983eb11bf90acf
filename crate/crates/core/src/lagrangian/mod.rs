//! Lagrange polynomials of patterns and their maxima over the simplex.

mod closed_form;
mod density;
mod minimality;
mod optimizer;
mod polynomial;

pub use closed_form::{
    pk_closed_form, pk_optimal_vector, pk_optimal_vector_for, pk_optimal_vector_hp, plus_s_factor,
    recognize_pk,
};
pub use density::{blowup_density, round_weights};
pub use minimality::{is_minimal, IndexMargin, MinimalityReport};
pub use optimizer::{lagrangian, maximize, LagrangianResult, OptimizerConfig, CERTIFY_TOLERANCE};
pub use polynomial::{LagrangePolynomial, SimplexVector, Term};
