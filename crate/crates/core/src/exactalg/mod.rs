//! Exact rational polynomial algebra and pointwise derivative jets.

mod jet;
mod poly;
mod rational;

pub use jet::{eval_jet, jet_mat_mul, matrix_inverse_jet, Jet, JetMatrix, MAX_ORDER};
pub use poly::{field_names, one_form_potential, Exponents, F64Poly, Poly};
pub use rational::{
    determinant, fmt_rational, identity, int, invert, mat_mul, parse_rational, rat, rational_sqrt, to_f64, Rational,
};
