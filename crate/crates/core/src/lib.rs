//! Nonlocal Poisson brackets of hydrodynamic type.
//!
//! The crate represents brackets of the form
//!
//! ```text
//! {I, J} = ∫ δI/δu^i ( g^{ij} d/dx + b^{ij}_k u^k_x
//!          + Σ_α ε_α (w^α)^i_k u^k_x (d/dx)^{-1} (w^α)^j_s u^s_x ) δJ/δu^j dx
//! ```
//!
//! with polynomial coefficients over the rationals, checks the Poisson and
//! compatibility relations as exact polynomial identities, builds the
//! canonical pair compatible with a constant bracket `η^{ij} d/dx`, derives
//! the first flow of the associated bi-Hamiltonian hierarchy, and integrates
//! hierarchy flows pseudospectrally on the circle.
//!
//! Indices are 0-based throughout the API.

// Tensor code indexes several arrays with the same loop variables.
#![allow(clippy::needless_range_loop)]

pub mod bracket;
pub mod compat;
pub mod error;
pub mod exactalg;
pub mod hierarchy;
pub mod report;
pub mod simulator;

pub use error::{Error, Result};
pub use report::{RelationId, Residual, Violation, ViolationReport};
