//! Pseudospectral evaluation of the operators on the circle and RK4
//! integration of the hierarchy flows with conservation monitors.
//!
//! `(d/dx)⁻¹` is the zero-mean antiderivative and refuses inputs whose mean
//! is not negligible.

mod grid;
mod integrate;
mod model;

pub use grid::{spectral_dx, spectral_dx_inv, spectral_dx_inv_tol, Grid, MEAN_TOL};
pub use integrate::{integrate, write_field_csv, ConservationSeries, FieldState, FourierSeries, Trajectory};
pub use model::{apply_p1, bracket_quadrature, recursion_apply, Field, SpectralModel};
