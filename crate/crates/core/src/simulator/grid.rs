use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Default relative tolerance on the mean for [`spectral_dx_inv`].
pub const MEAN_TOL: f64 = 1e-12;

/// `M` equispaced nodes `2πm/M` on the circle.
#[derive(Clone)]
pub struct Grid {
    m: usize,
    nodes: Vec<f64>,
    wavenumbers: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid").field("m", &self.m).finish()
    }
}

impl Grid {
    pub fn new(m: usize) -> Result<Grid> {
        if m < 16 || !m.is_power_of_two() {
            return Err(Error::InvalidGrid(m));
        }
        let nodes = (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect();
        let half = m / 2;
        let wavenumbers = (0..m)
            .map(|j| match j {
                j if j < half => j as f64,
                j if j == half => 0.0,
                j => j as f64 - m as f64,
            })
            .collect();
        let mut planner = FftPlanner::new();
        Ok(Grid { m, nodes, wavenumbers, forward: planner.plan_fft_forward(m), inverse: planner.plan_fft_inverse(m) })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Signed wavenumbers in FFT order; the Nyquist entry is 0.
    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.m as f64
    }

    /// `∫₀^{2π} f dx` by the periodic trapezoid rule.
    pub fn integral(&self, f: &[f64]) -> f64 {
        self.spacing() * f.iter().sum::<f64>()
    }

    pub fn mean(&self, f: &[f64]) -> f64 {
        f.iter().sum::<f64>() / self.m as f64
    }

    /// Samples `f` at the nodes.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes.iter().map(|&x| f(x)).collect()
    }

    fn transform(&self, f: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = f.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward.process(&mut buf);
        buf
    }

    fn back(&self, mut buf: Vec<Complex64>) -> Vec<f64> {
        self.inverse.process(&mut buf);
        let scale = 1.0 / self.m as f64;
        buf.into_iter().map(|c| c.re * scale).collect()
    }
}

/// Fourier derivative. The Nyquist mode is dropped.
pub fn spectral_dx(grid: &Grid, f: &[f64]) -> Vec<f64> {
    assert_eq!(f.len(), grid.len(), "field length must match the grid");
    let mut buf = grid.transform(f);
    for (c, &k) in buf.iter_mut().zip(&grid.wavenumbers) {
        *c *= Complex64::new(0.0, k);
    }
    grid.back(buf)
}

/// Zero-mean antiderivative with the default mean tolerance.
pub fn spectral_dx_inv(grid: &Grid, f: &[f64]) -> Result<Vec<f64>> {
    spectral_dx_inv_tol(grid, f, MEAN_TOL)
}

/// Zero-mean antiderivative. Refuses inputs with `|mean| > rel_tol · ‖f‖∞`.
pub fn spectral_dx_inv_tol(grid: &Grid, f: &[f64], rel_tol: f64) -> Result<Vec<f64>> {
    assert_eq!(f.len(), grid.len(), "field length must match the grid");
    let mean = grid.mean(f);
    let tol = rel_tol * f.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if mean.is_nan() || mean.abs() > tol {
        return Err(Error::NonZeroMean { mean, tol });
    }
    let mut buf = grid.transform(f);
    for (c, &k) in buf.iter_mut().zip(&grid.wavenumbers) {
        *c = if k == 0.0 { Complex64::new(0.0, 0.0) } else { *c / Complex64::new(0.0, k) };
    }
    Ok(grid.back(buf))
}
