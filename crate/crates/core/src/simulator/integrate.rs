use std::io::Write;

use crate::compat::CanonicalData;
use crate::error::{check_dim, Error, Result};

use super::grid::Grid;
use super::model::{Field, SpectralModel};

/// Nodal values of all components at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub values: Field,
    pub time: f64,
}

impl FieldState {
    pub fn new(values: Field, time: f64) -> Self {
        FieldState { values, time }
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().flatten().all(|v| v.is_finite())
    }
}

/// Truncated Fourier series `a0 + Σ_k (cos[k-1] cos kx + sin[k-1] sin kx)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FourierSeries {
    pub mean: f64,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl FourierSeries {
    pub fn sample(&self, grid: &Grid) -> Vec<f64> {
        grid.sample(|x| {
            let mut v = self.mean;
            for (k, c) in self.cos.iter().enumerate() {
                v += c * ((k + 1) as f64 * x).cos();
            }
            for (k, s) in self.sin.iter().enumerate() {
                v += s * ((k + 1) as f64 * x).sin();
            }
            v
        })
    }
}

/// Time series of `U^1..U^N`, `H₁`, `H₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConservationSeries {
    pub names: Vec<String>,
    pub times: Vec<f64>,
    /// `values[f][step]`.
    pub values: Vec<Vec<f64>>,
    /// `∫ |density(u0)| dx` for each functional, the floor used when the
    /// initial value itself is (close to) zero.
    pub scales: Vec<f64>,
}

impl ConservationSeries {
    fn new(model: &SpectralModel, u0: &FieldState) -> Self {
        let n = model.nvars();
        let mut names: Vec<String> = (1..=n).map(|i| format!("U{i}")).collect();
        names.push("H1".into());
        names.push("H2".into());
        let grid = model.grid();
        let abs = |v: Vec<f64>| grid.integral(&v.iter().map(|x| x.abs()).collect::<Vec<_>>());
        let mut scales: Vec<f64> = u0.values.iter().map(|r| abs(r.clone())).collect();
        scales.push(abs(model.h1_values(&u0.values)));
        scales.push(abs(model.h2_values(&u0.values)));
        ConservationSeries { names, times: Vec::new(), values: vec![Vec::new(); n + 2], scales }
    }

    fn push(&mut self, model: &SpectralModel, s: &FieldState) {
        let grid = model.grid();
        let mut vals: Vec<f64> = s.values.iter().map(|r| grid.integral(r)).collect();
        vals.push(grid.integral(&model.h1_values(&s.values)));
        vals.push(grid.integral(&model.h2_values(&s.values)));
        for (series, v) in self.values.iter_mut().zip(vals) {
            series.push(v);
        }
        self.times.push(s.time);
    }

    /// `max_t |I(t) - I(0)| / max(|I(0)|, ∫|density(u0)|)`.
    pub fn relative_drift(&self, f: usize) -> f64 {
        let v = &self.values[f];
        let Some(&first) = v.first() else { return 0.0 };
        let denom = first.abs().max(self.scales[f]);
        let worst = v.iter().map(|x| (x - first).abs()).fold(0.0, f64::max);
        if denom == 0.0 {
            worst
        } else {
            worst / denom
        }
    }

    /// Writes `step,time,U1..UN,H1,H2`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["step".to_string(), "time".to_string()];
        header.extend(self.names.iter().cloned());
        w.write_record(&header).map_err(csv_err)?;
        for (step, t) in self.times.iter().enumerate() {
            let mut row = vec![step.to_string(), t.to_string()];
            row.extend(self.values.iter().map(|s| format!("{:e}", s[step])));
            w.write_record(&row).map_err(csv_err)?;
        }
        w.flush().map_err(|e| Error::InvalidArgument(format!("csv output: {e}")))?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidArgument(format!("csv output: {e}"))
}

/// Writes one row per node: `x,u1..uN`.
pub fn write_field_csv<W: Write>(grid: &Grid, s: &FieldState, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["x".to_string()];
    header.extend((1..=s.values.len()).map(|i| format!("u{i}")));
    w.write_record(&header).map_err(csv_err)?;
    for (m, x) in grid.nodes().iter().enumerate() {
        let mut row = vec![x.to_string()];
        row.extend(s.values.iter().map(|r| format!("{:e}", r[m])));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::InvalidArgument(format!("csv output: {e}")))?;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub states: Vec<FieldState>,
    pub conservation: ConservationSeries,
}

impl Trajectory {
    pub fn last(&self) -> &FieldState {
        self.states.last().expect("trajectory holds the initial state")
    }
}

fn axpy(u: &[Vec<f64>], k: &[Vec<f64>], h: f64) -> Field {
    u.iter().zip(k).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + h * y).collect()).collect()
}

fn finite(f: &[Vec<f64>]) -> bool {
    f.iter().flatten().all(|v| v.is_finite())
}

impl SpectralModel {
    /// One classical Runge–Kutta step of flow `n`.
    pub fn rk4_step(&self, n: usize, u: &[Vec<f64>], dt: f64) -> Result<Field> {
        let non_finite = || Error::NonFinite { step: 0, time: f64::NAN };
        let rhs = |v: &[Vec<f64>]| if finite(v) { self.flow(n, v) } else { Err(non_finite()) };
        let k1 = rhs(u)?;
        let k2 = rhs(&axpy(u, &k1, dt / 2.0))?;
        let k3 = rhs(&axpy(u, &k2, dt / 2.0))?;
        let k4 = rhs(&axpy(u, &k3, dt))?;
        let next: Field = (0..u.len())
            .map(|i| {
                (0..u[i].len())
                    .map(|m| u[i][m] + dt / 6.0 * (k1[i][m] + 2.0 * k2[i][m] + 2.0 * k3[i][m] + k4[i][m]))
                    .collect()
            })
            .collect();
        if finite(&next) {
            Ok(next)
        } else {
            Err(non_finite())
        }
    }

    /// Integrates `u_t = flow_n(u)` for `steps` steps of size `dt`.
    pub fn integrate(&self, n: usize, u0: &FieldState, dt: f64, steps: usize) -> Result<Trajectory> {
        check_dim("initial state components", self.nvars(), u0.values.len())?;
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidArgument(format!("time step must be positive, got {dt}")));
        }
        if !u0.is_finite() {
            return Err(Error::NonFinite { step: 0, time: u0.time });
        }
        if n == 1 {
            let speed = self.max_char_speed(&u0.values);
            let bound = 0.5 * self.grid().spacing();
            if dt * speed > bound {
                log::warn!("dt * max speed = {:e} exceeds the advisory bound {:e}", dt * speed, bound);
            }
        }
        let mut series = ConservationSeries::new(self, u0);
        series.push(self, u0);
        let mut states = Vec::with_capacity(steps + 1);
        states.push(u0.clone());
        for step in 1..=steps {
            let prev = states.last().expect("non-empty");
            let time = u0.time + step as f64 * dt;
            let next = self.rk4_step(n, &prev.values, dt).map_err(|e| match e {
                Error::NonFinite { .. } => Error::NonFinite { step, time },
                other => other,
            })?;
            let s = FieldState::new(next, time);
            series.push(self, &s);
            states.push(s);
        }
        Ok(Trajectory { states, conservation: series })
    }
}

/// One-shot form of [`SpectralModel::integrate`].
pub fn integrate(
    d: &CanonicalData,
    grid: &Grid,
    n: usize,
    u0: &FieldState,
    dt: f64,
    steps: usize,
) -> Result<Trajectory> {
    SpectralModel::new(d, grid.clone())?.integrate(n, u0, dt, steps)
}
