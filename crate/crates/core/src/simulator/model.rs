use crate::compat::{canonical_bracket, CanonicalData};
use crate::error::{check_dim, Error, Result};
use crate::exactalg::{to_f64, F64Poly, Poly};
use crate::hierarchy::{flow1, HamiltonianDensity};

use super::grid::{spectral_dx, spectral_dx_inv, Grid};

/// `N × M` nodal values, one row per component.
pub type Field = Vec<Vec<f64>>;

struct NumTail {
    coefficient: f64,
    affinor: Vec<Vec<F64Poly>>,
}

/// Floating-point image of a canonical pair on a grid: both operators, the
/// recursion operator and the hierarchy flows.
pub struct SpectralModel {
    grid: Grid,
    n: usize,
    eta: Vec<Vec<f64>>,
    eta_low: Vec<Vec<f64>>,
    metric: Vec<Vec<F64Poly>>,
    conn: Vec<Vec<Vec<F64Poly>>>,
    tails: Vec<NumTail>,
    flux: Vec<F64Poly>,
    char_matrix: Vec<Vec<F64Poly>>,
    h1: F64Poly,
    h2: F64Poly,
}

fn to_f64_matrix(m: &[Vec<crate::exactalg::Rational>]) -> Vec<Vec<f64>> {
    m.iter().map(|r| r.iter().map(to_f64).collect()).collect()
}

fn num(m: &[Vec<Poly>]) -> Vec<Vec<F64Poly>> {
    m.iter().map(|r| r.iter().map(F64Poly::from).collect()).collect()
}

impl SpectralModel {
    /// Fails with `NotIntegrable` unless the data passes the integrability check.
    pub fn new(d: &CanonicalData, grid: Grid) -> Result<SpectralModel> {
        let flow = flow1(d)?;
        let b = canonical_bracket(d);
        Ok(SpectralModel {
            grid,
            n: d.nvars(),
            eta: to_f64_matrix(d.eta.upper()),
            eta_low: to_f64_matrix(d.eta.lower()),
            metric: num(b.metric()),
            conn: b.conn().iter().map(|m| num(m)).collect(),
            tails: b
                .tails()
                .iter()
                .map(|t| NumTail { coefficient: to_f64(&t.coefficient()), affinor: num(&t.affinor) })
                .collect(),
            flux: flow.flux.iter().map(F64Poly::from).collect(),
            char_matrix: num(&flow.char_matrix),
            h1: F64Poly::from(&flow.h1_density),
            h2: F64Poly::from(&flow.h2_density),
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    fn check_field(&self, f: &[Vec<f64>]) -> Result<()> {
        check_dim("field components", self.n, f.len())?;
        for row in f {
            check_dim("field nodes", self.grid.len(), row.len())?;
        }
        Ok(())
    }

    /// Values of `p(u)` at every node.
    pub fn eval_nodes(&self, p: &F64Poly, u: &[Vec<f64>]) -> Vec<f64> {
        let mut point = vec![0.0; self.n];
        (0..self.grid.len())
            .map(|m| {
                for (k, uk) in u.iter().enumerate() {
                    point[k] = uk[m];
                }
                p.eval(&point)
            })
            .collect()
    }

    fn dx_all(&self, f: &[Vec<f64>]) -> Field {
        f.iter().map(|r| spectral_dx(&self.grid, r)).collect()
    }

    /// `P₂ ξ = η^{ij} ξ_{j,x}`.
    pub fn apply_p2(&self, xi: &[Vec<f64>]) -> Result<Field> {
        self.check_field(xi)?;
        let dxi = self.dx_all(xi);
        Ok(self.contract_eta(&self.eta, &dxi))
    }

    fn contract_eta(&self, m: &[Vec<f64>], f: &[Vec<f64>]) -> Field {
        (0..self.n)
            .map(|i| (0..self.grid.len()).map(|node| (0..self.n).map(|j| m[i][j] * f[j][node]).sum()).collect())
            .collect()
    }

    /// `P₁ ξ` at the nodes, with zero-mean `(d/dx)⁻¹` in the tails.
    pub fn apply_p1(&self, u: &[Vec<f64>], xi: &[Vec<f64>]) -> Result<Field> {
        self.check_field(u)?;
        self.check_field(xi)?;
        let (n, m) = (self.n, self.grid.len());
        let ux = self.dx_all(u);
        let dxi = self.dx_all(xi);
        let g: Vec<Vec<Vec<f64>>> =
            self.metric.iter().map(|r| r.iter().map(|p| self.eval_nodes(p, u)).collect()).collect();
        let mut out = vec![vec![0.0; m]; n];
        for (i, oi) in out.iter_mut().enumerate() {
            for j in 0..n {
                for node in 0..m {
                    oi[node] += g[i][j][node] * dxi[j][node];
                }
                for k in 0..n {
                    let bijk = &self.conn[i][j][k];
                    if bijk.is_zero() {
                        continue;
                    }
                    let v = self.eval_nodes(bijk, u);
                    for node in 0..m {
                        oi[node] += v[node] * ux[k][node] * xi[j][node];
                    }
                }
            }
        }
        for t in &self.tails {
            let w: Vec<Vec<Vec<f64>>> =
                t.affinor.iter().map(|r| r.iter().map(|p| self.eval_nodes(p, u)).collect()).collect();
            // w^j_s u^s_x ξ_j
            let inner: Vec<f64> = (0..m)
                .map(|node| {
                    let mut acc = 0.0;
                    for j in 0..n {
                        for s in 0..n {
                            acc += w[j][s][node] * ux[s][node] * xi[j][node];
                        }
                    }
                    acc
                })
                .collect();
            let pot = spectral_dx_inv(&self.grid, &inner)?;
            for (i, oi) in out.iter_mut().enumerate() {
                for node in 0..m {
                    let wu: f64 = (0..n).map(|k| w[i][k][node] * ux[k][node]).sum();
                    oi[node] += t.coefficient * wu * pot[node];
                }
            }
        }
        Ok(out)
    }

    /// `R = P₁ ∘ P₂⁻¹`, with `P₂⁻¹ f = η_{jl} (d/dx)⁻¹ f^l`.
    pub fn recursion_apply(&self, u: &[Vec<f64>], flow: &[Vec<f64>]) -> Result<Field> {
        self.check_field(flow)?;
        let anti: Field = flow.iter().map(|r| spectral_dx_inv(&self.grid, r)).collect::<Result<_>>()?;
        let xi = self.contract_eta(&self.eta_low, &anti);
        self.apply_p1(u, &xi)
    }

    /// Right-hand side of the `n`-th flow: `(V)_x` for `n = 1`, then
    /// `R^{n-1}` applied to it.
    pub fn flow(&self, n: usize, u: &[Vec<f64>]) -> Result<Field> {
        if n == 0 {
            return Err(Error::InvalidArgument("flow index starts at 1".into()));
        }
        self.check_field(u)?;
        let flux: Field = self.flux.iter().map(|p| self.eval_nodes(p, u)).collect();
        let mut f = self.dx_all(&flux);
        for _ in 1..n {
            f = self.recursion_apply(u, &f)?;
        }
        Ok(f)
    }

    /// Nodal values of `½ η_{jl} u^j u^l`.
    pub fn h1_values(&self, u: &[Vec<f64>]) -> Vec<f64> {
        self.eval_nodes(&self.h1, u)
    }

    /// Nodal values of the second Hamiltonian density.
    pub fn h2_values(&self, u: &[Vec<f64>]) -> Vec<f64> {
        self.eval_nodes(&self.h2, u)
    }

    /// Largest row sum of `|V^i_j(u)|` over the grid, a bound on the
    /// characteristic speeds of the first flow.
    pub fn max_char_speed(&self, u: &[Vec<f64>]) -> f64 {
        let vals: Vec<Vec<Vec<f64>>> =
            self.char_matrix.iter().map(|r| r.iter().map(|p| self.eval_nodes(p, u)).collect()).collect();
        (0..self.grid.len())
            .map(|node| {
                (0..self.n).map(|i| (0..self.n).map(|j| vals[i][j][node].abs()).sum::<f64>()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    /// `{A, B} = ∫ δA/δu_i (P δB/δu)^i dx` with `P = P₁` or `P₂`.
    pub fn bracket_quadrature(
        &self,
        ha: &HamiltonianDensity,
        hb: &HamiltonianDensity,
        u: &[Vec<f64>],
        which: u8,
    ) -> Result<f64> {
        self.check_field(u)?;
        let grad = |h: &HamiltonianDensity| -> Field {
            h.density.gradient().iter().map(|p| self.eval_nodes(&F64Poly::from(p), u)).collect()
        };
        let (xa, xb) = (grad(ha), grad(hb));
        let image = match which {
            1 => self.apply_p1(u, &xb)?,
            2 => self.apply_p2(&xb)?,
            _ => return Err(Error::InvalidArgument(format!("operator index must be 1 or 2, got {which}"))),
        };
        let integrand: Vec<f64> =
            (0..self.grid.len()).map(|node| (0..self.n).map(|i| xa[i][node] * image[i][node]).sum()).collect();
        Ok(self.grid.integral(&integrand))
    }
}

/// One-shot form of [`SpectralModel::apply_p1`].
pub fn apply_p1(d: &CanonicalData, grid: &Grid, u: &[Vec<f64>], xi: &[Vec<f64>]) -> Result<Field> {
    SpectralModel::new(d, grid.clone())?.apply_p1(u, xi)
}

/// One-shot form of [`SpectralModel::recursion_apply`].
pub fn recursion_apply(d: &CanonicalData, grid: &Grid, u: &[Vec<f64>], flow: &[Vec<f64>]) -> Result<Field> {
    SpectralModel::new(d, grid.clone())?.recursion_apply(u, flow)
}

/// One-shot form of [`SpectralModel::bracket_quadrature`].
pub fn bracket_quadrature(
    d: &CanonicalData,
    grid: &Grid,
    ha: &HamiltonianDensity,
    hb: &HamiltonianDensity,
    u: &[Vec<f64>],
    which: u8,
) -> Result<f64> {
    SpectralModel::new(d, grid.clone())?.bracket_quadrature(ha, hb, u, which)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compat::ConstantBracket;
    use crate::exactalg::rat;

    fn burgers() -> CanonicalData {
        let u = Poly::var(1, 0);
        CanonicalData::new(ConstantBracket::identity(1), vec![u.pow(2).scale(&rat(1, 2))], vec![], vec![]).unwrap()
    }

    fn max_err(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn p1_on_momentum_gradient() {
        let grid = Grid::new(128).unwrap();
        let model = SpectralModel::new(&burgers(), grid.clone()).unwrap();
        let u = vec![grid.sample(|x| 0.3 * x.sin() + 0.1 * (2.0 * x).cos() + 0.2)];
        let out = model.apply_p1(&u, &u).unwrap();
        // (3u²/2)_x = 3 u u_x
        let ux = spectral_dx(&grid, &u[0]);
        let expect: Vec<f64> = u[0].iter().zip(&ux).map(|(a, b)| 3.0 * a * b).collect();
        assert!(max_err(&out[0], &expect) < 1e-12);
        assert!(model.apply_p1(&u, &[vec![0.0; 128]]).unwrap()[0].iter().all(|v| *v == 0.0));
    }

    #[test]
    fn translation_model_is_identity_recursion() {
        let grid = Grid::new(64).unwrap();
        let eta = ConstantBracket::identity(2);
        let f = (0..2).map(|k| Poly::var(2, k).scale(&rat(1, 2))).collect();
        let d = CanonicalData::new(eta, f, vec![], vec![]).unwrap();
        let model = SpectralModel::new(&d, grid.clone()).unwrap();
        let u = vec![grid.sample(f64::sin), grid.sample(|x| (3.0 * x).cos())];
        let ux: Field = u.iter().map(|r| spectral_dx(&grid, r)).collect();
        let once = model.recursion_apply(&u, &ux).unwrap();
        for k in 0..2 {
            assert!(max_err(&once[k], &ux[k]) < 1e-12);
        }
    }

    #[test]
    fn second_flow_matches_hand_oracle() {
        let grid = Grid::new(256).unwrap();
        let model = SpectralModel::new(&burgers(), grid.clone()).unwrap();
        let u = vec![grid.sample(|x| 0.1 * x.sin())];
        let f2 = model.flow(2, &u).unwrap();
        // (5u³/2)_x - mean(3u²/2) u_x with mean(3u²/2) = 0.0075
        let expect = grid.sample(|x| {
            let (s, c) = (0.1 * x.sin(), 0.1 * x.cos());
            7.5 * s * s * c - 0.0075 * c
        });
        assert!(max_err(&f2[0], &expect) < 1e-14);
    }
}
