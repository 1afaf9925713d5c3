use num::Zero;

use crate::bracket::{HydroBracket, Sign};
use crate::error::{check_dim, Error, Result};
use crate::exactalg::{invert, Poly, Rational};

/// The constant bracket `η^{ij} d/dx` together with `η_{ij}`, the inverse
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantBracket {
    upper: Vec<Vec<Rational>>,
    lower: Vec<Vec<Rational>>,
}

impl ConstantBracket {
    /// Validates symmetry and nondegeneracy of `η^{ij}`.
    pub fn new(upper: Vec<Vec<Rational>>) -> Result<Self> {
        let n = upper.len();
        if n == 0 {
            return Err(Error::InvalidArgument("eta must be non-empty".into()));
        }
        for row in &upper {
            check_dim("eta row length", n, row.len())?;
        }
        for i in 0..n {
            for j in i + 1..n {
                if upper[i][j] != upper[j][i] {
                    return Err(Error::InvalidArgument(format!("eta is not symmetric at ({i}, {j})")));
                }
            }
        }
        let lower = invert(&upper).ok_or_else(|| Error::InvalidArgument("eta is singular".into()))?;
        Ok(ConstantBracket { upper, lower })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(crate::exactalg::identity(n)).expect("identity is a valid eta")
    }

    pub fn nvars(&self) -> usize {
        self.upper.len()
    }

    /// `η^{ij}`
    pub fn upper(&self) -> &[Vec<Rational>] {
        &self.upper
    }

    /// `η_{ij}`
    pub fn lower(&self) -> &[Vec<Rational>] {
        &self.lower
    }

    pub fn up(&self, i: usize, j: usize) -> &Rational {
        &self.upper[i][j]
    }

    pub fn low(&self, i: usize, j: usize) -> &Rational {
        &self.lower[i][j]
    }

    pub fn as_bracket(&self) -> HydroBracket {
        HydroBracket::constant(&self.upper).expect("validated eta")
    }

    /// `η^{ij} v_j` for a covector of polynomials.
    pub fn raise(&self, v: &[Poly]) -> Vec<Poly> {
        contract(&self.upper, v)
    }

    /// `η_{ij} v^j`.
    pub fn lower_index(&self, v: &[Poly]) -> Vec<Poly> {
        contract(&self.lower, v)
    }
}

fn contract(m: &[Vec<Rational>], v: &[Poly]) -> Vec<Poly> {
    let n = m.len();
    let nv = v.first().map_or(n, Poly::nvars);
    (0..n)
        .map(|i| {
            let mut acc = Poly::zero(nv);
            for (j, vj) in v.iter().enumerate() {
                if !m[i][j].is_zero() {
                    acc += &vj.scale(&m[i][j]);
                }
            }
            acc
        })
        .collect()
}

/// Potentials `F^i`, `ψ^α` and signs `ε_α` of a canonical pair relative to a
/// constant bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalData {
    pub eta: ConstantBracket,
    pub f: Vec<Poly>,
    pub psi: Vec<Poly>,
    pub signs: Vec<Sign>,
}

impl CanonicalData {
    pub fn new(eta: ConstantBracket, f: Vec<Poly>, psi: Vec<Poly>, signs: Vec<Sign>) -> Result<Self> {
        let n = eta.nvars();
        check_dim("number of F potentials", n, f.len())?;
        check_dim("number of signs", psi.len(), signs.len())?;
        for p in f.iter().chain(&psi) {
            check_dim("potential variable count", n, p.nvars())?;
        }
        Ok(CanonicalData { eta, f, psi, signs })
    }

    pub fn nvars(&self) -> usize {
        self.eta.nvars()
    }

    pub fn ntails(&self) -> usize {
        self.psi.len()
    }

    /// `F^1..F^N` followed by `ψ^1..ψ^L`.
    pub fn potentials(&self) -> impl Iterator<Item = &Poly> {
        self.f.iter().chain(&self.psi)
    }

    /// `(φ^α)^i = η^{is} ∂ψ^α/∂u^s`.
    pub fn phi(&self) -> Vec<Vec<Poly>> {
        self.psi.iter().map(|p| self.eta.raise(&p.gradient())).collect()
    }

    /// Whether the data sits in the gauge fixed by potential reconstruction:
    /// `F(0) = 0`, `ψ(0) = 0`, `∇ψ(0) = 0` and `η^{is} ∂_s F^j (0)` symmetric.
    pub fn in_reconstruction_gauge(&self) -> bool {
        let n = self.nvars();
        let origin = vec![Rational::zero(); n];
        if self.f.iter().chain(&self.psi).any(|p| !p.constant_term().is_zero()) {
            return false;
        }
        if self.psi.iter().any(|p| p.gradient().iter().any(|d| !d.eval(&origin).is_zero())) {
            return false;
        }
        let grads: Vec<Vec<Rational>> =
            self.f.iter().map(|fj| fj.gradient().iter().map(|d| d.eval(&origin)).collect()).collect();
        // m[i][j] = η^{is} ∂_s F^j(0)
        let m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n).map(|j| (0..n).fold(Rational::zero(), |acc, s| acc + self.eta.up(i, s) * &grads[j][s])).collect()
            })
            .collect();
        (0..n).all(|i| (0..n).all(|j| m[i][j] == m[j][i]))
    }
}
