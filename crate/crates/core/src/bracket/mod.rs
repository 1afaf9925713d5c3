//! Bracket data model, the Poisson relations and the pointwise geometry of
//! the metric.

mod geometry;
mod poisson;
mod sampling;

pub use geometry::{check_ferapontov_conditions, classify_geometry, mf_bracket, Classification, GeometryReport};
pub use poisson::check_poisson;
pub use sampling::{nondegenerate_points, SamplePoints};

use num::{One, Signed};

use crate::error::{check_dim, Result};
use crate::exactalg::{Poly, Rational};

pub type PolyMatrix = Vec<Vec<Poly>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(s: i64) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn of(r: &Rational) -> Sign {
        if r.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_rational(self) -> Rational {
        Rational::from_integer(self.as_i64().into())
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// One nonlocal term `weight · ε · w u_x (d/dx)^{-1} w u_x`.
///
/// `weight` is an extra positive rational multiplier so that pencils stay
/// inside the rationals; it is 1 for brackets read off canonical data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tail {
    pub sign: Sign,
    pub weight: Rational,
    /// `affinor[i][j] = (w)^i_j`.
    pub affinor: PolyMatrix,
}

impl Tail {
    pub fn new(sign: Sign, affinor: PolyMatrix) -> Tail {
        Tail { sign, weight: Rational::one(), affinor }
    }

    /// `ε · weight`, the factor the tail contributes to every relation.
    pub fn coefficient(&self) -> Rational {
        self.sign.as_rational() * &self.weight
    }
}

/// Coefficients `g^{ij}`, `b^{ij}_k` and tails of a nonlocal bracket of
/// hydrodynamic type in `N` field variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HydroBracket {
    nvars: usize,
    /// `metric[i][j] = g^{ij}`.
    metric: PolyMatrix,
    /// `conn[i][j][k] = b^{ij}_k`.
    conn: Vec<PolyMatrix>,
    tails: Vec<Tail>,
}

impl HydroBracket {
    pub fn new(metric: PolyMatrix, conn: Vec<PolyMatrix>, tails: Vec<Tail>) -> Result<Self> {
        let n = metric.len();
        if n == 0 {
            return Err(crate::Error::InvalidArgument("bracket needs at least one field".into()));
        }
        check_square(&metric, n, "metric")?;
        check_dim("connection first index", n, conn.len())?;
        for slab in &conn {
            check_dim("connection second index", n, slab.len())?;
            for row in slab {
                check_dim("connection lower index", n, row.len())?;
                for p in row {
                    check_dim("connection variable count", n, p.nvars())?;
                }
            }
        }
        for t in &tails {
            check_square(&t.affinor, n, "affinor")?;
            if !t.weight.is_positive() {
                return Err(crate::Error::InvalidArgument("tail weight must be positive".into()));
            }
        }
        Ok(HydroBracket { nvars: n, metric, conn, tails })
    }

    /// Local bracket with zero connection and constant metric.
    pub fn constant(eta: &[Vec<Rational>]) -> Result<Self> {
        let n = eta.len();
        let metric = eta.iter().map(|row| row.iter().map(|v| Poly::constant(n, v.clone())).collect()).collect();
        Self::new(metric, zero_conn(n), Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn metric(&self) -> &PolyMatrix {
        &self.metric
    }

    pub fn conn(&self) -> &[PolyMatrix] {
        &self.conn
    }

    pub fn tails(&self) -> &[Tail] {
        &self.tails
    }

    pub fn g(&self, i: usize, j: usize) -> &Poly {
        &self.metric[i][j]
    }

    pub fn b(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.conn[i][j][k]
    }

    pub fn is_local(&self) -> bool {
        self.tails.is_empty()
    }

    /// Same bracket with the sign of tail `alpha` flipped.
    pub fn with_flipped_sign(&self, alpha: usize) -> HydroBracket {
        let mut out = self.clone();
        out.tails[alpha].sign = out.tails[alpha].sign.flipped();
        out
    }
}

fn check_square(m: &PolyMatrix, n: usize, what: &'static str) -> Result<()> {
    check_dim(what, n, m.len())?;
    for row in m {
        check_dim(what, n, row.len())?;
        for p in row {
            check_dim("polynomial variable count", n, p.nvars())?;
        }
    }
    Ok(())
}

pub fn zero_matrix(n: usize) -> PolyMatrix {
    vec![vec![Poly::zero(n); n]; n]
}

pub fn zero_conn(n: usize) -> Vec<PolyMatrix> {
    vec![zero_matrix(n); n]
}

pub fn identity_matrix(n: usize) -> PolyMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Poly::one(n) } else { Poly::zero(n) }).collect()).collect()
}

pub fn scale_matrix(m: &PolyMatrix, c: &Rational) -> PolyMatrix {
    m.iter().map(|r| r.iter().map(|p| p.scale(c)).collect()).collect()
}
