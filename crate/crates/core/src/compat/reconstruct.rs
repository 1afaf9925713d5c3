use num::{One, Zero};

use super::canonical::canonical_bracket;
use super::data::{CanonicalData, ConstantBracket};
use crate::bracket::{scale_matrix, HydroBracket, PolyMatrix, Sign, Tail};
use crate::error::{check_dim, Error, Result};
use crate::exactalg::{fmt_rational, one_form_potential, rat, rational_sqrt, Poly, Rational};

/// Every intermediate potential met while integrating a compatible bracket
/// back to its canonical data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialChain {
    /// `phi[α][i] = (φ^α)^i`, with `∂_k (φ^α)^i = (w^α)^i_k`.
    pub phi: Vec<Vec<Poly>>,
    /// `a[i][j][k] = A^{ij}_k = b^{ij}_k - Σ ε_α φ^i ∂_k φ^j`.
    pub a: Vec<PolyMatrix>,
    /// `∂_k P^{ij} = A^{ij}_k`.
    pub p: PolyMatrix,
    /// Symmetric constant gauge, half of `g - Σ ε φφ - P - Pᵀ`.
    pub c: Vec<Vec<Rational>>,
    /// `R^{ij} = P^{ij} + c^{ij}`.
    pub r: PolyMatrix,
    pub psi: Vec<Poly>,
    pub f: Vec<Poly>,
    pub signs: Vec<Sign>,
}

impl PotentialChain {
    pub fn canonical_data(&self, eta: &ConstantBracket) -> CanonicalData {
        CanonicalData::new(eta.clone(), self.f.clone(), self.psi.clone(), self.signs.clone())
            .expect("chain dimensions match eta")
    }
}

fn stage(name: &'static str) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::NotExact { k, l, residual, .. } => Error::NotExact { stage: name, k, l, residual },
        other => other,
    }
}

/// Rewrites every tail to weight 1 by absorbing `√weight` into the affinor.
fn unit_weight_tails(b: &HydroBracket) -> Result<Vec<Tail>> {
    b.tails()
        .iter()
        .map(|t| {
            if t.weight.is_one() {
                return Ok(t.clone());
            }
            let c = rational_sqrt(&t.weight).ok_or_else(|| Error::NonSquareWeight(fmt_rational(&t.weight)))?;
            Ok(Tail::new(t.sign, scale_matrix(&t.affinor, &c)))
        })
        .collect()
}

/// Integrates a bracket compatible with `η` back to potentials `F`, `ψ`.
///
/// Integration constants are fixed by vanishing at the origin and the
/// constant gauge is split evenly, `c = S/2`. The result is checked to
/// reproduce `b` exactly.
pub fn reconstruct_potentials(b: &HydroBracket, eta: &ConstantBracket) -> Result<PotentialChain> {
    let n = eta.nvars();
    check_dim("bracket dimension", n, b.nvars())?;
    let tails = unit_weight_tails(b)?;
    let signs: Vec<Sign> = tails.iter().map(|t| t.sign).collect();
    let eps: Vec<Rational> = signs.iter().map(|s| s.as_rational()).collect();

    let phi: Vec<Vec<Poly>> = tails
        .iter()
        .map(|t| t.affinor.iter().map(|row| one_form_potential(row)).collect::<Result<_>>())
        .collect::<Result<_>>()
        .map_err(stage("phi"))?;
    let dphi: Vec<Vec<Vec<Poly>>> = phi.iter().map(|ph| ph.iter().map(Poly::gradient).collect()).collect();

    let mut a = vec![vec![vec![Poly::zero(n); n]; n]; n];
    for (i, ai) in a.iter_mut().enumerate() {
        for (j, aij) in ai.iter_mut().enumerate() {
            for (k, aijk) in aij.iter_mut().enumerate() {
                let mut v = b.b(i, j, k).clone();
                for al in 0..tails.len() {
                    v -= &(&phi[al][i] * &dphi[al][j][k]).scale(&eps[al]);
                }
                *aijk = v;
            }
        }
    }
    let p: PolyMatrix = a
        .iter()
        .map(|ai| ai.iter().map(|aij| one_form_potential(aij)).collect::<Result<_>>())
        .collect::<Result<_>>()
        .map_err(stage("P"))?;

    let half = rat(1, 2);
    let mut c = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = &(b.g(i, j) - &p[i][j]) - &p[j][i];
            for al in 0..tails.len() {
                s -= &(&phi[al][i] * &phi[al][j]).scale(&eps[al]);
            }
            if !s.is_constant() {
                let residual = &s - &Poly::constant(n, s.constant_term());
                return Err(Error::NonConstantGauge { i, j, residual });
            }
            c[i][j] = s.constant_term() * &half;
        }
    }
    let r: PolyMatrix =
        (0..n).map(|i| (0..n).map(|j| &p[i][j] + &Poly::constant(n, c[i][j].clone())).collect()).collect();

    let psi: Vec<Poly> =
        phi.iter().map(|ph| one_form_potential(&eta.lower_index(ph))).collect::<Result<_>>().map_err(stage("psi"))?;
    let dpsi: Vec<Vec<Poly>> = psi.iter().map(Poly::gradient).collect();
    // ηψ[α][k] = η^{kp} ∂_p ψ^α
    let raised: Vec<Vec<Poly>> = dpsi.iter().map(|d| eta.raise(d)).collect();

    let mut f = Vec::with_capacity(n);
    for k in 0..n {
        // ∂_l F^k = η_{lj} R^{jk} + η^{kp} Σ ε ψ_l ψ_p
        let col: Vec<Poly> = (0..n).map(|j| r[j][k].clone()).collect();
        let mut form = eta.lower_index(&col);
        for (l, fl) in form.iter_mut().enumerate() {
            for al in 0..tails.len() {
                *fl += &(&dpsi[al][l] * &raised[al][k]).scale(&eps[al]);
            }
        }
        f.push(one_form_potential(&form).map_err(stage("F"))?);
    }

    let chain = PotentialChain { phi, a, p, c, r, psi, f, signs };
    let rebuilt = canonical_bracket(&chain.canonical_data(eta));
    let target = HydroBracket::new(b.metric().clone(), b.conn().to_vec(), tails)?;
    if rebuilt != target {
        return Err(Error::ReconstructionMismatch);
    }
    Ok(chain)
}
