//! The first flow of the hierarchy generated by a canonical pair, its two
//! Hamiltonian forms and the involution of Casimirs and momentum.

pub mod jetring;

use crate::bracket::PolyMatrix;
use crate::compat::{canonical_bracket, check_integrability, CanonicalData};
use crate::error::{Error, Result};
use crate::exactalg::{one_form_potential, rat, Poly};
use crate::report::{RelationId, Residual, ViolationReport};
use jetring::{lift, operator_row, total_dx};

/// A density depending on `u` only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonianDensity {
    pub density: Poly,
}

impl HamiltonianDensity {
    pub fn new(density: Poly) -> Self {
        HamiltonianDensity { density }
    }
}

/// `δH/δu^j`, which for these densities is just the gradient.
pub fn variational_derivative(h: &HamiltonianDensity) -> Vec<Poly> {
    h.density.gradient()
}

/// `u_t = (V(u))_x` with `V^i_j = ∂V^i/∂u^j` and the densities of the two
/// Hamiltonians generating it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowSystem {
    pub flux: Vec<Poly>,
    pub char_matrix: PolyMatrix,
    /// `½ η_{jl} u^j u^l`
    pub h1_density: Poly,
    /// `η_{jk} F^k u^j - ½ Σ ε (ψ^α)²`
    pub h2_density: Poly,
}

/// `V^i = F^i + η^{is} η_{jr} ∂_s F^j u^r - η^{is} Σ ε ∂_s ψ · ψ`.
pub fn flow1(d: &CanonicalData) -> Result<FlowSystem> {
    let rep = check_integrability(d);
    if !rep.is_empty() {
        return Err(Error::NotIntegrable(rep));
    }
    Ok(flow1_unchecked(d))
}

pub(crate) fn flow1_unchecked(d: &CanonicalData) -> FlowSystem {
    let n = d.nvars();
    let eta = &d.eta;
    let u: Vec<Poly> = (0..n).map(|k| Poly::var(n, k)).collect();
    let u_low = eta.lower_index(&u);
    let eps: Vec<_> = d.signs.iter().map(|s| s.as_rational()).collect();

    let mut h1 = Poly::zero(n);
    for (uj, lj) in u.iter().zip(&u_low) {
        h1 += &(uj * lj);
    }
    let h1 = h1.scale(&rat(1, 2));

    let mut h2 = Poly::zero(n);
    for (fk, lk) in d.f.iter().zip(&u_low) {
        h2 += &(fk * lk);
    }
    for (p, e) in d.psi.iter().zip(&eps) {
        h2 -= &p.pow(2).scale(&(e * rat(1, 2)));
    }

    // t_s = η_{jr} ∂_s F^j u^r - Σ ε ψ_s ψ, then V = F + η t
    let t: Vec<Poly> = (0..n)
        .map(|s| {
            let mut acc = Poly::zero(n);
            for (fj, lj) in d.f.iter().zip(&u_low) {
                acc += &(&fj.partial(s) * lj);
            }
            for (p, e) in d.psi.iter().zip(&eps) {
                acc -= &(&p.partial(s) * p).scale(e);
            }
            acc
        })
        .collect();
    let flux: Vec<Poly> = d.f.iter().zip(eta.raise(&t)).map(|(f, v)| f + &v).collect();
    let char_matrix = flux.iter().map(Poly::gradient).collect();
    FlowSystem { flux, char_matrix, h1_density: h1, h2_density: h2 }
}

/// Checks both Hamiltonian representations of the flow exactly:
///
/// * `biham-a`: `η^{ij} ∂_j h₂ = V^i`, index `(i)`;
/// * `biham-b`: `P₁(η_{jl} u^l) = (V^i)_x`, index `(i)`, with the nonlocal
///   part resolved through `ψ_{,ls} u^s_x u^l = (ψ_{,l} u^l - ψ)_x`;
/// * `tail-exact`: that last identity itself, index `(α)`.
pub fn verify_bihamiltonian(d: &CanonicalData, f: &FlowSystem) -> ViolationReport {
    let n = d.nvars();
    let eta = &d.eta;
    let mut rep = ViolationReport::new();

    let grad_h2 = f.h2_density.gradient();
    for (i, (lhs, v)) in eta.raise(&grad_h2).iter().zip(&f.flux).enumerate() {
        rep.record_poly(RelationId::BihamA, vec![i], lhs - v);
    }

    let b = canonical_bracket(d);
    let u: Vec<Poly> = (0..n).map(|k| Poly::var(n, k)).collect();
    let xi = eta.lower_index(&u);
    let dxi: Vec<Vec<Poly>> = xi.iter().map(Poly::gradient).collect();

    let mut potentials = Vec::with_capacity(d.ntails());
    for (a, (psi, t)) in d.psi.iter().zip(b.tails()).enumerate() {
        let grad = psi.gradient();
        let mut pot = -psi.clone();
        for (g, uk) in grad.iter().zip(&u) {
            pot += &(g * uk);
        }
        // integrand w^j_s u^s_x ξ_j
        let mut integrand = Poly::zero(2 * n);
        for s in 0..n {
            let mut c = Poly::zero(n);
            for (j, xj) in xi.iter().enumerate() {
                c += &(&t.affinor[j][s] * xj);
            }
            integrand += &(&lift(&c) * &jetring::ux(n, s));
        }
        let r = &total_dx(&pot) - &integrand;
        if !r.is_zero() {
            rep.record(RelationId::TailExact, vec![a], Residual::Differential(r));
        }
        potentials.push(pot);
    }

    for (i, v) in f.flux.iter().enumerate() {
        let r = &operator_row(&b, &xi, &dxi, &potentials, i) - &total_dx(v);
        if !r.is_zero() {
            rep.record(RelationId::BihamB, vec![i], Residual::Differential(r));
        }
    }
    rep
}

/// Checks that `U^1..U^N` and `H₁` are pairwise in involution for `P₁`.
///
/// For densities of hydrodynamic type the integrand of `{A, B}₁` is
/// `a_k(u) u^k_x`; it integrates to zero on the circle iff `a` is a closed
/// one-form. Functionals are numbered `0..N-1` for `U^i` and `N` for `H₁`;
/// entries are `(A, B, k, l)` with residual `∂_l a_k - ∂_k a_l`. A nonlocal
/// integrand with no polynomial antiderivative goes under `tail-exact`
/// with the same index layout.
pub fn casimir_momentum_involution(d: &CanonicalData) -> Result<ViolationReport> {
    let rep = check_integrability(d);
    if !rep.is_empty() {
        return Err(Error::NotIntegrable(rep));
    }
    let n = d.nvars();
    let b = canonical_bracket(d);
    let u: Vec<Poly> = (0..n).map(|k| Poly::var(n, k)).collect();
    let mut grads: Vec<Vec<Poly>> =
        (0..n).map(|a| (0..n).map(|j| if j == a { Poly::one(n) } else { Poly::zero(n) }).collect()).collect();
    grads.push(d.eta.lower_index(&u));

    let mut out = ViolationReport::new();
    for (ia, xa) in grads.iter().enumerate() {
        for (ib, xb) in grads.iter().enumerate().skip(ia) {
            let dxb: Vec<Vec<Poly>> = xb.iter().map(Poly::gradient).collect();
            let mut potentials = Vec::with_capacity(b.tails().len());
            let mut exact = true;
            for t in b.tails() {
                let c: Vec<Poly> = (0..n)
                    .map(|s| {
                        let mut acc = Poly::zero(n);
                        for (j, xj) in xb.iter().enumerate() {
                            acc += &(&t.affinor[j][s] * xj);
                        }
                        acc
                    })
                    .collect();
                match one_form_potential(&c) {
                    Ok(p) => potentials.push(p),
                    Err(Error::NotExact { k, l, residual, .. }) => {
                        out.record_poly(RelationId::TailExact, vec![ia, ib, k, l], residual);
                        exact = false;
                    }
                    Err(e) => return Err(e),
                }
            }
            if !exact {
                continue;
            }
            // a_k: coefficient of u^k_x in ξ^A_i (P₁ ξ^B)^i
            let mut a: Vec<Poly> = vec![Poly::zero(n); n];
            for (i, xai) in xa.iter().enumerate() {
                if xai.is_zero() {
                    continue;
                }
                let row = operator_row(&b, xb, &dxb, &potentials, i);
                for (k, ak) in a.iter_mut().enumerate() {
                    *ak += &(xai * &ux_coefficient(&row, n, k));
                }
            }
            for k in 0..n {
                for l in k + 1..n {
                    out.record_poly(RelationId::Involution, vec![ia, ib, k, l], &a[k].partial(l) - &a[l].partial(k));
                }
            }
        }
    }
    Ok(out)
}

/// Coefficient of `u^k_x` in an expression linear in `u_x`, as a polynomial
/// in `u`.
fn ux_coefficient(p: &Poly, n: usize, k: usize) -> Poly {
    let terms = p.terms().filter_map(|(e, c)| {
        let linear = e[n + k] == 1 && e[n..].iter().sum::<u32>() == 1;
        linear.then(|| (c.clone(), e[..n].to_vec()))
    });
    Poly::from_terms(n, terms).expect("exponent length n")
}
