//! Polynomials in `(u, u_x)`: `2N` variables with `u^k` at index `k` and
//! `u^k_x` at index `N + k`.

use crate::bracket::HydroBracket;
use crate::error::Result;
use crate::exactalg::{one_form_potential, Poly};

/// `p(u)` viewed in the `(u, u_x)` ring.
pub fn lift(p: &Poly) -> Poly {
    p.embed(2 * p.nvars(), 0)
}

/// `u^k_x` in the ring over `n` fields.
pub fn ux(n: usize, k: usize) -> Poly {
    Poly::var(2 * n, n + k)
}

/// `d/dx p(u) = ∂_k p · u^k_x`.
pub fn total_dx(p: &Poly) -> Poly {
    let n = p.nvars();
    let mut out = Poly::zero(2 * n);
    for k in 0..n {
        out += &(&lift(&p.partial(k)) * &ux(n, k));
    }
    out
}

/// `c_s(u) u^s_x` in the `(u, u_x)` ring.
pub fn contract_ux(c: &[Poly]) -> Poly {
    let n = c.len();
    let mut out = Poly::zero(2 * n);
    for (s, cs) in c.iter().enumerate() {
        out += &(&lift(cs) * &ux(n, s));
    }
    out
}

/// `P₁ ξ` for a covector `ξ_j(u)`, exactly. Each nonlocal integrand
/// `w^j_s ξ_j u^s_x` must be the x-derivative of a polynomial; its
/// antiderivative is taken to vanish at `u = 0`.
pub fn apply_operator(b: &HydroBracket, xi: &[Poly]) -> Result<Vec<Poly>> {
    let n = b.nvars();
    let dxi: Vec<Vec<Poly>> = xi.iter().map(Poly::gradient).collect();
    let mut potentials = Vec::with_capacity(b.tails().len());
    for t in b.tails() {
        let c: Vec<Poly> = (0..n)
            .map(|s| {
                let mut acc = Poly::zero(n);
                for (j, xj) in xi.iter().enumerate() {
                    acc += &(&t.affinor[j][s] * xj);
                }
                acc
            })
            .collect();
        potentials.push(one_form_potential(&c)?);
    }
    Ok((0..n).map(|i| operator_row(b, xi, &dxi, &potentials, i)).collect())
}

/// Row `i` of `P₁ ξ` given the tail antiderivatives.
pub(crate) fn operator_row(b: &HydroBracket, xi: &[Poly], dxi: &[Vec<Poly>], potentials: &[Poly], i: usize) -> Poly {
    let n = b.nvars();
    // coefficient of u^k_x
    let coeffs: Vec<Poly> = (0..n)
        .map(|k| {
            let mut a = Poly::zero(n);
            for j in 0..n {
                a += &(b.g(i, j) * &dxi[j][k]);
                a += &(b.b(i, j, k) * &xi[j]);
            }
            for (t, pot) in b.tails().iter().zip(potentials) {
                a += &(&t.affinor[i][k] * pot).scale(&t.coefficient());
            }
            a
        })
        .collect();
    contract_ux(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    #[test]
    fn chain_rule() {
        let u = Poly::var(1, 0);
        // d/dx u^3 = 3 u^2 u_x
        let expect = &lift(&u.pow(2).scale(&int(3))) * &ux(1, 0);
        assert_eq!(total_dx(&u.pow(3)), expect);
    }

    #[test]
    fn constant_operator_on_linear_covector() {
        let eta = crate::compat::ConstantBracket::identity(2);
        let xi: Vec<Poly> = (0..2).map(|k| Poly::var(2, k)).collect();
        let out = apply_operator(&eta.as_bracket(), &xi).unwrap();
        assert_eq!(out, vec![ux(2, 0), ux(2, 1)]);
    }
}
