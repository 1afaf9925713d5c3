use num::Zero;

use super::data::CanonicalData;
use crate::bracket::{HydroBracket, PolyMatrix, Tail};
use crate::exactalg::Poly;
use crate::report::{RelationId, ViolationReport};

/// Reads off `g^{ij}`, `b^{ij}_k` and the tails of the canonical bracket
/// compatible with `η^{ij} d/dx`:
///
/// ```text
/// g^{ij}   = η^{is} ∂_s F^j + η^{js} ∂_s F^i - Σ_α ε_α φ^i φ^j
/// b^{ij}_k = η^{is} ∂_s ∂_k F^j - Σ_α ε_α ∂_k φ^i φ^j
/// w^i_k    = ∂_k φ^i,     φ^i = η^{is} ∂_s ψ
/// ```
///
/// No validity check is performed.
pub fn canonical_bracket(d: &CanonicalData) -> HydroBracket {
    let n = d.nvars();
    let eta = &d.eta;
    // m[i][j] = η^{is} ∂_s F^j
    let grad_f: Vec<Vec<Poly>> = d.f.iter().map(Poly::gradient).collect();
    let m: PolyMatrix = (0..n).map(|i| (0..n).map(|j| eta.raise(&grad_f[j])[i].clone()).collect()).collect();
    let phi = d.phi();
    let dphi: Vec<Vec<Vec<Poly>>> = phi.iter().map(|ph| ph.iter().map(Poly::gradient).collect()).collect();

    let mut metric = vec![vec![Poly::zero(n); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut g = &m[i][j] + &m[j][i];
            for (a, s) in d.signs.iter().enumerate() {
                g -= &(&phi[a][i] * &phi[a][j]).scale(&s.as_rational());
            }
            metric[i][j] = g;
        }
    }

    let mut conn = vec![vec![vec![Poly::zero(n); n]; n]; n];
    for (i, mi) in m.iter().enumerate() {
        for j in 0..n {
            for k in 0..n {
                let mut b = mi[j].partial(k);
                for (a, s) in d.signs.iter().enumerate() {
                    b -= &(&dphi[a][i][k] * &phi[a][j]).scale(&s.as_rational());
                }
                conn[i][j][k] = b;
            }
        }
    }

    let tails = d.signs.iter().zip(&dphi).map(|(s, dp)| Tail::new(*s, dp.clone())).collect();
    HydroBracket::new(metric, conn, tails).expect("canonical bracket dimensions")
}

/// Checks the quadratic system on the Hessians of the potentials whose
/// solutions are exactly the canonical data producing a Poisson bracket:
///
/// * `ass1`: `H(Q₁) η H(Q₂) = H(Q₂) η H(Q₁)` for every pair of potentials,
/// * `ass2`: `g^{is} η^{jr} ∂_r∂_s Q` symmetric in `(i, j)` for every potential.
///
/// Potentials are numbered `F^1..F^N` then `ψ^1..ψ^L`. Index tuples:
/// `ass1` → `(q₁, q₂, i, j)`, `ass2` → `(q, i, j)`.
pub fn check_integrability(d: &CanonicalData) -> ViolationReport {
    let n = d.nvars();
    let eta = &d.eta;
    let hessians: Vec<PolyMatrix> = d.potentials().map(Poly::hessian).collect();
    // hη[q] = H(Q_q) η
    let h_eta: Vec<PolyMatrix> = hessians.iter().map(|h| mat_const(h, eta.upper(), n)).collect();
    let mut rep = ViolationReport::new();

    for q1 in 0..hessians.len() {
        for q2 in q1 + 1..hessians.len() {
            let ab = mat_mul(&h_eta[q1], &hessians[q2], n);
            let ba = mat_mul(&h_eta[q2], &hessians[q1], n);
            // the difference is antisymmetric; upper triangle suffices
            for i in 0..n {
                for j in i + 1..n {
                    rep.record_poly(RelationId::Ass1, vec![q1, q2, i, j], &ab[i][j] - &ba[i][j]);
                }
            }
        }
    }

    let g = canonical_bracket(d);
    for (q, h) in hessians.iter().enumerate() {
        // t[i][j] = g^{is} η^{jr} H_{rs} = (g (ηH)^T)^{ij}
        let eta_h = const_mat(eta.upper(), h, n);
        let t: PolyMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = Poly::zero(n);
                        for s in 0..n {
                            acc += &(g.g(i, s) * &eta_h[j][s]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                rep.record_poly(RelationId::Ass2, vec![q, i, j], &t[i][j] - &t[j][i]);
            }
        }
    }
    rep
}

fn mat_mul(a: &PolyMatrix, b: &PolyMatrix, n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Poly::zero(n);
                    for s in 0..n {
                        acc += &(&a[i][s] * &b[s][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn mat_const(a: &PolyMatrix, c: &[Vec<crate::exactalg::Rational>], n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Poly::zero(n);
                    for s in 0..n {
                        if !c[s][j].is_zero() {
                            acc += &a[i][s].scale(&c[s][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn const_mat(c: &[Vec<crate::exactalg::Rational>], a: &PolyMatrix, n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Poly::zero(n);
                    for s in 0..n {
                        if !c[i][s].is_zero() {
                            acc += &a[s][j].scale(&c[i][s]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}
