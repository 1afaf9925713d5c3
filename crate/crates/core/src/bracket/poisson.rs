use super::HydroBracket;
use crate::exactalg::Poly;
use crate::report::{RelationId, ViolationReport};

/// Checks the seven families of coefficient relations that are equivalent to
/// the bracket being Poisson. Every residual is an exact polynomial.
///
/// Index tuples in the report: `01`/`04` → `(i, j)` or `(α, i, j)`,
/// `02`/`03` → `(i, j, k)`, `05` → `(α, β, i, j)`, `06` → `(α, i, j, k)`,
/// `07` → `(i, j, k, r)`.
pub fn check_poisson(b: &HydroBracket) -> ViolationReport {
    let n = b.nvars();
    let mut rep = ViolationReport::new();
    let zero = || Poly::zero(n);

    // (01) g^{ij} = g^{ji}
    for i in 0..n {
        for j in i + 1..n {
            rep.record_poly(RelationId::P01, vec![i, j], b.g(i, j) - b.g(j, i));
        }
    }

    // (02) ∂_k g^{ij} = b^{ij}_k + b^{ji}_k
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = &(&b.g(i, j).partial(k) - b.b(i, j, k)) - b.b(j, i, k);
                rep.record_poly(RelationId::P02, vec![i, j, k], r);
            }
        }
    }

    // (03) g^{is} b^{jk}_s = g^{js} b^{ik}_s
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut r = zero();
                for s in 0..n {
                    r += &(b.g(i, s) * b.b(j, k, s));
                    r -= &(b.g(j, s) * b.b(i, k, s));
                }
                rep.record_poly(RelationId::P03, vec![i, j, k], r);
            }
        }
    }

    let tails = b.tails();

    // (04) g^{is} w^j_s = g^{js} w^i_s
    for (a, t) in tails.iter().enumerate() {
        let w = &t.affinor;
        for i in 0..n {
            for j in i + 1..n {
                let mut r = zero();
                for s in 0..n {
                    r += &(b.g(i, s) * &w[j][s]);
                    r -= &(b.g(j, s) * &w[i][s]);
                }
                rep.record_poly(RelationId::P04, vec![a, i, j], r);
            }
        }
    }

    // (05) [w^α, w^β] = 0
    for a in 0..tails.len() {
        for c in a + 1..tails.len() {
            let (wa, wb) = (&tails[a].affinor, &tails[c].affinor);
            for i in 0..n {
                for j in 0..n {
                    let mut r = zero();
                    for s in 0..n {
                        r += &(&wa[i][s] * &wb[s][j]);
                        r -= &(&wb[i][s] * &wa[s][j]);
                    }
                    rep.record_poly(RelationId::P05, vec![a, c, i, j], r);
                }
            }
        }
    }

    // (06) g^{is} g^{jr} ∂_s w^k_r - g^{jr} b^{ik}_s w^s_r  symmetric in (i, j)
    for (a, t) in tails.iter().enumerate() {
        let w = &t.affinor;
        let dw: Vec<Vec<Vec<Poly>>> = w.iter().map(|row| row.iter().map(|p| p.gradient()).collect()).collect();
        let side = |i: usize, j: usize, k: usize| {
            let mut acc = zero();
            for s in 0..n {
                for r in 0..n {
                    acc += &(&(b.g(i, s) * b.g(j, r)) * &dw[k][r][s]);
                    acc -= &(&(b.g(j, r) * b.b(i, k, s)) * &w[s][r]);
                }
            }
            acc
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    rep.record_poly(RelationId::P06, vec![a, i, j, k], &side(i, j, k) - &side(j, i, k));
                }
            }
        }
    }

    // (07) g^{is}(∂_s b^{jk}_r - ∂_r b^{jk}_s) + b^{ik}_s b^{sj}_r - b^{ij}_s b^{sk}_r
    //      = Σ_α c_α g^{is}(w^j_s w^k_r - w^j_r w^k_s)
    let coeffs: Vec<_> = tails.iter().map(|t| t.coefficient()).collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for r in 0..n {
                    let mut lhs = zero();
                    for s in 0..n {
                        let curl = &b.b(j, k, r).partial(s) - &b.b(j, k, s).partial(r);
                        lhs += &(b.g(i, s) * &curl);
                        lhs += &(b.b(i, k, s) * b.b(s, j, r));
                        lhs -= &(b.b(i, j, s) * b.b(s, k, r));
                    }
                    for (t, c) in tails.iter().zip(&coeffs) {
                        let w = &t.affinor;
                        let mut acc = zero();
                        for s in 0..n {
                            let wedge = &(&w[j][s] * &w[k][r]) - &(&w[j][r] * &w[k][s]);
                            acc += &(b.g(i, s) * &wedge);
                        }
                        lhs -= &acc.scale(c);
                    }
                    rep.record_poly(RelationId::P07, vec![i, j, k, r], lhs);
                }
            }
        }
    }
    rep
}
