use super::data::ConstantBracket;
use crate::bracket::{check_poisson, HydroBracket};
use crate::error::{check_dim, Error, Result};
use crate::exactalg::Poly;
use crate::report::{RelationId, ViolationReport};

/// Relations `(1)`–`(5)` between `b` and the constant bracket `η`, plus the
/// consequence `(bw)`. Does not look at whether `b` itself is Poisson.
///
/// Index tuples: `1` → `(i, j, k)`, `2` → `(α, i, j)`, `3` → `(α, i, j, k)`,
/// `4` → `(α, i, j, k)`, `5` → `(j, k, r, s)`, `bw` → `(α, j, k, s)`.
pub fn compatibility_relations(eta: &ConstantBracket, b: &HydroBracket) -> Result<ViolationReport> {
    let n = eta.nvars();
    check_dim("bracket dimension", n, b.nvars())?;
    let e = |i: usize, j: usize| eta.up(i, j);
    let zero = || Poly::zero(n);
    let mut rep = ViolationReport::new();

    // (1) η^{is} b^{jk}_s = η^{js} b^{ik}_s
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut r = zero();
                for s in 0..n {
                    r += &b.b(j, k, s).scale(e(i, s));
                    r -= &b.b(i, k, s).scale(e(j, s));
                }
                rep.record_poly(RelationId::C1, vec![i, j, k], r);
            }
        }
    }

    let tails = b.tails();

    // (2) η^{is} w^j_s = η^{js} w^i_s
    for (a, t) in tails.iter().enumerate() {
        let w = &t.affinor;
        for i in 0..n {
            for j in i + 1..n {
                let mut r = zero();
                for s in 0..n {
                    r += &w[j][s].scale(e(i, s));
                    r -= &w[i][s].scale(e(j, s));
                }
                rep.record_poly(RelationId::C2, vec![a, i, j], r);
            }
        }
    }

    // (3) ∂_k w^i_j = ∂_j w^i_k
    for (a, t) in tails.iter().enumerate() {
        let w = &t.affinor;
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    rep.record_poly(RelationId::C3, vec![a, i, j, k], &w[i][j].partial(k) - &w[i][k].partial(j));
                }
            }
        }
    }

    // (4) η^{jr} b^{ik}_s w^s_r = η^{ir} b^{jk}_s w^s_r
    for (a, t) in tails.iter().enumerate() {
        let w = &t.affinor;
        // bw[i][k][r] = b^{ik}_s w^s_r
        let bw: Vec<Vec<Vec<Poly>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| {
                        (0..n)
                            .map(|r| {
                                let mut acc = zero();
                                for s in 0..n {
                                    acc += &(b.b(i, k, s) * &w[s][r]);
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let mut res = zero();
                    for r in 0..n {
                        res += &bw[i][k][r].scale(e(j, r));
                        res -= &bw[j][k][r].scale(e(i, r));
                    }
                    rep.record_poly(RelationId::C4, vec![a, i, j, k], res);
                }
            }
        }
    }

    // (5) ∂_s b^{jk}_r - ∂_r b^{jk}_s = Σ_α c_α (w^j_s w^k_r - w^j_r w^k_s)
    for j in 0..n {
        for k in 0..n {
            for r in 0..n {
                for s in r + 1..n {
                    let mut res = &b.b(j, k, r).partial(s) - &b.b(j, k, s).partial(r);
                    for t in tails {
                        let w = &t.affinor;
                        let wedge = &(&w[j][s] * &w[k][r]) - &(&w[j][r] * &w[k][s]);
                        res -= &wedge.scale(&t.coefficient());
                    }
                    rep.record_poly(RelationId::C5, vec![j, k, r, s], res);
                }
            }
        }
    }

    // (bw) b^{rk}_s w^j_r = b^{jk}_r w^r_s
    for (a, t) in tails.iter().enumerate() {
        let w = &t.affinor;
        for j in 0..n {
            for k in 0..n {
                for s in 0..n {
                    let mut res = zero();
                    for r in 0..n {
                        res += &(b.b(r, k, s) * &w[j][r]);
                        res -= &(b.b(j, k, r) * &w[r][s]);
                    }
                    rep.record_poly(RelationId::Bw, vec![a, j, k, s], res);
                }
            }
        }
    }
    Ok(rep)
}

/// Compatibility of a Poisson bracket `b` with `η^{ij} d/dx`. The report is
/// empty iff every pencil `b + λ η` is Poisson.
///
/// Fails with [`Error::NotPoisson`] when `b` is not Poisson to begin with.
pub fn check_compatibility(eta: &ConstantBracket, b: &HydroBracket) -> Result<ViolationReport> {
    check_dim("bracket dimension", eta.nvars(), b.nvars())?;
    let poisson = check_poisson(b);
    if !poisson.is_empty() {
        return Err(Error::NotPoisson(poisson));
    }
    compatibility_relations(eta, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::{Sign, Tail};
    use crate::compat::{canonical_bracket, CanonicalData};
    use crate::exactalg::{int, rat};

    #[test]
    fn scalar_local_example() {
        let u = Poly::var(1, 0);
        let b = HydroBracket::new(vec![vec![u.scale(&int(2))]], vec![vec![vec![Poly::one(1)]]], vec![]).unwrap();
        assert!(check_compatibility(&ConstantBracket::identity(1), &b).unwrap().is_empty());
    }

    #[test]
    fn canonical_sphere_is_compatible() {
        let (a, c) = (Poly::var(2, 0), Poly::var(2, 1));
        let d = CanonicalData::new(
            ConstantBracket::identity(2),
            vec![a.scale(&rat(1, 2)), c.scale(&rat(1, 2))],
            vec![(&a.pow(2) + &c.pow(2)).scale(&rat(1, 2))],
            vec![Sign::Plus],
        )
        .unwrap();
        let b = canonical_bracket(&d);
        assert!(check_compatibility(&d.eta, &b).unwrap().is_empty());
    }

    #[test]
    fn non_closed_affinor_breaks_3() {
        let a = Poly::var(2, 0);
        let w = vec![vec![Poly::zero(2), a.clone()], vec![Poly::zero(2), Poly::zero(2)]];
        let b = HydroBracket::new(
            crate::bracket::identity_matrix(2),
            crate::bracket::zero_conn(2),
            vec![Tail::new(Sign::Plus, w)],
        )
        .unwrap();
        let rep = compatibility_relations(&ConstantBracket::identity(2), &b).unwrap();
        let v = rep.entries().iter().find(|v| v.relation == RelationId::C3).unwrap();
        assert_eq!(v.indices, vec![0, 0, 0, 1]);
        assert!(check_compatibility(&ConstantBracket::identity(2), &b).is_err());
    }
}
