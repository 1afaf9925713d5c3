//! Christoffel symbols and curvature of the contravariant metric at a
//! rational sample point.
//!
//! Curvature convention: with `Γ^a_{bc} = ½ g^{am}(∂_b g_{mc} + ∂_c g_{mb} - ∂_m g_{bc})`
//! and `R^a_{bcd} = ∂_c Γ^a_{db} - ∂_d Γ^a_{cb} + Γ^a_{ce} Γ^e_{db} - Γ^a_{de} Γ^e_{cb}`,
//! the tensor compared against the affinors is
//!
//! ```text
//! R^{ij}_{kl} = g^{is} R^j_{skl}
//! ```
//!
//! For this choice the metric `g^{ij} = δ^{ij} - u^i u^j` (a patch of the unit
//! sphere) satisfies `R^{ij}_{kl} = δ^i_l δ^j_k - δ^j_l δ^i_k` exactly, which
//! is the Gauss relation with the single affinor `w = Id`, `ε = +1`.

use num::Zero;

use super::{identity_matrix, HydroBracket, PolyMatrix, Sign, Tail};
use crate::error::{check_dim, Error, Result};
use crate::exactalg::{eval_jet, fmt_rational, matrix_inverse_jet, rational_sqrt, Jet, JetMatrix, Poly, Rational};
use crate::report::{RelationId, Residual, ViolationReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Flat,
    ConstantCurvature(Rational),
    General,
}

#[derive(Debug, Clone)]
pub struct GeometryReport {
    pub point: Vec<Rational>,
    /// `christoffel[j][s][k] = Γ^j_{sk}` as order-1 jets.
    pub christoffel: Vec<Vec<Vec<Jet>>>,
    /// `curvature[i][j][k][l] = R^{ij}_{kl}`.
    pub curvature: Vec<Vec<Vec<Vec<Rational>>>>,
    pub classification: Classification,
    /// `levi_civita_residual[i][j][k] = b^{ij}_k + g^{is} Γ^j_{sk}`.
    pub levi_civita_residual: Vec<Vec<Vec<Rational>>>,
}

impl GeometryReport {
    pub fn levi_civita_holds(&self) -> bool {
        self.levi_civita_residual.iter().flatten().flatten().all(Zero::is_zero)
    }
}

struct PointGeometry {
    upper: JetMatrix,
    gamma: Vec<Vec<Vec<Jet>>>,
    riemann: Vec<Vec<Vec<Vec<Rational>>>>,
}

fn metric_jets(b: &HydroBracket, point: &[Rational], order: usize) -> Result<JetMatrix> {
    check_dim("sample point length", b.nvars(), point.len())?;
    b.metric().iter().map(|row| row.iter().map(|p| eval_jet(p, point, order)).collect()).collect()
}

fn pointwise(b: &HydroBracket, point: &[Rational]) -> Result<PointGeometry> {
    let n = b.nvars();
    let upper = metric_jets(b, point, 2)?;
    let lower = matrix_inverse_jet(&upper)?;
    let half = Rational::new(1.into(), 2.into());

    // Γ^a_{bc}, order 1
    let mut gamma = vec![vec![vec![Jet::zero(n, 1); n]; n]; n];
    for bi in 0..n {
        for c in 0..n {
            // first-kind symbols [bc, m]
            let first: Vec<Jet> = (0..n)
                .map(|m| {
                    let s = &lower[m][c].derivative(bi) + &lower[m][bi].derivative(c);
                    &s - &lower[bi][c].derivative(m)
                })
                .collect();
            for a in 0..n {
                let mut acc = Jet::zero(n, 1);
                for (m, f) in first.iter().enumerate() {
                    acc = &acc + &(&upper[a][m] * f);
                }
                gamma[a][bi][c] = acc.scale(&half);
            }
        }
    }

    // R^a_{bcd}
    let mut riemann = vec![vec![vec![vec![Rational::zero(); n]; n]; n]; n];
    for a in 0..n {
        for bi in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut v = gamma[a][d][bi].get(&[c]) - gamma[a][c][bi].get(&[d]);
                    for e in 0..n {
                        v += gamma[a][c][e].value() * gamma[e][d][bi].value();
                        v -= gamma[a][d][e].value() * gamma[e][c][bi].value();
                    }
                    riemann[a][bi][c][d] = v;
                }
            }
        }
    }
    Ok(PointGeometry { upper, gamma, riemann })
}

fn raised_curvature(geo: &PointGeometry, n: usize) -> Vec<Vec<Vec<Vec<Rational>>>> {
    let mut r = vec![vec![vec![vec![Rational::zero(); n]; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut v = Rational::zero();
                    for s in 0..n {
                        v += geo.upper[i][s].value() * &geo.riemann[j][s][k][l];
                    }
                    r[i][j][k][l] = v;
                }
            }
        }
    }
    r
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// `δ^i_l δ^j_k - δ^j_l δ^i_k`.
fn unit_pattern(i: usize, j: usize, k: usize, l: usize) -> Rational {
    Rational::from_integer((delta(i, l) * delta(j, k) - delta(j, l) * delta(i, k)).into())
}

/// Christoffel symbols, curvature and Levi-Civita residual at `point`, with
/// a flat / constant-curvature / general classification.
pub fn classify_geometry(b: &HydroBracket, point: &[Rational]) -> Result<GeometryReport> {
    let n = b.nvars();
    let geo = pointwise(b, point)?;
    let curvature = raised_curvature(&geo, n);

    let all_zero = curvature.iter().flatten().flatten().flatten().all(Zero::is_zero);
    let classification = if all_zero {
        Classification::Flat
    } else {
        let k = curvature[0][1][1][0].clone();
        let mut constant = true;
        'outer: for i in 0..n {
            for j in 0..n {
                for kk in 0..n {
                    for l in 0..n {
                        if curvature[i][j][kk][l] != &k * unit_pattern(i, j, kk, l) {
                            constant = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if constant {
            Classification::ConstantCurvature(k)
        } else {
            Classification::General
        }
    };

    let mut lc = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut v = b.b(i, j, k).eval(point);
                for s in 0..n {
                    v += geo.upper[i][s].value() * geo.gamma[j][s][k].value();
                }
                lc[i][j][k] = v;
            }
        }
    }

    Ok(GeometryReport {
        point: point.to_vec(),
        christoffel: geo.gamma,
        curvature,
        classification,
        levi_civita_residual: lc,
    })
}

/// Affinor symmetry, commutativity, Codazzi-type symmetry of `∇w` and the
/// Gauss relation.
///
/// `peter1` (symmetry of `g_{ik} w^k_j`) is checked symbolically in its
/// equivalent contravariant form `w^i_s g^{sj} = w^j_s g^{si}`, as is
/// commutativity of the affinors. `peter2` and `gauss` need the covariant
/// metric and are checked with exact jets at `point`.
pub fn check_ferapontov_conditions(b: &HydroBracket, point: &[Rational]) -> Result<ViolationReport> {
    let n = b.nvars();
    let geo = pointwise(b, point)?;
    let curvature = raised_curvature(&geo, n);
    let tails = b.tails();
    let mut rep = ViolationReport::new();

    for (a, t) in tails.iter().enumerate() {
        let w = &t.affinor;
        for i in 0..n {
            for j in i + 1..n {
                let mut r = Poly::zero(n);
                for s in 0..n {
                    r += &(&w[i][s] * b.g(s, j));
                    r -= &(&w[j][s] * b.g(s, i));
                }
                rep.record_poly(RelationId::Peter1, vec![a, i, j], r);
            }
        }
    }

    for a in 0..tails.len() {
        for c in a + 1..tails.len() {
            let (wa, wc) = (&tails[a].affinor, &tails[c].affinor);
            for i in 0..n {
                for j in 0..n {
                    let mut r = Poly::zero(n);
                    for s in 0..n {
                        r += &(&wa[i][s] * &wc[s][j]);
                        r -= &(&wc[i][s] * &wa[s][j]);
                    }
                    rep.record_poly(RelationId::Commute, vec![a, c, i, j], r);
                }
            }
        }
    }

    // affinor jets of order 1 at the point
    let wj: Vec<Vec<Vec<Jet>>> = tails
        .iter()
        .map(|t| {
            t.affinor
                .iter()
                .map(|row| row.iter().map(|p| eval_jet(p, point, 1)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    for (a, w) in wj.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    // ∇_k w^i_j - ∇_j w^i_k; the Γ^s_{kj} terms cancel
                    let mut v = w[i][j].get(&[k]) - w[i][k].get(&[j]);
                    for s in 0..n {
                        v += geo.gamma[i][k][s].value() * w[s][j].value();
                        v -= geo.gamma[i][j][s].value() * w[s][k].value();
                    }
                    rep.record(RelationId::Peter2, vec![a, i, j, k], Residual::Point(v));
                }
            }
        }
    }

    let coeffs: Vec<Rational> = tails.iter().map(Tail::coefficient).collect();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for l in k + 1..n {
                    let mut v = curvature[i][j][k][l].clone();
                    for (w, c) in wj.iter().zip(&coeffs) {
                        let pat = w[i][l].value() * w[j][k].value() - w[j][l].value() * w[i][k].value();
                        v -= c * pat;
                    }
                    rep.record(RelationId::Gauss, vec![i, j, k, l], Residual::Point(v));
                }
            }
        }
    }
    Ok(rep)
}

/// The constant-curvature bracket with tail `K u_x (d/dx)^{-1} u_x`, written
/// as a single tail `ε c² ` with `w = c·Id`, `ε = sign K`.
pub fn mf_bracket(metric: PolyMatrix, conn: Vec<PolyMatrix>, k: &Rational) -> Result<HydroBracket> {
    let n = metric.len();
    if k.is_zero() {
        return HydroBracket::new(metric, conn, Vec::new());
    }
    let mag = num::Signed::abs(k);
    let c = rational_sqrt(&mag).ok_or_else(|| Error::NonSquareCurvature(fmt_rational(&mag)))?;
    let affinor = super::scale_matrix(&identity_matrix(n), &c);
    HydroBracket::new(metric, conn, vec![Tail::new(Sign::of(k), affinor)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{identity, int, rat};

    fn flat_bracket(n: usize) -> HydroBracket {
        HydroBracket::constant(&identity(n)).unwrap()
    }

    /// `g^{ij} = δ^{ij} - u^i u^j`, `b^{ij}_k = -δ^{ik} u^j`, tail `(+1, Id)`.
    fn sphere_patch() -> HydroBracket {
        let n = 2;
        let u: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
        let metric = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let d = if i == j { Poly::one(n) } else { Poly::zero(n) };
                        &d - &(&u[i] * &u[j])
                    })
                    .collect()
            })
            .collect();
        let conn = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| if i == k { -&u[j] } else { Poly::zero(n) }).collect()).collect())
            .collect();
        HydroBracket::new(metric, conn, vec![Tail::new(Sign::Plus, identity_matrix(n))]).unwrap()
    }

    #[test]
    fn constant_metric_is_flat() {
        let b = flat_bracket(3);
        let rep = classify_geometry(&b, &[rat(1, 2), int(-1), rat(2, 3)]).unwrap();
        assert_eq!(rep.classification, Classification::Flat);
        assert!(rep.levi_civita_holds());
        assert!(check_ferapontov_conditions(&b, &[int(0), int(0), int(0)]).unwrap().is_empty());
    }

    #[test]
    fn one_dimensional_metric_is_flat() {
        let u = Poly::var(1, 0);
        let b = HydroBracket::new(vec![vec![u.scale(&int(2))]], vec![vec![vec![Poly::one(1)]]], vec![]).unwrap();
        let rep = classify_geometry(&b, &[int(3)]).unwrap();
        assert_eq!(rep.classification, Classification::Flat);
        assert!(rep.levi_civita_holds());
    }

    #[test]
    fn sphere_patch_has_unit_curvature() {
        let b = sphere_patch();
        let pt = [rat(1, 3), rat(1, 5)];
        let rep = classify_geometry(&b, &pt).unwrap();
        assert_eq!(rep.classification, Classification::ConstantCurvature(int(1)));
        assert!(rep.levi_civita_holds());
        assert!(check_ferapontov_conditions(&b, &pt).unwrap().is_empty());
    }

    #[test]
    fn flipped_sign_breaks_gauss() {
        let b = sphere_patch().with_flipped_sign(0);
        let rep = check_ferapontov_conditions(&b, &[rat(1, 3), rat(1, 5)]).unwrap();
        assert_eq!(rep.len(), 1);
        let v = &rep.entries()[0];
        assert_eq!(v.relation, RelationId::Gauss);
        assert_eq!(v.indices, vec![0, 1, 0, 1]);
        // R^{12}_{12} = -1 against +1 on the flipped side
        assert_eq!(v.residual, Residual::Point(int(-2)));
    }

    #[test]
    fn singular_point_is_rejected() {
        let b = sphere_patch();
        // det g = 1 - |u|^2 vanishes on the unit circle
        assert!(matches!(classify_geometry(&b, &[int(1), int(0)]), Err(Error::SingularMetric)));
        assert!(matches!(check_ferapontov_conditions(&b, &[int(0), int(1)]), Err(Error::SingularMetric)));
    }

    #[test]
    fn mf_tails() {
        let flat = flat_bracket(2);
        let (m, c) = (flat.metric().clone(), flat.conn().to_vec());
        assert!(mf_bracket(m.clone(), c.clone(), &int(0)).unwrap().is_local());
        let one = mf_bracket(m.clone(), c.clone(), &int(1)).unwrap();
        assert_eq!(one.tails()[0].sign, Sign::Plus);
        assert_eq!(one.tails()[0].affinor, identity_matrix(2));
        let four = mf_bracket(m.clone(), c.clone(), &int(4)).unwrap();
        assert_eq!(four.tails()[0].affinor, super::super::scale_matrix(&identity_matrix(2), &int(2)));
        let neg = mf_bracket(m.clone(), c.clone(), &rat(-1, 9)).unwrap();
        assert_eq!(neg.tails()[0].sign, Sign::Minus);
        assert!(matches!(mf_bracket(m, c, &int(2)), Err(Error::NonSquareCurvature(_))));
    }
}
