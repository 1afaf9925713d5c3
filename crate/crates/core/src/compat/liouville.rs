use super::canonical::canonical_bracket;
use super::data::ConstantBracket;
use super::reconstruct::{reconstruct_potentials, PotentialChain};
use super::relations::compatibility_relations;
use crate::bracket::{HydroBracket, PolyMatrix, Sign, Tail};
use crate::error::{Error, Result};
use crate::exactalg::Poly;
use crate::report::ViolationReport;

/// `Φ^{ij} = η^{is} ∂_s F^j` and `(φ^α)^i = η^{is} ∂_s ψ^α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiouvilleForm {
    pub phi_matrix: PolyMatrix,
    pub phi: Vec<Vec<Poly>>,
    pub signs: Vec<Sign>,
    pub chain: PotentialChain,
}

impl LiouvilleForm {
    /// The bracket written through `Φ` and `φ`:
    /// `g = Φ + Φᵀ - Σ ε φφ`, `b^{ij}_k = ∂_k Φ^{ij} - Σ ε ∂_k φ^i φ^j`,
    /// `w^i_k = ∂_k φ^i`.
    pub fn bracket(&self) -> HydroBracket {
        let n = self.phi_matrix.len();
        let phi = &self.phi;
        let eps: Vec<_> = self.signs.iter().map(|s| s.as_rational()).collect();
        let metric = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut g = &self.phi_matrix[i][j] + &self.phi_matrix[j][i];
                        for (a, e) in eps.iter().enumerate() {
                            g -= &(&phi[a][i] * &phi[a][j]).scale(e);
                        }
                        g
                    })
                    .collect()
            })
            .collect();
        let conn = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| {
                                let mut v = self.phi_matrix[i][j].partial(k);
                                for (a, e) in eps.iter().enumerate() {
                                    v -= &(&phi[a][i].partial(k) * &phi[a][j]).scale(e);
                                }
                                v
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let tails =
            self.signs.iter().zip(phi).map(|(s, ph)| Tail::new(*s, ph.iter().map(Poly::gradient).collect())).collect();
        HydroBracket::new(metric, conn, tails).expect("Liouville form dimensions")
    }
}

#[derive(Debug, Clone)]
pub struct SpecialLiouville {
    pub holds: bool,
    /// Failed compatibility relations when `holds` is false.
    pub report: ViolationReport,
    pub form: Option<LiouvilleForm>,
}

/// Decides whether `b` has the special Liouville form relative to `η`, which
/// happens exactly when `b` is compatible with `η`. On success the
/// Liouville functions are emitted.
pub fn check_special_liouville(b: &HydroBracket, eta: &ConstantBracket) -> Result<SpecialLiouville> {
    let report = compatibility_relations(eta, b)?;
    if !report.is_empty() {
        return Ok(SpecialLiouville { holds: false, report, form: None });
    }
    let chain = reconstruct_potentials(b, eta)?;
    let n = eta.nvars();
    let grad_f: Vec<Vec<Poly>> = chain.f.iter().map(Poly::gradient).collect();
    let raised: Vec<Vec<Poly>> = grad_f.iter().map(|g| eta.raise(g)).collect();
    let phi_matrix = (0..n).map(|i| (0..n).map(|j| raised[j][i].clone()).collect()).collect();
    let phi = chain.psi.iter().map(|p| eta.raise(&p.gradient())).collect();
    let form = LiouvilleForm { phi_matrix, phi, signs: chain.signs.clone(), chain };
    if form.bracket() != canonical_bracket(&form.chain.canonical_data(eta)) {
        return Err(Error::ReconstructionMismatch);
    }
    Ok(SpecialLiouville { holds: true, report, form: Some(form) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compat::CanonicalData;
    use crate::exactalg::{int, rat};
    use crate::report::RelationId;

    #[test]
    fn canonical_scalar_holds() {
        let u = Poly::var(1, 0);
        let d = CanonicalData::new(
            ConstantBracket::identity(1),
            vec![u.pow(3).scale(&rat(1, 3))],
            vec![u.pow(2).scale(&rat(1, 2))],
            vec![Sign::Minus],
        )
        .unwrap();
        let b = canonical_bracket(&d);
        let out = check_special_liouville(&b, &d.eta).unwrap();
        assert!(out.holds);
        let form = out.form.unwrap();
        assert_eq!(form.phi_matrix, vec![vec![u.pow(2)]]);
        assert_eq!(form.bracket(), b);
    }

    #[test]
    fn constant_bracket_holds() {
        let eta = ConstantBracket::new(vec![vec![int(2), int(0)], vec![int(0), int(-1)]]).unwrap();
        let out = check_special_liouville(&eta.as_bracket(), &eta).unwrap();
        assert!(out.holds);
        let phi = out.form.unwrap().phi_matrix;
        assert_eq!(phi[0][0], Poly::constant(2, int(1)));
        assert_eq!(phi[1][1], Poly::constant(2, rat(-1, 2)));
    }

    #[test]
    fn breaking_relation_1_is_pinpointed() {
        // b^{11}_2 = 1 alone: η^{2s} b^{11}_s = 0 vs η^{1s} b^{21}_s = 0, but
        // (1) at (i, j, k) = (1, 2, 1) reads b^{21}_1 = b^{11}_2
        let mut conn = crate::bracket::zero_conn(2);
        conn[0][0][1] = Poly::one(2);
        let b = HydroBracket::new(crate::bracket::identity_matrix(2), conn, vec![]).unwrap();
        let out = check_special_liouville(&b, &ConstantBracket::identity(2)).unwrap();
        assert!(!out.holds);
        assert!(out.report.has(RelationId::C1));
        assert_eq!(out.report.filtered(&[RelationId::C1]).entries()[0].indices, vec![0, 1, 0]);
    }
}
