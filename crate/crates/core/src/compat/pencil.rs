use num::{Signed, Zero};

use super::data::ConstantBracket;
use crate::bracket::{scale_matrix, HydroBracket, Tail};
use crate::error::{check_dim, Result};
use crate::exactalg::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilWeights {
    pub lambda1: Rational,
    pub lambda2: Rational,
}

impl PencilWeights {
    pub fn new(lambda1: Rational, lambda2: Rational) -> Self {
        PencilWeights { lambda1, lambda2 }
    }
}

/// `λ₁ b1 + λ₂ η`. Tails keep their affinors; `|λ₁|` goes into the weight and
/// the sign of `λ₁` into `ε`. With `λ₁ = 0` the tails vanish.
pub fn build_pencil(b1: &HydroBracket, eta: &ConstantBracket, w: &PencilWeights) -> Result<HydroBracket> {
    let n = b1.nvars();
    check_dim("bracket dimension", eta.nvars(), n)?;
    let (l1, l2) = (&w.lambda1, &w.lambda2);
    let metric = (0..n)
        .map(|i| (0..n).map(|j| &b1.g(i, j).scale(l1) + &Poly::constant(n, l2 * eta.up(i, j))).collect())
        .collect();
    let conn = b1.conn().iter().map(|m| scale_matrix(m, l1)).collect();
    let tails = if l1.is_zero() {
        Vec::new()
    } else {
        let flip = l1.is_negative();
        b1.tails()
            .iter()
            .map(|t| Tail {
                sign: if flip { t.sign.flipped() } else { t.sign },
                weight: &t.weight * l1.abs(),
                affinor: t.affinor.clone(),
            })
            .collect()
    };
    HydroBracket::new(metric, conn, tails)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::{check_poisson, Sign};
    use crate::exactalg::int;

    fn burgers() -> HydroBracket {
        let u = Poly::var(1, 0);
        HydroBracket::new(vec![vec![u.scale(&int(2))]], vec![vec![vec![Poly::one(1)]]], vec![]).unwrap()
    }

    #[test]
    fn trivial_weights() {
        let eta = ConstantBracket::identity(1);
        let b = burgers();
        assert_eq!(build_pencil(&b, &eta, &PencilWeights::new(int(1), int(0))).unwrap(), b);
        assert_eq!(build_pencil(&b, &eta, &PencilWeights::new(int(0), int(1))).unwrap(), eta.as_bracket());
    }

    #[test]
    fn shifted_metric_stays_poisson() {
        let eta = ConstantBracket::identity(1);
        let p = build_pencil(&burgers(), &eta, &PencilWeights::new(int(1), int(3))).unwrap();
        let u = Poly::var(1, 0);
        assert_eq!(p.g(0, 0), &(&u.scale(&int(2)) + &Poly::constant(1, int(3))));
        assert_eq!(p.b(0, 0, 0), &Poly::one(1));
        assert!(check_poisson(&p).is_empty());
    }

    #[test]
    fn negative_lambda_flips_tail_sign() {
        let u = Poly::var(1, 0);
        let b = HydroBracket::new(
            vec![vec![-u.pow(2)]],
            vec![vec![vec![-u.clone()]]],
            vec![Tail::new(Sign::Plus, vec![vec![Poly::one(1)]])],
        )
        .unwrap();
        let p = build_pencil(&b, &ConstantBracket::identity(1), &PencilWeights::new(int(-2), int(1))).unwrap();
        assert_eq!(p.tails()[0].sign, Sign::Minus);
        assert_eq!(p.tails()[0].weight, int(2));
        assert!(check_poisson(&p).is_empty());
    }
}
