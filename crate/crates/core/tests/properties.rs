use proptest::prelude::*;

use pencil_core::bracket::{check_poisson, classify_geometry, nondegenerate_points, Classification, Sign};
use pencil_core::compat::{
    build_pencil, canonical_bracket, check_integrability, compatibility_relations, reconstruct_potentials,
    CanonicalData, ConstantBracket, PencilWeights,
};
use pencil_core::exactalg::{
    eval_jet, int, jet_mat_mul, matrix_inverse_jet, one_form_potential, rat, Jet, Poly, Rational,
};
use pencil_core::report::RelationId;
use pencil_core::simulator::{spectral_dx, spectral_dx_inv, Grid};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

/// Random polynomial in `n` variables of total degree at most `deg`.
fn poly(n: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((small_rational(), prop::collection::vec(0..=deg, n)), 0..=max_terms).prop_map(move |terms| {
        let terms = terms.into_iter().filter(|(_, e)| e.iter().sum::<u32>() <= deg);
        Poly::from_terms(n, terms).unwrap()
    })
}

/// Polynomial without constant or linear part.
fn gauge_poly(n: usize, deg: u32) -> impl Strategy<Value = Poly> {
    poly(n, deg, 5).prop_map(move |p| {
        let terms: Vec<_> =
            p.terms().filter(|(e, _)| e.iter().sum::<u32>() >= 2).map(|(e, c)| (c.clone(), e.clone())).collect();
        Poly::from_terms(n, terms).unwrap()
    })
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

fn nonzero_eta() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(int(1)), Just(int(-1)), Just(int(2)), Just(rat(1, 3))]
}

/// Arbitrary scalar canonical data; every such instance is valid.
fn scalar_data() -> impl Strategy<Value = CanonicalData> {
    (nonzero_eta(), gauge_poly(1, 3), prop::collection::vec((gauge_poly(1, 3), sign()), 0..=2)).prop_map(
        |(eta, f, tails)| {
            let (psi, signs) = tails.into_iter().unzip();
            CanonicalData::new(ConstantBracket::new(vec![vec![eta]]).unwrap(), vec![f], psi, signs).unwrap()
        },
    )
}

/// Arbitrary two-field data with identity `η`; usually not integrable.
fn pair_data() -> impl Strategy<Value = CanonicalData> {
    (gauge_poly(2, 3), gauge_poly(2, 3), prop::option::of((gauge_poly(2, 3), sign()))).prop_map(|(f1, f2, tail)| {
        let (psi, signs) = tail.map(|(p, s)| (vec![p], vec![s])).unwrap_or_default();
        CanonicalData::new(ConstantBracket::identity(2), vec![f1, f2], psi, signs).unwrap()
    })
}

fn univariate(n: usize, k: usize) -> impl Strategy<Value = Poly> {
    gauge_poly(1, 3).prop_map(move |p| p.embed(n, k))
}

/// Two-field direct sums: each potential depends on one field only and `η`
/// is diagonal, which always solves the integrability system.
fn direct_sum_data() -> impl Strategy<Value = CanonicalData> {
    (
        nonzero_eta(),
        nonzero_eta(),
        univariate(2, 0),
        univariate(2, 1),
        prop::collection::vec((any::<bool>(), gauge_poly(1, 3), sign()), 0..=2),
    )
        .prop_map(|(e1, e2, f1, f2, tails)| {
            let eta = ConstantBracket::new(vec![vec![e1, int(0)], vec![int(0), e2]]).unwrap();
            let (psi, signs) = tails.into_iter().map(|(first, p, s)| (p.embed(2, usize::from(!first)), s)).unzip();
            CanonicalData::new(eta, vec![f1, f2], psi, signs).unwrap()
        })
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partials_commute(p in poly(3, 4, 8), k in 0usize..3, l in 0usize..3) {
        prop_assert_eq!(p.partial(k).partial(l), p.partial(l).partial(k));
    }

    #[test]
    fn gradient_integrates_back(p in poly(3, 4, 8)) {
        let shifted = &p - &Poly::constant(3, p.constant_term());
        prop_assert_eq!(one_form_potential(&p.gradient()).unwrap(), shifted);
    }

    #[test]
    fn jet_of_product_is_product_of_jets(a in poly(2, 3, 5), b in poly(2, 3, 5), pt in point(2)) {
        let lhs = eval_jet(&(&a * &b), &pt, 3).unwrap();
        let rhs = &eval_jet(&a, &pt, 3).unwrap() * &eval_jet(&b, &pt, 3).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_jet_is_inverse(p in poly(2, 2, 4), q in poly(2, 2, 4), r in poly(2, 2, 4), pt in point(2)) {
        // symmetric metric, shifted to be nondegenerate at the origin
        let g = [vec![&p + &Poly::constant(2, int(5)), q.clone()], vec![q.clone(), &r - &Poly::constant(2, int(5))]];
        let jets: Vec<Vec<Jet>> = g.iter().map(|row| row.iter().map(|e| eval_jet(e, &pt, 2).unwrap()).collect()).collect();
        if let Ok(inv) = matrix_inverse_jet(&jets) {
            let prod = jet_mat_mul(&jets, &inv);
            for (i, row) in prod.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    let expect = Jet::constant(2, 2, if i == j { int(1) } else { int(0) });
                    prop_assert_eq!(e, &expect);
                }
            }
        }
    }

    #[test]
    fn scalar_canonical_brackets_are_poisson(d in scalar_data()) {
        prop_assert!(check_integrability(&d).is_empty());
        let b = canonical_bracket(&d);
        prop_assert!(check_poisson(&b).is_empty());
        prop_assert!(compatibility_relations(&d.eta, &b).unwrap().is_empty());
    }

    #[test]
    fn scalar_round_trip(d in scalar_data()) {
        prop_assume!(d.psi.iter().all(|p| !p.is_zero()));
        let b = canonical_bracket(&d);
        let chain = reconstruct_potentials(&b, &d.eta).unwrap();
        prop_assert_eq!(canonical_bracket(&chain.canonical_data(&d.eta)), b);
        prop_assert_eq!(chain.f, d.f);
        prop_assert_eq!(chain.psi, d.psi);
    }

    #[test]
    fn scalar_pencils_stay_poisson(d in scalar_data(), l2 in prop_oneof![Just(-2i64), Just(-1), Just(1), Just(3)]) {
        let b = canonical_bracket(&d);
        let p = build_pencil(&b, &d.eta, &PencilWeights::new(int(1), int(l2))).unwrap();
        prop_assert!(check_poisson(&p).is_empty());
    }

    #[test]
    fn integrability_matches_poisson(d in pair_data()) {
        let i = check_integrability(&d).is_empty();
        let p = check_poisson(&canonical_bracket(&d)).is_empty();
        prop_assert_eq!(i, p);
    }

    #[test]
    fn direct_sums_are_valid(d in direct_sum_data(), l2 in prop_oneof![Just(-2i64), Just(-1), Just(1), Just(3)]) {
        prop_assert!(check_integrability(&d).is_empty());
        let b = canonical_bracket(&d);
        prop_assert!(check_poisson(&b).is_empty());
        let rep = compatibility_relations(&d.eta, &b).unwrap();
        prop_assert!(rep.is_empty(), "{}", rep);
        let p = build_pencil(&b, &d.eta, &PencilWeights::new(int(1), int(l2))).unwrap();
        prop_assert!(check_poisson(&p).is_empty());
        prop_assume!(d.psi.iter().all(|p| !p.is_zero()));
        let chain = reconstruct_potentials(&b, &d.eta).unwrap();
        prop_assert_eq!(chain.f, d.f);
        prop_assert_eq!(chain.psi, d.psi);
    }

    #[test]
    fn bw_follows_from_first_relations_for_poisson_brackets(
        d in prop_oneof![pair_data(), direct_sum_data()],
        extra in prop::option::of((gauge_poly(2, 2), 0usize..2, 0usize..2, 0usize..2)),
    ) {
        // optionally disturb one connection coefficient
        let b = canonical_bracket(&d);
        let b = match extra {
            Some((p, i, j, k)) => {
                let mut conn = b.conn().to_vec();
                conn[i][j][k] = &conn[i][j][k] + &p;
                pencil_core::bracket::HydroBracket::new(b.metric().clone(), conn, b.tails().to_vec()).unwrap()
            }
            None => b,
        };
        prop_assume!(check_poisson(&b).is_empty());
        let rep = compatibility_relations(&d.eta, &b).unwrap();
        let first = rep.filtered(&[RelationId::C1, RelationId::C2, RelationId::C3]);
        if first.is_empty() {
            prop_assert!(!rep.has(RelationId::Bw));
        }
    }

    #[test]
    fn dx_inv_undoes_dx_up_to_mean(coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..12), c0 in -1.0f64..1.0) {
        let grid = Grid::new(64).unwrap();
        let f = grid.sample(|x| {
            coeffs.iter().enumerate().fold(c0, |acc, (k, (a, b))| {
                let k = (k + 1) as f64;
                acc + a * (k * x).cos() + b * (k * x).sin()
            })
        });
        let back = spectral_dx_inv(&grid, &spectral_dx(&grid, &f)).unwrap();
        let mean = grid.mean(&f);
        for (x, y) in back.iter().zip(&f) {
            prop_assert!((x - (y - mean)).abs() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn local_poisson_brackets_are_flat(d in scalar_data().prop_filter("local", |d| d.psi.is_empty())) {
        let b = canonical_bracket(&d);
        for pt in nondegenerate_points(&b, 3, 5) {
            let g = classify_geometry(&b, &pt).unwrap();
            prop_assert!(g.levi_civita_holds());
            prop_assert_eq!(g.classification, Classification::Flat);
        }
    }
}
