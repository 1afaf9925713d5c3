#![allow(dead_code)]

use pencil_core::bracket::Sign;
use pencil_core::compat::{CanonicalData, ConstantBracket};
use pencil_core::exactalg::{int, rat, Poly};

pub struct Entry {
    pub name: &'static str,
    pub data: CanonicalData,
}

fn v(n: usize, k: usize) -> Poly {
    Poly::var(n, k)
}

fn q(p: &Poly, a: i64, b: i64) -> Poly {
    p.scale(&rat(a, b))
}

fn diag(entries: &[i64]) -> ConstantBracket {
    let n = entries.len();
    ConstantBracket::new(
        (0..n).map(|i| (0..n).map(|j| if i == j { int(entries[i]) } else { int(0) }).collect()).collect(),
    )
    .unwrap()
}

fn half_identity(n: usize) -> Vec<Poly> {
    (0..n).map(|k| q(&v(n, k), 1, 2)).collect()
}

fn norm2(n: usize) -> Poly {
    (0..n).fold(Poly::zero(n), |acc, k| &acc + &v(n, k).pow(2))
}

fn entry(name: &'static str, eta: ConstantBracket, f: Vec<Poly>, psi: Vec<Poly>, signs: &[i64]) -> Entry {
    let signs = signs.iter().map(|s| Sign::from_i64(*s).unwrap()).collect();
    Entry { name, data: CanonicalData::new(eta, f, psi, signs).unwrap() }
}

/// Valid canonical data in the reconstruction gauge.
pub fn corpus() -> Vec<Entry> {
    let u = v(1, 0);
    let (a, b) = (v(2, 0), v(2, 1));
    let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
    vec![
        entry("n1-quadratic", diag(&[1]), vec![q(&u.pow(2), 1, 2)], vec![], &[]),
        entry("n1-psi-only", diag(&[1]), vec![Poly::zero(1)], vec![q(&u.pow(2), 1, 2)], &[1]),
        entry(
            "n1-eta2-cubic",
            diag(&[2]),
            vec![&q(&u.pow(3), 1, 3) - &q(&u.pow(2), 1, 4)],
            vec![q(&u.pow(3), 1, 6)],
            &[-1],
        ),
        entry(
            "n1-two-tails",
            diag(&[1]),
            vec![&q(&u.pow(2), 1, 2) + &u.pow(3)],
            vec![q(&u.pow(2), 1, 2), q(&u.pow(3), 1, 3)],
            &[1, -1],
        ),
        entry("n2-pair", diag(&[1, 1]), vec![q(&(&a.pow(2) + &b.pow(2)), 1, 2), &a * &b], vec![], &[]),
        entry("n2-disc-plus", diag(&[1, 1]), half_identity(2), vec![q(&norm2(2), 1, 2)], &[1]),
        entry("n2-disc-minus", diag(&[1, 1]), half_identity(2), vec![q(&norm2(2), 1, 2)], &[-1]),
        entry(
            "n2-direct-sum",
            diag(&[1, 2]),
            vec![&q(&a.pow(2), 1, 2) + &q(&a.pow(3), 1, 3), q(&b.pow(3), 1, 6)],
            vec![q(&a.pow(2), 1, 2), q(&b.pow(3), 1, 3)],
            &[1, -1],
        ),
        entry(
            "n2-light-cone",
            ConstantBracket::new(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap(),
            half_identity(2),
            vec![&a * &b],
            &[-1],
        ),
        entry("n3-sphere", diag(&[1, 1, 1]), half_identity(3), vec![q(&norm2(3), 1, 2)], &[1]),
        entry(
            "n3-diagonal-cubic",
            diag(&[1, 1, 1]),
            vec![q(&x.pow(3), 1, 3), q(&y.pow(3), 1, 3), &q(&z.pow(3), 1, 3) + &z.pow(2)],
            vec![],
            &[],
        ),
        entry("n3-two-tails", diag(&[1, 1, 1]), half_identity(3), vec![q(&norm2(3), 1, 2), norm2(3)], &[1, -1]),
    ]
}

/// Single-term perturbations of corpus entries, each breaking the
/// integrability system.
pub fn mutations() -> Vec<Entry> {
    let (a, b) = (v(2, 0), v(2, 1));
    let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
    let e2 = || diag(&[1, 1]);
    let e3 = || diag(&[1, 1, 1]);
    vec![
        entry("pair-F1-squared", e2(), vec![a.pow(2), &a * &b], vec![], &[]),
        entry(
            "pair-plus-a2b",
            e2(),
            vec![&q(&(&a.pow(2) + &b.pow(2)), 1, 2) + &(&a.pow(2) * &b), &a * &b],
            vec![],
            &[],
        ),
        entry("pair-F2-cubic", e2(), vec![q(&(&a.pow(2) + &b.pow(2)), 1, 2), &(&a * &b) + &b.pow(3)], vec![], &[]),
        entry("disc-psi-a2b", e2(), half_identity(2), vec![&q(&norm2(2), 1, 2) + &(&a.pow(2) * &b)], &[1]),
        entry("disc-F1-cubic", e2(), vec![&q(&a, 1, 2) + &a.pow(3), q(&b, 1, 2)], vec![q(&norm2(2), 1, 2)], &[1]),
        entry("disc-psi-a3", e2(), half_identity(2), vec![&q(&norm2(2), 1, 2) + &a.pow(3)], &[-1]),
        entry(
            "direct-sum-F2-ab",
            diag(&[1, 2]),
            vec![&q(&a.pow(2), 1, 2) + &q(&a.pow(3), 1, 3), &q(&b.pow(3), 1, 6) + &(&a * &b)],
            vec![q(&a.pow(2), 1, 2), q(&b.pow(3), 1, 3)],
            &[1, -1],
        ),
        entry(
            "direct-sum-psi2-a2b",
            diag(&[1, 2]),
            vec![&q(&a.pow(2), 1, 2) + &q(&a.pow(3), 1, 3), q(&b.pow(3), 1, 6)],
            vec![q(&a.pow(2), 1, 2), &q(&b.pow(3), 1, 3) + &(&a.pow(2) * &b)],
            &[1, -1],
        ),
        entry("sphere-psi-xy", e3(), half_identity(3), vec![&q(&norm2(3), 1, 2) + &(&x * &y)], &[1]),
        entry(
            "diagonal-F3-xz",
            e3(),
            vec![q(&x.pow(3), 1, 3), q(&y.pow(3), 1, 3), &(&q(&z.pow(3), 1, 3) + &z.pow(2)) + &(&x * &z)],
            vec![],
            &[],
        ),
        entry(
            "diagonal-F1-y2",
            e3(),
            vec![&q(&x.pow(3), 1, 3) + &y.pow(2), q(&y.pow(3), 1, 3), &q(&z.pow(3), 1, 3) + &z.pow(2)],
            vec![],
            &[],
        ),
        entry("two-tails-psi2-z3", e3(), half_identity(3), vec![q(&norm2(3), 1, 2), &norm2(3) + &z.pow(3)], &[1, -1]),
    ]
}
