//! Fluxes and second Hamiltonian densities computed independently from the
//! closed formulas and frozen here.

mod common;

use pencil_core::exactalg::{parse_rational, Poly};
use pencil_core::hierarchy::flow1;

fn poly(n: usize, terms: &[(&str, &[u32])]) -> Poly {
    Poly::from_terms(n, terms.iter().map(|(c, e)| (parse_rational(c).unwrap(), e.to_vec()))).unwrap()
}

fn find(name: &str) -> pencil_core::compat::CanonicalData {
    common::corpus().into_iter().find(|e| e.name == name).unwrap().data
}

#[test]
fn scalar_two_tails() {
    let f = flow1(&find("n1-two-tails")).unwrap();
    assert_eq!(f.flux, vec![poly(1, &[("3/2", &[2]), ("7/2", &[3]), ("1/3", &[5])])]);
    assert_eq!(f.h2_density, poly(1, &[("1/2", &[3]), ("7/8", &[4]), ("1/18", &[6])]));
}

#[test]
fn direct_sum() {
    let f = flow1(&find("n2-direct-sum")).unwrap();
    assert_eq!(
        f.flux,
        vec![poly(2, &[("3/2", &[2, 0]), ("5/6", &[3, 0])]), poly(2, &[("2/3", &[0, 3]), ("2/3", &[0, 5])]),]
    );
    assert_eq!(f.h2_density, poly(2, &[("1/12", &[0, 4]), ("1/18", &[0, 6]), ("1/2", &[3, 0]), ("5/24", &[4, 0])]));
}

#[test]
fn light_cone() {
    let f = flow1(&find("n2-light-cone")).unwrap();
    assert_eq!(f.flux, vec![poly(2, &[("1", &[1, 0]), ("1", &[2, 1])]), poly(2, &[("1", &[0, 1]), ("1", &[1, 2])])]);
    assert_eq!(f.h2_density, poly(2, &[("1", &[1, 1]), ("1/2", &[2, 2])]));
}

#[test]
fn three_field_two_tails() {
    let f = flow1(&find("n3-two-tails")).unwrap();
    assert_eq!(
        f.flux,
        vec![
            poly(3, &[("1", &[1, 0, 0]), ("3/2", &[1, 0, 2]), ("3/2", &[1, 2, 0]), ("3/2", &[3, 0, 0])]),
            poly(3, &[("1", &[0, 1, 0]), ("3/2", &[0, 1, 2]), ("3/2", &[0, 3, 0]), ("3/2", &[2, 1, 0])]),
            poly(3, &[("1", &[0, 0, 1]), ("3/2", &[0, 0, 3]), ("3/2", &[0, 2, 1]), ("3/2", &[2, 0, 1])]),
        ]
    );
    assert_eq!(
        f.h2_density,
        poly(
            3,
            &[
                ("1/2", &[0, 0, 2]),
                ("3/8", &[0, 0, 4]),
                ("1/2", &[0, 2, 0]),
                ("3/4", &[0, 2, 2]),
                ("3/8", &[0, 4, 0]),
                ("1/2", &[2, 0, 0]),
                ("3/4", &[2, 0, 2]),
                ("3/4", &[2, 2, 0]),
                ("3/8", &[4, 0, 0]),
            ]
        )
    );
}
