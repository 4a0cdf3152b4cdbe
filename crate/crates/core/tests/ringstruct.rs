mod common;

use common::*;
use proptest::prelude::*;
use ringlat::algebra::{self, Truncation};
use ringlat::random::{random_instance, RandomProfile};
use ringlat::ringstruct::{self, conductor, crucial_report, maximal_ideals, nilradical, radical_in};
use ringlat::{catalog, Element, Field, Scalar};

fn v(xs: &[u32]) -> Element {
    xs.iter().map(|&x| Scalar::Gf(x)).collect()
}

#[test]
fn nilradical_examples() {
    let f = Field::prime(2).unwrap();
    let d = algebra::truncated_poly_algebra(&f, 1, Truncation::SquaresOnly);
    assert_eq!(nilradical(&d), d.span([v(&[0, 1])]));
    let s = algebra::split_algebra(&f, 3).unwrap();
    assert_eq!(nilradical(&s).dim(), 0);
    // Basis 1, y, x, xy.
    let e = catalog::ex5().unwrap();
    assert_eq!(nilradical(&e.alg), e.alg.span([e.alg.basis_vector(2), e.alg.basis_vector(3)]));
}

#[test]
fn units() {
    let f = Field::prime(2).unwrap();
    let d = algebra::truncated_poly_algebra(&f, 1, Truncation::SquaresOnly);
    assert!(ringstruct::is_unit(&d, d.unit()));
    assert!(!ringstruct::is_unit(&d, &v(&[0, 1])));
    assert!(ringstruct::is_unit(&d, &v(&[1, 1])));
    let s = algebra::split_algebra(&f, 3).unwrap();
    assert!(!ringstruct::is_unit(&s, &v(&[1, 0, 1])));
}

#[test]
fn local_decompositions() {
    let f = Field::prime(2).unwrap();
    let s = algebra::split_algebra(&f, 3).unwrap();
    let dec = ringstruct::local_decomposition(&s).unwrap();
    let mut expected = vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
    expected.sort();
    assert_eq!(dec.idempotents, expected);

    let e = catalog::ex5().unwrap();
    assert_eq!(ringstruct::local_decomposition(&e.alg).unwrap().len(), 1);
    assert_eq!(maximal_ideals(&e.alg, &e.alg.full()).unwrap()[0], nilradical(&e.alg));

    let d = algebra::truncated_poly_algebra(&f, 1, Truncation::SquaresOnly);
    let g4 = algebra::polynomial_quotient(&f, &[f.one(), f.one(), f.one()], "g").unwrap();
    let (p, _) = algebra::product_algebra(&[&d, &g4]).unwrap();
    let dec = ringstruct::local_decomposition(&p).unwrap();
    assert_eq!(dec.len(), 2);
    let mut degrees = dec.residue_degrees.clone();
    degrees.sort();
    assert_eq!(degrees, vec![1, 2]);
    assert!(p.is_zero(&p.mul(&dec.idempotents[0], &dec.idempotents[1])));
}

#[test]
fn maximal_ideal_examples() {
    let f = Field::prime(2).unwrap();
    let s = algebra::split_algebra(&f, 3).unwrap();
    let diag = maximal_ideals(&s, &s.base_line()).unwrap();
    assert_eq!(diag.len(), 1);
    assert_eq!(diag[0].dim(), 0);
    let all = maximal_ideals(&s, &s.full()).unwrap();
    assert!(all.len() == 3 && all.iter().all(|m| m.dim() == 2));
    let a = algebra::truncated_poly_algebra(&f, 2, Truncation::SquaresOnly);
    let t = a.adjoin(&a.base_line(), &a.basis_vector(1));
    assert_eq!(*maximal_ideals(&a, &t).unwrap(), vec![a.span([a.basis_vector(1)])]);
}

#[test]
fn conductor_examples() {
    let f = Field::prime(2).unwrap();
    let a = algebra::truncated_poly_algebra(&f, 2, Truncation::SquaresOnly);
    assert_eq!(conductor(&a, &a.base_line(), &a.full()).dim(), 0);
    let r = a.close(&a.span([a.basis_vector(3)]));
    assert_eq!(conductor(&a, &r, &a.full()), a.span([a.basis_vector(3)]));
    assert_eq!(conductor(&a, &a.full(), &a.full()), *a.full().space());
}

#[test]
fn radical_examples() {
    let f = Field::prime(2).unwrap();
    let d = algebra::truncated_poly_algebra(&f, 1, Truncation::SquaresOnly);
    assert_eq!(radical_in(&d, &d.full(), &d.span([])).unwrap(), d.span([v(&[0, 1])]));
    let s = algebra::split_algebra(&f, 3).unwrap();
    let m = &maximal_ideals(&s, &s.full()).unwrap()[0];
    assert_eq!(&radical_in(&s, &s.full(), m).unwrap(), m);
    // The conductor of k + M in ex5 is M, and it is its own radical in S.
    let e = catalog::ex5().unwrap();
    let t = e.alg.close(&nilradical(&e.alg));
    let c = conductor(&e.alg, &t, &e.s);
    assert_eq!(c, nilradical(&e.alg));
    assert_eq!(radical_in(&e.alg, &e.s, &c).unwrap(), c);
}

#[test]
fn crucial_reports() {
    let f = Field::prime(2).unwrap();
    let d = algebra::truncated_poly_algebra(&f, 1, Truncation::SquaresOnly);
    let rep = crucial_report(&d, &d.base_line(), &d.full()).unwrap();
    assert_eq!(rep.crucial.map(|m| m.dim()), Some(0));

    let s = algebra::split_algebra(&f, 4).unwrap();
    let r = s.close(&s.span([v(&[1, 1, 0, 0])]));
    let rep = crucial_report(&s, &r, &s.full()).unwrap();
    assert_eq!(rep.conductor.dim(), 0);
    assert_eq!(rep.support.len(), 2);
    assert!(rep.crucial.is_none());

    let rep = crucial_report(&s, &s.full(), &s.full()).unwrap();
    assert!(rep.support.is_empty() && rep.crucial.is_none());
}

fn small(index: u64) -> ringlat::io::Extension {
    random_instance(&RandomProfile::by_name("small").unwrap(), 11, index).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nilradical_is_the_nilpotent_set(index in 0u64..1000) {
        let e = small(index);
        let n = nilradical(&e.alg);
        for b in n.rows() {
            prop_assert!(e.alg.is_zero(&e.alg.pow(b, e.alg.dim() as u64)));
        }
        let f = e.alg.field();
        for x in all_elements(&e.alg) {
            prop_assert_eq!(is_nilpotent(&e.alg, &x), n.contains(f, &x));
        }
    }

    #[test]
    fn decomposition_factors_cover_the_algebra(index in 0u64..1000) {
        let e = small(index);
        let alg = &e.alg;
        let dec = ringstruct::local_decomposition(alg).unwrap();
        prop_assert_eq!(dec.factor_dims.iter().sum::<usize>(), alg.dim());
        let sum = dec.idempotents.iter().fold(alg.zero(), |acc, x| alg.add(&acc, x));
        prop_assert_eq!(&sum, alg.unit());
        let elems = all_elements(alg);
        for ei in &dec.idempotents {
            for (x, y) in elems.iter().zip(elems.iter().rev()).take(64) {
                let lhs = alg.mul(ei, &alg.mul(x, y));
                let rhs = alg.mul(&alg.mul(ei, x), &alg.mul(ei, y));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn conductor_matches_brute_force(index in 0u64..1000) {
        let e = small(index);
        prop_assume!(e.alg.dim() <= 4);
        let s = subalgebra_set(&e.alg, &e.s);
        let r = subalgebra_set(&e.alg, &e.r);
        let c = conductor(&e.alg, &e.r, &e.s);
        prop_assert_eq!(elements_of(&e.alg, c.rows()), conductor_set(&e.alg, &r, &s));
        prop_assert!(e.alg.is_ideal(e.r.space(), &c) && e.alg.is_ideal(e.s.space(), &c));
    }

    #[test]
    fn crucial_ideal_contains_conductor(index in 0u64..1000) {
        let e = small(index);
        let rep = crucial_report(&e.alg, &e.r, &e.s).unwrap();
        if let Some(m) = rep.crucial {
            prop_assert!(m.contains_space(e.alg.field(), &rep.conductor));
        }
    }
}
