mod common;

use common::*;
use ringlat::algebra::{self, Truncation};
use ringlat::catalog;
use ringlat::io::Extension;
use ringlat::lattice::enumerate_interval;
use ringlat::{Error, Field, Options};

fn whole(alg: ringlat::Algebra, id: &str) -> Extension {
    Extension {
        id: id.into(),
        r: alg.base_line(),
        s: alg.full(),
        alg,
        chain: None,
        generators: Vec::new(),
        expected: None,
        notes: None,
    }
}

fn cube_f2() -> Extension {
    let f = Field::prime(2).unwrap();
    whole(algebra::polynomial_quotient(&f, &[f.zero(), f.zero(), f.zero(), f.one()], "x").unwrap(), "f2[x]/(x^3)")
}

fn dual_times_f3() -> Extension {
    let f = Field::prime(3).unwrap();
    let a = algebra::truncated_poly_algebra(&f, 1, Truncation::SquaresOnly);
    let (p, _) = algebra::product_algebra(&[&a, &algebra::split_algebra(&f, 1).unwrap()]).unwrap();
    whole(p, "f3[x]/(x^2) x f3")
}

fn square_zero_times_split() -> Extension {
    let f = Field::prime(2).unwrap();
    let t = algebra::truncated_poly_algebra(&f, 2, Truncation::SquaresAndProducts);
    let (p, _) = algebra::product_algebra(&[&t, &algebra::split_algebra(&f, 2).unwrap()]).unwrap();
    whole(p, "f2[x,y]/(x,y)^2 x f2^2")
}

/// (instance, nodes, atoms, length), counts produced by the element-set
/// oracle in `common`.
fn frozen() -> Vec<(Extension, usize, usize, usize)> {
    vec![
        (catalog::split(3, 2).unwrap(), 5, 3, 2),
        (catalog::split(4, 2).unwrap(), 15, 7, 3),
        (catalog::split(3, 3).unwrap(), 5, 3, 2),
        (catalog::ex1(2, 2).unwrap(), 12, 7, 3),
        (catalog::ex2(2, 3).unwrap(), 16, 7, 3),
        (catalog::ex2(3, 2).unwrap(), 6, 4, 2),
        (catalog::ff(2, 4).unwrap(), 3, 1, 2),
        (catalog::ff(2, 2).unwrap(), 2, 1, 1),
        (catalog::ff(3, 2).unwrap(), 2, 1, 1),
        (cube_f2(), 3, 1, 2),
        (dual_times_f3(), 4, 2, 2),
        (square_zero_times_split(), 25, 6, 4),
    ]
}

#[test]
fn oracle_reproduces_frozen_counts() {
    for (e, nodes, atoms, length) in frozen() {
        let found = interval(&e.alg, &subalgebra_set(&e.alg, &e.r), &subalgebra_set(&e.alg, &e.s));
        let facts = lattice_facts(&found);
        assert_eq!((facts.nodes, facts.atoms, facts.length), (nodes, atoms, length), "{}", e.id);
    }
}

#[test]
fn enumeration_matches_frozen_counts() {
    for (e, nodes, atoms, length) in frozen() {
        let lat = enumerate_interval(&e.alg, &e.r, &e.s, &Options::default()).unwrap();
        assert_eq!((lat.len(), lat.atoms().len(), lat.length()), (nodes, atoms, length), "{}", e.id);
    }
}

#[test]
fn enumerated_nodes_are_the_oracle_nodes() {
    for (e, ..) in frozen().into_iter().take(6) {
        let mut oracle: Vec<Set> = interval(&e.alg, &subalgebra_set(&e.alg, &e.r), &subalgebra_set(&e.alg, &e.s));
        let lat = enumerate_interval(&e.alg, &e.r, &e.s, &Options::default()).unwrap();
        let mut ours: Vec<Set> = lat.nodes.iter().map(|t| subalgebra_set(&e.alg, t)).collect();
        oracle.sort();
        ours.sort();
        assert_eq!(ours, oracle, "{}", e.id);
    }
}

#[test]
fn split_geometry() {
    let e3 = catalog::split(3, 2).unwrap();
    let lat = enumerate_interval(&e3.alg, &e3.r, &e3.s, &Options::default()).unwrap();
    assert!(lat.is_geometric(&e3.alg));
    let e4 = catalog::split(4, 2).unwrap();
    let lat = enumerate_interval(&e4.alg, &e4.r, &e4.s, &Options::default()).unwrap();
    assert!(!lat.is_geometric(&e4.alg));
    assert!(lat.is_atomistic(&e4.alg));
}

#[test]
fn hasse_covers_are_minimal_steps() {
    for (e, ..) in frozen() {
        let lat = enumerate_interval(&e.alg, &e.r, &e.s, &Options::default()).unwrap();
        let sets: Vec<Set> = lat.nodes.iter().map(|t| subalgebra_set(&e.alg, t)).collect();
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                if a != b && sets[a].is_subset(&sets[b]) {
                    let cover = lat.covers[a].contains(&b);
                    assert_eq!(cover, is_minimal(&e.alg, &sets[a], &sets[b]), "{} {}->{}", e.id, a, b);
                }
            }
        }
    }
}

#[test]
fn closed_under_join_and_meet() {
    for (e, ..) in frozen() {
        let lat = enumerate_interval(&e.alg, &e.r, &e.s, &Options::default()).unwrap();
        assert!(lat.is_closed_under_operations(&e.alg), "{}", e.id);
    }
}

#[test]
fn jordan_holder_on_geometric_lattices() {
    for (e, ..) in frozen() {
        let lat = enumerate_interval(&e.alg, &e.r, &e.s, &Options::default()).unwrap();
        if lat.is_geometric(&e.alg) {
            assert_eq!(lat.maximal_chain_lengths().len(), 1, "{}", e.id);
        }
    }
}

#[test]
fn spanning_independent_atoms_have_length_many_elements() {
    for e in [catalog::split(3, 2).unwrap(), catalog::ex2(2, 3).unwrap(), catalog::ex2(3, 2).unwrap(), catalog::ff(2, 2).unwrap()] {
        let lat = enumerate_interval(&e.alg, &e.r, &e.s, &Options::default()).unwrap();
        let set = lat.minimal_spanning_independent(&e.alg).unwrap().unwrap();
        assert_eq!(set.len(), lat.length(), "{}", e.id);
        assert!(lat.is_independent(&e.alg, &set).unwrap());
    }
}

#[test]
fn exports() {
    let e = catalog::split(3, 2).unwrap();
    let lat = enumerate_interval(&e.alg, &e.r, &e.s, &Options::default()).unwrap();
    let dot = lat.to_dot(&e.alg, false);
    assert_eq!(dot.matches("[label=").count(), 5);
    assert_eq!(dot.matches(" -> ").count(), 6);
    let e4 = catalog::split(4, 2).unwrap();
    let lat4 = enumerate_interval(&e4.alg, &e4.r, &e4.s, &Options::default()).unwrap();
    let json = lat4.to_json(&e4.alg);
    assert_eq!(json["node_count"], 15);
    assert_eq!(json["nodes"].as_array().unwrap().len(), 15);
    assert_eq!(lat4.to_dot(&e4.alg, true), lat4.to_dot(&e4.alg, true));
}

#[test]
fn caps_are_reported() {
    let e = catalog::split(4, 2).unwrap();
    let opts = Options { node_cap: 4, ..Options::default() };
    assert!(matches!(enumerate_interval(&e.alg, &e.r, &e.s, &opts), Err(Error::NodeCapExceeded(4))));
    let opts = Options { scan_cap: 3, ..Options::default() };
    assert!(enumerate_interval(&e.alg, &e.r, &e.s, &opts).unwrap_err().is_cap());
}

#[test]
fn infinite_fields_are_rejected() {
    let e = catalog::ex5().unwrap();
    assert!(matches!(enumerate_interval(&e.alg, &e.r, &e.s, &Options::default()), Err(Error::InvalidPrecondition(_))));
}
