mod common;

use common::*;
use proptest::prelude::*;
use ringlat::algebra::{self, Truncation};
use ringlat::io::Extension;
use ringlat::lattice::enumerate_interval;
use ringlat::pointwise::{self, CaseLabel, Profile, Witness};
use ringlat::random::{random_instance, RandomProfile};
use ringlat::ringstruct::radical_in;
use ringlat::report::{analyze, Analysis};
use ringlat::{catalog, Error, Field, Options, Truth};

fn opts() -> Options {
    Options::default()
}

fn profile(e: &Extension) -> Profile {
    Profile::new(&e.alg, &e.r, &e.s, &opts()).unwrap()
}

fn run(e: &Extension) -> Analysis {
    analyze(e, &opts(), true).unwrap()
}

fn whole(alg: ringlat::Algebra) -> Extension {
    Extension {
        id: "whole".into(),
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
    whole(algebra::polynomial_quotient(&f, &[f.zero(), f.zero(), f.zero(), f.one()], "x").unwrap())
}

#[test]
fn pw_by_definition_examples() {
    let e = catalog::split(4, 2).unwrap();
    assert_eq!(pointwise::pw_by_definition(&e.alg, &e.r, &e.s, &opts()).unwrap().truth, Truth::True);

    let e = catalog::split(3, 3).unwrap();
    let side = pointwise::pw_by_definition(&e.alg, &e.r, &e.s, &opts()).unwrap();
    assert_eq!(side.truth, Truth::False);
    let Some(Witness::Element(x)) = side.witness else { panic!("no element witness") };
    assert_eq!(e.alg.adjoin(&e.r, &x), e.s);

    // Sampled: S = k[x] is not minimal over k.
    let e = catalog::remark7151().unwrap();
    let side = pointwise::pw_by_definition(&e.alg, &e.r, &e.s, &opts()).unwrap();
    assert_eq!(side.truth, Truth::False);
    assert!(matches!(side.witness, Some(Witness::Element(_))));
}

#[test]
fn pw_by_characterization_examples() {
    let e = catalog::ex1(2, 2).unwrap();
    let side = pointwise::pw_by_characterization(&e.alg, &profile(&e));
    assert_eq!((side.truth, side.clause), (Truth::True, Some("equal-closures-square-zero-radicial")));

    let e = catalog::ex5().unwrap();
    let p = profile(&e);
    assert!(p.chain.t != p.s);
    assert_eq!(pointwise::pw_by_characterization(&e.alg, &p).truth, Truth::True);

    let e = catalog::remark7151().unwrap();
    assert_eq!(pointwise::pw_by_characterization(&e.alg, &profile(&e)).truth, Truth::False);

    let e = catalog::split(4, 2).unwrap();
    let side = pointwise::pw_by_characterization(&e.alg, &profile(&e));
    assert_eq!(side.clause, Some("two-element-residue-seminormal-infra-integral"));
}

#[test]
fn pair_examples() {
    let e = catalog::split(3, 2).unwrap();
    assert_eq!(pointwise::pair_by_definition(&e.alg, &e.r, &e.s, &opts(), None).unwrap().truth, Truth::True);

    let e = catalog::split(4, 2).unwrap();
    let side = pointwise::pair_by_definition(&e.alg, &e.r, &e.s, &opts(), None).unwrap();
    assert_eq!(side.truth, Truth::False);
    assert!(matches!(side.witness, Some(Witness::Step { .. })));

    let e = catalog::ex1(2, 2).unwrap();
    assert_eq!(pointwise::pair_by_definition(&e.alg, &e.r, &e.s, &opts(), None).unwrap().truth, Truth::False);

    let e = catalog::ex2(2, 3).unwrap();
    let side = pointwise::pair_by_characterization(&e.alg, &profile(&e));
    assert_eq!((side.truth, side.clause), (Truth::True, Some("subintegral-square-zero")));

    let e = catalog::ex5().unwrap();
    assert_eq!(pointwise::pair_by_characterization(&e.alg, &profile(&e)).truth, Truth::False);

    let e = catalog::ex3_two_var().unwrap();
    let side = pointwise::pair_by_characterization(&e.alg, &profile(&e));
    assert_eq!((side.truth, side.clause), (Truth::True, Some("t-closed-radicial")));
}

#[test]
fn co_pw_examples() {
    let e = catalog::ex2(2, 2).unwrap();
    let p = profile(&e);
    assert_eq!(pointwise::co_pw_by_definition(&e.alg, &e.r, &e.s, &opts()).unwrap().truth, Truth::True);
    assert_eq!(pointwise::co_pw_by_characterization(&e.alg, &p).clause, Some("subintegral-plane-square-zero"));

    let e = catalog::split(3, 2).unwrap();
    assert_eq!(pointwise::co_pw_by_definition(&e.alg, &e.r, &e.s, &opts()).unwrap().truth, Truth::True);
    let side = pointwise::co_pw_by_characterization(&e.alg, &profile(&e));
    assert_eq!((side.truth, side.clause), (Truth::True, Some("two-element-residue-cube")));

    let e = catalog::split(4, 2).unwrap();
    assert_eq!(pointwise::co_pw_by_definition(&e.alg, &e.r, &e.s, &opts()).unwrap().truth, Truth::False);
    assert_eq!(pointwise::co_pw_by_characterization(&e.alg, &profile(&e)).truth, Truth::False);

    let e = catalog::ex2(2, 3).unwrap();
    assert_eq!(pointwise::co_pw_by_characterization(&e.alg, &profile(&e)).truth, Truth::False);

    let e = catalog::ex3_two_var().unwrap();
    let side = pointwise::co_pw_by_characterization(&e.alg, &profile(&e));
    assert_eq!((side.truth, side.clause), (Truth::True, Some("radicial-field-degree-p-squared")));
}

#[test]
fn case_labels() {
    let e = catalog::ex1(2, 2).unwrap();
    assert_eq!(pointwise::case_label(&e.alg, &profile(&e), &opts()).unwrap(), (CaseLabel::Subintegral, None));
    let e = catalog::split(3, 2).unwrap();
    assert_eq!(pointwise::case_label(&e.alg, &profile(&e), &opts()).unwrap().0.letter(), 'b');
    let e = catalog::ex5().unwrap();
    assert_eq!(pointwise::case_label(&e.alg, &profile(&e), &opts()).unwrap(), (CaseLabel::Mixed, Some(Truth::True)));

    // Minimal and non-pw extensions have no label.
    for e in [catalog::ff(2, 2).unwrap(), catalog::split(3, 3).unwrap()] {
        assert!(matches!(pointwise::case_label(&e.alg, &profile(&e), &opts()), Err(Error::InvalidPrecondition(_))));
    }
}

#[test]
fn length_dimension_examples() {
    let e = catalog::split(4, 2).unwrap();
    let lat = enumerate_interval(&e.alg, &e.r, &e.s, &opts()).unwrap();
    let rep = pointwise::length_dimension_check(&e.alg, &profile(&e), Some(&lat)).unwrap();
    assert_eq!((rep.clause, rep.relative_dim, rep.length, rep.holds), ("infra-integral", 4, 3, true));

    let e = catalog::ff(2, 2).unwrap();
    let lat = enumerate_interval(&e.alg, &e.r, &e.s, &opts()).unwrap();
    let rep = pointwise::length_dimension_check(&e.alg, &profile(&e), Some(&lat)).unwrap();
    assert_eq!((rep.clause, rep.relative_dim, rep.length, rep.holds), ("t-closed", 2, 1, true));

    let e = catalog::ex5().unwrap();
    let rep = pointwise::length_dimension_check(&e.alg, &profile(&e), None).unwrap();
    assert_eq!((rep.clause, rep.relative_dim, rep.radical_dim, rep.inner_length), ("mixed", 4, Some(2), Some(2)));
    assert_eq!(rep.length_source, "derived");
    assert!(rep.holds);

    let e = catalog::split(3, 3).unwrap();
    assert!(pointwise::length_dimension_check(&e.alg, &profile(&e), None).is_err());
}

#[test]
fn jacobson_builder_examples() {
    let e = catalog::ex1(2, 2).unwrap();
    let (alg, k) = (&e.alg, &e.r);
    let x1 = alg.basis_vector(1);
    let s1 = alg.adjoin(k, &x1);
    let t = pointwise::jacobson_builder(alg, k, &s1, &alg.span([x1])).unwrap();
    assert_eq!(t, s1);
    let p = Profile::new(alg, k, &t, &opts()).unwrap();
    assert_eq!(pointwise::pw_by_characterization(alg, &p).truth, Truth::True);

    let n = ringlat::ringstruct::nilradical(alg);
    let t = pointwise::jacobson_builder(alg, k, &e.s, &n).unwrap();
    assert_eq!(t, e.s);
    assert_eq!(pointwise::pw_by_definition(alg, k, &t, &opts()).unwrap().truth, Truth::True);
    assert!(pointwise::jacobson_squares_check(alg, k, &e.s).unwrap());

    let sp = catalog::split(2, 2).unwrap();
    let j = sp.alg.span([sp.alg.basis_vector(0)]);
    assert!(matches!(pointwise::jacobson_builder(&sp.alg, &sp.r, &sp.s, &j), Err(Error::InvalidPrecondition(_))));
    // J inside R.
    assert!(pointwise::jacobson_builder(alg, k, &e.s, &alg.span([])).is_err());
}

#[test]
fn quadratic_examples() {
    for n in 2..=4 {
        let e = catalog::split(n, 2).unwrap();
        assert!(pointwise::quadratic_check(&e.alg, &e.r, &e.s, &opts()).unwrap().0);
    }
    let e = catalog::split(3, 3).unwrap();
    let (ok, w) = pointwise::quadratic_check(&e.alg, &e.r, &e.s, &opts()).unwrap();
    assert!(!ok && w.is_some());
    let e = cube_f2();
    let (ok, w) = pointwise::quadratic_check(&e.alg, &e.r, &e.s, &opts()).unwrap();
    assert!(!ok);
    let w = w.unwrap();
    assert!(!e.alg.span([e.alg.unit().clone(), w.clone()]).contains(e.alg.field(), &e.alg.mul(&w, &w)));

    // |k| = 2: minimal exactly in relative dimension 2.
    for (n, minimal) in [(2, true), (3, false), (4, false)] {
        let e = catalog::split(n, 2).unwrap();
        let p = profile(&e);
        assert_eq!(p.is_minimal(), Some(minimal));
        assert_eq!(pointwise::quadratic_seminormal_check(&e.alg, &p, Truth::True, &opts()).unwrap(), Some(true));
    }
    let e = catalog::split(2, 3).unwrap();
    assert_eq!(pointwise::quadratic_seminormal_check(&e.alg, &profile(&e), Truth::True, &opts()).unwrap(), Some(true));
    let e = catalog::ex1(2, 2).unwrap();
    assert_eq!(pointwise::quadratic_seminormal_check(&e.alg, &profile(&e), Truth::True, &opts()).unwrap(), None);
}

#[test]
fn fip_and_tower_checks() {
    let e = catalog::ff(2, 4).unwrap();
    let p = profile(&e);
    assert_eq!(p.is_minimal(), Some(false));
    let pw = pointwise::pw_by_definition(&e.alg, &e.r, &e.s, &opts()).unwrap().truth;
    assert_eq!(pw, Truth::False);
    assert_eq!(pointwise::fip_shortcut_check(&e.alg, &p, pw), Some(true));
    let e1 = catalog::ex1(2, 2).unwrap();
    assert_eq!(pointwise::fip_shortcut_check(&e1.alg, &profile(&e1), Truth::True), None);

    let tower = |e: &Extension| {
        let a = run(e);
        pointwise::tower_equivalence_check(&e.alg, &a.profile, &a.verdicts, a.lattice.as_ref().unwrap())
    };
    let rep = tower(&catalog::tower_partition(3).unwrap()).unwrap();
    assert!(rep.structural && rep.holds);
    assert_eq!(rep.node_count, 5);
    let rep = tower(&catalog::ex2(2, 2).unwrap()).unwrap();
    assert!(rep.structural && rep.holds && rep.node_count > 3);
    let rep = tower(&cube_f2()).unwrap();
    assert!(!rep.structural && rep.holds);
    assert_eq!(rep.co_pw, Truth::False);
    // Every maximal chain of ex1 has three steps.
    assert!(matches!(tower(&e1), Err(Error::InvalidPrecondition(_))));
}

#[test]
fn generator_counts() {
    for (e, gens) in [
        (catalog::split(3, 2).unwrap(), 2),
        (catalog::split(2, 2).unwrap(), 1),
        (catalog::ff(2, 4).unwrap(), 1),
        (catalog::ex2(2, 2).unwrap(), 2),
        (catalog::ex1(2, 2).unwrap(), 2),
    ] {
        let lat = enumerate_interval(&e.alg, &e.r, &e.s, &opts()).unwrap();
        assert_eq!(pointwise::minimal_generator_count(&lat), gens, "{}", e.id);
    }
}

#[test]
fn truncated_algebra_is_pw_but_not_pair() {
    let f = Field::prime(2).unwrap();
    let e = whole(algebra::truncated_poly_algebra(&f, 3, Truncation::SquaresOnly));
    let a = run(&e);
    assert_eq!((a.pw(), a.pair(), a.co_pw()), (Truth::True, Truth::False, Truth::False));
    for v in &a.verdicts {
        assert_eq!(v.agreement(), Some(true), "{}", v.property.name());
    }
}

fn small(index: u64) -> Extension {
    random_instance(&RandomProfile::by_name("small").unwrap(), 3, index).unwrap()
}

fn order(e: &Extension) -> u64 {
    e.alg.field().order().unwrap().pow(e.s.dim() as u32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn definitions_agree_with_characterizations(index in 0u64..100_000) {
        let a = run(&small(index));
        for v in &a.verdicts {
            prop_assert_ne!(v.agreement(), Some(false), "{}", v.property.name());
        }
    }

    #[test]
    fn implication_chain(index in 0u64..100_000) {
        let e = small(index);
        let a = run(&e);
        if a.profile.is_minimal() == Some(true) {
            prop_assert_eq!(a.pair(), Truth::True);
        }
        if a.pair() == Truth::True {
            prop_assert_eq!(a.pw(), Truth::True);
        }
        if a.co_pw() == Truth::True {
            prop_assert_eq!(a.pair(), Truth::True);
        }
    }

    #[test]
    fn co_pw_is_a_pair_of_length_two(index in 0u64..100_000) {
        let a = run(&small(index));
        let lat = a.lattice.as_ref().unwrap();
        let pair = a.pair() == Truth::True;
        let co = a.co_pw() == Truth::True;
        prop_assert_eq!(co, pair && lat.length() == 2);
        prop_assert_eq!(co, pair && pointwise::minimal_generator_count(lat) == 2);
    }

    #[test]
    fn pw_is_hereditary(index in 0u64..100_000) {
        let e = small(index);
        let a = run(&e);
        prop_assume!(a.pw() == Truth::True);
        let lat = a.lattice.as_ref().unwrap();
        for t in lat.nodes.iter().skip(1).take(20) {
            prop_assert_eq!(pointwise::pw_by_definition(&e.alg, &e.r, t, &opts()).unwrap().truth, Truth::True);
        }
        if a.pair() == Truth::True {
            for (lo, hi) in lat.edges().into_iter().take(20) {
                let side = pointwise::pw_by_definition(&e.alg, &lat.nodes[lo], &lat.nodes[hi], &opts()).unwrap();
                prop_assert_eq!(side.truth, Truth::True);
            }
        }
    }

    #[test]
    fn pw_matches_element_scan(index in 0u64..100_000) {
        let e = small(index);
        prop_assume!(order(&e) <= 64);
        let (r, s) = (subalgebra_set(&e.alg, &e.r), subalgebra_set(&e.alg, &e.s));
        let side = pointwise::pw_by_definition(&e.alg, &e.r, &e.s, &opts()).unwrap();
        prop_assert_eq!(side.truth == Truth::True, is_pointwise_minimal(&e.alg, &r, &s));
    }

    #[test]
    fn pw_extensions_have_one_crucial_ideal(index in 0u64..100_000) {
        let a = run(&small(index));
        prop_assume!(a.pw() == Truth::True);
        prop_assert_eq!(a.crucial.support.len(), 1);
        let e = small(index);
        let root = radical_in(&e.alg, &e.r, &a.profile.conductor).unwrap();
        prop_assert_eq!(a.crucial.crucial.as_ref(), Some(&root));
        prop_assert_eq!(&root, &a.profile.conductor);
    }
}
