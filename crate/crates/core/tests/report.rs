use ringlat::catalog::{self, Params};
use ringlat::harness::{self, HarnessConfig};
use ringlat::io::Extension;
use ringlat::random::{random_instances, RandomProfile};
use ringlat::report::{analyze, ExtensionReport};
use ringlat::{Error, Options, Truth};
use serde_json::Value;

fn report(e: &Extension) -> Value {
    let a = analyze(e, &Options::default(), true).unwrap();
    serde_json::from_str(&ExtensionReport::new(e, &a, false).to_json_pretty()).unwrap()
}

#[test]
fn catalog_expectations_hold() {
    let exts = catalog::standard().unwrap();
    assert_eq!(exts.len(), 13);
    let summary = harness::run_batch(&exts, &HarnessConfig::default(), 0, "catalog");
    assert_eq!(summary.fails(), 0, "{}", summary.to_json_pretty());
    let with_expected = exts.iter().filter(|e| e.expected.is_some()).count();
    assert_eq!(summary.tally("catalog-expected").pass, with_expected);
}

#[test]
fn catalog_verdicts() {
    let cases: [(Extension, [Truth; 3], Option<&str>); 6] = [
        (catalog::ex1(2, 2).unwrap(), [Truth::True, Truth::False, Truth::False], Some("a")),
        (catalog::ex2(2, 3).unwrap(), [Truth::True, Truth::True, Truth::False], Some("a")),
        (catalog::ex2(2, 2).unwrap(), [Truth::True, Truth::True, Truth::True], Some("a")),
        (catalog::split(3, 2).unwrap(), [Truth::True, Truth::True, Truth::True], Some("b")),
        (catalog::split(4, 2).unwrap(), [Truth::True, Truth::False, Truth::False], Some("b")),
        (catalog::ex5().unwrap(), [Truth::True, Truth::False, Truth::False], Some("d")),
    ];
    for (e, truths, case) in cases {
        let a = analyze(&e, &Options::default(), true).unwrap();
        assert_eq!([a.pw(), a.pair(), a.co_pw()], truths, "{}", e.id);
        assert_eq!(a.case.map(|c| c.0.letter().to_string()).as_deref(), case, "{}", e.id);
    }
    let e = catalog::split(3, 3).unwrap();
    assert_eq!(analyze(&e, &Options::default(), true).unwrap().pw(), Truth::False);
}

#[test]
fn report_fields() {
    let r = report(&catalog::ex1(2, 2).unwrap());
    assert_eq!(r["dims"]["S"], 4);
    assert_eq!(r["minimal_type"]["kind"], "not-minimal");
    assert_eq!(r["pointwise"]["pw_extension"]["value"], "true");
    assert_eq!(r["pointwise"]["pw_pair"]["value"], "false");
    assert_eq!(r["case_label"]["label"], "a");
    assert_eq!(r["lattice"]["nodes"], 12);
    assert!(r.get("timings_ms").is_none());

    let r = report(&catalog::split(3, 2).unwrap());
    assert_eq!((r["lattice"]["nodes"].as_u64(), r["lattice"]["atoms"].as_u64()), (Some(5), Some(3)));
    assert_eq!(r["lattice"]["geometric"], true);

    // Minimal extensions carry no case label.
    let r = report(&catalog::ff(2, 2).unwrap());
    assert_eq!(r["minimal_type"]["kind"], "inert");
    assert!(r["case_label"].is_null());

    // No lattice over rational function fields.
    let r = report(&catalog::ex5().unwrap());
    assert!(r["lattice"].is_null());
    assert_eq!(r["case_label"]["label"], "d");
}

#[test]
fn reports_are_reproducible() {
    for e in catalog::standard().unwrap().iter().take(8) {
        let a = analyze(e, &Options::default(), true).unwrap();
        let b = analyze(&Extension::from_json(&e.to_json()).unwrap(), &Options::default(), true).unwrap();
        assert_eq!(ExtensionReport::new(e, &a, false).to_json_pretty(), ExtensionReport::new(e, &b, false).to_json_pretty());
    }
}

#[test]
fn extension_files_round_trip() {
    let mut exts = catalog::standard().unwrap();
    exts.extend(random_instances(&RandomProfile::by_name("default").unwrap(), 9, 30).unwrap());
    for e in exts {
        let text = e.to_json();
        let back = Extension::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text, "{}", e.id);
        assert_eq!((back.r, back.s), (e.r, e.s));
    }
}

#[test]
fn malformed_files_are_rejected() {
    let e = catalog::split(2, 2).unwrap();
    let mut v: Value = serde_json::from_str(&e.to_json()).unwrap();
    v["table"][0][1][0] = Value::from(1);
    assert!(Extension::from_json(&v.to_string()).is_err());
    assert!(matches!(Extension::from_json("{"), Err(Error::Parse(_))));
}

#[test]
fn builder_names() {
    let p = Params { m: Some(3), ..Params::default() };
    assert_eq!(catalog::build("ex1", &p).unwrap().alg.dim(), 8);
    assert!(matches!(catalog::build("nope", &p), Err(Error::UnknownExample(_))));
    for name in catalog::NAMES {
        assert!(catalog::build(name, &Params::default()).is_ok(), "{}", name);
    }
}

#[test]
fn seeded_builder_cases_pass() {
    let (tally, certs) = harness::run_jacobson_builder(7, 20, &Options::default());
    assert_eq!(tally.fail, 0, "{:?}", certs.first().map(|c| &c.detail));
    assert_eq!(tally.pass + tally.unconfirmed + tally.not_applicable, 20);
}

#[test]
fn random_instances_are_deterministic() {
    let prof = RandomProfile::by_name("small").unwrap();
    let a: Vec<String> = random_instances(&prof, 1, 10).unwrap().iter().map(Extension::to_json).collect();
    let b: Vec<String> = random_instances(&prof, 1, 10).unwrap().iter().map(Extension::to_json).collect();
    assert_eq!(a, b);
    let c = random_instances(&prof, 2, 10).unwrap();
    assert_ne!(a, c.iter().map(Extension::to_json).collect::<Vec<_>>());
    assert!(c.iter().all(|e| e.alg.dim() <= prof.max_dim));
}
