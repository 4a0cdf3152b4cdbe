//! Acceptance run: one line per criterion, nonzero exit if any fails.
//! Timing limits are wall-clock on a single core.

use std::time::Instant;

use ringlat::canon::{self, MinimalType};
use ringlat::harness::{self, HarnessConfig, HarnessSummary};
use ringlat::io::Extension;
use ringlat::lattice::enumerate_interval;
use ringlat::pointwise::{self, Profile};
use ringlat::random::RandomProfile;
use ringlat::report::{analyze, Analysis, ExtensionReport};
use ringlat::{catalog, Options, Truth};

/// Per-instance limit for the catalog and lattice criteria, in seconds.
const INSTANCE_LIMIT: f64 = 1.0;
/// Limit for the 500-instance random suite, in seconds.
const SUITE_LIMIT: f64 = 300.0;
const SUITE_SEED: u64 = 42;
const SUITE_COUNT: usize = 500;
const BUILDER_COUNT: usize = 50;
/// Instances compared across thread counts.
const DETERMINISM_COUNT: usize = 120;

struct Line {
    ok: bool,
    detail: String,
    secs: f64,
}

fn print(id: usize, name: &str, line: &Line) {
    let tag = if line.ok { "PASS" } else { "FAIL" };
    println!("{tag} {id} {name:<28} {:>8.2}s  {}", line.secs, line.detail);
}

fn timed(f: impl FnOnce() -> (bool, String)) -> Line {
    let start = Instant::now();
    let (ok, detail) = f();
    Line { ok, detail, secs: start.elapsed().as_secs_f64() }
}

fn opts() -> Options {
    Options::default()
}

fn run(e: &Extension) -> Analysis {
    analyze(e, &opts(), true).expect("analysis")
}

fn t(b: bool) -> Truth {
    Truth::from_bool(b)
}

/// Returns whether the catalog instance matches.
type CatalogCheck = Box<dyn Fn() -> bool>;

fn catalog_checks() -> Vec<(&'static str, CatalogCheck)> {
    vec![
        (
            "ex1 m=2",
            Box::new(|| {
                let a = run(&catalog::ex1(2, 2).unwrap());
                a.pw() == t(true) && a.pair() == t(false) && a.case.map(|c| c.0.letter()) == Some('a')
            }),
        ),
        (
            "ex2 m=3",
            Box::new(|| {
                let a = run(&catalog::ex2(2, 3).unwrap());
                a.pair() == t(true) && a.co_pw() == t(false)
            }),
        ),
        ("ex2 m=2", Box::new(|| run(&catalog::ex2(2, 2).unwrap()).co_pw() == t(true))),
        (
            "split n=3 q=2",
            Box::new(|| {
                let a = run(&catalog::split(3, 2).unwrap());
                a.pair() == t(true) && a.co_pw() == t(true) && a.case.map(|c| c.0.letter()) == Some('b')
            }),
        ),
        (
            "split n=4 q=2",
            Box::new(|| {
                let a = run(&catalog::split(4, 2).unwrap());
                a.pw() == t(true) && a.pair() == t(false)
            }),
        ),
        ("split n=3 q=3", Box::new(|| run(&catalog::split(3, 3).unwrap()).pw() == t(false))),
        (
            "ff q=2 e=2",
            Box::new(|| {
                let e = catalog::ff(2, 2).unwrap();
                canon::minimal_type(&e.alg, &e.r, &e.s).unwrap() == MinimalType::Inert { degree: 2 }
            }),
        ),
        (
            "ex5",
            Box::new(|| {
                let e = catalog::ex5().unwrap();
                let a = run(&e);
                let mut steps: Vec<&str> = canon::tower_type_profile(&e.alg, e.chain.as_ref().unwrap())
                    .unwrap()
                    .iter()
                    .map(MinimalType::label)
                    .collect();
                steps.sort();
                a.pw() == t(true)
                    && a.pair() == t(false)
                    && a.case.map(|c| c.0.letter()) == Some('d')
                    && steps == ["inert", "ramified"]
            }),
        ),
        (
            "remark7151",
            Box::new(|| {
                let e = catalog::remark7151().unwrap();
                let p = Profile::new(&e.alg, &e.r, &e.s, &opts()).unwrap();
                let def = pointwise::pw_by_definition(&e.alg, &e.r, &e.s, &opts()).unwrap();
                pointwise::pw_by_characterization(&e.alg, &p).truth == t(false)
                    && def.truth == t(false)
                    && def.witness.is_some()
            }),
        ),
        (
            "ex3-two-var",
            Box::new(|| {
                let e = catalog::ex3_two_var().unwrap();
                let p = Profile::new(&e.alg, &e.r, &e.s, &opts()).unwrap();
                let side = pointwise::co_pw_by_characterization(&e.alg, &p);
                side.truth == t(true) && side.clause == Some("radicial-field-degree-p-squared")
            }),
        ),
    ]
}

fn criterion_catalog() -> Line {
    timed(|| {
        let mut bad = Vec::new();
        let mut slowest: f64 = 0.0;
        let checks = catalog_checks();
        for (name, check) in &checks {
            let start = Instant::now();
            let ok = check();
            let secs = start.elapsed().as_secs_f64();
            slowest = slowest.max(secs);
            if !ok || secs >= INSTANCE_LIMIT {
                bad.push(format!("{name} ({secs:.2}s)"));
            }
        }
        if bad.is_empty() {
            (true, format!("{} instances, slowest {:.3}s", checks.len(), slowest))
        } else {
            (false, format!("mismatch: {}", bad.join(", ")))
        }
    })
}

fn criterion_lattice() -> Line {
    timed(|| {
        // (n, nodes, atoms, length, geometric)
        let expect = [(3, 5, Some(3), 2, true), (4, 15, None, 3, false)];
        let mut out = Vec::new();
        let mut ok = true;
        for (n, nodes, atoms, length, geometric) in expect {
            let start = Instant::now();
            let e = catalog::split(n, 2).unwrap();
            let lat = enumerate_interval(&e.alg, &e.r, &e.s, &opts()).unwrap();
            let g = lat.is_geometric(&e.alg);
            let secs = start.elapsed().as_secs_f64();
            let hit = lat.len() == nodes
                && atoms.is_none_or(|a| lat.atoms().len() == a)
                && lat.length() == length
                && g == geometric
                && secs < INSTANCE_LIMIT;
            ok &= hit;
            out.push(format!("F2^{n}: {} nodes, {} atoms, length {}, geometric {g}", lat.len(), lat.atoms().len(), lat.length()));
        }
        (ok, out.join("; "))
    })
}

fn fails(summaries: &[&HarnessSummary], checks: &[&str]) -> (usize, usize, usize) {
    let mut total = (0, 0, 0);
    for s in summaries {
        for c in checks {
            let tally = s.tally(c);
            total.0 += tally.fail;
            total.1 += tally.pass;
            total.2 += tally.unconfirmed;
        }
    }
    total
}

fn tally_line(summaries: &[&HarnessSummary], checks: &[&str]) -> (bool, String) {
    let (fail, pass, unconfirmed) = fails(summaries, checks);
    (fail == 0 && pass > 0, format!("{pass} pass, {fail} fail, {unconfirmed} unconfirmed"))
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

fn criterion_determinism(cfg: &HarnessConfig) -> Line {
    timed(|| {
        let prof = RandomProfile::by_name("default").unwrap();
        let batch = |threads: usize| {
            pool(threads).install(|| {
                let mut s = harness::run_random(&prof, SUITE_SEED, DETERMINISM_COUNT, cfg).unwrap();
                let (tally, certs) = harness::run_jacobson_builder(SUITE_SEED, 10, &cfg.opts);
                harness::add_builder_suite(&mut s, tally, certs);
                let reports: Vec<String> = catalog::standard()
                    .unwrap()
                    .iter()
                    .map(|e| ExtensionReport::new(e, &run(e), false).to_json_pretty())
                    .collect();
                (s.to_json_pretty(), reports)
            })
        };
        let one = batch(1);
        let four = batch(4);
        let again = batch(4);
        let ok = one == four && four == again;
        (ok, format!("{DETERMINISM_COUNT} instances + catalog reports, 1 vs 4 threads and rerun identical: {ok}"))
    })
}

fn main() {
    let cfg = HarnessConfig::default();
    let mut lines: Vec<(usize, &str, Line)> = Vec::new();

    lines.push((1, "catalog exactness", criterion_catalog()));
    lines.push((2, "lattice numerics", criterion_lattice()));

    let catalog_summary = harness::run_batch(&catalog::standard().unwrap(), &cfg, 0, "catalog");
    let start = Instant::now();
    let suite = harness::run_random(&RandomProfile::by_name("default").unwrap(), SUITE_SEED, SUITE_COUNT, &cfg).unwrap();
    let suite_secs = start.elapsed().as_secs_f64();
    let both = [&catalog_summary, &suite];

    let (ok, detail) = tally_line(&[&suite], &["pw-extension-dual", "pw-pair-dual", "co-pw-dual", "minimal-type-vs-oracle"]);
    lines.push((
        3,
        "dual-oracle suite",
        Line { ok: ok && suite_secs < SUITE_LIMIT && suite.count == SUITE_COUNT, detail: format!("{SUITE_COUNT} instances: {detail}"), secs: suite_secs },
    ));
    lines.push((4, "length formulas", timed(|| tally_line(&both, &["length-dimension"]))));
    lines.push((5, "co-pw equivalence", timed(|| tally_line(&both, &["co-pw-equivalence"]))));
    lines.push((
        6,
        "structural laws",
        timed(|| {
            let (ok, detail) = tally_line(&both, &["crucial-ideal", "hereditary-pw", "hereditary-pair", "jacobson-squares"]);
            let (tally, _) = harness::run_jacobson_builder(SUITE_SEED, BUILDER_COUNT, &cfg.opts);
            let built = tally.pass == BUILDER_COUNT && tally.fail == 0;
            (ok && built, format!("{detail}; builder {}/{} pw minimal", tally.pass, BUILDER_COUNT))
        }),
    ));
    lines.push((7, "tower profiles", timed(|| tally_line(&both, &["tower-profiles"]))));
    lines.push((8, "independent atoms", timed(|| tally_line(&both, &["independent-atoms"]))));
    lines.push((9, "determinism", criterion_determinism(&cfg)));

    let all_checks = harness::CHECKS;
    let (fail, ..) = fails(&both, all_checks);
    for (id, name, line) in &lines {
        print(*id, name, line);
    }
    println!("harness: {} catalog + {} random instances, {} failing checks overall", catalog_summary.count, suite.count, fail);
    let passed = lines.iter().filter(|l| l.2.ok).count();
    println!("{passed}/{} criteria pass", lines.len());
    if passed != lines.len() || fail > 0 {
        std::process::exit(1);
    }
}
