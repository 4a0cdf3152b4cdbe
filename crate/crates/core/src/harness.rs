//! Cross-checks between independent procedures on batches of extensions.
//! Every check reports `pass`, `fail`, `not-applicable` or `unconfirmed`; a
//! fail carries a certificate with the full instance.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{self, Algebra, Element, Subalgebra, Subspace, Truncation};
use crate::canon::{self, MinimalType};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::io::Extension;
use crate::lattice::{self, IntervalLattice};
use crate::options::Options;
use crate::pointwise::{self, CaseLabel, PointwiseVerdict, Profile};
use crate::random::{random_instance, RandomProfile};
use crate::report::{self, Analysis};
use crate::ringstruct;
use crate::verdict::Truth;

/// Names of the per-instance checks, in report order.
pub const CHECKS: &[&str] = &[
    "analysis",
    "minimal-type-vs-oracle",
    "pw-extension-dual",
    "pw-pair-dual",
    "co-pw-dual",
    "implication-chain",
    "co-pw-equivalence",
    "case-shape",
    "length-dimension",
    "crucial-ideal",
    "hereditary-pw",
    "hereditary-pair",
    "jacobson-squares",
    "tower-profiles",
    "independent-atoms",
    "geometric-iff-pair",
    "atomistic-on-pw",
    "hasse-covers-minimal",
    "lattice-closed",
    "jordan-holder",
    "closure-idempotent",
    "closure-stable",
    "seminormal-conductor-radical",
    "unique-maximal-over-conductor",
    "spectral-classification",
    "nilradical-bruteforce",
    "conductor-bruteforce",
    "fip-shortcut",
    "quadratic-seminormal",
    "tower-equivalence",
    "catalog-expected",
];

/// Name of the suite-level check over seeded `R + J` constructions.
pub const JACOBSON_BUILDER: &str = "jacobson-builder";

#[derive(Debug, Clone)]
pub enum Outcome {
    Pass,
    Fail(String),
    NotApplicable,
    Unconfirmed,
}

impl Outcome {
    fn from_bool(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(detail())
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub unconfirmed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub check: String,
    pub instance_id: String,
    pub detail: String,
    /// `[definition, characterization]` for the three pointwise properties,
    /// when the analysis ran.
    pub verdicts: Option<Value>,
    pub instance: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct HarnessSummary {
    pub seed: u64,
    pub count: usize,
    pub profile: String,
    pub tallies: BTreeMap<String, Tally>,
    pub certificates: Vec<Certificate>,
}

impl HarnessSummary {
    pub fn fails(&self) -> usize {
        self.tallies.values().map(|t| t.fail).sum()
    }

    pub fn tally(&self, name: &str) -> Tally {
        self.tallies.get(name).copied().unwrap_or_default()
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    fn empty(seed: u64, profile: &str) -> HarnessSummary {
        let mut tallies = BTreeMap::new();
        for name in CHECKS {
            tallies.insert(name.to_string(), Tally::default());
        }
        HarnessSummary { seed, count: 0, profile: profile.into(), tallies, certificates: Vec::new() }
    }

    fn absorb(&mut self, ext: &Extension, res: InstanceResult) {
        self.count += 1;
        for (name, outcome) in res.outcomes {
            let t = self.tallies.entry(name.to_string()).or_default();
            match outcome {
                Outcome::Pass => t.pass += 1,
                Outcome::NotApplicable => t.not_applicable += 1,
                Outcome::Unconfirmed => t.unconfirmed += 1,
                Outcome::Fail(detail) => {
                    t.fail += 1;
                    self.certificates.push(Certificate {
                        check: name.to_string(),
                        instance_id: ext.id.clone(),
                        detail,
                        verdicts: res.verdicts.clone(),
                        instance: serde_json::to_value(ext.to_file()).expect("serializable"),
                    });
                }
            }
        }
    }
}

/// Size limits for the more expensive checks.
#[derive(Debug, Clone)]
pub struct HarnessConfig {
    pub opts: Options,
    /// Node cap for lattice enumeration inside the harness.
    pub lattice_cap: usize,
    pub hereditary_pw_nodes: usize,
    pub hereditary_pair_nodes: usize,
    pub tower_nodes: usize,
    pub tower_chains: usize,
    pub hasse_nodes: usize,
    /// Largest `|S|` for element-scan brute force.
    pub bruteforce_elements: u64,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            opts: Options::default(),
            lattice_cap: 2000,
            hereditary_pw_nodes: 50,
            hereditary_pair_nodes: 30,
            tower_nodes: 50,
            tower_chains: 200,
            hasse_nodes: 200,
            bruteforce_elements: 1 << 12,
        }
    }
}

pub struct InstanceResult {
    pub outcomes: Vec<(&'static str, Outcome)>,
    pub verdicts: Option<Value>,
}

fn error_outcome(e: &Error) -> Outcome {
    match e {
        Error::ScanCapExceeded { .. }
        | Error::NodeCapExceeded(_)
        | Error::UnsupportedDecomposition(_)
        | Error::TooManyAtoms(_) => Outcome::Unconfirmed,
        other => Outcome::Fail(other.to_string()),
    }
}

fn guard(f: impl FnOnce() -> Result<Outcome>) -> Outcome {
    f().unwrap_or_else(|e| error_outcome(&e))
}

fn verdicts_json(v: &[PointwiseVerdict; 3]) -> Value {
    let mut m = serde_json::Map::new();
    for x in v {
        m.insert(x.property.name().into(), json!([x.definition.truth, x.characterization.truth]));
    }
    Value::Object(m)
}

fn dual(v: &PointwiseVerdict) -> Outcome {
    match v.agreement() {
        Some(true) => Outcome::Pass,
        Some(false) => Outcome::Fail(format!(
            "{}: definition {} vs characterization {} ({})",
            v.property.name(),
            v.definition.truth,
            v.characterization.truth,
            v.characterization.clause.unwrap_or("-")
        )),
        None => Outcome::Unconfirmed,
    }
}

/// Run every check on one extension.
pub fn check_instance(ext: &Extension, cfg: &HarnessConfig) -> InstanceResult {
    let mut out: Vec<(&'static str, Outcome)> = Vec::with_capacity(CHECKS.len());
    let alg = &ext.alg;
    let opts = &cfg.opts;
    let lat_opts = Options { node_cap: cfg.lattice_cap.min(opts.node_cap), ..opts.clone() };

    let mut lattice_outcome = None;
    let lat = if alg.field().is_finite() {
        match lattice::enumerate_interval(alg, &ext.r, &ext.s, &lat_opts) {
            Ok(l) => Some(l),
            Err(e) => {
                lattice_outcome = Some(error_outcome(&e));
                None
            }
        }
    } else {
        None
    };
    let analysis = match build_analysis(ext, opts, lat) {
        Ok(a) => a,
        Err(e) => {
            let o = error_outcome(&e);
            for name in CHECKS {
                out.push((name, o.clone()));
            }
            return InstanceResult { outcomes: out, verdicts: None };
        }
    };
    out.push(("analysis", lattice_outcome.unwrap_or(Outcome::Pass)));
    let a = &analysis;
    let p = &a.profile;
    let lat = a.lattice.as_ref();
    let (pw, pair, co) = (a.pw(), a.pair(), a.co_pw());
    let pw_certified = pw == Truth::True;

    out.push(("minimal-type-vs-oracle", guard(|| minimal_vs_oracle(alg, p, opts))));
    out.push(("pw-extension-dual", dual(&a.verdicts[0])));
    out.push(("pw-pair-dual", dual(&a.verdicts[1])));
    out.push(("co-pw-dual", dual(&a.verdicts[2])));
    out.push(("implication-chain", implication_chain(p, pw, pair, co)));
    out.push(("co-pw-equivalence", co_pw_equivalence(lat, pair, co)));
    out.push(("case-shape", guard(|| case_shape(a))));
    out.push((
        "length-dimension",
        match &a.length {
            None if pw_certified && p.chain.is_exact() => Outcome::Fail("no applicable length formula".into()),
            None => Outcome::NotApplicable,
            Some(l) => Outcome::from_bool(l.holds, || format!("{:?}", l)),
        },
    ));
    out.push(("crucial-ideal", guard(|| crucial_ideal(alg, a, pw_certified))));
    out.push(("hereditary-pw", guard(|| hereditary_pw(alg, lat, pw, cfg))));
    out.push(("hereditary-pair", guard(|| hereditary_pair(alg, lat, pair, cfg))));
    out.push((
        "jacobson-squares",
        if pw_certified {
            guard(|| Ok(Outcome::from_bool(pointwise::jacobson_squares_check(alg, &p.r, &p.s)?, || "J^[2] ⊄ M".into())))
        } else {
            Outcome::NotApplicable
        },
    ));
    out.push(("tower-profiles", guard(|| tower_profiles(alg, p, lat, cfg))));
    out.push(("independent-atoms", guard(|| independent_atoms(alg, lat, pair))));
    out.push((
        "geometric-iff-pair",
        match (lat, pw, pair.as_bool()) {
            (Some(l), Truth::True, Some(b)) => {
                let g = l.is_geometric(alg);
                Outcome::from_bool(g == b, || format!("geometric {} but pair {}", g, b))
            }
            (Some(_), Truth::True, None) => Outcome::Unconfirmed,
            _ => Outcome::NotApplicable,
        },
    ));
    out.push((
        "atomistic-on-pw",
        match (lat, pw) {
            (Some(l), Truth::True) => {
                Outcome::from_bool(l.is_atomistic(alg), || format!("node {:?} is not a join of atoms", l.atomistic_witness(alg)))
            }
            _ => Outcome::NotApplicable,
        },
    ));
    out.push(("hasse-covers-minimal", guard(|| hasse_covers(alg, lat, opts, cfg))));
    out.push((
        "lattice-closed",
        match lat {
            Some(l) if l.len() <= cfg.hasse_nodes => {
                Outcome::from_bool(l.is_closed_under_operations(alg), || "join or meet leaves the node set".into())
            }
            _ => Outcome::NotApplicable,
        },
    ));
    out.push((
        "jordan-holder",
        match lat {
            Some(l) if l.is_geometric(alg) => {
                let lens = l.maximal_chain_lengths();
                Outcome::from_bool(lens.len() == 1, || format!("maximal chain lengths {:?}", lens.keys().collect::<Vec<_>>()))
            }
            _ => Outcome::NotApplicable,
        },
    ));
    out.push(("closure-idempotent", guard(|| closure_idempotent(alg, p, opts))));
    out.push(("closure-stable", guard(|| closure_stable(alg, p, lat, opts, cfg))));
    out.push(("seminormal-conductor-radical", guard(|| seminormal_conductor(alg, p))));
    out.push(("unique-maximal-over-conductor", guard(|| unique_maximal(alg, p))));
    out.push(("spectral-classification", guard(|| spectral(alg, p))));
    out.push(("nilradical-bruteforce", guard(|| nilradical_bruteforce(alg, &p.s, cfg))));
    out.push(("conductor-bruteforce", guard(|| conductor_bruteforce(alg, p, cfg))));
    out.push((
        "fip-shortcut",
        match pointwise::fip_shortcut_check(alg, p, pw) {
            Some(ok) => Outcome::from_bool(ok, || format!("t-closed, pw {} but minimal {:?}", pw, p.is_minimal())),
            None => Outcome::NotApplicable,
        },
    ));
    out.push((
        "quadratic-seminormal",
        guard(|| {
            Ok(match pointwise::quadratic_seminormal_check(alg, p, pw, opts)? {
                Some(ok) => Outcome::from_bool(ok, || format!("pw {} minimal {:?}", pw, p.is_minimal())),
                None => Outcome::NotApplicable,
            })
        }),
    ));
    out.push(("tower-equivalence", guard(|| tower_equivalence(alg, p, a, lat))));
    out.push(("catalog-expected", guard(|| catalog_expected(ext, a))));
    InstanceResult { outcomes: out, verdicts: Some(verdicts_json(&a.verdicts)) }
}

fn build_analysis(ext: &Extension, opts: &Options, lat: Option<IntervalLattice>) -> Result<Analysis> {
    let mut a = report::analyze(ext, opts, false)?;
    if let Some(l) = lat {
        // Rerun the lattice-dependent parts with the enumerated lattice.
        a.verdicts = pointwise::analyze_all(&ext.alg, &a.profile, opts, Some(&l))?;
        a.length = match pointwise::length_dimension_check(&ext.alg, &a.profile, Some(&l)) {
            Ok(r) => Some(r),
            Err(Error::InvalidPrecondition(_)) => None,
            Err(e) => return Err(e),
        };
        a.lattice = Some(l);
    }
    Ok(a)
}

fn minimal_vs_oracle(alg: &Algebra, p: &Profile, opts: &Options) -> Result<Outcome> {
    let Some(t) = &p.minimal else { return Ok(Outcome::Unconfirmed) };
    let (oracle, _) = canon::minimal_oracle(alg, &p.r, &p.s, opts)?;
    Ok(match oracle.as_bool() {
        None => Outcome::Unconfirmed,
        Some(o) => Outcome::from_bool(o == t.is_minimal(), || format!("minimal_type {} but oracle {}", t.label(), o)),
    })
}

fn implication_chain(p: &Profile, pw: Truth, pair: Truth, co: Truth) -> Outcome {
    let minimal = p.is_minimal();
    let violations = [
        (minimal == Some(true) && pair == Truth::False, "minimal but not a pair"),
        (pair == Truth::True && pw == Truth::False, "pair but not pointwise minimal"),
        (co == Truth::True && pair == Truth::False, "co-pointwise minimal but not a pair"),
    ];
    match violations.iter().find(|v| v.0) {
        Some((_, why)) => Outcome::Fail(why.to_string()),
        None if minimal.is_none() || !pw.is_certain() || !pair.is_certain() || !co.is_certain() => Outcome::Unconfirmed,
        None => Outcome::Pass,
    }
}

fn co_pw_equivalence(lat: Option<&IntervalLattice>, pair: Truth, co: Truth) -> Outcome {
    let Some(l) = lat else { return Outcome::NotApplicable };
    let (Some(pair), Some(co)) = (pair.as_bool(), co.as_bool()) else { return Outcome::Unconfirmed };
    let by_length = pair && l.length() == 2;
    let gens = pointwise::minimal_generator_count(l);
    let by_gens = pair && gens == 2;
    Outcome::from_bool(co == by_length && co == by_gens, || {
        format!("co-pw {} ; pair {} with length {} ; generators {}", co, pair, l.length(), gens)
    })
}

fn case_shape(a: &Analysis) -> Result<Outcome> {
    let p = &a.profile;
    let expect_label = a.pw() == Truth::True && p.is_minimal() == Some(false) && p.chain.is_exact();
    Ok(match (&a.case, expect_label) {
        (None, false) => Outcome::NotApplicable,
        (None, true) => Outcome::Fail("pointwise minimal and not minimal, but no case label".into()),
        (Some(_), false) => Outcome::Fail("case label on an extension outside the labelled class".into()),
        (Some((CaseLabel::Mixed, upper)), true) => match upper {
            Some(Truth::True) => Outcome::from_bool(p.chain.t != p.r && p.chain.t != p.s, || {
                "mixed shape with a trivial t-closure step".into()
            }),
            Some(Truth::Unconfirmed) | None => Outcome::Unconfirmed,
            Some(Truth::False) => Outcome::Fail("upper step of the mixed shape is not pointwise minimal".into()),
        },
        (Some(_), true) => Outcome::Pass,
    })
}

fn crucial_ideal(alg: &Algebra, a: &Analysis, pw: bool) -> Result<Outcome> {
    if !pw {
        return Ok(Outcome::NotApplicable);
    }
    let c = &a.crucial;
    let Some(m) = &c.crucial else {
        return Ok(Outcome::Fail(format!("support has {} maximal ideals", c.support.len())));
    };
    let root = ringstruct::radical_in(alg, &a.profile.r, &c.conductor)?;
    Ok(Outcome::from_bool(root == *m, || "crucial ideal differs from the radical of the conductor".into()))
}

fn subalgebra(l: &IntervalLattice, i: usize) -> &Subalgebra {
    &l.nodes[i]
}

fn hereditary_pw(alg: &Algebra, lat: Option<&IntervalLattice>, pw: Truth, cfg: &HarnessConfig) -> Result<Outcome> {
    let Some(l) = lat else { return Ok(Outcome::NotApplicable) };
    if pw != Truth::True || l.len() > cfg.hereditary_pw_nodes {
        return Ok(Outcome::NotApplicable);
    }
    let r = subalgebra(l, l.bottom());
    for t in 1..l.len() {
        let prof = Profile::new(alg, r, subalgebra(l, t), &cfg.opts)?;
        let side = pointwise::pw_by_characterization(alg, &prof);
        if side.truth != Truth::True {
            return Ok(Outcome::Fail(format!("R ⊂ node {} characterized as {}", t, side.truth)));
        }
    }
    Ok(Outcome::Pass)
}

fn hereditary_pair(alg: &Algebra, lat: Option<&IntervalLattice>, pair: Truth, cfg: &HarnessConfig) -> Result<Outcome> {
    let Some(l) = lat else { return Ok(Outcome::NotApplicable) };
    if pair != Truth::True || l.len() > cfg.hereditary_pair_nodes {
        return Ok(Outcome::NotApplicable);
    }
    for t in 0..l.len() {
        for u in 0..l.len() {
            if t == u || !l.leq(alg, t, u) {
                continue;
            }
            let prof = Profile::new(alg, subalgebra(l, t), subalgebra(l, u), &cfg.opts)?;
            let side = pointwise::pw_by_characterization(alg, &prof);
            if side.truth != Truth::True {
                return Ok(Outcome::Fail(format!("node {} ⊂ node {} characterized as {}", t, u, side.truth)));
            }
        }
    }
    Ok(Outcome::Pass)
}

/// The five profile clauses relating step types to the canonical
/// decomposition of the endpoints.
pub fn profile_clauses(types: &[MinimalType], sub: bool, infra: bool, semi: bool, tclosed: bool) -> Vec<&'static str> {
    let all = |f: &dyn Fn(&MinimalType) -> bool| types.iter().all(f);
    let ram = |t: &MinimalType| matches!(t, MinimalType::Ramified { .. });
    let dec = |t: &MinimalType| matches!(t, MinimalType::Decomposed { .. });
    let ine = |t: &MinimalType| matches!(t, MinimalType::Inert { .. });
    let mut bad = Vec::new();
    if sub != all(&ram) {
        bad.push("subintegral iff all ramified");
    }
    if infra != all(&|t| ram(t) || dec(t)) {
        bad.push("infra-integral iff ramified or decomposed");
    }
    if (semi && infra) != all(&dec) {
        bad.push("seminormal infra-integral iff all decomposed");
    }
    if semi != all(&|t| dec(t) || ine(t)) {
        bad.push("seminormal iff decomposed or inert");
    }
    if tclosed != all(&ine) {
        bad.push("t-closed iff all inert");
    }
    bad
}

fn tower_profiles(alg: &Algebra, p: &Profile, lat: Option<&IntervalLattice>, cfg: &HarnessConfig) -> Result<Outcome> {
    let Some(l) = lat else { return Ok(Outcome::NotApplicable) };
    if l.len() > cfg.tower_nodes {
        return Ok(Outcome::NotApplicable);
    }
    let c = &p.chain;
    let (sub, infra, semi, tc) = (c.plus == p.s, c.t == p.s, c.plus == p.r, c.t == p.r);
    for chain in l.maximal_chains(cfg.tower_chains) {
        let nodes: Vec<Subalgebra> = chain.iter().map(|&i| subalgebra(l, i).clone()).collect();
        let types = canon::tower_type_profile(alg, &nodes)?;
        let bad = profile_clauses(&types, sub, infra, semi, tc);
        if !bad.is_empty() {
            let labels: Vec<&str> = types.iter().map(MinimalType::label).collect();
            return Ok(Outcome::Fail(format!("chain {:?} types {:?} violates {:?}", chain, labels, bad)));
        }
    }
    Ok(Outcome::Pass)
}

fn independent_atoms(alg: &Algebra, lat: Option<&IntervalLattice>, pair: Truth) -> Result<Outcome> {
    let Some(l) = lat else { return Ok(Outcome::NotApplicable) };
    if pair != Truth::True {
        return Ok(Outcome::NotApplicable);
    }
    Ok(match l.minimal_spanning_independent(alg)? {
        None => Outcome::Fail("no independent spanning set of atoms".into()),
        Some(i) => Outcome::from_bool(i.len() == l.length() && l.join_all(alg, &i) == l.top(), || {
            format!("independent set of size {} but length {}", i.len(), l.length())
        }),
    })
}

fn hasse_covers(alg: &Algebra, lat: Option<&IntervalLattice>, opts: &Options, cfg: &HarnessConfig) -> Result<Outcome> {
    let Some(l) = lat else { return Ok(Outcome::NotApplicable) };
    if l.len() > cfg.hasse_nodes {
        return Ok(Outcome::NotApplicable);
    }
    for t in 0..l.len() {
        for u in 0..l.len() {
            if t == u || !l.leq(alg, t, u) {
                continue;
            }
            let cover = l.covers[t].binary_search(&u).is_ok();
            let (lo, hi) = (subalgebra(l, t), subalgebra(l, u));
            let (oracle, _) = canon::minimal_oracle(alg, lo, hi, opts)?;
            let ty = canon::minimal_type(alg, lo, hi)?;
            if oracle.as_bool() != Some(cover) || ty.is_minimal() != cover {
                return Ok(Outcome::Fail(format!(
                    "nodes {} ⊂ {}: cover {} oracle {} type {}",
                    t,
                    u,
                    cover,
                    oracle,
                    ty.label()
                )));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn closure_idempotent(alg: &Algebra, p: &Profile, opts: &Options) -> Result<Outcome> {
    let c = &p.chain;
    if !c.is_exact() {
        return Ok(Outcome::Unconfirmed);
    }
    let plus2 = canon::seminormalization(alg, &c.plus, &p.s, opts)?;
    let t2 = canon::t_closure(alg, &c.t, &p.s, opts)?;
    if !plus2.exactness.is_exact() || !t2.exactness.is_exact() {
        return Ok(Outcome::Unconfirmed);
    }
    Ok(Outcome::from_bool(plus2.result == c.plus && t2.result == c.t && c.t.contains_space(alg.field(), &c.plus), || {
        "closure changed when reapplied".into()
    }))
}

fn closure_stable(
    alg: &Algebra,
    p: &Profile,
    lat: Option<&IntervalLattice>,
    opts: &Options,
    cfg: &HarnessConfig,
) -> Result<Outcome> {
    let Some(l) = lat else { return Ok(Outcome::NotApplicable) };
    let c = &p.chain;
    let (sub, infra) = (c.plus == p.s, c.t == p.s);
    if !(sub || infra) || l.len() > cfg.hereditary_pw_nodes {
        return Ok(Outcome::NotApplicable);
    }
    for i in 1..l.len() - 1 {
        let t = subalgebra(l, i);
        for (lo, hi) in [(&p.r, t), (t, &p.s)] {
            if sub && canon::seminormalization(alg, lo, hi, opts)?.result != *hi {
                return Ok(Outcome::Fail(format!("subintegrality lost at node {}", i)));
            }
            if infra && canon::t_closure(alg, lo, hi, opts)?.result != *hi {
                return Ok(Outcome::Fail(format!("infra-integrality lost at node {}", i)));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn seminormal_conductor(alg: &Algebra, p: &Profile) -> Result<Outcome> {
    match p.chain.is_seminormal() {
        Truth::False => Ok(Outcome::NotApplicable),
        Truth::Unconfirmed => Ok(Outcome::Unconfirmed),
        Truth::True => {
            let root = ringstruct::radical_in(alg, &p.s, &p.conductor)?;
            Ok(Outcome::from_bool(root == p.conductor, || "conductor is not radical in S".into()))
        }
    }
}

fn unique_maximal(alg: &Algebra, p: &Profile) -> Result<Outcome> {
    let c = &p.chain;
    if !c.is_exact() || c.plus != c.t || c.t == p.s || !p.conductor_maximal {
        return Ok(Outcome::NotApplicable);
    }
    let f = alg.field();
    let over: Vec<Subspace> = ringstruct::maximal_ideals(alg, &p.s)?
        .iter()
        .filter(|q| q.intersection(f, &p.r) == p.conductor)
        .cloned()
        .collect();
    let inner = ringstruct::conductor(alg, &c.t, &p.s);
    Ok(Outcome::from_bool(over.len() == 1 && over[0] == p.radical && p.radical == inner, || {
        format!("{} maximal ideals over M; radical matches conductor of the closure: {}", over.len(), p.radical == inner)
    }))
}

fn spectral(alg: &Algebra, p: &Profile) -> Result<Outcome> {
    let c = &p.chain;
    let (infra, sub) = canon::spectral_classification(alg, &p.r, &p.s)?;
    let checks = [(c.is_infra_integral(), infra), (c.is_subintegral(), sub)];
    if checks.iter().any(|(t, _)| !t.is_certain()) {
        return Ok(Outcome::Unconfirmed);
    }
    Ok(Outcome::from_bool(checks.iter().all(|(t, b)| t.as_bool() == Some(*b)), || {
        format!("closures say infra {} sub {}, residues say {} {}", c.is_infra_integral(), c.is_subintegral(), infra, sub)
    }))
}

fn small(alg: &Algebra, t: &Subalgebra, cfg: &HarnessConfig) -> bool {
    alg.field().order().and_then(|q| q.checked_pow(t.dim() as u32)).is_some_and(|n| n <= cfg.bruteforce_elements)
}

fn nilradical_bruteforce(alg: &Algebra, s: &Subalgebra, cfg: &HarnessConfig) -> Result<Outcome> {
    if !small(alg, s, cfg) {
        return Ok(Outcome::NotApplicable);
    }
    let f = alg.field();
    let n = s.dim() as u64;
    let nil: Vec<Element> = s.elements(f, cfg.bruteforce_elements)?.filter(|x| alg.is_zero(&alg.pow(x, n))).collect();
    let count = nil.len() as u64;
    let span = alg.span(nil);
    let fast = ringstruct::nilradical_of(alg, s);
    let q = f.order().expect("finite");
    Ok(Outcome::from_bool(span == fast && q.checked_pow(fast.dim() as u32) == Some(count), || {
        format!("scan found {} nilpotents spanning dim {}, fast nilradical dim {}", count, span.dim(), fast.dim())
    }))
}

fn conductor_bruteforce(alg: &Algebra, p: &Profile, cfg: &HarnessConfig) -> Result<Outcome> {
    if !small(alg, &p.r, cfg) {
        return Ok(Outcome::NotApplicable);
    }
    let f = alg.field();
    let members: Vec<Element> = p
        .r
        .elements(f, cfg.bruteforce_elements)?
        .filter(|x| p.s.rows().iter().all(|b| p.r.contains(f, &alg.mul(x, b))))
        .collect();
    let count = members.len() as u64;
    let span = alg.span(members);
    let q = f.order().expect("finite");
    Ok(Outcome::from_bool(span == p.conductor && q.checked_pow(span.dim() as u32) == Some(count), || {
        format!("scan conductor dim {} ({} elements), fast conductor dim {}", span.dim(), count, p.conductor.dim())
    }))
}

fn tower_equivalence(alg: &Algebra, p: &Profile, a: &Analysis, lat: Option<&IntervalLattice>) -> Result<Outcome> {
    let Some(l) = lat else { return Ok(Outcome::NotApplicable) };
    match pointwise::tower_equivalence_check(alg, p, &a.verdicts, l) {
        Ok(r) if r.holds => Ok(Outcome::Pass),
        Ok(r) => Ok(Outcome::Fail(format!("{:?}", r))),
        Err(Error::InvalidPrecondition(_)) => Ok(Outcome::NotApplicable),
        Err(e) => Err(e),
    }
}

fn catalog_expected(ext: &Extension, a: &Analysis) -> Result<Outcome> {
    let Some(e) = &ext.expected else { return Ok(Outcome::NotApplicable) };
    let alg = &ext.alg;
    let mut bad: Vec<String> = Vec::new();
    let mut cmp = |name: &str, want: Option<String>, got: String| {
        if let Some(w) = want {
            if w != got {
                bad.push(format!("{}: expected {}, got {}", name, w, got));
            }
        }
    };
    cmp("pw", e.pw.map(|b| b.to_string()), a.pw().to_string());
    cmp("pair", e.pair.map(|b| b.to_string()), a.pair().to_string());
    cmp("co_pw", e.co_pw.map(|b| b.to_string()), a.co_pw().to_string());
    cmp("case", e.case.clone(), a.case.map(|c| c.0.letter().to_string()).unwrap_or_else(|| "none".into()));
    cmp(
        "minimal_type",
        e.minimal_type.clone(),
        a.profile.minimal.as_ref().map(|t| t.label().to_string()).unwrap_or_else(|| "undecided".into()),
    );
    let lat = a.lattice.as_ref();
    let stat = |f: &dyn Fn(&IntervalLattice) -> String| lat.map(f).unwrap_or_else(|| "none".into());
    cmp("lattice_nodes", e.lattice_nodes.map(|n| n.to_string()), stat(&|l| l.len().to_string()));
    cmp("atoms", e.atoms.map(|n| n.to_string()), stat(&|l| l.atoms().len().to_string()));
    cmp("length", e.length.map(|n| n.to_string()), stat(&|l| l.length().to_string()));
    cmp("geometric", e.geometric.map(|b| b.to_string()), stat(&|l| l.is_geometric(alg).to_string()));
    cmp(
        "definition_witness",
        e.definition_witness.map(|b| b.to_string()),
        a.verdicts[0].definition.witness.is_some().to_string(),
    );
    if let (Some(want), Some(chain)) = (&e.step_types, &ext.chain) {
        let got: Vec<String> = canon::tower_type_profile(alg, chain)?.iter().map(|t| t.label().to_string()).collect();
        cmp("step_types", Some(want.join(",")), got.join(","));
    }
    if let Some(want) = &e.generator_types {
        let got: Vec<String> = ext
            .generators
            .iter()
            .map(|x| canon::minimal_type(alg, &ext.r, &alg.adjoin(&ext.r, x)).map(|t| t.label().to_string()))
            .collect::<Result<_>>()?;
        cmp("generator_types", Some(want.join(",")), got.join(","));
    }
    Ok(if bad.is_empty() { Outcome::Pass } else { Outcome::Fail(bad.join("; ")) })
}

// ---------------------------------------------------------------------------
// Suites

/// Check a batch of extensions in parallel; tallies follow input order.
pub fn run_batch(exts: &[Extension], cfg: &HarnessConfig, seed: u64, profile: &str) -> HarnessSummary {
    let results: Vec<InstanceResult> = exts.par_iter().map(|e| check_instance(e, cfg)).collect();
    let mut summary = HarnessSummary::empty(seed, profile);
    for (ext, res) in exts.iter().zip(results) {
        summary.absorb(ext, res);
    }
    summary
}

/// `count` random instances of `profile`, generated and checked in parallel.
pub fn run_random(profile: &RandomProfile, seed: u64, count: usize, cfg: &HarnessConfig) -> Result<HarnessSummary> {
    let exts: Vec<Extension> =
        (0..count as u64).into_par_iter().map(|i| random_instance(profile, seed, i)).collect::<Result<_>>()?;
    Ok(run_batch(&exts, cfg, seed, &profile.name))
}

/// One seeded `R ⊂ R + J` construction, checked for pointwise minimality by
/// both procedures.
pub fn jacobson_builder_case(seed: u64, opts: &Options) -> Result<(Extension, Outcome)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = [2u32, 2, 3][rng.gen_range(0..3)];
    let f = Field::prime(p)?;
    let m = rng.gen_range(1..=3usize);
    let mode = if rng.gen_bool(0.5) { Truncation::SquaresOnly } else { Truncation::SquaresAndProducts };
    let alg = algebra::truncated_poly_algebra(&f, m, mode);
    let s = alg.full();
    let nil = ringstruct::nilradical(&alg);
    // R = k, or k + N^2 when that has maximal conductor.
    let n2 = alg.product_space(&nil, &nil);
    let mut r = alg.base_line();
    if n2.dim() > 0 && rng.gen_bool(0.5) {
        let cand = alg.close(&n2.sum(&f, alg.base_line().space()));
        if ringstruct::maximal_ideals(&alg, &cand)?.contains(&ringstruct::conductor(&alg, &cand, &s)) {
            r = cand;
        }
    }
    for _ in 0..64 {
        let coeffs: Vec<Scalar> = (0..nil.dim()).map(|_| Scalar::Gf(rng.gen_range(0..p))).collect();
        let y = nil.combine(&f, &coeffs);
        if alg.is_zero(&y) || r.contains(&f, &y) {
            continue;
        }
        let j = alg.ideal_generated(&s, std::slice::from_ref(&y));
        let upper = match pointwise::jacobson_builder(&alg, &r, &s, &j) {
            Ok(u) => u,
            Err(Error::InvalidPrecondition(_)) => continue,
            Err(e) => return Err(e),
        };
        let ext = Extension {
            id: format!("jacobson_s{}", seed),
            alg: alg.clone(),
            r: r.clone(),
            s: upper.clone(),
            chain: None,
            generators: vec![y],
            expected: None,
            notes: Some("R + J for an ideal J with squares in the conductor".into()),
        };
        let def = pointwise::pw_by_definition(&alg, &r, &upper, opts)?;
        let prof = Profile::new(&alg, &r, &upper, opts)?;
        let ch = pointwise::pw_by_characterization(&alg, &prof);
        let ok = def.truth == Truth::True && ch.truth == Truth::True;
        let outcome = Outcome::from_bool(ok, || format!("definition {} characterization {}", def.truth, ch.truth));
        return Ok((ext, outcome));
    }
    Err(Error::Internal(format!("no admissible ideal found for seed {}", seed)))
}

/// `count` seeded builder constructions, tallied under [`JACOBSON_BUILDER`].
pub fn run_jacobson_builder(seed: u64, count: usize, opts: &Options) -> (Tally, Vec<Certificate>) {
    let results: Vec<Result<(Extension, Outcome)>> =
        (0..count as u64).into_par_iter().map(|i| jacobson_builder_case(seed.wrapping_add(i), opts)).collect();
    let mut t = Tally::default();
    let mut certs = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        let (ext, outcome) = match r {
            Ok(x) => x,
            Err(e) => {
                t.fail += 1;
                certs.push(Certificate {
                    check: JACOBSON_BUILDER.into(),
                    instance_id: format!("jacobson_s{}", seed.wrapping_add(i as u64)),
                    detail: e.to_string(),
                    verdicts: None,
                    instance: Value::Null,
                });
                continue;
            }
        };
        match outcome {
            Outcome::Pass => t.pass += 1,
            Outcome::NotApplicable => t.not_applicable += 1,
            Outcome::Unconfirmed => t.unconfirmed += 1,
            Outcome::Fail(detail) => {
                t.fail += 1;
                certs.push(Certificate {
                    check: JACOBSON_BUILDER.into(),
                    instance_id: ext.id.clone(),
                    detail,
                    verdicts: None,
                    instance: serde_json::to_value(ext.to_file()).expect("serializable"),
                });
            }
        }
    }
    (t, certs)
}

/// Fold a builder suite into a summary.
pub fn add_builder_suite(summary: &mut HarnessSummary, tally: Tally, certs: Vec<Certificate>) {
    summary.tallies.insert(JACOBSON_BUILDER.into(), tally);
    summary.certificates.extend(certs);
}
