//! Full classification of one extension and its JSON report.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::algebra::{Algebra, Subspace};
use crate::canon::{Exactness, MinimalType};
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::io::Extension;
use crate::lattice::{self, IntervalLattice};
use crate::options::Options;
use crate::pointwise::{self, CaseLabel, LengthDimensionReport, PointwiseVerdict, Profile, Side, Witness};
use crate::ringstruct::{self, CrucialReport};
use crate::verdict::Truth;

/// Everything computed about one extension.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub profile: Profile,
    pub lattice: Option<IntervalLattice>,
    pub verdicts: [PointwiseVerdict; 3],
    /// Present when the extension is certified pointwise minimal and not
    /// minimal. The second value is the re-test of the upper step for the
    /// mixed shape.
    pub case: Option<(CaseLabel, Option<Truth>)>,
    pub length: Option<LengthDimensionReport>,
    pub crucial: CrucialReport,
    pub timings: Vec<(&'static str, f64)>,
}

impl Analysis {
    pub fn pw(&self) -> Truth {
        self.verdicts[0].value()
    }

    pub fn pair(&self) -> Truth {
        self.verdicts[1].value()
    }

    pub fn co_pw(&self) -> Truth {
        self.verdicts[2].value()
    }
}

fn timed<T>(timings: &mut Vec<(&'static str, f64)>, name: &'static str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f()?;
    timings.push((name, start.elapsed().as_secs_f64() * 1000.0));
    Ok(out)
}

/// Classify `ext`. The lattice is enumerated over finite fields unless
/// `with_lattice` is false.
pub fn analyze(ext: &Extension, opts: &Options, with_lattice: bool) -> Result<Analysis> {
    let alg = &ext.alg;
    let mut timings = Vec::new();
    let profile = timed(&mut timings, "profile", || Profile::new(alg, &ext.r, &ext.s, opts))?;
    let crucial = ringstruct::crucial_report(alg, &ext.r, &ext.s)?;
    let lattice = if with_lattice && alg.field().is_finite() {
        Some(timed(&mut timings, "lattice", || lattice::enumerate_interval(alg, &ext.r, &ext.s, opts))?)
    } else {
        None
    };
    let verdicts = timed(&mut timings, "pointwise", || pointwise::analyze_all(alg, &profile, opts, lattice.as_ref()))?;
    let case = if verdicts[0].value() == Truth::True && profile.is_minimal() == Some(false) {
        match pointwise::case_label(alg, &profile, opts) {
            Ok(c) => Some(c),
            Err(Error::InvalidPrecondition(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let length = match pointwise::length_dimension_check(alg, &profile, lattice.as_ref()) {
        Ok(l) => Some(l),
        Err(Error::InvalidPrecondition(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(Analysis { profile, lattice, verdicts, case, length, crucial, timings })
}

// ---------------------------------------------------------------------------
// JSON

pub type Basis = Vec<Vec<Value>>;

pub fn basis_json(alg: &Algebra, s: &Subspace) -> Basis {
    let f = alg.field();
    s.rows().iter().map(|v| v.iter().map(|c| f.to_json(c)).collect()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Dims {
    pub algebra: usize,
    #[serde(rename = "R")]
    pub r: usize,
    #[serde(rename = "S")]
    pub s: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    #[serde(rename = "R")]
    pub r: usize,
    pub seminormalization: usize,
    pub t_closure: usize,
    #[serde(rename = "S")]
    pub s: usize,
    pub seminormalization_exactness: Exactness,
    pub t_closure_exactness: Exactness,
    pub subintegral: Truth,
    pub infra_integral: Truth,
    pub seminormal: Truth,
    pub t_closed: Truth,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum WitnessJson {
    Element { element: Vec<Value> },
    Step { lower: Basis, upper: Basis },
}

#[derive(Debug, Clone, Serialize)]
pub struct SideReport {
    pub value: Truth,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub value: Truth,
    pub definition: SideReport,
    pub characterization: SideReport,
    /// Absent unless both sides are certain.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointwiseReport {
    pub pw_extension: VerdictReport,
    pub pw_pair: VerdictReport,
    pub co_pw: VerdictReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub label: char,
    pub shape: CaseLabel,
    /// Pointwise minimality of the upper step, mixed shape only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_step_pw: Option<Truth>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeStats {
    pub nodes: usize,
    pub atoms: usize,
    pub coatoms: usize,
    pub length: usize,
    pub semimodular: bool,
    pub atomistic: bool,
    pub geometric: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionReport {
    pub id: String,
    pub field: FieldDescriptor,
    pub dims: Dims,
    pub conductor: Basis,
    pub crucial: Option<Basis>,
    pub canonical_chain: ChainReport,
    /// Absent when the backend cannot decide minimality.
    pub minimal_type: Option<MinimalType>,
    pub pointwise: PointwiseReport,
    pub case_label: Option<CaseReport>,
    pub length_dimension: Option<LengthDimensionReport>,
    pub lattice: Option<LatticeStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, f64)>>,
}

fn side_report(alg: &Algebra, s: &Side) -> SideReport {
    let f = alg.field();
    let witness = s.witness.as_ref().map(|w| match w {
        Witness::Element(x) => WitnessJson::Element { element: x.iter().map(|c| f.to_json(c)).collect() },
        Witness::Step { lower, upper } => WitnessJson::Step { lower: basis_json(alg, lower), upper: basis_json(alg, upper) },
    });
    SideReport { value: s.truth, clause: s.clause, witness }
}

fn verdict_report(alg: &Algebra, v: &PointwiseVerdict) -> VerdictReport {
    VerdictReport {
        value: v.value(),
        definition: side_report(alg, &v.definition),
        characterization: side_report(alg, &v.characterization),
        agree: v.agreement(),
    }
}

impl ExtensionReport {
    pub fn new(ext: &Extension, a: &Analysis, with_timings: bool) -> ExtensionReport {
        let alg = &ext.alg;
        let c = &a.profile.chain;
        let [pw, pair, co] = &a.verdicts;
        ExtensionReport {
            id: ext.id.clone(),
            field: alg.field().descriptor().clone(),
            dims: Dims { algebra: alg.dim(), r: ext.r.dim(), s: ext.s.dim() },
            conductor: basis_json(alg, &a.crucial.conductor),
            crucial: a.crucial.crucial.as_ref().map(|m| basis_json(alg, m)),
            canonical_chain: ChainReport {
                r: c.base.dim(),
                seminormalization: c.plus.dim(),
                t_closure: c.t.dim(),
                s: c.top.dim(),
                seminormalization_exactness: c.plus_exactness,
                t_closure_exactness: c.t_exactness,
                subintegral: c.is_subintegral(),
                infra_integral: c.is_infra_integral(),
                seminormal: c.is_seminormal(),
                t_closed: c.is_t_closed(),
            },
            minimal_type: a.profile.minimal.clone(),
            pointwise: PointwiseReport {
                pw_extension: verdict_report(alg, pw),
                pw_pair: verdict_report(alg, pair),
                co_pw: verdict_report(alg, co),
            },
            case_label: a.case.map(|(shape, upper)| CaseReport { label: shape.letter(), shape, upper_step_pw: upper }),
            length_dimension: a.length.clone(),
            lattice: a.lattice.as_ref().map(|l| LatticeStats {
                nodes: l.len(),
                atoms: l.atoms().len(),
                coatoms: l.coatoms().len(),
                length: l.length(),
                semimodular: l.is_semimodular(alg),
                atomistic: l.is_atomistic(alg),
                geometric: l.is_geometric(alg),
            }),
            timings_ms: with_timings.then(|| a.timings.iter().map(|(k, v)| (k.to_string(), *v)).collect()),
        }
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}
