//! Pointwise minimal extensions, pointwise minimal pairs and co-pointwise
//! minimal extensions. Each property has a definitional procedure (scan the
//! elements, exhaustive over finite fields and sampled otherwise) and a
//! structural characterization through the conductor and the canonical
//! decomposition.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, Element, Subalgebra, Subspace};
use crate::canon::{self, candidate_elements, CanonicalChain, MinimalType};
use crate::error::{Error, Result};
use crate::lattice::{self, IntervalLattice};
use crate::options::Options;
use crate::ringstruct::{self, conductor, maximal_ideals, radical_in, squares_within};
use crate::verdict::Truth;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    PwExtension,
    PwPair,
    CoPw,
}

impl Property {
    pub const ALL: [Property; 3] = [Property::PwExtension, Property::PwPair, Property::CoPw];

    pub fn name(self) -> &'static str {
        match self {
            Property::PwExtension => "pw-extension",
            Property::PwPair => "pw-pair",
            Property::CoPw => "co-pw",
        }
    }
}

/// Evidence against a property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// An element `x` whose monogenic step is not minimal.
    Element(Element),
    /// A non-minimal step `T ⊂ T[x]` inside the interval.
    Step { lower: Subspace, upper: Subspace },
}

/// One side of a verdict: the value, a witness when false, and for
/// characterizations the clause that decided it.
#[derive(Debug, Clone)]
pub struct Side {
    pub truth: Truth,
    pub witness: Option<Witness>,
    pub clause: Option<&'static str>,
}

impl Side {
    fn yes(clause: &'static str) -> Side {
        Side { truth: Truth::True, witness: None, clause: Some(clause) }
    }

    fn no(clause: &'static str) -> Side {
        Side { truth: Truth::False, witness: None, clause: Some(clause) }
    }

    fn unconfirmed(clause: &'static str) -> Side {
        Side { truth: Truth::Unconfirmed, witness: None, clause: Some(clause) }
    }

    fn refuted(w: Witness) -> Side {
        Side { truth: Truth::False, witness: Some(w), clause: None }
    }

    fn plain(truth: Truth) -> Side {
        Side { truth, witness: None, clause: None }
    }
}

#[derive(Debug, Clone)]
pub struct PointwiseVerdict {
    pub property: Property,
    pub definition: Side,
    pub characterization: Side,
}

impl PointwiseVerdict {
    /// `Some(agree)` when both sides are certain.
    pub fn agreement(&self) -> Option<bool> {
        match (self.definition.truth.as_bool(), self.characterization.truth.as_bool()) {
            (Some(a), Some(b)) => Some(a == b),
            _ => None,
        }
    }

    /// The certain value, preferring the definition.
    pub fn value(&self) -> Truth {
        if self.definition.truth.is_certain() {
            self.definition.truth
        } else {
            self.characterization.truth
        }
    }
}

/// Shape of a pointwise minimal non-minimal extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseLabel {
    Subintegral,
    SeminormalInfraIntegral,
    TClosedRadicial,
    /// `R ⊂ T ⊂ S` with `R ⊂ T` infra-integral and `T ⊂ S` t-closed.
    Mixed,
}

impl CaseLabel {
    pub fn letter(self) -> char {
        match self {
            CaseLabel::Subintegral => 'a',
            CaseLabel::SeminormalInfraIntegral => 'b',
            CaseLabel::TClosedRadicial => 'c',
            CaseLabel::Mixed => 'd',
        }
    }
}

/// Everything the characterizations consume, computed once.
#[derive(Debug, Clone)]
pub struct Profile {
    pub r: Subalgebra,
    pub s: Subalgebra,
    /// `None` when the minimality question is outside what the backend
    /// decides.
    pub minimal: Option<MinimalType>,
    pub conductor: Subspace,
    pub conductor_maximal: bool,
    pub chain: CanonicalChain,
    /// `√_S (R:S)`.
    pub radical: Subspace,
    /// `dim R/M` over the base field.
    pub residue_dim: usize,
}

impl Profile {
    pub fn new(alg: &Algebra, r: &Subalgebra, s: &Subalgebra, opts: &Options) -> Result<Profile> {
        if r == s || !s.contains_space(alg.field(), r) {
            return Err(Error::InvalidPrecondition("pointwise analysis needs a proper extension R ⊂ S".into()));
        }
        let minimal = match canon::minimal_type(alg, r, s) {
            Ok(t) => Some(t),
            Err(Error::UnsupportedDecomposition(_)) => None,
            Err(e) => return Err(e),
        };
        let m = conductor(alg, r, s);
        let conductor_maximal = maximal_ideals(alg, r)?.contains(&m);
        let chain = canon::canonical_chain(alg, r, s, opts)?;
        let radical = radical_in(alg, s, &m)?;
        Ok(Profile {
            r: r.clone(),
            s: s.clone(),
            minimal,
            residue_dim: r.dim() - m.dim(),
            conductor: m,
            conductor_maximal,
            chain,
            radical,
        })
    }

    pub fn is_minimal(&self) -> Option<bool> {
        self.minimal.as_ref().map(MinimalType::is_minimal)
    }

    /// `|R/M| = 2`.
    pub fn residue_is_f2(&self, alg: &Algebra) -> bool {
        alg.field().order() == Some(2) && self.residue_dim == 1
    }

    /// `dim_{R/M} (S/M)`.
    pub fn relative_dim(&self) -> usize {
        (self.s.dim() - self.conductor.dim()) / self.residue_dim
    }

    /// `dim_{R/M} (√M/M)`.
    pub fn radical_rel_dim(&self) -> usize {
        (self.radical.dim() - self.conductor.dim()) / self.residue_dim
    }

    pub fn is_radicial(&self, alg: &Algebra) -> bool {
        ringstruct::is_height_one_radicial(alg, &self.r, &self.s)
    }
}

// ---------------------------------------------------------------------------
// Characterizations

pub fn pw_by_characterization(alg: &Algebra, p: &Profile) -> Side {
    match p.is_minimal() {
        Some(true) => return Side::yes("minimal"),
        None => return Side::unconfirmed("minimality-undecided"),
        Some(false) => {}
    }
    if !p.conductor_maximal {
        return Side::no("conductor-not-maximal");
    }
    if !p.chain.is_exact() {
        return Side::unconfirmed("closures-inexact");
    }
    let c = &p.chain;
    if c.plus == c.t && squares_within(alg, &p.radical, &p.conductor) && (c.t == p.s || p.is_radicial(alg)) {
        return Side::yes("equal-closures-square-zero-radicial");
    }
    if p.residue_is_f2(alg) && c.plus == p.r && c.t == p.s {
        return Side::yes("two-element-residue-seminormal-infra-integral");
    }
    Side::no("no-clause")
}

pub fn pair_by_characterization(alg: &Algebra, p: &Profile) -> Side {
    match p.is_minimal() {
        Some(true) => return Side::yes("minimal"),
        None => return Side::unconfirmed("minimality-undecided"),
        Some(false) => {}
    }
    if !p.conductor_maximal {
        return Side::no("conductor-not-maximal");
    }
    if !p.chain.is_exact() {
        return Side::unconfirmed("closures-inexact");
    }
    let c = &p.chain;
    let f = alg.field();
    if c.t == p.r && squares_within(alg, &p.radical, &p.conductor) && p.is_radicial(alg) {
        return Side::yes("t-closed-radicial");
    }
    if c.plus == p.s && p.conductor.contains_space(f, &alg.product_space(&p.radical, &p.radical)) {
        return Side::yes("subintegral-square-zero");
    }
    if p.residue_is_f2(alg) && c.plus == p.r && c.t == p.s && p.relative_dim() <= 3 {
        return Side::yes("two-element-residue-split-at-most-three");
    }
    Side::no("no-clause")
}

/// `S/M ≅ k^3` with `k = GF(2)`.
fn is_f2_cube(alg: &Algebra, p: &Profile) -> Result<bool> {
    if !p.residue_is_f2(alg) || p.relative_dim() != 3 {
        return Ok(false);
    }
    let rb = alg.rebase_subalgebra(&p.s)?;
    let q = rb.algebra.quotient(&rb.local_space(&p.conductor))?;
    if ringstruct::nilradical(&q.algebra).dim() != 0 {
        return Ok(false);
    }
    let dec = ringstruct::local_decomposition(&q.algebra)?;
    Ok(dec.len() == 3 && dec.residue_degrees.iter().all(|&d| d == 1))
}

pub fn co_pw_by_characterization(alg: &Algebra, p: &Profile) -> Side {
    if !p.conductor_maximal {
        return Side::no("conductor-not-maximal");
    }
    match p.is_minimal() {
        Some(true) => return Side::no("minimal"),
        None => return Side::unconfirmed("minimality-undecided"),
        Some(false) => {}
    }
    let f = alg.field();
    let dr = p.residue_dim;
    let pch = alg.characteristic() as usize;
    let subintegral = p.chain.is_subintegral();
    if subintegral == Truth::True
        && p.radical_rel_dim() == 2
        && p.conductor.contains_space(f, &alg.product_space(&p.radical, &p.radical))
    {
        return Side::yes("subintegral-plane-square-zero");
    }
    match is_f2_cube(alg, p) {
        Ok(true) => return Side::yes("two-element-residue-cube"),
        Ok(false) => {}
        Err(_) => return Side::unconfirmed("decomposition-unsupported"),
    }
    let s_over_m_field = p.radical == p.conductor
        && matches!(maximal_ideals(alg, &p.s), Ok(m) if m.contains(&p.conductor));
    if s_over_m_field && p.s.dim() - p.conductor.dim() == pch * pch * dr && p.is_radicial(alg) {
        return Side::yes("radicial-field-degree-p-squared");
    }
    if subintegral == Truth::Unconfirmed {
        return Side::unconfirmed("closures-inexact");
    }
    Side::no("no-clause")
}

// ---------------------------------------------------------------------------
// Definitions

fn complement_candidates(alg: &Algebra, r: &Subalgebra, s: &Subalgebra, opts: &Options, salt: u64) -> Vec<Element> {
    let f = alg.field();
    let comp = alg.span(r.complement_within(f, s));
    let mut c = candidate_elements(alg, &comp, opts.samples_for(f), opts.degree_budget, salt, opts.seed);
    let nil = ringstruct::nilradical_of(alg, s);
    c.extend(nil.rows().iter().cloned());
    c.retain(|x| !r.contains(f, x));
    c
}

/// Minimality of `lower ⊂ upper` for definitional scans: brute force over
/// finite fields, the direct classifier otherwise (`None` if undecided).
fn step_is_minimal(alg: &Algebra, lower: &Subalgebra, upper: &Subalgebra, opts: &Options) -> Result<Option<bool>> {
    // Intermediate rings are subspaces, so a codimension-one step is minimal.
    if upper.dim() == lower.dim() + 1 && upper.contains_space(alg.field(), lower) {
        return Ok(Some(true));
    }
    if alg.field().is_finite() {
        let (t, _) = canon::minimal_oracle(alg, lower, upper, opts)?;
        return Ok(t.as_bool());
    }
    match canon::minimal_type(alg, lower, upper) {
        Ok(t) => Ok(Some(t.is_minimal())),
        Err(Error::UnsupportedDecomposition(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `R ⊂ R[x]` minimal for every `x ∈ S \ R`.
pub fn pw_by_definition(alg: &Algebra, r: &Subalgebra, s: &Subalgebra, opts: &Options) -> Result<Side> {
    let f = alg.field();
    if f.is_finite() {
        let reps: Vec<Element> = r.coset_representatives(f, s, opts.scan_cap)?.skip(1).collect();
        let mono: Vec<Subalgebra> = reps.par_iter().map(|x| alg.adjoin(r, x)).collect();
        let mut distinct: Vec<Subalgebra> = mono.clone();
        distinct.sort();
        distinct.dedup();
        let verdicts: Vec<bool> = distinct
            .par_iter()
            .map(|u| step_is_minimal(alg, r, u, opts).map(|v| v == Some(true)))
            .collect::<Result<_>>()?;
        let table: HashMap<&Subalgebra, bool> = distinct.iter().zip(verdicts).collect();
        for (x, u) in reps.iter().zip(&mono) {
            if !table[u] {
                return Ok(Side::refuted(Witness::Element(x.clone())));
            }
        }
        return Ok(Side::plain(Truth::True));
    }
    for x in complement_candidates(alg, r, s, opts, 11) {
        let u = alg.adjoin(r, &x);
        if step_is_minimal(alg, r, &u, opts)? == Some(false) {
            return Ok(Side::refuted(Witness::Element(x)));
        }
    }
    Ok(Side::plain(Truth::Unconfirmed))
}

/// `T ⊂ S` pointwise minimal for every `T ∈ [R, S] \ {S}`.
pub fn pair_by_definition(
    alg: &Algebra,
    r: &Subalgebra,
    s: &Subalgebra,
    opts: &Options,
    lat: Option<&IntervalLattice>,
) -> Result<Side> {
    let f = alg.field();
    if f.is_finite() {
        let owned;
        let lat = match lat {
            Some(l) => l,
            None => {
                owned = lattice::enumerate_interval(alg, r, s, opts)?;
                &owned
            }
        };
        // T ⊂ T[x] is minimal iff T[x] is a cover of T.
        for t in 0..lat.len() {
            for &u in &lat.monogenic[t] {
                if lat.covers[t].binary_search(&u).is_err() {
                    return Ok(Side::refuted(Witness::Step {
                        lower: lat.nodes[t].space().clone(),
                        upper: lat.nodes[u].space().clone(),
                    }));
                }
            }
        }
        return Ok(Side::plain(Truth::True));
    }
    let first = pw_by_definition(alg, r, s, opts)?;
    if first.truth == Truth::False {
        return Ok(first);
    }
    let cands = complement_candidates(alg, r, s, opts, 13);
    let inner = cands.len().min(16);
    let mut budget = opts.samples_for(f);
    for x in &cands {
        let t = alg.adjoin(r, x);
        if t == *s {
            continue;
        }
        for y in cands.iter().take(inner) {
            if budget == 0 {
                return Ok(Side::plain(Truth::Unconfirmed));
            }
            budget -= 1;
            if t.contains(f, y) {
                continue;
            }
            let u = alg.adjoin(&t, y);
            if step_is_minimal(alg, &t, &u, opts)? == Some(false) {
                return Ok(Side::refuted(Witness::Step { lower: t.into_space(), upper: u.into_space() }));
            }
        }
    }
    Ok(Side::plain(Truth::Unconfirmed))
}

/// `R[x] ⊂ S` minimal for every `x ∈ S \ R`.
pub fn co_pw_by_definition(alg: &Algebra, r: &Subalgebra, s: &Subalgebra, opts: &Options) -> Result<Side> {
    let f = alg.field();
    if f.is_finite() {
        let reps: Vec<Element> = r.coset_representatives(f, s, opts.scan_cap)?.skip(1).collect();
        let mono: Vec<Subalgebra> = reps.par_iter().map(|x| alg.adjoin(r, x)).collect();
        let mut distinct: Vec<Subalgebra> = mono.clone();
        distinct.sort();
        distinct.dedup();
        let verdicts: Vec<bool> = distinct
            .par_iter()
            .map(|u| if u == s { Ok(false) } else { step_is_minimal(alg, u, s, opts).map(|v| v == Some(true)) })
            .collect::<Result<_>>()?;
        let table: HashMap<&Subalgebra, bool> = distinct.iter().zip(verdicts).collect();
        for (x, u) in reps.iter().zip(&mono) {
            if !table[u] {
                return Ok(Side::refuted(Witness::Element(x.clone())));
            }
        }
        return Ok(Side::plain(Truth::True));
    }
    for x in complement_candidates(alg, r, s, opts, 17) {
        let u = alg.adjoin(r, &x);
        if u == *s || step_is_minimal(alg, &u, s, opts)? == Some(false) {
            return Ok(Side::refuted(Witness::Element(x)));
        }
    }
    Ok(Side::plain(Truth::Unconfirmed))
}

/// Both sides of all three properties.
pub fn analyze_all(
    alg: &Algebra,
    profile: &Profile,
    opts: &Options,
    lat: Option<&IntervalLattice>,
) -> Result<[PointwiseVerdict; 3]> {
    let (r, s) = (&profile.r, &profile.s);
    let pw = PointwiseVerdict {
        property: Property::PwExtension,
        definition: pw_by_definition(alg, r, s, opts)?,
        characterization: pw_by_characterization(alg, profile),
    };
    let pair_def = if alg.field().is_finite() && lat.is_none() {
        Side::plain(Truth::Unconfirmed)
    } else {
        pair_by_definition(alg, r, s, opts, lat)?
    };
    let pair = PointwiseVerdict {
        property: Property::PwPair,
        definition: pair_def,
        characterization: pair_by_characterization(alg, profile),
    };
    let co = PointwiseVerdict {
        property: Property::CoPw,
        definition: co_pw_by_definition(alg, r, s, opts)?,
        characterization: co_pw_by_characterization(alg, profile),
    };
    Ok([pw, pair, co])
}

// ---------------------------------------------------------------------------
// Consequences

/// Shape of a pointwise minimal, non-minimal extension. For the mixed shape
/// the second value re-tests `ᵗR ⊂ S` for pointwise minimality.
pub fn case_label(alg: &Algebra, p: &Profile, opts: &Options) -> Result<(CaseLabel, Option<Truth>)> {
    if p.is_minimal() != Some(false) || pw_by_characterization(alg, p).truth != Truth::True || !p.chain.is_exact() {
        return Err(Error::InvalidPrecondition("case label needs a certified pointwise minimal non-minimal extension".into()));
    }
    let c = &p.chain;
    if c.plus == p.s {
        return Ok((CaseLabel::Subintegral, None));
    }
    if c.plus == p.r && c.t == p.s {
        return Ok((CaseLabel::SeminormalInfraIntegral, None));
    }
    if c.t == p.r {
        if !p.is_radicial(alg) {
            return Err(Error::Internal("t-closed pointwise minimal extension is not radicial".into()));
        }
        return Ok((CaseLabel::TClosedRadicial, None));
    }
    let upper = Profile::new(alg, &c.t, &p.s, opts)?;
    let side = pw_by_characterization(alg, &upper);
    let def = pw_by_definition(alg, &c.t, &p.s, opts)?;
    let truth = match (side.truth, def.truth) {
        (Truth::False, _) | (_, Truth::False) => Truth::False,
        (Truth::True, _) | (_, Truth::True) => Truth::True,
        _ => Truth::Unconfirmed,
    };
    Ok((CaseLabel::Mixed, Some(truth)))
}

#[derive(Debug, Clone, Serialize)]
pub struct LengthDimensionReport {
    pub clause: &'static str,
    /// `dim_{R/M} (S/M)`.
    pub relative_dim: usize,
    pub length: usize,
    /// `lattice` or `derived` (dimension formulas over infinite fields).
    pub length_source: &'static str,
    /// `dim_{R/M} (√M/M)` and `ℓ[R, ᵗR]` for the mixed shape.
    pub radical_dim: Option<usize>,
    pub inner_length: Option<usize>,
    pub holds: bool,
}

fn exact_log(p: usize, n: usize) -> Option<usize> {
    let (mut k, mut v) = (0, 1usize);
    while v < n {
        v *= p;
        k += 1;
    }
    (v == n).then_some(k)
}

/// Compare `dim_k(S/M)` with the length of `[R, S]` in the applicable shape.
pub fn length_dimension_check(alg: &Algebra, p: &Profile, lat: Option<&IntervalLattice>) -> Result<LengthDimensionReport> {
    if pw_by_characterization(alg, p).truth != Truth::True || !p.chain.is_exact() {
        return Err(Error::InvalidPrecondition("length formulas need a certified pointwise minimal extension".into()));
    }
    let pch = alg.characteristic() as usize;
    let d = p.relative_dim();
    let c = &p.chain;
    let source = if lat.is_some() { "lattice" } else { "derived" };
    let minimal = p.is_minimal() == Some(true);
    if c.t == p.s {
        let ell = match lat {
            Some(l) => l.length(),
            None if minimal => 1,
            None => d - 1,
        };
        return Ok(LengthDimensionReport {
            clause: "infra-integral",
            relative_dim: d,
            length: ell,
            length_source: source,
            radical_dim: None,
            inner_length: None,
            holds: d == 1 + ell,
        });
    }
    if c.t == p.r {
        let ell = match lat {
            Some(l) => Some(l.length()),
            None if minimal => Some(1),
            None => exact_log(pch, d),
        };
        let holds = match ell {
            Some(1) if minimal => true,
            Some(l) => pch.checked_pow(l as u32) == Some(d),
            None => false,
        };
        return Ok(LengthDimensionReport {
            clause: "t-closed",
            relative_dim: d,
            length: ell.unwrap_or(0),
            length_source: source,
            radical_dim: None,
            inner_length: None,
            holds,
        });
    }
    let n = p.radical_rel_dim();
    let (ell, inner) = match lat {
        Some(l) => {
            let ti = l.index_of(&c.t).ok_or_else(|| Error::Internal("t-closure missing from the lattice".into()))?;
            (Some(l.length()), Some(l.length_between(0, ti).expect("R ≤ ᵗR")))
        }
        None => {
            let t_rel = (c.t.dim() - p.conductor.dim()) / p.residue_dim;
            let inner = t_rel - 1;
            let top = exact_log(pch, (p.s.dim() - p.radical.dim()) / p.residue_dim);
            (top.map(|m| inner + m), Some(inner))
        }
    };
    let holds = match (ell, inner) {
        (Some(l), Some(i)) => i == n && l >= n && pch.checked_pow((l - n) as u32).map(|v| v + n) == Some(d),
        _ => false,
    };
    Ok(LengthDimensionReport {
        clause: "mixed",
        relative_dim: d,
        length: ell.unwrap_or(0),
        length_source: source,
        radical_dim: Some(n),
        inner_length: inner,
        holds,
    })
}

/// `R + J` for an ideal `J` of `S` with `J ⊄ R` and `J^[2] ⊆ M`, where
/// `(R, M)` is local with conductor `M`.
pub fn jacobson_builder(alg: &Algebra, r: &Subalgebra, s: &Subalgebra, j: &Subspace) -> Result<Subalgebra> {
    let f = alg.field();
    let m = conductor(alg, r, s);
    let max = maximal_ideals(alg, r)?;
    if max.len() != 1 || max[0] != m {
        return Err(Error::InvalidPrecondition("R must be local with the conductor as maximal ideal".into()));
    }
    if !alg.is_ideal(s, j) {
        return Err(Error::InvalidPrecondition("J is not an ideal of S".into()));
    }
    if r.contains_space(f, j) {
        return Err(Error::InvalidPrecondition("J is contained in R".into()));
    }
    if !squares_within(alg, j, &m) {
        return Err(Error::InvalidPrecondition("some square of an element of J lies outside M".into()));
    }
    Subalgebra::new(alg, r.sum(f, j))
}

/// `J^[2] ⊆ M` for the Jacobson radical `J` of `S`.
pub fn jacobson_squares_check(alg: &Algebra, r: &Subalgebra, s: &Subalgebra) -> Result<bool> {
    let m = conductor(alg, r, s);
    let j = ringstruct::jacobson_radical(alg, s)?;
    Ok(squares_within(alg, &j, &m))
}

/// `t^2 ∈ R + R t` for all `t ∈ S`; the condition only depends on the coset
/// `t + R`. Returns a violating representative.
pub fn quadratic_check(alg: &Algebra, r: &Subalgebra, s: &Subalgebra, opts: &Options) -> Result<(bool, Option<Element>)> {
    let f = alg.field();
    for t in r.coset_representatives(f, s, opts.scan_cap)?.skip(1) {
        let span = alg.span(r.rows().iter().cloned().chain(r.rows().iter().map(|a| alg.mul(a, &t))));
        if !span.contains(f, &alg.mul(&t, &t)) {
            return Ok((false, Some(t)));
        }
    }
    Ok((true, None))
}

/// Quadratic, seminormal, infra-integral over a local `R`: pointwise minimal,
/// minimal when `|R/M| > 2`, and for `|R/M| = 2` minimal exactly when
/// `S/M ≅ k^2`. `None` when the hypotheses fail.
pub fn quadratic_seminormal_check(alg: &Algebra, p: &Profile, pw: Truth, opts: &Options) -> Result<Option<bool>> {
    let f = alg.field();
    if !f.is_finite() || !p.chain.is_exact() || p.chain.plus != p.r || p.chain.t != p.s {
        return Ok(None);
    }
    if maximal_ideals(alg, &p.r)?.len() != 1 || !quadratic_check(alg, &p.r, &p.s, opts)?.0 {
        return Ok(None);
    }
    let q = f.order().expect("finite");
    let big_residue = (q as u128).pow(p.residue_dim as u32) > 2;
    let expect_minimal = big_residue || p.relative_dim() == 2;
    Ok(Some(pw == Truth::True && p.is_minimal() == Some(expect_minimal)))
}

/// Over a finite field a t-closed extension is pointwise minimal iff it is
/// minimal. `None` when not t-closed.
pub fn fip_shortcut_check(alg: &Algebra, p: &Profile, pw: Truth) -> Option<bool> {
    if !alg.field().is_finite() || !p.chain.is_exact() || p.chain.t != p.r {
        return None;
    }
    Some(pw.as_bool()? == p.is_minimal()?)
}

#[derive(Debug, Clone, Serialize)]
pub struct TowerReport {
    /// `S/M ≅ k[X,Y]/(X^2, Y^2, XY)`, or `|k| = 2` and `S/M ≅ k^3`.
    pub structural: bool,
    pub pw: Truth,
    pub pair: Truth,
    pub co_pw: Truth,
    pub node_count: usize,
    pub holds: bool,
}

/// For `R ⊂ T ⊂ S` with both steps minimal over a finite field: pointwise
/// minimal, pair, co-pointwise minimal and the structural condition agree,
/// and then the interval has more than three elements.
pub fn tower_equivalence_check(
    alg: &Algebra,
    p: &Profile,
    verdicts: &[PointwiseVerdict; 3],
    lat: &IntervalLattice,
) -> Result<TowerReport> {
    let f = alg.field();
    if !f.is_finite() || !lat.atoms().iter().any(|&a| lat.covers[a].binary_search(&lat.top()).is_ok()) {
        return Err(Error::InvalidPrecondition("tower check needs two minimal steps over a finite field".into()));
    }
    let plane = p.conductor_maximal
        && p.relative_dim() == 3
        && p.radical_rel_dim() == 2
        && p.s.dim() - p.radical.dim() == p.residue_dim
        && p.conductor.contains_space(f, &alg.product_space(&p.radical, &p.radical));
    let structural = p.conductor_maximal && (plane || is_f2_cube(alg, p)?);
    let [pw, pair, co] = verdicts.each_ref().map(PointwiseVerdict::value);
    let all = [pw, pair, co].map(|t| t.as_bool());
    let holds = all.iter().all(|&v| v == Some(structural)) && (!structural || lat.len() > 3);
    Ok(TowerReport { structural, pw, pair, co_pw: co, node_count: lat.len(), holds })
}

/// Minimal number of elements generating `S` over `R`, from the lattice.
pub fn minimal_generator_count(lat: &IntervalLattice) -> usize {
    let mut dist = vec![usize::MAX; lat.len()];
    dist[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for &u in &lat.monogenic[t] {
            if dist[u] == usize::MAX {
                dist[u] = dist[t] + 1;
                queue.push_back(u);
            }
        }
    }
    dist[lat.top()]
}
