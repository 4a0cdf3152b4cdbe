//! Seminormalization, t-closure, the canonical decomposition
//! `R ⊆ ⁺R ⊆ ᵗR ⊆ S`, and the inert / decomposed / ramified classification of
//! minimal extensions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Element, Subalgebra, Subspace};
use crate::error::{Error, Result};
use crate::linalg;
use crate::options::Options;
use crate::ringstruct::{self, conductor, maximal_ideals};
use crate::verdict::Truth;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    /// Every element of a finite algebra was scanned.
    Exhaustive,
    /// Closed over candidates, then proven complete by a structural
    /// certificate.
    Certified,
    /// Closed over a finite candidate set only.
    CandidateClosure,
}

impl Exactness {
    pub fn is_exact(self) -> bool {
        self != Exactness::CandidateClosure
    }
}

#[derive(Debug, Clone)]
pub struct Closure {
    pub result: Subalgebra,
    pub exactness: Exactness,
    /// Elements adjoined, in order.
    pub adjoined: Vec<Element>,
}

fn seminormal_step(alg: &Algebra, cur: &Subalgebra, b: &Element) -> bool {
    let f = alg.field();
    let b2 = alg.mul(b, b);
    cur.contains(f, &b2) && cur.contains(f, &alg.mul(&b2, b))
}

/// Is there `r` in `cur` with `b^2 - r b` and `b^3 - r b^2` in `cur`? Both
/// conditions are affine in the coordinates of `r`, so one linear solve
/// decides it.
fn t_step(alg: &Algebra, cur: &Subalgebra, b: &Element) -> bool {
    let f = alg.field();
    let b2 = alg.mul(b, b);
    let b3 = alg.mul(&b2, b);
    let rhs1 = cur.reduce(f, &b2);
    let rhs2 = cur.reduce(f, &b3);
    let cols1: Vec<Element> = cur.rows().iter().map(|t| cur.reduce(f, &alg.mul(t, b))).collect();
    let cols2: Vec<Element> = cur.rows().iter().map(|t| cur.reduce(f, &alg.mul(t, &b2))).collect();
    let n = alg.dim();
    let mut rows = linalg::columns_to_rows(f, &cols1, n);
    rows.extend(linalg::columns_to_rows(f, &cols2, n));
    let rhs: Vec<_> = rhs1.into_iter().chain(rhs2).collect();
    linalg::solve(f, &rows, &rhs, cur.dim()).is_some()
}

/// Deterministic pool of elements of `space` for infinite-field procedures:
/// the basis, pairwise sums and products, then random combinations. Over
/// towers of rational function fields the coefficient degree is capped at 1,
/// since gcds of nested fractions grow quickly.
pub fn candidate_elements(alg: &Algebra, space: &Subspace, samples: usize, degree: u32, salt: u64, seed: u64) -> Vec<Element> {
    let f = alg.field();
    let degree = if f.depth() >= 2 { degree.min(1) } else { degree };
    let rows = space.rows();
    let mut out: Vec<Element> = rows.to_vec();
    for i in 0..rows.len() {
        for j in (i + 1)..rows.len() {
            out.push(alg.add(&rows[i], &rows[j]));
        }
    }
    for i in 0..rows.len() {
        for j in i..rows.len() {
            let p = alg.mul(&rows[i], &rows[j]);
            if space.contains(f, &p) {
                out.push(p);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    for _ in 0..samples {
        let coeffs: Vec<_> = rows.iter().map(|_| f.random(&mut rng, degree)).collect();
        out.push(space.combine(f, &coeffs));
    }
    out
}

fn close_with(
    alg: &Algebra,
    lower: &Subalgebra,
    upper: &Subalgebra,
    opts: &Options,
    salt: u64,
    step: fn(&Algebra, &Subalgebra, &Element) -> bool,
) -> Result<Closure> {
    let f = alg.field();
    let mut cur = lower.clone();
    let mut adjoined = Vec::new();
    let candidates: Vec<Element> = if f.is_finite() {
        upper.elements(f, opts.scan_cap)?.collect()
    } else {
        let nil = ringstruct::nilradical_of(alg, upper);
        let mut c = candidate_elements(alg, upper, opts.closure_samples, opts.degree_budget.min(1), salt, opts.seed);
        c.extend(nil.rows().iter().cloned());
        for i in 0..nil.dim() {
            for j in i..nil.dim() {
                c.push(alg.mul(&nil.rows()[i], &nil.rows()[j]));
            }
        }
        c
    };
    loop {
        let mut changed = false;
        for b in &candidates {
            if cur.dim() == upper.dim() {
                break;
            }
            if !cur.contains(f, b) && step(alg, &cur, b) {
                cur = alg.adjoin(&cur, b);
                adjoined.push(b.clone());
                changed = true;
            }
        }
        if !changed || cur.dim() == upper.dim() {
            break;
        }
    }
    let exactness = if f.is_finite() { Exactness::Exhaustive } else { Exactness::CandidateClosure };
    Ok(Closure { result: cur, exactness, adjoined })
}

/// `⁺R` of `lower` inside `upper`.
pub fn seminormalization(alg: &Algebra, lower: &Subalgebra, upper: &Subalgebra, opts: &Options) -> Result<Closure> {
    let mut c = close_with(alg, lower, upper, opts, 1, seminormal_step)?;
    if c.exactness == Exactness::CandidateClosure
        && (c.result == *upper || certified_t_closed(alg, &c.result, upper))
    {
        c.exactness = Exactness::Certified;
    }
    Ok(c)
}

/// `ᵗR` of `lower` inside `upper`.
pub fn t_closure(alg: &Algebra, lower: &Subalgebra, upper: &Subalgebra, opts: &Options) -> Result<Closure> {
    let mut c = close_with(alg, lower, upper, opts, 2, t_step)?;
    if c.exactness == Exactness::CandidateClosure
        && (c.result == *upper || certified_t_closed(alg, &c.result, upper))
    {
        c.exactness = Exactness::Certified;
    }
    Ok(c)
}

/// Sufficient condition for `lower ⊆ upper` to be t-closed: the conductor
/// is a maximal ideal of `upper`, so the extension reduces to a field
/// extension, and field extensions are t-closed.
pub fn certified_t_closed(alg: &Algebra, lower: &Subalgebra, upper: &Subalgebra) -> bool {
    if lower == upper {
        return true;
    }
    let c = conductor(alg, lower, upper);
    let Ok(rb) = alg.rebase_subalgebra(upper) else {
        return false;
    };
    let Ok(q) = rb.algebra.quotient(&rb.local_space(&c)) else {
        return false;
    };
    matches!(ringstruct::is_field(&q.algebra), Ok(true))
}

/// `R ⊆ ⁺R ⊆ ᵗR ⊆ S`.
#[derive(Debug, Clone)]
pub struct CanonicalChain {
    pub base: Subalgebra,
    pub plus: Subalgebra,
    pub t: Subalgebra,
    pub top: Subalgebra,
    pub plus_exactness: Exactness,
    pub t_exactness: Exactness,
}

pub fn canonical_chain(alg: &Algebra, lower: &Subalgebra, upper: &Subalgebra, opts: &Options) -> Result<CanonicalChain> {
    let plus = seminormalization(alg, lower, upper, opts)?;
    let t = t_closure(alg, &plus.result, upper, opts)?;
    let mut plus_exactness = plus.exactness;
    // ⁺R = ᵗR once the t-closure is exact and no t-step was needed.
    if !plus_exactness.is_exact() && t.exactness.is_exact() && t.result == plus.result {
        plus_exactness = Exactness::Certified;
    }
    Ok(CanonicalChain {
        base: lower.clone(),
        plus: plus.result,
        t: t.result,
        top: upper.clone(),
        plus_exactness,
        t_exactness: t.exactness,
    })
}

impl CanonicalChain {
    pub fn is_exact(&self) -> bool {
        self.plus_exactness.is_exact() && self.t_exactness.is_exact()
    }

    pub fn exactness(&self) -> Exactness {
        if !self.is_exact() {
            Exactness::CandidateClosure
        } else if self.plus_exactness == Exactness::Exhaustive {
            Exactness::Exhaustive
        } else {
            Exactness::Certified
        }
    }

    pub fn is_subintegral(&self) -> Truth {
        if self.plus == self.top {
            Truth::True
        } else if self.plus_exactness.is_exact() {
            Truth::False
        } else {
            Truth::Unconfirmed
        }
    }

    pub fn is_seminormal(&self) -> Truth {
        if self.plus != self.base {
            Truth::False
        } else if self.plus_exactness.is_exact() {
            Truth::True
        } else {
            Truth::Unconfirmed
        }
    }

    pub fn is_infra_integral(&self) -> Truth {
        if self.t == self.top {
            Truth::True
        } else if self.t_exactness.is_exact() {
            Truth::False
        } else {
            Truth::Unconfirmed
        }
    }

    pub fn is_t_closed(&self) -> Truth {
        if self.t != self.base {
            Truth::False
        } else if self.t_exactness.is_exact() {
            Truth::True
        } else {
            Truth::Unconfirmed
        }
    }

    pub fn dims(&self) -> [usize; 4] {
        [self.base.dim(), self.plus.dim(), self.t.dim(), self.top.dim()]
    }
}

/// Spectral reading of subintegrality and infra-integrality: residue
/// extensions are isomorphisms, and for subintegrality the spectral map is
/// also a bijection. Returns `(infra_integral, subintegral)`.
pub fn spectral_classification(alg: &Algebra, lower: &Subalgebra, upper: &Subalgebra) -> Result<(bool, bool)> {
    let f = alg.field();
    let max_up = maximal_ideals(alg, upper)?;
    let max_low = maximal_ideals(alg, lower)?;
    let mut infra = true;
    for q in max_up.iter() {
        let p = q.intersection(f, lower);
        if !max_low.contains(&p) {
            return Err(Error::Internal("contraction of a maximal ideal is not maximal".into()));
        }
        if upper.dim() - q.dim() != lower.dim() - p.dim() {
            infra = false;
        }
    }
    Ok((infra, infra && max_up.len() == max_low.len()))
}

/// Type of a minimal extension, with the ideals that certify it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MinimalType {
    NotMinimal,
    /// `M` is maximal in `T` and `R/M ⊂ T/M` is a minimal field extension.
    Inert { degree: usize },
    /// `M = M1 ∩ M2` with both residue maps isomorphisms.
    Decomposed {
        #[serde(skip)]
        ideals: (Subspace, Subspace),
    },
    /// `M'^2 ⊆ M ⊂ M'`, `dim_{R/M} T/M = 2`.
    Ramified {
        #[serde(skip)]
        over: Subspace,
    },
}

impl MinimalType {
    pub fn is_minimal(&self) -> bool {
        !matches!(self, MinimalType::NotMinimal)
    }

    pub fn label(&self) -> &'static str {
        match self {
            MinimalType::NotMinimal => "not-minimal",
            MinimalType::Inert { .. } => "inert",
            MinimalType::Decomposed { .. } => "decomposed",
            MinimalType::Ramified { .. } => "ramified",
        }
    }
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Decide whether `R ⊂ T` is minimal and of which type.
pub fn minimal_type(alg: &Algebra, r: &Subalgebra, t: &Subalgebra) -> Result<MinimalType> {
    let f = alg.field();
    if r == t || !t.contains_space(f, r) {
        return Err(Error::InvalidPrecondition("minimal_type needs a proper extension R ⊂ T".into()));
    }
    let m = conductor(alg, r, t);
    if !maximal_ideals(alg, r)?.contains(&m) {
        return Ok(MinimalType::NotMinimal);
    }
    let dr = r.dim() - m.dim();
    let span = t.dim() - m.dim();
    if !span.is_multiple_of(dr) {
        return Err(Error::Internal("T/M is not a vector space over R/M of integral dimension".into()));
    }
    let rel = span / dr;
    let max_t = maximal_ideals(alg, t)?;
    if max_t.contains(&m) {
        if is_prime(rel) {
            return Ok(MinimalType::Inert { degree: rel });
        }
        if f.is_finite() || ringstruct::is_height_one_radicial(alg, r, t) {
            return Ok(MinimalType::NotMinimal);
        }
        return Err(Error::UnsupportedDecomposition(format!(
            "minimality of a residue field extension of degree {}",
            rel
        )));
    }
    let over: Vec<&Subspace> = max_t.iter().filter(|q| q.contains_space(f, &m)).collect();
    if over.len() == 2
        && over[0].intersection(f, over[1]) == m
        && over.iter().all(|q| t.dim() - q.dim() == dr)
    {
        return Ok(MinimalType::Decomposed { ideals: (over[0].clone(), over[1].clone()) });
    }
    if rel == 2 {
        for q in over {
            if q.dim() > m.dim() && t.dim() - q.dim() == dr && m.contains_space(f, &alg.product_space(q, q)) {
                return Ok(MinimalType::Ramified { over: q.clone() });
            }
        }
    }
    Ok(MinimalType::NotMinimal)
}

/// Brute-force minimality: `R ⊂ T` is minimal iff `R[x] = T` for every
/// `x ∉ R`. Exhaustive over coset representatives on finite fields; over
/// infinite fields a found intermediate ring refutes minimality and
/// otherwise the answer is unconfirmed. Returns the verdict and a witness
/// `x` generating a proper intermediate ring.
pub fn minimal_oracle(alg: &Algebra, r: &Subalgebra, t: &Subalgebra, opts: &Options) -> Result<(Truth, Option<Element>)> {
    let f = alg.field();
    if r == t {
        return Err(Error::InvalidPrecondition("minimal_oracle needs a proper extension".into()));
    }
    if f.is_finite() {
        for x in r.coset_representatives(f, t, opts.scan_cap)?.skip(1) {
            if alg.adjoin(r, &x) != *t {
                return Ok((Truth::False, Some(x)));
            }
        }
        return Ok((Truth::True, None));
    }
    let comp = r.complement_within(f, t);
    let comp_space = alg.span(comp);
    for x in candidate_elements(alg, &comp_space, opts.closure_samples, opts.degree_budget.min(1), 3, opts.seed) {
        if r.contains(f, &x) {
            continue;
        }
        if alg.adjoin(r, &x) != *t {
            return Ok((Truth::False, Some(x)));
        }
    }
    Ok((Truth::Unconfirmed, None))
}

/// Step types along a chain `T_0 ⊂ T_1 ⊂ ... ⊂ T_n`.
pub fn tower_type_profile(alg: &Algebra, chain: &[Subalgebra]) -> Result<Vec<MinimalType>> {
    chain
        .windows(2)
        .enumerate()
        .map(|(i, w)| match minimal_type(alg, &w[0], &w[1])? {
            MinimalType::NotMinimal => Err(Error::NotAMinimalStep(i)),
            t => Ok(t),
        })
        .collect()
}
