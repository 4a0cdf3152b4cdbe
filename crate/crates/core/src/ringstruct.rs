//! Ring-theoretic structure of finite-dimensional algebras: nilradical,
//! units, local decomposition, maximal ideals, conductors and crucial ideals.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, Element, Subalgebra, Subspace};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg;
use crate::poly;

/// Largest candidate space searched for roots of minimal polynomials.
const ROOT_SEARCH_CAP: u64 = 1 << 16;

/// Kernel of `x -> x^(p^e)` with `p^e >= dim`. Memoized per algebra.
pub fn nilradical(alg: &Algebra) -> Subspace {
    alg.caches.nilradical.get_or_init(|| compute_nilradical(alg)).clone()
}

fn compute_nilradical(alg: &Algebra) -> Subspace {
    let f = alg.field();
    let n = alg.dim();
    let p = f.characteristic() as u64;
    let (mut e, mut q) = (1u32, p);
    while q < n as u64 {
        q *= p;
        e += 1;
    }
    let images: Vec<Element> = (0..n).map(|i| alg.pow(&alg.basis_vector(i), q)).collect();
    let comps = f.p_basis_len(e);
    // Sum_i l_i^q A[k][i] = 0 splits along the p^e-basis into a linear system
    // in the l_i over the base field.
    let expansions: Vec<Vec<Vec<Scalar>>> = images
        .iter()
        .map(|img| {
            img.iter()
                .map(|a| if a.is_zero() { vec![f.zero(); comps] } else { f.p_basis_expand(a, e) })
                .collect()
        })
        .collect();
    let mut rows = Vec::with_capacity(comps * n);
    for c in 0..comps {
        for k in 0..n {
            let row: Vec<Scalar> = (0..n).map(|i| expansions[i][k][c].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let ker = if rows.is_empty() { Subspace::full(f, n).rows().to_vec() } else { linalg::kernel(f, &rows, n) };
    alg.span(ker)
}

/// Nilradical of a subalgebra, `Nil(S) ∩ T`.
pub fn nilradical_of(alg: &Algebra, t: &Subalgebra) -> Subspace {
    nilradical(alg).intersection(alg.field(), t)
}

pub fn is_unit(alg: &Algebra, a: &[Scalar]) -> bool {
    alg.is_unit(a)
}

/// Minimal polynomial of `x` inside the algebra `e * A` with unit `e`.
pub fn minimal_polynomial(alg: &Algebra, e: &Element, x: &Element) -> Vec<Scalar> {
    let f = alg.field();
    let mut powers = vec![e.clone()];
    loop {
        let next = alg.mul(powers.last().expect("nonempty"), x);
        let m = linalg::columns_to_rows(f, &powers, alg.dim());
        if let Some(c) = linalg::solve(f, &m, &next, powers.len()) {
            let mut poly: Vec<Scalar> = c.iter().map(|ci| f.neg(ci)).collect();
            poly.push(f.one());
            return poly;
        }
        powers.push(next);
    }
}

/// Evaluate a polynomial at `x` with `e` as the unit.
fn eval_at(alg: &Algebra, e: &Element, poly: &[Scalar], x: &Element) -> Element {
    poly.iter().rev().fold(alg.zero(), |acc, c| alg.add(&alg.mul(&acc, x), &alg.scale(c, e)))
}

/// Decomposition `A = prod e_i A` into local factors.
#[derive(Debug, Clone, Serialize)]
pub struct LocalDecomposition {
    /// Primitive idempotents, sorted.
    #[serde(skip)]
    pub idempotents: Vec<Element>,
    /// `M_i = (1 - e_i) A + Nil(A)`, in the order of the idempotents.
    #[serde(skip)]
    pub maximal_ideals: Vec<Subspace>,
    /// Degree of `A/M_i` over the base field.
    pub residue_degrees: Vec<usize>,
    /// Dimension of each local factor.
    pub factor_dims: Vec<usize>,
}

impl LocalDecomposition {
    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    /// The factor `e_i A` as a standalone algebra.
    pub fn factor(&self, alg: &Algebra, i: usize) -> Result<crate::algebra::Rebased> {
        let e = &self.idempotents[i];
        let space = alg.span((0..alg.dim()).map(|j| alg.mul(e, &alg.basis_vector(j))));
        alg.rebase(&space, e)
    }
}

pub fn local_decomposition(alg: &Algebra) -> Result<LocalDecomposition> {
    let idempotents = if alg.field().is_finite() { finite_idempotents(alg)? } else { rf_idempotents(alg)? };
    let f = alg.field();
    let nil = nilradical(alg);
    let mut maximal_ideals = Vec::with_capacity(idempotents.len());
    let mut residue_degrees = Vec::with_capacity(idempotents.len());
    let mut factor_dims = Vec::with_capacity(idempotents.len());
    for e in &idempotents {
        let co = alg.sub(alg.unit(), e);
        let m = alg.span((0..alg.dim()).map(|j| alg.mul(&co, &alg.basis_vector(j)))).sum(f, &nil);
        residue_degrees.push(alg.dim() - m.dim());
        factor_dims.push(alg.span((0..alg.dim()).map(|j| alg.mul(e, &alg.basis_vector(j)))).dim());
        maximal_ideals.push(m);
    }
    Ok(LocalDecomposition { idempotents, maximal_ideals, residue_degrees, factor_dims })
}

/// Over `GF(q)` the fixed space of `x -> x^q` is spanned by the primitive
/// idempotents; split it by eigenvalues of non-scalar fixed elements.
fn finite_idempotents(alg: &Algebra) -> Result<Vec<Element>> {
    let f = alg.field();
    let n = alg.dim();
    let q = f.order().expect("finite field");
    let cols: Vec<Element> = (0..n)
        .map(|j| {
            let b = alg.basis_vector(j);
            alg.sub(&alg.pow(&b, q), &b)
        })
        .collect();
    let m = linalg::columns_to_rows(f, &cols, n);
    let fixed: Vec<Element> = linalg::kernel(f, &m, n);
    if fixed.len() == 1 {
        return Ok(vec![alg.unit().clone()]);
    }
    let mut done = Vec::new();
    let mut work = vec![alg.unit().clone()];
    while let Some(e) = work.pop() {
        let line = alg.span([e.clone()]);
        let x = fixed.iter().map(|b| alg.mul(&e, b)).find(|x| !line.contains(f, x));
        let Some(x) = x else {
            done.push(e);
            continue;
        };
        let mp = minimal_polynomial(alg, &e, &x);
        let roots = poly::roots(f, &mp, u64::MAX).expect("finite field root search");
        if roots.len() + 1 != mp.len() {
            return Err(Error::Internal("Frobenius-fixed element with a non-split minimal polynomial".into()));
        }
        for (i, lam) in roots.iter().enumerate() {
            let mut idem = e.clone();
            for (j, mu) in roots.iter().enumerate() {
                if i == j {
                    continue;
                }
                let factor = alg.sub(&x, &alg.scale(mu, &e));
                let inv = f.inv(&f.sub(lam, mu))?;
                idem = alg.scale(&inv, &alg.mul(&idem, &factor));
            }
            work.push(idem);
        }
    }
    done.sort();
    Ok(done)
}

/// Whether every element of `e * A` has a p-power in `K e`.
fn purely_inseparable_local(alg: &Algebra, e: &Element) -> bool {
    let f = alg.field();
    let p = f.characteristic() as u64;
    let factor = alg.span((0..alg.dim()).map(|j| alg.mul(e, &alg.basis_vector(j))));
    let mut q = p;
    while q < factor.dim() as u64 {
        q *= p;
    }
    let line = alg.span([e.clone()]);
    factor.rows().iter().all(|x| line.contains(f, &alg.pow(x, q)))
}

/// Idempotent lifting modulo a nilpotent ideal: `e <- 3e^2 - 2e^3`.
fn lift_idempotent(alg: &Algebra, mut e: Element) -> Result<Element> {
    let f = alg.field();
    for _ in 0..64 {
        let e2 = alg.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = alg.mul(&e2, &e);
        e = alg.sub(&alg.scale(&f.from_int(3), &e2), &alg.scale(&f.from_int(2), &e3));
    }
    Err(Error::Internal("idempotent lifting did not converge".into()))
}

/// Rational-function backend: certify locality by inseparability, or split
/// with roots of minimal polynomials of degree at most 3.
fn rf_idempotents(alg: &Algebra) -> Result<Vec<Element>> {
    let f = alg.field();
    let nil = nilradical(alg);
    let red = alg.quotient(&nil)?;
    let a = &red.algebra;
    let mut done = Vec::new();
    let mut work = vec![a.unit().clone()];
    'work: while let Some(e) = work.pop() {
        if purely_inseparable_local(a, &e) {
            done.push(e);
            continue;
        }
        let line = a.span([e.clone()]);
        let factor_dim = a.span((0..a.dim()).map(|j| a.mul(&e, &a.basis_vector(j)))).dim();
        for j in 0..a.dim() {
            let x = a.mul(&e, &a.basis_vector(j));
            if line.contains(f, &x) {
                continue;
            }
            let mp = minimal_polynomial(a, &e, &x);
            if mp.len() > 4 {
                continue;
            }
            let Some(roots) = poly::roots(f, &mp, ROOT_SEARCH_CAP) else {
                continue;
            };
            // A generator whose minimal polynomial of degree at most 3 has no
            // root is irreducible, so the factor is a field.
            if roots.is_empty() && mp.len() == factor_dim + 1 {
                done.push(e);
                continue 'work;
            }
            if let Some(lam) = roots.first() {
                let (h, _) = poly::divrem(f, &mp, &[f.neg(lam), f.one()]);
                let hl = poly::eval(f, &h, lam);
                let idem = a.scale(&f.inv(&hl)?, &eval_at(a, &e, &h, &x));
                if a.is_zero(&idem) || idem == e {
                    continue;
                }
                let rest = a.sub(&e, &idem);
                work.push(idem);
                work.push(rest);
                continue 'work;
            }
        }
        return Err(Error::UnsupportedDecomposition(
            "reduced factor is neither certified local nor split by a root of a small minimal polynomial".into(),
        ));
    }
    let mut out = done.into_iter().map(|e| lift_idempotent(alg, red.lift(&e))).collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Maximal ideals of a subalgebra, in ambient coordinates. Memoized.
pub fn maximal_ideals(alg: &Algebra, t: &Subalgebra) -> Result<Arc<Vec<Subspace>>> {
    if let Some(hit) = alg.caches.maximal_ideals.lock().expect("cache lock").get(t.space()) {
        return Ok(hit.clone());
    }
    let ideals = if t.dim() == alg.dim() {
        local_decomposition(alg)?.maximal_ideals
    } else {
        let rb = alg.rebase_subalgebra(t)?;
        local_decomposition(&rb.algebra)?.maximal_ideals.iter().map(|m| rb.ambient_space(m)).collect()
    };
    let mut ideals = ideals;
    ideals.sort();
    let ideals = Arc::new(ideals);
    alg.caches.maximal_ideals.lock().expect("cache lock").insert(t.space().clone(), ideals.clone());
    Ok(ideals)
}

pub fn is_local(alg: &Algebra, t: &Subalgebra) -> Result<bool> {
    Ok(maximal_ideals(alg, t)?.len() == 1)
}

/// Intersection of the maximal ideals of `t`.
pub fn jacobson_radical(alg: &Algebra, t: &Subalgebra) -> Result<Subspace> {
    let max = maximal_ideals(alg, t)?;
    Ok(max.iter().skip(1).fold(max[0].clone(), |acc, m| acc.intersection(alg.field(), m)))
}

/// Whether the algebra is a field.
pub fn is_field(alg: &Algebra) -> Result<bool> {
    if nilradical(alg).dim() > 0 {
        return Ok(false);
    }
    Ok(local_decomposition(alg)?.len() == 1)
}

/// `T/M` as a standalone algebra; fails unless it is a field.
pub fn residue_field(alg: &Algebra, t: &Subalgebra, m: &Subspace) -> Result<Algebra> {
    let rb = alg.rebase_subalgebra(t)?;
    let q = rb.algebra.quotient(&rb.local_space(m))?;
    if !is_field(&q.algebra)? {
        return Err(Error::InvalidPrecondition("quotient is not a field".into()));
    }
    Ok(q.algebra)
}

/// `(R : T) = {x in T : x T ⊆ R}`, the largest common ideal.
pub fn conductor(alg: &Algebra, r: &Subalgebra, t: &Subalgebra) -> Subspace {
    let f = alg.field();
    let n = alg.dim();
    let k = t.dim();
    let mut rows: Vec<Vec<Scalar>> = vec![Vec::with_capacity(k); k * n];
    for ti in t.rows() {
        for (j, tj) in t.rows().iter().enumerate() {
            let red = r.reduce(f, &alg.mul(ti, tj));
            for (c, x) in red.into_iter().enumerate() {
                rows[j * n + c].push(x);
            }
        }
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    let ker = if rows.is_empty() { Subspace::full(f, k).rows().to_vec() } else { linalg::kernel(f, &rows, k) };
    alg.span(ker.iter().map(|c| t.combine(f, c)))
}

/// `√_T I`: preimage of the nilradical of `T/I`.
pub fn radical_in(alg: &Algebra, t: &Subalgebra, ideal: &Subspace) -> Result<Subspace> {
    if ideal.dim() == t.dim() {
        return Ok(t.space().clone());
    }
    let rb = alg.rebase_subalgebra(t)?;
    let q = rb.algebra.quotient(&rb.local_space(ideal))?;
    let nil = nilradical(&q.algebra);
    Ok(rb.ambient_space(&q.preimage(&nil)))
}

/// `{x^2 : x in J} ⊆ M`. The square map is additive in characteristic 2, so
/// basis squares decide it; otherwise polarization reduces it to `J·J ⊆ M`.
pub fn squares_within(alg: &Algebra, j: &Subspace, m: &Subspace) -> bool {
    let f = alg.field();
    if f.characteristic() == 2 {
        j.rows().iter().all(|x| m.contains(f, &alg.mul(x, x)))
    } else {
        m.contains_space(f, &alg.product_space(j, j))
    }
}

/// `x^p in base` for every `x in t`; basis elements suffice by additivity and
/// semilinearity of the p-power map.
pub fn is_height_one_radicial(alg: &Algebra, base: &Subspace, t: &Subspace) -> bool {
    let p = alg.characteristic() as u64;
    t.rows().iter().all(|x| base.contains(alg.field(), &alg.pow(x, p)))
}

/// Conductor, support and crucial ideal of `R ⊆ T`.
#[derive(Debug, Clone)]
pub struct CrucialReport {
    pub conductor: Subspace,
    /// Maximal ideals of `R` containing the conductor.
    pub support: Vec<Subspace>,
    /// The unique member of the support, when there is exactly one.
    pub crucial: Option<Subspace>,
}

pub fn crucial_report(alg: &Algebra, r: &Subalgebra, t: &Subalgebra) -> Result<CrucialReport> {
    let f = alg.field();
    let c = conductor(alg, r, t);
    let support: Vec<Subspace> = maximal_ideals(alg, r)?.iter().filter(|m| m.contains_space(f, &c)).cloned().collect();
    let crucial = if support.len() == 1 { Some(support[0].clone()) } else { None };
    Ok(CrucialReport { conductor: c, support, crucial })
}
