//! Finite-dimensional commutative unital algebras over a field, presented by
//! structure constants, together with canonical subspaces and subalgebras.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::Deref;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{self, rref};

/// Coordinate vector in the basis of an [`Algebra`].
pub type Element = Vec<Scalar>;

/// Subspace of `K^n` stored in reduced row echelon form, so equal subspaces
/// are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Element>,
    pivots: Vec<usize>,
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rows
            .len()
            .cmp(&other.rows.len())
            .then_with(|| self.ambient.cmp(&other.ambient))
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subspace {
    pub fn span<I: IntoIterator<Item = Element>>(f: &Field, ambient: usize, vecs: I) -> Subspace {
        let mut rows: Vec<Element> = vecs.into_iter().filter(|v| v.iter().any(|c| !c.is_zero())).collect();
        let pivots = rref(f, &mut rows);
        Subspace { ambient, rows, pivots }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(f: &Field, ambient: usize) -> Subspace {
        let rows = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        Subspace { ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rows(&self) -> &[Element] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after eliminating the pivot columns; zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, f: &Field, v: &[Scalar]) -> Element {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for j in p..self.ambient {
                if !row[j].is_zero() {
                    v[j] = f.sub(&v[j], &f.mul(&c, &row[j]));
                }
            }
        }
        v
    }

    pub fn contains(&self, f: &Field, v: &[Scalar]) -> bool {
        self.reduce(f, v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of a member in the echelon basis.
    pub fn coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn combine(&self, f: &Field, coeffs: &[Scalar]) -> Element {
        let mut out = vec![f.zero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o = f.add(o, &f.mul(c, r));
                }
            }
        }
        out
    }

    /// `other ⊆ self`.
    pub fn contains_space(&self, f: &Field, other: &Subspace) -> bool {
        other.dim() <= self.dim() && other.rows.iter().all(|r| self.contains(f, r))
    }

    pub fn sum(&self, f: &Field, other: &Subspace) -> Subspace {
        Subspace::span(f, self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    pub fn intersection(&self, f: &Field, other: &Subspace) -> Subspace {
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        let cols: Vec<Element> = self.rows.iter().map(|r| other.reduce(f, r)).collect();
        let a = linalg::columns_to_rows(f, &cols, self.ambient);
        let ker = linalg::kernel(f, &a, self.dim());
        Subspace::span(f, self.ambient, ker.iter().map(|c| self.combine(f, c)))
    }

    /// Basis of a canonical complement of `self` inside `outer`.
    pub fn complement_within(&self, f: &Field, outer: &Subspace) -> Vec<Element> {
        let mut res: Vec<Element> = outer
            .rows
            .iter()
            .map(|r| self.reduce(f, r))
            .filter(|v| v.iter().any(|c| !c.is_zero()))
            .collect();
        rref(f, &mut res);
        res
    }

    /// Number of cosets of `self` in `outer` over a finite field.
    pub fn coset_count(&self, f: &Field, outer: &Subspace) -> Option<u128> {
        let q = f.order()? as u128;
        q.checked_pow((outer.dim() - self.dim().min(outer.dim())) as u32)
    }

    /// One representative per coset of `self` in `outer`, starting with zero.
    pub fn coset_representatives(&self, f: &Field, outer: &Subspace, cap: u64) -> Result<CosetIter> {
        let basis = self.complement_within(f, outer);
        CosetIter::new(f, basis, self.ambient, cap)
    }

    /// All elements of the subspace over a finite field.
    pub fn elements(&self, f: &Field, cap: u64) -> Result<CosetIter> {
        CosetIter::new(f, self.rows.clone(), self.ambient, cap)
    }
}

/// Enumerates `sum c_i b_i` over all coefficient tuples of a finite field.
pub struct CosetIter {
    field: Field,
    basis: Vec<Element>,
    ambient: usize,
    q: u64,
    next: u64,
    total: u64,
}

impl CosetIter {
    fn new(f: &Field, basis: Vec<Element>, ambient: usize, cap: u64) -> Result<CosetIter> {
        let q = f.order().ok_or(crate::field::FieldError::InfiniteField)?;
        let total = (q as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
        if total > cap as u128 {
            return Err(Error::ScanCapExceeded { needed: total, cap });
        }
        Ok(CosetIter { field: f.clone(), basis, ambient, q, next: 0, total: total as u64 })
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for CosetIter {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.next >= self.total {
            return None;
        }
        let f = &self.field;
        let mut k = self.next;
        self.next += 1;
        let mut out = vec![f.zero(); self.ambient];
        for b in &self.basis {
            let c = Scalar::Gf((k % self.q) as u32);
            k /= self.q;
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o = f.add(o, &f.mul(&c, x));
                }
            }
        }
        Some(out)
    }
}

/// A subspace containing the unit and closed under multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subalgebra(Subspace);

impl Deref for Subalgebra {
    type Target = Subspace;

    fn deref(&self) -> &Subspace {
        &self.0
    }
}

impl Subalgebra {
    pub fn new(alg: &Algebra, space: Subspace) -> Result<Subalgebra> {
        if space.ambient() != alg.dim() {
            return Err(Error::ParentMismatch(format!(
                "subspace of K^{} in an algebra of dimension {}",
                space.ambient(),
                alg.dim()
            )));
        }
        let f = alg.field();
        if !space.contains(f, alg.unit()) {
            return Err(Error::BadUnit("subspace does not contain the unit".into()));
        }
        for (i, a) in space.rows().iter().enumerate() {
            for b in &space.rows()[i..] {
                if !space.contains(f, &alg.mul(a, b)) {
                    return Err(Error::NotClosed);
                }
            }
        }
        Ok(Subalgebra(space))
    }

    pub fn space(&self) -> &Subspace {
        &self.0
    }

    pub fn into_space(self) -> Subspace {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Truncation {
    /// `k[x_1..x_m]/(x_i^2)`, dimension `2^m`.
    SquaresOnly,
    /// `k[x_1..x_m]/(x_i x_j)`, dimension `m + 1`.
    SquaresAndProducts,
}

#[derive(Default)]
pub(crate) struct Caches {
    pub(crate) nilradical: OnceLock<Subspace>,
    pub(crate) maximal_ideals: Mutex<HashMap<Subspace, Arc<Vec<Subspace>>>>,
}

/// Commutative unital algebra with basis `b_1..b_n`; `table[i][j]` holds the
/// coordinates of `b_i b_j`.
pub struct Algebra {
    field: Field,
    dim: usize,
    table: Vec<Vec<Element>>,
    sparse: Vec<Vec<Vec<(usize, Scalar)>>>,
    unit: Element,
    names: Vec<String>,
    pub(crate) caches: Caches,
}

impl Clone for Algebra {
    fn clone(&self) -> Self {
        Algebra {
            field: self.field.clone(),
            dim: self.dim,
            table: self.table.clone(),
            sparse: self.sparse.clone(),
            unit: self.unit.clone(),
            names: self.names.clone(),
            caches: Caches::default(),
        }
    }
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra(dim {} over {}, basis {:?})", self.dim, self.field.name(), self.names)
    }
}

impl Algebra {
    /// Validate a structure table. When `unit` is `None` the identity is
    /// solved for.
    pub fn new(field: Field, table: Vec<Vec<Element>>, unit: Option<Element>, names: Vec<String>) -> Result<Algebra> {
        let n = table.len();
        if n == 0 {
            return Err(Error::ParentMismatch("algebra of dimension zero".into()));
        }
        if names.len() != n {
            return Err(Error::ParentMismatch(format!("{} basis names for dimension {}", names.len(), n)));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ParentMismatch(format!("table row {} has {} entries, expected {}", i, row.len(), n)));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != n {
                    return Err(Error::ParentMismatch(format!(
                        "product b{}*b{} has {} coordinates, expected {}",
                        i, j, v.len(), n
                    )));
                }
                if v.iter().any(|c| !field.contains(c)) {
                    return Err(crate::field::FieldError::DescriptorMismatch.into());
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if table[i][j] != table[j][i] {
                    return Err(Error::NotCommutative(i, j));
                }
            }
        }
        let sparse = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect())
                    .collect()
            })
            .collect();
        let mut alg = Algebra {
            field: field.clone(),
            dim: n,
            table,
            sparse,
            unit: vec![field.zero(); n],
            names,
            caches: Caches::default(),
        };
        let unit = match unit {
            Some(u) => {
                if u.len() != n || u.iter().any(|c| !field.contains(c)) {
                    return Err(Error::BadUnit("unit has the wrong shape".into()));
                }
                u
            }
            None => alg.solve_unit()?,
        };
        for j in 0..n {
            let e = alg.basis_vector(j);
            if alg.mul(&unit, &e) != e {
                return Err(Error::BadUnit(format!("unit does not fix basis element {}", alg.names[j])));
            }
        }
        alg.unit = unit;
        for i in 0..n {
            for j in i..n {
                let bij = alg.table[i][j].clone();
                for k in 0..n {
                    let left = alg.mul(&bij, &alg.basis_vector(k));
                    let right = alg.mul(&alg.basis_vector(i), &alg.table[j][k]);
                    if left != right {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(alg)
    }

    fn solve_unit(&self) -> Result<Element> {
        let f = &self.field;
        let n = self.dim;
        // sum_i u_i table[i][j][k] = delta_jk, unknowns u_i.
        let mut rows = Vec::with_capacity(n * n);
        let mut rhs = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.table[i][j][k].clone()).collect());
                rhs.push(if j == k { f.one() } else { f.zero() });
            }
        }
        linalg::solve(f, &rows, &rhs, n).ok_or_else(|| Error::BadUnit("no element acts as identity".into()))
    }

    /// The one-dimensional algebra `K`.
    pub fn scalars(field: &Field) -> Algebra {
        Algebra::new(field.clone(), vec![vec![vec![field.one()]]], Some(vec![field.one()]), vec!["1".into()])
            .expect("K is an algebra")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<Element>] {
        &self.table
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn zero(&self) -> Element {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Element {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn scalar(&self, c: &Scalar) -> Element {
        self.scale(c, &self.unit)
    }

    pub fn is_zero(&self, a: &[Scalar]) -> bool {
        a.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Element {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[Scalar], b: &[Scalar]) -> Element {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &[Scalar]) -> Element {
        a.iter().map(|x| self.field.neg(x)).collect()
    }

    pub fn scale(&self, c: &Scalar, a: &[Scalar]) -> Element {
        a.iter().map(|x| self.field.mul(c, x)).collect()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Element {
        let f = &self.field;
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = f.mul(ai, bj);
                for (k, t) in &self.sparse[i][j] {
                    out[*k] = f.add(&out[*k], &f.mul(&c, t));
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[Scalar], mut n: u64) -> Element {
        let mut acc = self.unit.clone();
        let mut base = a.to_vec();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Rows are the images `a * b_j`.
    pub fn multiplication_rows(&self, a: &[Scalar]) -> Vec<Element> {
        (0..self.dim).map(|j| self.mul(a, &self.basis_vector(j))).collect()
    }

    pub fn is_unit(&self, a: &[Scalar]) -> bool {
        linalg::rank(&self.field, &self.multiplication_rows(a)) == self.dim
    }

    pub fn inverse(&self, a: &[Scalar]) -> Option<Element> {
        let cols = self.multiplication_rows(a);
        let m = linalg::columns_to_rows(&self.field, &cols, self.dim);
        linalg::solve(&self.field, &m, &self.unit, self.dim)
    }

    pub fn full(&self) -> Subalgebra {
        Subalgebra(Subspace::full(&self.field, self.dim))
    }

    /// `K * 1`.
    pub fn base_line(&self) -> Subalgebra {
        Subalgebra(Subspace::span(&self.field, self.dim, [self.unit.clone()]))
    }

    pub fn span(&self, vecs: impl IntoIterator<Item = Element>) -> Subspace {
        Subspace::span(&self.field, self.dim, vecs)
    }

    /// `owner * space ⊆ space`.
    pub fn is_ideal(&self, owner: &Subspace, space: &Subspace) -> bool {
        let f = &self.field;
        owner.contains_space(f, space)
            && owner.rows().iter().all(|a| space.rows().iter().all(|b| space.contains(f, &self.mul(a, b))))
    }

    /// Span of all pairwise products.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut prods = Vec::with_capacity(a.dim() * b.dim());
        for x in a.rows() {
            for y in b.rows() {
                prods.push(self.mul(x, y));
            }
        }
        self.span(prods)
    }

    /// Ideal of `owner` generated by `gens`.
    pub fn ideal_generated(&self, owner: &Subalgebra, gens: &[Element]) -> Subspace {
        let mut prods = Vec::new();
        for g in gens {
            for a in owner.rows() {
                prods.push(self.mul(a, g));
            }
        }
        self.span(prods)
    }

    /// Smallest subalgebra containing a subspace: `W <- W + W*W` to a
    /// fixed point, starting from `W + K*1`.
    pub fn close(&self, space: &Subspace) -> Subalgebra {
        let mut w = space.sum(&self.field, &self.span([self.unit.clone()]));
        loop {
            let next = w.sum(&self.field, &self.product_space(&w, &w));
            if next.dim() == w.dim() {
                return Subalgebra(w);
            }
            w = next;
        }
    }

    /// `T[x]`, built as `sum_i T x^i`.
    pub fn adjoin(&self, t: &Subalgebra, x: &[Scalar]) -> Subalgebra {
        let f = &self.field;
        if t.contains(f, x) {
            return t.clone();
        }
        let mut w = t.space().clone();
        let mut p = self.unit.clone();
        loop {
            p = self.mul(&p, x);
            if w.contains(f, &p) {
                return Subalgebra(w);
            }
            let extra: Vec<Element> = t.rows().iter().map(|r| self.mul(r, &p)).collect();
            w = Subspace::span(f, self.dim, w.rows().iter().cloned().chain(extra));
        }
    }

    pub fn generated(&self, t: &Subalgebra, gens: &[Element]) -> Subalgebra {
        gens.iter().fold(t.clone(), |acc, g| self.adjoin(&acc, g))
    }

    /// `T1 T2`, the span of products of the two bases.
    pub fn compositum(&self, a: &Subalgebra, b: &Subalgebra) -> Subalgebra {
        if a.contains_space(&self.field, b) {
            return a.clone();
        }
        if b.contains_space(&self.field, a) {
            return b.clone();
        }
        Subalgebra(self.product_space(a, b))
    }

    pub fn intersection(&self, a: &Subalgebra, b: &Subalgebra) -> Subalgebra {
        Subalgebra(a.intersection(&self.field, b))
    }

    /// Re-present a subspace closed under multiplication, with its own unit
    /// `unit` (not necessarily the unit of `self`), as a standalone algebra.
    pub fn rebase(&self, space: &Subspace, unit: &Element) -> Result<Rebased> {
        let f = &self.field;
        let r = space.dim();
        if r == 0 {
            return Err(Error::ParentMismatch("cannot rebase the zero subspace".into()));
        }
        let mut table = Vec::with_capacity(r);
        for a in space.rows() {
            let mut row = Vec::with_capacity(r);
            for b in space.rows() {
                let p = self.mul(a, b);
                if !space.contains(f, &p) {
                    return Err(Error::NotClosed);
                }
                row.push(space.coords(&p));
            }
            table.push(row);
        }
        if !space.contains(f, unit) {
            return Err(Error::BadUnit("unit outside the subspace".into()));
        }
        let names = space
            .rows()
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let support: Vec<usize> = row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k).collect();
                if support.len() == 1 && row[support[0]].is_one() {
                    self.names[support[0]].clone()
                } else {
                    format!("v{}", i + 1)
                }
            })
            .collect();
        let algebra = Algebra::new(f.clone(), table, Some(space.coords(unit)), names)?;
        Ok(Rebased { algebra, space: space.clone() })
    }

    /// Standalone copy of a subalgebra.
    pub fn rebase_subalgebra(&self, t: &Subalgebra) -> Result<Rebased> {
        self.rebase(t, &self.unit.clone())
    }

    /// `self / ideal`, presented on the non-pivot coordinates of the ideal.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        let f = &self.field;
        if !self.is_ideal(&Subspace::full(f, self.dim), ideal) {
            return Err(Error::NotAnIdeal("quotient by a non-ideal".into()));
        }
        if ideal.dim() == self.dim {
            return Err(Error::InvalidPrecondition("quotient by the whole algebra".into()));
        }
        let mut is_pivot = vec![false; self.dim];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let keep: Vec<usize> = (0..self.dim).filter(|&k| !is_pivot[k]).collect();
        let project = |v: &[Scalar]| -> Element {
            let r = ideal.reduce(f, v);
            keep.iter().map(|&k| r[k].clone()).collect()
        };
        let table = keep.iter().map(|&a| keep.iter().map(|&b| project(&self.table[a][b])).collect()).collect();
        let unit = project(&self.unit);
        let names = keep.iter().map(|&k| self.names[k].clone()).collect();
        let algebra = Algebra::new(f.clone(), table, Some(unit), names)?;
        Ok(Quotient { algebra, ideal: ideal.clone(), keep })
    }
}

/// A subspace re-presented as an algebra in its echelon basis.
pub struct Rebased {
    pub algebra: Algebra,
    space: Subspace,
}

impl Rebased {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn to_local(&self, v: &[Scalar]) -> Element {
        self.space.coords(v)
    }

    pub fn to_ambient(&self, c: &[Scalar]) -> Element {
        self.space.combine(self.algebra.field(), c)
    }

    /// Image of an ambient subspace contained in the rebased one.
    pub fn local_space(&self, s: &Subspace) -> Subspace {
        self.algebra.span(s.rows().iter().map(|r| self.to_local(r)))
    }

    pub fn ambient_space(&self, s: &Subspace) -> Subspace {
        Subspace::span(self.algebra.field(), self.space.ambient(), s.rows().iter().map(|r| self.to_ambient(r)))
    }
}

/// `S / I` with projection and section maps.
pub struct Quotient {
    pub algebra: Algebra,
    ideal: Subspace,
    keep: Vec<usize>,
}

impl Quotient {
    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    pub fn project(&self, v: &[Scalar]) -> Element {
        let r = self.ideal.reduce(self.algebra.field(), v);
        self.keep.iter().map(|&k| r[k].clone()).collect()
    }

    /// Canonical preimage.
    pub fn lift(&self, c: &[Scalar]) -> Element {
        let f = self.algebra.field();
        let mut v = vec![f.zero(); self.ideal.ambient()];
        for (&k, x) in self.keep.iter().zip(c) {
            v[k] = x.clone();
        }
        v
    }

    pub fn project_space(&self, s: &Subspace) -> Subspace {
        self.algebra.span(s.rows().iter().map(|r| self.project(r)))
    }

    /// Full preimage of a subspace of the quotient.
    pub fn preimage(&self, s: &Subspace) -> Subspace {
        let f = self.algebra.field();
        Subspace::span(f, self.ideal.ambient(), s.rows().iter().map(|r| self.lift(r)).chain(self.ideal.rows().iter().cloned()))
    }
}

/// Direct product; returns the algebra and the coordinate offset of each
/// factor.
pub fn product_algebra(factors: &[&Algebra]) -> Result<(Algebra, Vec<usize>)> {
    let first = factors.first().ok_or_else(|| Error::InvalidPrecondition("empty product".into()))?;
    let f = first.field().clone();
    if factors.iter().any(|a| a.field() != &f) {
        return Err(crate::field::FieldError::DescriptorMismatch.into());
    }
    let n: usize = factors.iter().map(|a| a.dim()).sum();
    let mut offsets = Vec::with_capacity(factors.len());
    let mut table = vec![vec![vec![f.zero(); n]; n]; n];
    let mut unit = vec![f.zero(); n];
    let mut names = Vec::with_capacity(n);
    let mut off = 0;
    for (idx, a) in factors.iter().enumerate() {
        offsets.push(off);
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for k in 0..a.dim() {
                    table[off + i][off + j][off + k] = a.table()[i][j][k].clone();
                }
            }
            unit[off + i] = a.unit()[i].clone();
            names.push(if factors.len() == 1 { a.names()[i].clone() } else { format!("{}_{}", a.names()[i], idx + 1) });
        }
        off += a.dim();
    }
    Ok((Algebra::new(f, table, Some(unit), names)?, offsets))
}

/// `K^n`.
pub fn split_algebra(field: &Field, n: usize) -> Result<Algebra> {
    let line = Algebra::scalars(field);
    let refs: Vec<&Algebra> = (0..n).map(|_| &line).collect();
    Ok(product_algebra(&refs)?.0)
}

pub fn truncated_poly_algebra(field: &Field, m: usize, mode: Truncation) -> Algebra {
    let f = field;
    match mode {
        Truncation::SquaresOnly => {
            let n = 1usize << m;
            let name = |mask: usize| -> String {
                if mask == 0 {
                    return "1".into();
                }
                (0..m).filter(|i| mask >> i & 1 == 1).map(|i| format!("x{}", i + 1)).collect()
            };
            let table = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            let mut v = vec![f.zero(); n];
                            if a & b == 0 {
                                v[a | b] = f.one();
                            }
                            v
                        })
                        .collect()
                })
                .collect();
            let mut unit = vec![f.zero(); n];
            unit[0] = f.one();
            Algebra::new(f.clone(), table, Some(unit), (0..n).map(name).collect()).expect("truncated algebra")
        }
        Truncation::SquaresAndProducts => {
            let n = m + 1;
            let table = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            let mut v = vec![f.zero(); n];
                            if a == 0 || b == 0 {
                                v[a + b] = f.one();
                            }
                            v
                        })
                        .collect()
                })
                .collect();
            let mut unit = vec![f.zero(); n];
            unit[0] = f.one();
            let names = std::iter::once("1".to_string()).chain((1..=m).map(|i| format!("x{}", i))).collect();
            Algebra::new(f.clone(), table, Some(unit), names).expect("truncated algebra")
        }
    }
}

/// `A[X]/(X^d + c_{d-1} X^{d-1} + ... + c_0)` with `c_i` in `A`. Basis is
/// `b_i x^j`, ordered by `j` first.
pub fn monogenic_extension(base: &Algebra, coeffs: &[Element], var: &str) -> Result<Algebra> {
    let d = coeffs.len();
    if d == 0 {
        return Err(Error::InvalidPrecondition("monic polynomial of degree zero".into()));
    }
    let f = base.field();
    let n = base.dim();
    let dim = n * d;
    let as_poly = |idx: usize| -> Vec<Element> {
        let mut p = vec![base.zero(); d];
        p[idx / n] = base.basis_vector(idx % n);
        p
    };
    let reduce = |mut p: Vec<Element>| -> Vec<Element> {
        while p.len() > d {
            let c = p.pop().expect("nonempty");
            let top = p.len() - d;
            for (i, ci) in coeffs.iter().enumerate() {
                p[top + i] = base.sub(&p[top + i], &base.mul(&c, ci));
            }
        }
        p
    };
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let pa = as_poly(a);
            let pb = as_poly(b);
            let mut prod = vec![base.zero(); 2 * d - 1];
            for (i, x) in pa.iter().enumerate() {
                for (j, y) in pb.iter().enumerate() {
                    prod[i + j] = base.add(&prod[i + j], &base.mul(x, y));
                }
            }
            let red = reduce(prod);
            table[a][b] = red.into_iter().flatten().collect();
        }
    }
    let mut unit = vec![f.zero(); dim];
    unit[..n].clone_from_slice(base.unit());
    let names = (0..dim)
        .map(|idx| {
            let (i, j) = (idx % n, idx / n);
            let b = &base.names()[i];
            let x = match j {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, j),
            };
            match (b.as_str(), j) {
                (_, 0) => b.clone(),
                ("1", _) => x,
                _ => format!("{}{}", b, x),
            }
        })
        .collect();
    Algebra::new(f.clone(), table, Some(unit), names)
}

/// `K[X]/(m)` for a monic polynomial `m` over `K`, coefficients low to high.
pub fn polynomial_quotient(field: &Field, m: &[Scalar], var: &str) -> Result<Algebra> {
    let d = m.len().checked_sub(1).ok_or_else(|| Error::InvalidPrecondition("zero polynomial".into()))?;
    if d == 0 || !m[d].is_one() {
        return Err(Error::InvalidPrecondition("polynomial must be monic of positive degree".into()));
    }
    let base = Algebra::scalars(field);
    let coeffs: Vec<Element> = m[..d].iter().map(|c| vec![c.clone()]).collect();
    monogenic_extension(&base, &coeffs, var)
}
