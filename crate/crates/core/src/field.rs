//! Exact scalar fields.
//!
//! Two backends: finite fields `GF(p^f)` given by an irreducible modulus, and
//! rational function fields `F(t)` over another field of this module. Towers
//! are capped at two rational layers, so `F_p(t1, t2)` is `RF(RF(GF(p)))` and
//! every gcd stays a univariate Euclid over a field.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::poly::{self, Poly};

/// Deepest supported stack of rational function layers.
pub const MAX_TOWER_DEPTH: usize = 2;

/// Largest finite field order with precomputed log tables.
const MAX_ORDER: u64 = 1 << 22;

/// Irreducible moduli shipped with the library, coefficients low to high.
static MODULUS_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar does not belong to this field")]
    DescriptorMismatch,
    #[error("unsupported field tower: {0}")]
    UnsupportedTower(String),
    #[error("operation needs a finite field")]
    InfiniteField,
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("malformed scalar: {0}")]
    MalformedScalar(String),
}

/// Serializable description of a field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDescriptor {
    Gf {
        p: u32,
        f: u32,
        #[serde(default)]
        modulus: Vec<u32>,
    },
    Rf {
        base: Box<FieldDescriptor>,
        var: String,
    },
}

impl FieldDescriptor {
    pub fn gf(p: u32, f: u32) -> Self {
        FieldDescriptor::Gf { p, f, modulus: Vec::new() }
    }

    pub fn rf(base: FieldDescriptor, var: &str) -> Self {
        FieldDescriptor::Rf { base: Box::new(base), var: var.to_string() }
    }
}

/// Element of some [`Field`]. Values are canonical, so structural equality is
/// field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    /// Packed base-`p` digits of the coordinate vector over `GF(p)`.
    Gf(u32),
    Rf(Box<RatFn>),
}

/// Reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn num(&self) -> &[Scalar] {
        &self.num
    }

    pub fn den(&self) -> &[Scalar] {
        &self.den
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Gf(a) => *a == 0,
            Scalar::Rf(r) => r.num.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Gf(a) => *a == 1,
            Scalar::Rf(r) => {
                r.num.len() == 1 && r.den.len() == 1 && r.num[0].is_one() && r.den[0].is_one()
            }
        }
    }
}

struct GfTables {
    p: u32,
    f: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct RfLayer {
    base: Field,
    var: String,
    depth: usize,
}

enum Kind {
    Gf(GfTables),
    Rf(RfLayer),
}

struct Inner {
    desc: FieldDescriptor,
    kind: Kind,
}

/// Runtime field: a validated descriptor plus arithmetic tables.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl Eq for Field {}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn to_digits(mut a: u32, p: u32, f: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(f as usize);
    for _ in 0..f {
        out.push(a % p);
        a /= p;
    }
    out
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Schoolbook product modulo a monic modulus; only used to build tables.
fn slow_mul(a: u32, b: u32, p: u32, f: u32, modulus: &[u32]) -> u32 {
    let da = to_digits(a, p, f);
    let db = to_digits(b, p, f);
    let f = f as usize;
    let mut prod = vec![0u64; 2 * f];
    for i in 0..f {
        for j in 0..f {
            prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p as u64;
        }
    }
    for d in (f..2 * f).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = d - f + i;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
    }
    let digits: Vec<u32> = prod[..f].iter().map(|&c| c as u32).collect();
    from_digits(&digits, p)
}

impl Field {
    pub fn new(desc: &FieldDescriptor) -> Result<Field, FieldError> {
        match desc {
            FieldDescriptor::Gf { p, f, modulus } => Self::new_gf(*p, *f, modulus),
            FieldDescriptor::Rf { base, var } => {
                let base = Field::new(base)?;
                Self::rational_functions(&base, var)
            }
        }
    }

    /// Prime field `GF(p)`.
    pub fn prime(p: u32) -> Result<Field, FieldError> {
        Self::new_gf(p, 1, &[])
    }

    /// `GF(p^f)` with the shipped modulus.
    pub fn gf(p: u32, f: u32) -> Result<Field, FieldError> {
        Self::new_gf(p, f, &[])
    }

    /// `base(var)`.
    pub fn rational_functions(base: &Field, var: &str) -> Result<Field, FieldError> {
        let depth = base.depth() + 1;
        if depth > MAX_TOWER_DEPTH {
            return Err(FieldError::UnsupportedTower(format!(
                "{} rational layers requested, at most {} supported",
                depth, MAX_TOWER_DEPTH
            )));
        }
        if var.is_empty() {
            return Err(FieldError::InvalidDescriptor("empty variable name".into()));
        }
        let desc = FieldDescriptor::Rf { base: Box::new(base.descriptor().clone()), var: var.to_string() };
        Ok(Field(Arc::new(Inner {
            desc,
            kind: Kind::Rf(RfLayer { base: base.clone(), var: var.to_string(), depth }),
        })))
    }

    fn new_gf(p: u32, f: u32, modulus: &[u32]) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::InvalidDescriptor(format!("{} is not prime", p)));
        }
        if f == 0 {
            return Err(FieldError::InvalidDescriptor("extension degree must be positive".into()));
        }
        let q = (p as u64).checked_pow(f).filter(|&q| q <= MAX_ORDER).ok_or_else(|| {
            FieldError::InvalidDescriptor(format!("GF({}^{}) exceeds the supported order", p, f))
        })?;
        let modulus: Vec<u32> = if modulus.is_empty() {
            if f == 1 {
                vec![0, 1]
            } else {
                MODULUS_TABLE
                    .iter()
                    .find(|(tp, tf, _)| *tp == p && *tf == f)
                    .map(|(_, _, m)| m.to_vec())
                    .ok_or_else(|| {
                        FieldError::InvalidDescriptor(format!(
                            "no shipped modulus for GF({}^{}); supply one",
                            p, f
                        ))
                    })?
            }
        } else {
            modulus.to_vec()
        };
        if modulus.len() != f as usize + 1 || modulus.iter().any(|&c| c >= p) || modulus[f as usize] != 1 {
            return Err(FieldError::InvalidDescriptor(format!(
                "modulus must be monic of degree {} with coefficients below {}",
                f, p
            )));
        }
        if f > 1 {
            let fp = Field::prime(p)?;
            let m: Poly = modulus.iter().map(|&c| Scalar::Gf(c)).collect();
            if !poly::is_irreducible(&fp, &m) {
                return Err(FieldError::InvalidDescriptor(format!("modulus {:?} is reducible", modulus)));
            }
        }
        let q = q as u32;
        let mut log = vec![0u32; q as usize];
        let mut exp = Vec::new();
        'search: for g in 1..q {
            exp.clear();
            let mut x = 1u32;
            for k in 0..(q - 1) {
                exp.push(x);
                x = slow_mul(x, g, p, f, &modulus);
                if x == 1 && k + 1 < q - 1 {
                    continue 'search;
                }
            }
            break;
        }
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u32;
        }
        let desc = FieldDescriptor::Gf { p, f, modulus };
        Ok(Field(Arc::new(Inner { desc, kind: Kind::Gf(GfTables { p, f, q, exp, log }) })))
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.desc
    }

    /// Number of rational layers above the finite field.
    pub fn depth(&self) -> usize {
        match &self.0.kind {
            Kind::Gf(_) => 0,
            Kind::Rf(r) => r.depth,
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match &self.0.kind {
            Kind::Gf(_) => None,
            Kind::Rf(r) => Some(&r.base),
        }
    }

    pub fn characteristic(&self) -> u32 {
        match &self.0.kind {
            Kind::Gf(g) => g.p,
            Kind::Rf(r) => r.base.characteristic(),
        }
    }

    /// Field order, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        match &self.0.kind {
            Kind::Gf(g) => Some(g.q as u64),
            Kind::Rf(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// The finite field at the bottom of the tower.
    pub fn ground(&self) -> &Field {
        match &self.0.kind {
            Kind::Gf(_) => self,
            Kind::Rf(r) => r.base.ground(),
        }
    }

    pub fn name(&self) -> String {
        match &self.0.kind {
            Kind::Gf(g) => {
                if g.f == 1 {
                    format!("GF({})", g.p)
                } else {
                    format!("GF({}^{})", g.p, g.f)
                }
            }
            Kind::Rf(r) => format!("{}({})", r.base.name(), r.var),
        }
    }

    pub fn zero(&self) -> Scalar {
        match &self.0.kind {
            Kind::Gf(_) => Scalar::Gf(0),
            Kind::Rf(r) => Scalar::Rf(Box::new(RatFn { num: Vec::new(), den: vec![r.base.one()] })),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match &self.0.kind {
            Kind::Gf(g) => Scalar::Gf(n.rem_euclid(g.p as i64) as u32),
            Kind::Rf(r) => {
                let c = r.base.from_int(n);
                let num = if c.is_zero() { Vec::new() } else { vec![c] };
                Scalar::Rf(Box::new(RatFn { num, den: vec![r.base.one()] }))
            }
        }
    }

    /// The transcendental generator of the top rational layer.
    pub fn variable(&self) -> Option<Scalar> {
        match &self.0.kind {
            Kind::Gf(_) => None,
            Kind::Rf(r) => Some(Scalar::Rf(Box::new(RatFn {
                num: vec![r.base.zero(), r.base.one()],
                den: vec![r.base.one()],
            }))),
        }
    }

    /// Embed a scalar of the base layer as a constant.
    pub fn constant(&self, c: Scalar) -> Scalar {
        match &self.0.kind {
            Kind::Gf(_) => c,
            Kind::Rf(r) => {
                let num = if c.is_zero() { Vec::new() } else { vec![c] };
                Scalar::Rf(Box::new(RatFn { num, den: vec![r.base.one()] }))
            }
        }
    }

    /// Build `num/den` from polynomials over the base layer.
    pub fn fraction(&self, num: Poly, den: Poly) -> Result<Scalar, FieldError> {
        match &self.0.kind {
            Kind::Gf(_) => Err(FieldError::DescriptorMismatch),
            Kind::Rf(r) => Ok(Scalar::Rf(Box::new(make_ratfn(&r.base, num, den)?))),
        }
    }

    /// Deep membership test.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (&self.0.kind, a) {
            (Kind::Gf(g), Scalar::Gf(x)) => *x < g.q,
            (Kind::Rf(r), Scalar::Rf(x)) => {
                let b = &r.base;
                x.num.iter().chain(x.den.iter()).all(|c| b.contains(c))
                    && x.num.last().is_none_or(|c| !c.is_zero())
                    && x.den.last().is_some_and(|c| c.is_one())
                    && (x.num.is_empty() && x.den.len() == 1
                        || poly::gcd(b, &x.num, &x.den).len() == 1)
            }
            _ => false,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.0.kind, a, b) {
            (Kind::Gf(g), Scalar::Gf(x), Scalar::Gf(y)) => Scalar::Gf(g.add(*x, *y)),
            (Kind::Rf(r), Scalar::Rf(x), Scalar::Rf(y)) => {
                if x.num.is_empty() {
                    return b.clone();
                }
                if y.num.is_empty() {
                    return a.clone();
                }
                let base = &r.base;
                if x.den == y.den {
                    let out = make_ratfn(base, poly::add(base, &x.num, &y.num), x.den.clone());
                    return Scalar::Rf(Box::new(out.expect("nonzero denominator")));
                }
                // Henrici: only the common factor of the denominators can
                // cancel against the new numerator.
                let g = poly::gcd(base, &x.den, &y.den);
                let (xd, yd) = if g.len() > 1 {
                    (poly::div_exact(base, &x.den, &g), poly::div_exact(base, &y.den, &g))
                } else {
                    (x.den.clone(), y.den.clone())
                };
                let mut num = poly::add(base, &poly::mul(base, &x.num, &yd), &poly::mul(base, &y.num, &xd));
                poly::trim(&mut num);
                if num.is_empty() {
                    return self.zero();
                }
                let mut den = poly::mul(base, &xd, &y.den);
                if g.len() > 1 {
                    let h = poly::gcd(base, &num, &g);
                    if h.len() > 1 {
                        num = poly::div_exact(base, &num, &h);
                        den = poly::div_exact(base, &den, &h);
                    }
                }
                Scalar::Rf(Box::new(RatFn { num, den }))
            }
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (&self.0.kind, a) {
            (Kind::Gf(g), Scalar::Gf(x)) => Scalar::Gf(g.neg(*x)),
            (Kind::Rf(r), Scalar::Rf(x)) => Scalar::Rf(Box::new(RatFn {
                num: poly::neg(&r.base, &x.num),
                den: x.den.clone(),
            })),
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.0.kind, a, b) {
            (Kind::Gf(g), Scalar::Gf(x), Scalar::Gf(y)) => Scalar::Gf(g.add(*x, g.neg(*y))),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.0.kind, a, b) {
            (Kind::Gf(g), Scalar::Gf(x), Scalar::Gf(y)) => Scalar::Gf(g.mul(*x, *y)),
            (Kind::Rf(r), Scalar::Rf(x), Scalar::Rf(y)) => {
                if x.num.is_empty() || y.num.is_empty() {
                    return self.zero();
                }
                if a.is_one() {
                    return b.clone();
                }
                if b.is_one() {
                    return a.clone();
                }
                let base = &r.base;
                // Cross gcds; the numerators and denominators are already coprime.
                let cancel = |n: &Poly, d: &Poly| -> (Poly, Poly) {
                    if d.len() == 1 {
                        return (n.clone(), d.clone());
                    }
                    let g = poly::gcd(base, n, d);
                    if g.len() == 1 {
                        (n.clone(), d.clone())
                    } else {
                        (poly::div_exact(base, n, &g), poly::div_exact(base, d, &g))
                    }
                };
                let (xn, yd) = cancel(&x.num, &y.den);
                let (yn, xd) = cancel(&y.num, &x.den);
                let num = poly::mul(base, &xn, &yn);
                let den = poly::mul(base, &xd, &yd);
                Scalar::Rf(Box::new(RatFn { num, den }))
            }
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match (&self.0.kind, a) {
            (Kind::Gf(g), Scalar::Gf(x)) => Ok(Scalar::Gf(g.inv(*x))),
            (Kind::Rf(r), Scalar::Rf(x)) => {
                let base = &r.base;
                let lc = base.inv(x.num.last().expect("nonzero"))?;
                Ok(Scalar::Rf(Box::new(RatFn {
                    num: poly::scale(base, &x.den, &lc),
                    den: poly::scale(base, &x.num, &lc),
                })))
            }
            _ => Err(FieldError::DescriptorMismatch),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, n: u64) -> Scalar {
        match (&self.0.kind, a) {
            (Kind::Gf(g), Scalar::Gf(x)) => Scalar::Gf(g.pow(*x, n)),
            (Kind::Rf(r), Scalar::Rf(x)) => {
                if n == 0 {
                    return self.one();
                }
                let base = &r.base;
                Scalar::Rf(Box::new(RatFn { num: poly::pow(base, &x.num, n), den: poly::pow(base, &x.den, n) }))
            }
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    /// Checked binary arithmetic for external callers.
    pub fn checked(&self, op: ScalarOp, a: &Scalar, b: &Scalar) -> Result<Scalar, FieldError> {
        if !self.contains(a) || !self.contains(b) {
            return Err(FieldError::DescriptorMismatch);
        }
        Ok(match op {
            ScalarOp::Add => self.add(a, b),
            ScalarOp::Sub => self.sub(a, b),
            ScalarOp::Mul => self.mul(a, b),
            ScalarOp::Div => self.div(a, b)?,
        })
    }

    /// `a^(p^e)`.
    pub fn pth_power(&self, a: &Scalar, e: u32) -> Scalar {
        match (&self.0.kind, a) {
            (Kind::Gf(g), Scalar::Gf(x)) => Scalar::Gf(g.pow(*x, (g.p as u64).pow(e % g.f))),
            (Kind::Rf(r), Scalar::Rf(x)) => {
                let base = &r.base;
                let q = (self.characteristic() as usize).pow(e);
                let spread = |v: &Poly| -> Poly {
                    if v.is_empty() {
                        return Vec::new();
                    }
                    let mut out = vec![base.zero(); (v.len() - 1) * q + 1];
                    for (i, c) in v.iter().enumerate() {
                        out[i * q] = base.pth_power(c, e);
                    }
                    out
                };
                Scalar::Rf(Box::new(RatFn { num: spread(&x.num), den: spread(&x.den) }))
            }
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    /// Number of monomials in the `p^e`-basis of this field over its
    /// `p^e`-th powers.
    pub fn p_basis_len(&self, e: u32) -> usize {
        (self.characteristic() as usize).pow(e).pow(self.depth() as u32)
    }

    /// Exponent vectors (innermost variable first) of the `p^e`-basis, in
    /// the order used by [`Field::p_basis_expand`].
    pub fn p_basis_monomials(&self, e: u32) -> Vec<Vec<u32>> {
        let q = self.characteristic().pow(e);
        let d = self.depth();
        (0..self.p_basis_len(e))
            .map(|mut idx| {
                (0..d)
                    .map(|_| {
                        let r = (idx % q as usize) as u32;
                        idx /= q as usize;
                        r
                    })
                    .collect()
            })
            .collect()
    }

    /// Monomial `t1^a t2^b ...` from an exponent vector, innermost first.
    pub fn monomial(&self, exps: &[u32]) -> Scalar {
        match &self.0.kind {
            Kind::Gf(_) => self.one(),
            Kind::Rf(r) => {
                let (last, rest) = exps.split_last().expect("one exponent per layer");
                let c = r.base.monomial(rest);
                let mut num = vec![r.base.zero(); *last as usize + 1];
                num[*last as usize] = c;
                Scalar::Rf(Box::new(RatFn { num, den: vec![r.base.one()] }))
            }
        }
    }

    /// Components `g_m` with `a = sum_m m * g_m^(p^e)` over the monomial basis
    /// of [`Field::p_basis_monomials`].
    pub fn p_basis_expand(&self, a: &Scalar, e: u32) -> Vec<Scalar> {
        match (&self.0.kind, a) {
            (Kind::Gf(g), Scalar::Gf(x)) => {
                let k = (g.f - e % g.f) % g.f;
                vec![Scalar::Gf(g.pow(*x, (g.p as u64).pow(k)))]
            }
            (Kind::Rf(r), Scalar::Rf(x)) => {
                let base = &r.base;
                let q = (self.characteristic() as usize).pow(e);
                let inner = base.p_basis_len(e);
                let w = poly::mul(base, &x.num, &poly::pow(base, &x.den, q as u64 - 1));
                let mut comps: Vec<Poly> = vec![Vec::new(); inner * q];
                for (deg, c) in w.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (k, rr) = (deg / q, deg % q);
                    for (s, cs) in base.p_basis_expand(c, e).into_iter().enumerate() {
                        if cs.is_zero() {
                            continue;
                        }
                        let h = &mut comps[s + rr * inner];
                        if h.len() <= k {
                            h.resize(k + 1, base.zero());
                        }
                        h[k] = cs;
                    }
                }
                comps
                    .into_iter()
                    .map(|h| Scalar::Rf(Box::new(make_ratfn(base, h, x.den.clone()).expect("nonzero denominator"))))
                    .collect()
            }
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    /// Inverse of [`Field::p_basis_expand`].
    pub fn p_basis_reconstruct(&self, comps: &[Scalar], e: u32) -> Scalar {
        let mut acc = self.zero();
        for (m, g) in self.p_basis_monomials(e).iter().zip(comps) {
            let term = self.mul(&self.monomial(m), &self.pth_power(g, e));
            acc = self.add(&acc, &term);
        }
        acc
    }

    /// `Some(b)` with `b^p = a` when `a` is a p-th power.
    pub fn pth_root(&self, a: &Scalar) -> Option<Scalar> {
        let comps = self.p_basis_expand(a, 1);
        if comps[1..].iter().all(Scalar::is_zero) {
            Some(comps.into_iter().next().expect("at least one component"))
        } else {
            None
        }
    }

    pub fn is_pth_power(&self, a: &Scalar) -> bool {
        self.pth_root(a).is_some()
    }

    /// All elements of a finite field in packed order `0, 1, g, g+1, ...`.
    pub fn elements(&self) -> Result<impl Iterator<Item = Scalar>, FieldError> {
        match &self.0.kind {
            Kind::Gf(g) => Ok((0..g.q).map(Scalar::Gf)),
            Kind::Rf(_) => Err(FieldError::InfiniteField),
        }
    }

    /// Random element; over rational function fields numerator and
    /// denominator have degree at most `degree` in every layer.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, degree: u32) -> Scalar {
        match &self.0.kind {
            Kind::Gf(g) => Scalar::Gf(rng.gen_range(0..g.q)),
            Kind::Rf(r) => {
                let base = &r.base;
                let draw = |rng: &mut R| -> Poly {
                    let mut v: Poly = (0..=degree).map(|_| base.random(rng, degree)).collect();
                    poly::trim(&mut v);
                    v
                };
                let num = draw(rng);
                let den = loop {
                    let d = draw(rng);
                    if !d.is_empty() {
                        break d;
                    }
                };
                Scalar::Rf(Box::new(make_ratfn(base, num, den).expect("nonzero denominator")))
            }
        }
    }

    /// Human-readable rendering.
    pub fn format(&self, a: &Scalar) -> String {
        match (&self.0.kind, a) {
            (Kind::Gf(g), Scalar::Gf(x)) => {
                if g.f == 1 {
                    return x.to_string();
                }
                let d = to_digits(*x, g.p, g.f);
                let mut terms = Vec::new();
                for (i, &c) in d.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let mon = match i {
                        0 => String::new(),
                        1 => "g".to_string(),
                        _ => format!("g^{}", i),
                    };
                    terms.push(match (c, i) {
                        (_, 0) => c.to_string(),
                        (1, _) => mon,
                        _ => format!("{}{}", c, mon),
                    });
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
            (Kind::Rf(r), Scalar::Rf(x)) => {
                let render = |v: &Poly| -> String {
                    let mut s = String::new();
                    for (i, c) in v.iter().enumerate().rev() {
                        if c.is_zero() {
                            continue;
                        }
                        if !s.is_empty() {
                            s.push('+');
                        }
                        let cs = r.base.format(c);
                        let cs = if cs.contains('+') { format!("({})", cs) } else { cs };
                        match i {
                            0 => s.push_str(&cs),
                            _ => {
                                if !c.is_one() {
                                    s.push_str(&cs);
                                    s.push('*');
                                }
                                s.push_str(&r.var);
                                if i > 1 {
                                    let _ = write!(s, "^{}", i);
                                }
                            }
                        }
                    }
                    if s.is_empty() {
                        "0".into()
                    } else {
                        s
                    }
                };
                let n = render(&x.num);
                if x.den.len() == 1 {
                    n
                } else {
                    format!("({})/({})", n, render(&x.den))
                }
            }
            _ => "<foreign scalar>".into(),
        }
    }

    /// JSON form: coordinate array over the prime field for finite fields,
    /// `{"num": [...], "den": [...]}` for rational functions.
    pub fn to_json(&self, a: &Scalar) -> Value {
        match (&self.0.kind, a) {
            (Kind::Gf(g), Scalar::Gf(x)) => json!(to_digits(*x, g.p, g.f)),
            (Kind::Rf(r), Scalar::Rf(x)) => {
                let b = &r.base;
                json!({
                    "num": x.num.iter().map(|c| b.to_json(c)).collect::<Vec<_>>(),
                    "den": x.den.iter().map(|c| b.to_json(c)).collect::<Vec<_>>(),
                })
            }
            _ => Value::Null,
        }
    }

    /// Parse the JSON form. Plain integers are accepted as constants.
    pub fn from_json(&self, v: &Value) -> Result<Scalar, FieldError> {
        if let Some(n) = v.as_i64() {
            return Ok(self.from_int(n));
        }
        match &self.0.kind {
            Kind::Gf(g) => {
                let arr = v.as_array().ok_or_else(|| FieldError::MalformedScalar(format!("expected coordinate array, got {}", v)))?;
                if arr.len() > g.f as usize {
                    return Err(FieldError::MalformedScalar(format!("{} coordinates for a degree-{} field", arr.len(), g.f)));
                }
                let mut digits = vec![0u32; g.f as usize];
                for (i, c) in arr.iter().enumerate() {
                    let c = c.as_i64().ok_or_else(|| FieldError::MalformedScalar(format!("non-integer coordinate {}", c)))?;
                    digits[i] = c.rem_euclid(g.p as i64) as u32;
                }
                Ok(Scalar::Gf(from_digits(&digits, g.p)))
            }
            Kind::Rf(r) => {
                let obj = v.as_object().ok_or_else(|| FieldError::MalformedScalar(format!("expected {{num, den}}, got {}", v)))?;
                let parse = |key: &str, default: Poly| -> Result<Poly, FieldError> {
                    match obj.get(key) {
                        None => Ok(default),
                        Some(arr) => {
                            let arr = arr.as_array().ok_or_else(|| FieldError::MalformedScalar(format!("`{}` must be an array", key)))?;
                            let mut p = arr.iter().map(|c| r.base.from_json(c)).collect::<Result<Poly, _>>()?;
                            poly::trim(&mut p);
                            Ok(p)
                        }
                    }
                };
                let num = parse("num", Vec::new())?;
                let den = parse("den", vec![r.base.one()])?;
                Ok(Scalar::Rf(Box::new(make_ratfn(&r.base, num, den)?)))
            }
        }
    }
}

/// Binary operations exposed through [`Field::checked`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn make_ratfn(base: &Field, mut num: Poly, mut den: Poly) -> Result<RatFn, FieldError> {
    poly::trim(&mut num);
    poly::trim(&mut den);
    if den.is_empty() {
        return Err(FieldError::DivisionByZero);
    }
    if num.is_empty() {
        return Ok(RatFn { num, den: vec![base.one()] });
    }
    let g = poly::gcd(base, &num, &den);
    if g.len() > 1 {
        num = poly::div_exact(base, &num, &g);
        den = poly::div_exact(base, &den, &g);
    }
    let lc = den.last().expect("nonzero");
    if !lc.is_one() {
        let inv = base.inv(lc)?;
        num = poly::scale(base, &num, &inv);
        den = poly::scale(base, &den, &inv);
    }
    Ok(RatFn { num, den })
}

impl GfTables {
    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.f == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut pw, mut out) = (a, b, 1u32, 0u32);
        for _ in 0..self.f {
            out += ((a % self.p + b % self.p) % self.p) * pw;
            a /= self.p;
            b /= self.p;
            pw *= self.p;
        }
        out
    }

    fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        if self.f == 1 {
            return (self.p - a) % self.p;
        }
        let (mut a, mut pw, mut out) = (a, 1u32, 0u32);
        for _ in 0..self.f {
            out += ((self.p - a % self.p) % self.p) * pw;
            a /= self.p;
            pw *= self.p;
        }
        out
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    fn inv(&self, a: u32) -> u32 {
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }
}
