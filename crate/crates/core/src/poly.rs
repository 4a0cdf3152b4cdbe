//! Dense univariate polynomials over a [`Field`], coefficients low to high.
//! A polynomial is trimmed when its last coefficient is nonzero; the zero
//! polynomial is empty.

use crate::field::{Field, Scalar};

pub type Poly = Vec<Scalar>;

pub fn trim(p: &mut Poly) {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &[Scalar]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add(f: &Field, a: &[Scalar], b: &[Scalar]) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: Poly = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = f.add(o, s);
    }
    trim(&mut out);
    out
}

pub fn neg(f: &Field, a: &[Scalar]) -> Poly {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn sub(f: &Field, a: &[Scalar], b: &[Scalar]) -> Poly {
    add(f, a, &neg(f, b))
}

pub fn scale(f: &Field, a: &[Scalar], c: &Scalar) -> Poly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| f.mul(x, c)).collect()
}

pub fn mul(f: &Field, a: &[Scalar], b: &[Scalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(f: &Field, a: &[Scalar], b: &[Scalar]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("trimmed divisor");
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate() {
            if !bi.is_zero() {
                r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, bi));
            }
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn div_exact(f: &Field, a: &[Scalar], b: &[Scalar]) -> Poly {
    let (q, r) = divrem(f, a, b);
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub fn monic(f: &Field, a: &[Scalar]) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(lc) if lc.is_one() => a.to_vec(),
        Some(lc) => scale(f, a, &f.inv(lc).expect("trimmed")),
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(f: &Field, a: &[Scalar], b: &[Scalar]) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    if (x.len() == 1 && !y.is_empty()) || (y.len() == 1 && !x.is_empty()) {
        return vec![f.one()];
    }
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn lcm(f: &Field, a: &[Scalar], b: &[Scalar]) -> Poly {
    let g = gcd(f, a, b);
    monic(f, &mul(f, &div_exact(f, a, &g), b))
}

pub fn pow(f: &Field, a: &[Scalar], mut n: u64) -> Poly {
    let mut acc = vec![f.one()];
    let mut base: Poly = a.to_vec();
    while n > 0 {
        if n & 1 == 1 {
            acc = mul(f, &acc, &base);
        }
        n >>= 1;
        if n > 0 {
            base = mul(f, &base, &base);
        }
    }
    acc
}

pub fn eval(f: &Field, a: &[Scalar], x: &Scalar) -> Scalar {
    a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn pow_mod(f: &Field, a: &[Scalar], mut n: u64, m: &[Scalar]) -> Poly {
    let mut acc = divrem(f, &[f.one()], m).1;
    let mut base = divrem(f, a, m).1;
    while n > 0 {
        if n & 1 == 1 {
            acc = divrem(f, &mul(f, &acc, &base), m).1;
        }
        n >>= 1;
        if n > 0 {
            base = divrem(f, &mul(f, &base, &base), m).1;
        }
    }
    acc
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test over a finite field.
pub fn is_irreducible(f: &Field, m: &[Scalar]) -> bool {
    let q = f.order().expect("irreducibility test needs a finite field");
    let m = monic(f, m);
    let n = match degree(&m) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let x = vec![f.zero(), f.one()];
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(divrem(f, &x, &m).1);
    for i in 1..=n {
        let next = pow_mod(f, &frob[i - 1], q, &m);
        frob.push(next);
    }
    if sub(f, &frob[n], &x).iter().any(|c| !c.is_zero()) {
        return false;
    }
    prime_factors(n).into_iter().all(|r| {
        let h = sub(f, &frob[n / r], &x);
        gcd(f, &h, &m).len() == 1
    })
}

/// Roots of `m` lying in `f`, sorted and without repetition. `None` when the
/// search is not supported: rational function fields of depth 2, or a
/// candidate space beyond `cap`.
pub fn roots(f: &Field, m: &[Scalar], cap: u64) -> Option<Vec<Scalar>> {
    let m = monic(f, m);
    let n = degree(&m)?;
    if n == 0 {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    if f.is_finite() {
        if f.order()? > cap {
            return None;
        }
        for x in f.elements().ok()? {
            if eval(f, &m, &x).is_zero() {
                out.push(x);
            }
        }
        return Some(out);
    }
    if f.depth() != 1 {
        return None;
    }
    let base = f.base()?;
    let q0 = base.order()?;
    // Clear denominators: g(Y) = D^n m(Y/D) is monic over base[t].
    let mut d: Poly = vec![base.one()];
    for c in &m {
        if let Scalar::Rf(r) = c {
            d = lcm(base, &d, r.den());
        }
    }
    let dd = f.fraction(d.clone(), vec![base.one()]).ok()?;
    let mut g: Vec<Poly> = Vec::with_capacity(n + 1);
    for (i, c) in m.iter().enumerate() {
        let scaled = f.mul(c, &f.pow(&dd, (n - i) as u64));
        match scaled {
            Scalar::Rf(r) => {
                debug_assert!(r.den().len() == 1);
                g.push(r.num().to_vec());
            }
            Scalar::Gf(_) => return None,
        }
    }
    let mut bound = 0usize;
    for (i, gi) in g.iter().enumerate().take(n) {
        if let Some(dg) = degree(gi) {
            bound = bound.max(dg / (n - i));
        }
    }
    let count = q0.checked_pow(bound as u32 + 1)?;
    if count > cap {
        return None;
    }
    let gy: Poly = g.iter().map(|c| f.fraction(c.clone(), vec![base.one()]).expect("unit denominator")).collect();
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(bound + 1);
        let mut k = idx;
        for _ in 0..=bound {
            coeffs.push(Scalar::Gf((k % q0) as u32));
            k /= q0;
        }
        trim(&mut coeffs);
        let y = f.fraction(coeffs, vec![base.one()]).ok()?;
        if eval(f, &gy, &y).is_zero() {
            out.push(f.div(&y, &dd).ok()?);
        }
    }
    out.sort();
    out.dedup();
    Some(out)
}
