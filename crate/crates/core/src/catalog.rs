//! Named example extensions with their known verdicts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{self, Algebra, Element, Subalgebra, Truncation};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::io::{Expected, Extension};
use crate::poly;

pub const NAMES: &[&str] =
    &["ex1", "ex2", "split", "ff", "ex5", "remark7151", "ex3-two-var", "prop7170", "tower-partition"];

/// Parameters for [`build`]; unset values take per-example defaults.
#[derive(Debug, Clone, Default)]
pub struct Params {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub q: Option<u64>,
    pub e: Option<u32>,
    pub seed: Option<u64>,
}

pub fn build(name: &str, p: &Params) -> Result<Extension> {
    match name {
        "ex1" => ex1(p.q.unwrap_or(2), p.m.unwrap_or(2)),
        "ex2" => ex2(p.q.unwrap_or(2), p.m.unwrap_or(3)),
        "split" => split(p.n.unwrap_or(3), p.q.unwrap_or(2)),
        "ff" => ff(p.q.unwrap_or(2), p.e.unwrap_or(2)),
        "ex5" => ex5(),
        "remark7151" => remark7151(),
        "ex3-two-var" => ex3_two_var(),
        "prop7170" => prop7170(p.m.unwrap_or(2), p.seed.unwrap_or(1)),
        "tower-partition" => tower_partition(p.n.unwrap_or(3)),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

/// The fixed instances exercised by the acceptance suite.
pub fn standard() -> Result<Vec<Extension>> {
    Ok(vec![
        ex1(2, 2)?,
        ex2(2, 3)?,
        ex2(2, 2)?,
        split(3, 2)?,
        split(4, 2)?,
        split(3, 3)?,
        ff(2, 2)?,
        ff(2, 4)?,
        ex5()?,
        remark7151()?,
        ex3_two_var()?,
        prop7170(2, 1)?,
        tower_partition(3)?,
    ])
}

/// `GF(q)` for a prime power `q`.
pub fn field_of_order(q: u64) -> Result<Field> {
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if q < 2 || !q.is_multiple_of(p) {
        p = q;
    }
    let mut f = 0u32;
    let mut r = q;
    while r.is_multiple_of(p) && r > 1 {
        r /= p;
        f += 1;
    }
    if r != 1 || q < 2 {
        return Err(Error::InvalidPrecondition(format!("{} is not a prime power", q)));
    }
    Ok(Field::gf(p as u32, f)?)
}

fn line(alg: &Algebra) -> Subalgebra {
    alg.base_line()
}

fn gaussian_subspace_count(q: u64, m: usize) -> usize {
    // sum_k [m choose k]_q
    let mut total = 0u128;
    for k in 0..=m {
        let mut num = 1u128;
        let mut den = 1u128;
        for i in 0..k {
            num *= (q as u128).pow((m - i) as u32) - 1;
            den *= (q as u128).pow((i + 1) as u32) - 1;
        }
        total += num / den;
    }
    total as usize
}

fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty")];
        for &x in &row {
            let v = next.last().expect("nonempty") + x;
            next.push(v);
        }
        row = next;
    }
    row[0]
}

/// `k[x_1..x_m]/(x_i^2)` over `k = GF(q)`.
pub fn ex1(q: u64, m: usize) -> Result<Extension> {
    if m == 0 || m > 4 {
        return Err(Error::InvalidPrecondition("ex1 needs 1 <= m <= 4".into()));
    }
    let f = field_of_order(q)?;
    let alg = algebra::truncated_poly_algebra(&f, m, Truncation::SquaresOnly);
    let char2 = f.characteristic() == 2;
    let expected = Expected {
        pw: Some(m == 1 || char2),
        pair: Some(m == 1),
        co_pw: Some(false),
        case: (m >= 2 && char2).then(|| "a".into()),
        minimal_type: Some(if m == 1 { "ramified" } else { "not-minimal" }.into()),
        ..Expected::default()
    };
    Ok(Extension {
        id: format!("ex1_m{}_q{}", m, q),
        r: line(&alg),
        s: alg.full(),
        alg,
        chain: None,
        generators: Vec::new(),
        expected: Some(expected),
        notes: Some("squares of the variables vanish; pointwise minimal, not a pair when m >= 2".into()),
    })
}

/// `k[x_1..x_m]/(x_i x_j)` over `k = GF(q)`.
pub fn ex2(q: u64, m: usize) -> Result<Extension> {
    if m == 0 || m > 7 {
        return Err(Error::InvalidPrecondition("ex2 needs 1 <= m <= 7".into()));
    }
    let f = field_of_order(q)?;
    let alg = algebra::truncated_poly_algebra(&f, m, Truncation::SquaresAndProducts);
    let expected = Expected {
        pw: Some(true),
        pair: Some(true),
        co_pw: Some(m == 2),
        case: (m >= 2).then(|| "a".into()),
        minimal_type: Some(if m == 1 { "ramified" } else { "not-minimal" }.into()),
        lattice_nodes: Some(gaussian_subspace_count(q, m)),
        length: Some(m),
        geometric: Some(true),
        ..Expected::default()
    };
    Ok(Extension {
        id: format!("ex2_m{}_q{}", m, q),
        r: line(&alg),
        s: alg.full(),
        alg,
        chain: None,
        generators: Vec::new(),
        expected: Some(expected),
        notes: Some("all products of the variables vanish; a pointwise minimal pair, co-pointwise minimal iff m = 2".into()),
    })
}

/// The diagonal `k ⊂ k^n`, `k = GF(q)`.
pub fn split(n: usize, q: u64) -> Result<Extension> {
    if !(2..=6).contains(&n) {
        return Err(Error::InvalidPrecondition("split needs 2 <= n <= 6".into()));
    }
    let f = field_of_order(q)?;
    let alg = algebra::split_algebra(&f, n)?;
    let two = q == 2;
    let expected = Expected {
        pw: Some(two || n == 2),
        pair: Some(n == 2 || (two && n <= 3)),
        co_pw: Some(two && n == 3),
        case: (two && n >= 3).then(|| "b".into()),
        minimal_type: Some(if n == 2 { "decomposed" } else { "not-minimal" }.into()),
        lattice_nodes: Some(bell(n)),
        atoms: Some((1usize << (n - 1)) - 1),
        length: Some(n - 1),
        geometric: Some(n <= 3),
        ..Expected::default()
    };
    Ok(Extension {
        id: format!("split_n{}_q{}", n, q),
        r: line(&alg),
        s: alg.full(),
        alg,
        chain: None,
        generators: Vec::new(),
        expected: Some(expected),
        notes: Some("diagonal embedding into a split algebra; intermediate rings are set partitions".into()),
    })
}

/// First monic irreducible polynomial of degree `e` over a finite field, in
/// packed coefficient order.
pub fn first_irreducible(f: &Field, e: u32) -> Result<Vec<Scalar>> {
    let q = f.order().ok_or(Error::InvalidPrecondition("finite field required".into()))?;
    let count = q.checked_pow(e).ok_or(Error::InvalidPrecondition("degree too large".into()))?;
    for idx in 0..count {
        let mut c: Vec<Scalar> = Vec::with_capacity(e as usize + 1);
        let mut k = idx;
        for _ in 0..e {
            c.push(Scalar::Gf((k % q) as u32));
            k /= q;
        }
        c.push(f.one());
        if poly::is_irreducible(f, &c) {
            return Ok(c);
        }
    }
    Err(Error::Internal("no irreducible polynomial found".into()))
}

fn divisor_stats(e: u32) -> (usize, usize, bool) {
    let divisors = (1..=e).filter(|d| e.is_multiple_of(*d)).count();
    let (mut n, mut omega, mut squarefree) = (e, 0usize, true);
    let mut p = 2;
    while n > 1 {
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        omega += k;
        squarefree &= k <= 1;
        p += 1;
    }
    (divisors, omega, squarefree)
}

/// `GF(q) ⊂ GF(q^e)`.
pub fn ff(q: u64, e: u32) -> Result<Extension> {
    if !(2..=6).contains(&e) {
        return Err(Error::InvalidPrecondition("ff needs 2 <= e <= 6".into()));
    }
    let f = field_of_order(q)?;
    let m = first_irreducible(&f, e)?;
    let alg = algebra::polynomial_quotient(&f, &m, "z")?;
    let prime = crate::canon::is_prime(e as usize);
    let (nodes, len, squarefree) = divisor_stats(e);
    let expected = Expected {
        pw: Some(prime),
        pair: Some(prime),
        co_pw: Some(false),
        minimal_type: Some(if prime { "inert" } else { "not-minimal" }.into()),
        lattice_nodes: Some(nodes),
        length: Some(len),
        geometric: Some(squarefree),
        ..Expected::default()
    };
    Ok(Extension {
        id: format!("ff_q{}_e{}", q, e),
        r: line(&alg),
        s: alg.full(),
        alg,
        chain: None,
        generators: Vec::new(),
        expected: Some(expected),
        notes: Some("finite field extension; intermediate rings are the subfields".into()),
    })
}

fn rf(name: &str) -> Result<Field> {
    Ok(Field::rational_functions(&Field::prime(2)?, name)?)
}

fn coords(alg: &Algebra, entries: &[(usize, Scalar)]) -> Element {
    let mut v = alg.zero();
    for (i, c) in entries {
        v[*i] = c.clone();
    }
    v
}

/// Over `k = F_2(t)`: `S = K[x]/(x^2)` with `K = k(y)`, `y^2 = t`. Basis
/// `1, y, x, xy`.
pub fn ex5() -> Result<Extension> {
    let k = rf("t")?;
    let t = k.variable().expect("rational variable");
    let big = algebra::polynomial_quotient(&k, &[k.neg(&t), k.zero(), k.one()], "y")?;
    let alg = algebra::monogenic_extension(&big, &[big.zero(), big.zero()], "x")?;
    let one = k.one();
    let y = coords(&alg, &[(1, one.clone())]);
    let x = coords(&alg, &[(2, one.clone())]);
    let r = line(&alg);
    let kk = alg.adjoin(&r, &y);
    let expected = Expected {
        pw: Some(true),
        pair: Some(false),
        co_pw: Some(false),
        case: Some("d".into()),
        minimal_type: Some("not-minimal".into()),
        step_types: Some(vec!["inert".into(), "ramified".into()]),
        generator_types: Some(vec!["ramified".into(), "inert".into()]),
        ..Expected::default()
    };
    Ok(Extension {
        id: "ex5".into(),
        chain: Some(vec![r.clone(), kk, alg.full()]),
        generators: vec![x, y],
        s: alg.full(),
        r,
        alg,
        expected: Some(expected),
        notes: Some("nilpotent extension of a degree-2 radicial field; pointwise minimal of mixed shape".into()),
    })
}

/// Over `k = F_2(u)`: `S = k[t, x]/(t^2, x^2 - u - t)`. Basis `1, t, x, tx`.
pub fn remark7151() -> Result<Extension> {
    let k = rf("u")?;
    let u = k.variable().expect("rational variable");
    let base = algebra::truncated_poly_algebra(&k, 1, Truncation::SquaresAndProducts);
    let base = {
        // rename x1 -> t
        let names = vec!["1".to_string(), "t".to_string()];
        Algebra::new(k.clone(), base.table().to_vec(), Some(base.unit().clone()), names)?
    };
    // x^2 - u - t = 0, so c_0 = -(u + t), c_1 = 0.
    let c0 = vec![k.neg(&u), k.neg(&k.one())];
    let alg = algebra::monogenic_extension(&base, &[c0, base.zero()], "x")?;
    let x = coords(&alg, &[(2, k.one())]);
    let expected = Expected {
        pw: Some(false),
        pair: Some(false),
        co_pw: Some(false),
        minimal_type: Some("not-minimal".into()),
        definition_witness: Some(true),
        ..Expected::default()
    };
    Ok(Extension {
        id: "remark7151".into(),
        r: line(&alg),
        s: alg.full(),
        alg,
        chain: None,
        generators: vec![x],
        expected: Some(expected),
        notes: Some("closures agree and the residue extension is radicial, yet k[x] = S is not minimal".into()),
    })
}

/// `K = F_2(a, b) ⊂ S = K(√a, √b)`, a radicial field extension of degree 4.
pub fn ex3_two_var() -> Result<Extension> {
    let inner = rf("a")?;
    let k = Field::rational_functions(&inner, "b")?;
    let a = k.constant(inner.variable().expect("rational variable"));
    let b = k.variable().expect("rational variable");
    let first = algebra::polynomial_quotient(&k, &[k.neg(&a), k.zero(), k.one()], "u")?;
    let bb = first.scalar(&k.neg(&b));
    let alg = algebra::monogenic_extension(&first, &[bb, first.zero()], "v")?;
    let expected = Expected {
        pw: Some(true),
        pair: Some(true),
        co_pw: Some(true),
        case: Some("c".into()),
        minimal_type: Some("not-minimal".into()),
        ..Expected::default()
    };
    Ok(Extension {
        id: "ex3_two_var".into(),
        r: line(&alg),
        s: alg.full(),
        alg,
        chain: None,
        generators: Vec::new(),
        expected: Some(expected),
        notes: Some("adjoining square roots of two independent variables; co-pointwise minimal".into()),
    })
}

/// `k ⊂ k + J` inside `k[x_1..x_m]/(x_i^2)` over `GF(2)`, with `J` the ideal
/// generated by a seeded random nilpotent.
pub fn prop7170(m: usize, seed: u64) -> Result<Extension> {
    if m == 0 || m > 4 {
        return Err(Error::InvalidPrecondition("prop7170 needs 1 <= m <= 4".into()));
    }
    let f = Field::prime(2)?;
    let alg = algebra::truncated_poly_algebra(&f, m, Truncation::SquaresOnly);
    let r = line(&alg);
    let s = alg.full();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let y = loop {
        let mut v = alg.zero();
        for c in v.iter_mut().skip(1) {
            *c = Scalar::Gf(rng.gen_range(0..2));
        }
        if !alg.is_zero(&v) {
            break v;
        }
    };
    let j = alg.ideal_generated(&s, std::slice::from_ref(&y));
    let upper = crate::pointwise::jacobson_builder(&alg, &r, &s, &j)?;
    let expected = Expected { pw: Some(true), case: (upper.dim() > 2).then(|| "a".into()), ..Expected::default() };
    Ok(Extension {
        id: format!("prop7170_m{}_s{}", m, seed),
        r,
        s: upper,
        alg,
        chain: None,
        generators: vec![y],
        expected: Some(expected),
        notes: Some("R + J for an ideal J whose squares vanish".into()),
    })
}

/// `GF(2) ⊂ GF(2)^n` with the chain of partitions `{1}, ..., {i}, {i+1..n}`.
pub fn tower_partition(n: usize) -> Result<Extension> {
    let mut ext = split(n, 2)?;
    let alg = &ext.alg;
    let mut chain = vec![line(alg)];
    let mut cur = line(alg);
    for i in 0..n - 1 {
        cur = alg.adjoin(&cur, &alg.basis_vector(i));
        chain.push(cur.clone());
    }
    ext.id = format!("tower_partition_n{}", n);
    if let Some(e) = ext.expected.as_mut() {
        e.step_types = Some(vec!["decomposed".into(); n - 1]);
    }
    ext.chain = Some(chain);
    ext.notes = Some("split algebra with a maximal chain of partition subalgebras".into());
    Ok(ext)
}
