//! Brute-force reference computations over finite fields. Everything here
//! works on explicit element sets and never touches echelon forms.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use ringlat::{Algebra, Element, Scalar, Subalgebra};

pub type Set = BTreeSet<Element>;

/// Every element of `alg` (the field must be finite).
pub fn all_elements(alg: &Algebra) -> Vec<Element> {
    let scalars: Vec<Scalar> = alg.field().elements().unwrap().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..alg.dim() {
        out = out
            .into_iter()
            .flat_map(|v: Element| {
                scalars.iter().map(move |c| {
                    let mut w = v.clone();
                    w.push(c.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// Elements of the span of a subspace basis.
pub fn elements_of(alg: &Algebra, rows: &[Element]) -> Set {
    let f = alg.field();
    let mut set: Set = [alg.zero()].into_iter().collect();
    for r in rows {
        let mut next = Set::new();
        for c in f.elements().unwrap() {
            for v in &set {
                next.insert(alg.add(v, &alg.scale(&c, r)));
            }
        }
        set = next;
    }
    set
}

/// Smallest set containing `seed` and closed under `+` and `*`. Each new
/// element is combined once with everything found so far.
pub fn ring_closure(alg: &Algebra, seed: &Set) -> Set {
    let mut set = Set::new();
    let mut found: Vec<Element> = Vec::new();
    let mut queue: Vec<Element> = seed.iter().cloned().collect();
    queue.push(alg.zero());
    queue.push(alg.unit().clone());
    while let Some(a) = queue.pop() {
        if !set.insert(a.clone()) {
            continue;
        }
        found.push(a.clone());
        for b in &found {
            for c in [alg.add(&a, b), alg.mul(&a, b)] {
                if !set.contains(&c) {
                    queue.push(c);
                }
            }
        }
    }
    set
}

/// All subrings of `top` containing `bottom`, found by adjoining single
/// elements until nothing new appears. Since `bottom` contains the prime
/// field, subrings are subalgebras.
pub fn interval(alg: &Algebra, bottom: &Set, top: &Set) -> Vec<Set> {
    let start = ring_closure(alg, bottom);
    let mut seen: HashSet<Set> = [start.clone()].into_iter().collect();
    let mut queue = vec![start];
    while let Some(t) = queue.pop() {
        for x in top {
            if t.contains(x) {
                continue;
            }
            let mut seed = t.clone();
            seed.insert(x.clone());
            let u = ring_closure(alg, &seed);
            if seen.insert(u.clone()) {
                queue.push(u);
            }
        }
    }
    let mut out: Vec<Set> = seen.into_iter().collect();
    out.sort_by_key(|s| s.len());
    out
}

pub struct LatticeFacts {
    pub nodes: usize,
    pub atoms: usize,
    pub length: usize,
}

pub fn lattice_facts(nodes: &[Set]) -> LatticeFacts {
    let n = nodes.len();
    let below = |a: usize, b: usize| a != b && nodes[a].is_subset(&nodes[b]);
    let bottom = (0..n).min_by_key(|&i| nodes[i].len()).unwrap();
    let atoms = (0..n)
        .filter(|&a| below(bottom, a) && !(0..n).any(|c| below(bottom, c) && below(c, a)))
        .count();
    // Longest chain, nodes are sorted by size.
    let mut longest = vec![0usize; n];
    for b in 0..n {
        for a in 0..b {
            if below(a, b) {
                longest[b] = longest[b].max(longest[a] + 1);
            }
        }
    }
    LatticeFacts { nodes: n, atoms, length: longest.into_iter().max().unwrap() }
}

pub fn subalgebra_set(alg: &Algebra, t: &Subalgebra) -> Set {
    elements_of(alg, t.rows())
}

pub fn is_nilpotent(alg: &Algebra, x: &Element) -> bool {
    let mut p = x.clone();
    for _ in 0..=alg.dim() {
        if alg.is_zero(&p) {
            return true;
        }
        p = alg.mul(&p, x);
    }
    false
}

/// `{x in S : x S ⊆ R}` by scanning every element of `S`.
pub fn conductor_set(alg: &Algebra, r: &Set, s: &Set) -> Set {
    s.iter().filter(|x| s.iter().all(|y| r.contains(&alg.mul(x, y)))).cloned().collect()
}

/// Does `R ⊂ T` have no intermediate ring, checked by single adjunctions.
pub fn is_minimal(alg: &Algebra, r: &Set, t: &Set) -> bool {
    r != t && t.iter().filter(|x| !r.contains(*x)).all(|x| {
        let mut seed = r.clone();
        seed.insert(x.clone());
        &ring_closure(alg, &seed) == t
    })
}

/// Every `R[x]` for `x ∈ S \ R` is minimal over `R`.
pub fn is_pointwise_minimal(alg: &Algebra, r: &Set, s: &Set) -> bool {
    s.iter().filter(|x| !r.contains(*x)).all(|x| {
        let mut seed = r.clone();
        seed.insert(x.clone());
        is_minimal(alg, r, &ring_closure(alg, &seed))
    })
}
