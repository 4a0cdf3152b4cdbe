//! The interval `[R, S]` of intermediate subalgebras over a finite field:
//! enumeration, Hasse diagram, chains, and lattice-theoretic properties.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{Algebra, Element, Subalgebra, Subspace};
use crate::error::{Error, Result};
use crate::options::Options;

/// Largest atom set accepted by the independence checks.
pub const MAX_INDEPENDENCE_ATOMS: usize = 20;

#[derive(Debug, Clone)]
pub struct IntervalLattice {
    /// Sorted by `(dim, echelon rows)`; node 0 is `R`, the last node is `S`.
    pub nodes: Vec<Subalgebra>,
    /// Distinct monogenic subalgebras `R[x]`, as node indices.
    pub seeds: Vec<usize>,
    /// One generator per seed.
    pub seed_generators: Vec<Element>,
    /// For each node `T`, the nodes `T[x]` for `x ∉ T`, sorted.
    pub monogenic: Vec<Vec<usize>>,
    /// Up-covers of each node, sorted.
    pub covers: Vec<Vec<usize>>,
    /// Down-covers of each node, sorted.
    pub covered_by: Vec<Vec<usize>>,
    index: HashMap<Subspace, usize>,
}

impl IntervalLattice {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn index_of(&self, t: &Subspace) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn leq(&self, alg: &Algebra, a: usize, b: usize) -> bool {
        self.nodes[b].contains_space(alg.field(), &self.nodes[a])
    }

    pub fn join(&self, alg: &Algebra, a: usize, b: usize) -> usize {
        let c = alg.compositum(&self.nodes[a], &self.nodes[b]);
        self.index[c.space()]
    }

    pub fn meet(&self, alg: &Algebra, a: usize, b: usize) -> usize {
        let c = alg.intersection(&self.nodes[a], &self.nodes[b]);
        self.index[c.space()]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, c) in self.covers.iter().enumerate() {
            for &j in c {
                out.push((i, j));
            }
        }
        out
    }

    pub fn atoms(&self) -> &[usize] {
        &self.covers[self.bottom()]
    }

    pub fn coatoms(&self) -> &[usize] {
        &self.covered_by[self.top()]
    }

    /// Longest chain from `from` to `to` in the Hasse diagram, if `from ≤ to`.
    pub fn length_between(&self, from: usize, to: usize) -> Option<usize> {
        let mut best: Vec<Option<usize>> = vec![None; self.len()];
        best[from] = Some(0);
        for i in from..self.len() {
            let Some(d) = best[i] else { continue };
            for &j in &self.covers[i] {
                if best[j].is_none_or(|b| b < d + 1) {
                    best[j] = Some(d + 1);
                }
            }
        }
        best[to]
    }

    /// `ℓ[R, S]`.
    pub fn length(&self) -> usize {
        self.length_between(self.bottom(), self.top()).expect("top is reachable")
    }

    /// Multiset of lengths of maximal chains from `R` to `S`, as
    /// `length -> number of chains`.
    pub fn maximal_chain_lengths(&self) -> BTreeMap<usize, u128> {
        let mut counts: Vec<BTreeMap<usize, u128>> = vec![BTreeMap::new(); self.len()];
        counts[self.bottom()].insert(0, 1);
        for i in 0..self.len() {
            let here = std::mem::take(&mut counts[i]);
            for &j in &self.covers[i] {
                for (&len, &c) in &here {
                    *counts[j].entry(len + 1).or_insert(0) += c;
                }
            }
            counts[i] = here;
        }
        counts[self.top()].clone()
    }

    /// Maximal chains from `R` to `S`, at most `cap` of them, in
    /// lexicographic order of node indices.
    pub fn maximal_chains(&self, cap: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![self.bottom()];
        self.walk_chains(&mut stack, &mut out, cap);
        out
    }

    fn walk_chains(&self, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) {
        if out.len() >= cap {
            return;
        }
        let last = *stack.last().expect("nonempty");
        if last == self.top() {
            out.push(stack.clone());
            return;
        }
        for &j in &self.covers[last] {
            stack.push(j);
            self.walk_chains(stack, out, cap);
            stack.pop();
        }
    }

    /// Every pair of distinct covers of a common node is covered by its join.
    /// Returns the first violating pair.
    pub fn semimodular_witness(&self, alg: &Algebra) -> Option<(usize, usize)> {
        for m in 0..self.len() {
            let up = &self.covers[m];
            for (i, &a) in up.iter().enumerate() {
                for &b in &up[i + 1..] {
                    let j = self.join(alg, a, b);
                    if self.covers[a].binary_search(&j).is_err() || self.covers[b].binary_search(&j).is_err() {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    pub fn is_semimodular(&self, alg: &Algebra) -> bool {
        self.semimodular_witness(alg).is_none()
    }

    /// First node that is not the join of the atoms below it.
    pub fn atomistic_witness(&self, alg: &Algebra) -> Option<usize> {
        (0..self.len()).find(|&t| {
            let mut acc = self.bottom();
            for &a in self.atoms() {
                if self.leq(alg, a, t) {
                    acc = self.join(alg, acc, a);
                }
            }
            acc != t
        })
    }

    pub fn is_atomistic(&self, alg: &Algebra) -> bool {
        self.atomistic_witness(alg).is_none()
    }

    pub fn is_geometric(&self, alg: &Algebra) -> bool {
        self.is_semimodular(alg) && self.is_atomistic(alg)
    }

    /// Join of a set of nodes, `R` for the empty set.
    pub fn join_all(&self, alg: &Algebra, set: &[usize]) -> usize {
        set.iter().fold(self.bottom(), |acc, &a| self.join(alg, acc, a))
    }

    /// `T_J ∩ T_K = T_{J ∩ K}` for all `J, K ⊆ I`, where `T_J` is the join
    /// of the atoms in `J`.
    pub fn is_independent(&self, alg: &Algebra, set: &[usize]) -> Result<bool> {
        let n = set.len();
        if n > MAX_INDEPENDENCE_ATOMS {
            return Err(Error::TooManyAtoms(n));
        }
        let mut joins = vec![self.bottom(); 1 << n];
        for mask in 1usize..(1 << n) {
            let low = mask.trailing_zeros() as usize;
            joins[mask] = self.join(alg, joins[mask & (mask - 1)], set[low]);
        }
        let mut meets: HashMap<(usize, usize), usize> = HashMap::new();
        for j in 0usize..(1 << n) {
            for k in (j + 1)..(1 << n) {
                let (a, b) = (joins[j].min(joins[k]), joins[j].max(joins[k]));
                let m = *meets.entry((a, b)).or_insert_with(|| self.meet(alg, a, b));
                if m != joins[j & k] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// A smallest independent set of atoms whose join is `S`, searching
    /// subsets by increasing size in lexicographic order.
    pub fn minimal_spanning_independent(&self, alg: &Algebra) -> Result<Option<Vec<usize>>> {
        let atoms = self.atoms().to_vec();
        if atoms.len() > MAX_INDEPENDENCE_ATOMS {
            return Err(Error::TooManyAtoms(atoms.len()));
        }
        if self.len() == 1 {
            return Ok(Some(Vec::new()));
        }
        for size in 1..=atoms.len() {
            let mut found = None;
            for_each_subset(&atoms, size, &mut |subset| {
                if found.is_some() {
                    return;
                }
                if self.join_all(alg, subset) == self.top() && matches!(self.is_independent(alg, subset), Ok(true)) {
                    found = Some(subset.to_vec());
                }
            });
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Closure under pairwise join and meet, over all pairs.
    pub fn is_closed_under_operations(&self, alg: &Algebra) -> bool {
        (0..self.len()).into_par_iter().all(|a| {
            (a + 1..self.len()).all(|b| {
                let j = alg.compositum(&self.nodes[a], &self.nodes[b]);
                let m = alg.intersection(&self.nodes[a], &self.nodes[b]);
                self.index.contains_key(j.space()) && self.index.contains_key(m.space())
            })
        })
    }

    pub fn to_dot(&self, alg: &Algebra, with_basis: bool) -> String {
        let f = alg.field();
        let mut s = String::from("digraph interval {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, t) in self.nodes.iter().enumerate() {
            let mut label = format!("{}: dim {}", i, t.dim());
            if with_basis {
                for row in t.rows() {
                    let r: Vec<String> = row.iter().map(|c| f.format(c)).collect();
                    let _ = write!(label, "\\n[{}]", r.join(", "));
                }
            }
            let _ = writeln!(s, "  n{} [label=\"{}\"];", i, label);
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  n{} -> n{};", a, b);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, alg: &Algebra) -> Value {
        let f = alg.field();
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let basis: Vec<Value> =
                    t.rows().iter().map(|r| Value::Array(r.iter().map(|c| f.to_json(c)).collect())).collect();
                json!({ "id": i, "dim": t.dim(), "basis": basis })
            })
            .collect();
        let edges: Vec<Value> = self.edges().into_iter().map(|(a, b)| json!([a, b])).collect();
        json!({
            "node_count": self.len(),
            "length": self.length(),
            "atoms": self.atoms(),
            "coatoms": self.coatoms(),
            "nodes": nodes,
            "edges": edges,
        })
    }
}

fn for_each_subset(items: &[usize], size: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, size, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, size, 0, &mut Vec::new(), f);
}

/// Enumerate `[R, S]`: seed with the monogenic `R[x]` over coset
/// representatives of `S/R`, then close under `T -> T[x] = T·R[x]`.
pub fn enumerate_interval(alg: &Algebra, r: &Subalgebra, s: &Subalgebra, opts: &Options) -> Result<IntervalLattice> {
    let f = alg.field();
    if !f.is_finite() {
        return Err(Error::InvalidPrecondition("interval enumeration needs a finite field".into()));
    }
    if !s.contains_space(f, r) {
        return Err(Error::InvalidPrecondition("R is not contained in S".into()));
    }
    let reps: Vec<Element> = r.coset_representatives(f, s, opts.scan_cap)?.skip(1).collect();
    let mono: Vec<Subalgebra> = reps.par_iter().map(|x| alg.adjoin(r, x)).collect();
    let mut seed_map: BTreeMap<Subalgebra, Element> = BTreeMap::new();
    for (x, m) in reps.into_iter().zip(mono) {
        seed_map.entry(m).or_insert(x);
    }
    let seed_algs: Vec<Subalgebra> = seed_map.keys().cloned().collect();

    // Breadth-first closure; node ids here are discovery order.
    let mut found: Vec<Subalgebra> = vec![r.clone()];
    let mut ids: HashMap<Subspace, usize> = HashMap::from([(r.space().clone(), 0)]);
    let mut ext: Vec<Vec<usize>> = Vec::new();
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let results: Vec<(usize, Vec<Subalgebra>)> = frontier
            .par_iter()
            .map(|&t| {
                let node = &found[t];
                let ups = seed_algs
                    .iter()
                    .filter(|m| !node.contains_space(f, m))
                    .map(|m| alg.compositum(node, m))
                    .collect();
                (t, ups)
            })
            .collect();
        let mut next = Vec::new();
        for (t, ups) in results {
            let mut targets = Vec::with_capacity(ups.len());
            for u in ups {
                let id = match ids.get(u.space()) {
                    Some(&id) => id,
                    None => {
                        let id = found.len();
                        if id >= opts.node_cap {
                            return Err(Error::NodeCapExceeded(opts.node_cap));
                        }
                        ids.insert(u.space().clone(), id);
                        found.push(u);
                        next.push(id);
                        id
                    }
                };
                targets.push(id);
            }
            if ext.len() <= t {
                ext.resize(t + 1, Vec::new());
            }
            ext[t] = targets;
        }
        frontier = next;
    }
    ext.resize(found.len(), Vec::new());

    // Canonical order.
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&a, &b| found[a].cmp(&found[b]));
    let mut rank = vec![0usize; found.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let nodes: Vec<Subalgebra> = order.iter().map(|&i| found[i].clone()).collect();
    let monogenic: Vec<Vec<usize>> = order
        .iter()
        .map(|&old| {
            let mut v: Vec<usize> = ext[old].iter().map(|&j| rank[j]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let index: HashMap<Subspace, usize> = nodes.iter().enumerate().map(|(i, t)| (t.space().clone(), i)).collect();
    if index[s.space()] != nodes.len() - 1 || index[r.space()] != 0 {
        return Err(Error::Internal("interval endpoints are not extremal".into()));
    }

    // Up-covers: the minimal elements among the T[x].
    let covers: Vec<Vec<usize>> = monogenic
        .par_iter()
        .map(|ups| {
            ups.iter()
                .copied()
                .filter(|&u| !ups.iter().any(|&v| v != u && nodes[u].contains_space(f, &nodes[v])))
                .collect()
        })
        .collect();
    let mut covered_by = vec![Vec::new(); nodes.len()];
    for (i, c) in covers.iter().enumerate() {
        for &j in c {
            covered_by[j].push(i);
        }
    }
    let seeds: Vec<usize> = seed_algs.iter().map(|m| index[m.space()]).collect();
    let seed_generators: Vec<Element> = seed_map.into_values().collect();
    Ok(IntervalLattice { nodes, seeds, seed_generators, monogenic, covers, covered_by, index })
}
