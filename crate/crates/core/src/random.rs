//! Seeded random extensions `R ⊂ S` over prime fields.
//!
//! `S` is a product of blocks (split, truncated, finite field, monogenic
//! quotient) and `R` is one of: the base field, a subalgebra generated by
//! random elements or block idempotents, or `k + I` for a random ideal `I`
//! (which forces a maximal conductor).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{self, Algebra, Element, Subalgebra, Truncation};
use crate::catalog::first_irreducible;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::io::Extension;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomProfile {
    pub name: String,
    pub primes: Vec<u32>,
    pub min_dim: usize,
    pub max_dim: usize,
}

impl RandomProfile {
    pub fn by_name(name: &str) -> Result<RandomProfile> {
        let (primes, min_dim, max_dim) = match name {
            "default" => (vec![2, 3], 2, 6),
            "small" => (vec![2], 2, 4),
            "wide" => (vec![2, 3, 5], 2, 8),
            _ => return Err(Error::InvalidPrecondition(format!("unknown profile `{}` (default, small, wide)", name))),
        };
        Ok(RandomProfile { name: name.into(), primes, min_dim, max_dim })
    }

    /// Upper bound on `p^dim` so exhaustive scans stay cheap.
    fn size_cap(&self) -> u64 {
        match self.name.as_str() {
            "wide" => 1 << 16,
            _ => 1 << 12,
        }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-instance generator, independent of how many instances precede it.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix(seed ^ splitmix(index)))
}

struct Block {
    alg: Algebra,
    label: String,
}

fn random_block(f: &Field, budget: usize, rng: &mut ChaCha8Rng) -> Result<Block> {
    let p = f.characteristic() as u64;
    loop {
        match rng.gen_range(0..6) {
            0 => {
                let a = rng.gen_range(1..=budget.min(3));
                return Ok(Block { alg: algebra::split_algebra(f, a)?, label: format!("split({})", a) });
            }
            1 if budget >= 2 => {
                let m = if budget >= 4 && rng.gen_bool(0.3) { 2 } else { 1 };
                return Ok(Block {
                    alg: algebra::truncated_poly_algebra(f, m, Truncation::SquaresOnly),
                    label: format!("truncated-squares({})", m),
                });
            }
            2 if budget >= 2 => {
                let m = rng.gen_range(1..budget.min(4));
                return Ok(Block {
                    alg: algebra::truncated_poly_algebra(f, m, Truncation::SquaresAndProducts),
                    label: format!("truncated-products({})", m),
                });
            }
            3 if budget >= 2 => {
                let e = rng.gen_range(2..=budget.min(3)) as u32;
                let m = first_irreducible(f, e)?;
                return Ok(Block {
                    alg: algebra::polynomial_quotient(f, &m, "z")?,
                    label: format!("gf({}^{})", p, e),
                });
            }
            4 | 5 if budget >= 2 => {
                let d = rng.gen_range(2..=budget.min(3));
                let mut m: Vec<Scalar> = (0..d).map(|_| Scalar::Gf(rng.gen_range(0..p as u32))).collect();
                m.push(f.one());
                return Ok(Block { alg: algebra::polynomial_quotient(f, &m, "z")?, label: format!("monogenic({})", d) });
            }
            _ => {}
        }
    }
}

fn random_element(alg: &Algebra, rng: &mut ChaCha8Rng) -> Element {
    let p = alg.characteristic();
    (0..alg.dim()).map(|_| Scalar::Gf(rng.gen_range(0..p))).collect()
}

fn random_lower(alg: &Algebra, offsets: &[usize], rng: &mut ChaCha8Rng) -> (Subalgebra, String) {
    let f = alg.field();
    let k = alg.base_line();
    // Weighted towards `k + I`, the recipe that forces a maximal conductor.
    match rng.gen_range(0..6) {
        0 => (k, "base field".into()),
        1 => {
            let n = rng.gen_range(1..=2);
            let gens: Vec<Element> = (0..n).map(|_| random_element(alg, rng)).collect();
            (alg.generated(&k, &gens), format!("generated by {} random elements", n))
        }
        2 => {
            // Idempotents of a random subset of blocks.
            let mut idx: Vec<usize> = (0..offsets.len()).collect();
            idx.shuffle(rng);
            let take = rng.gen_range(0..=idx.len());
            let mut gens = Vec::new();
            for &b in &idx[..take] {
                let end = offsets.get(b + 1).copied().unwrap_or(alg.dim());
                let mut e = alg.zero();
                for (c, u) in e.iter_mut().zip(alg.unit()).skip(offsets[b]).take(end - offsets[b]) {
                    *c = u.clone();
                }
                gens.push(e);
            }
            if rng.gen_bool(0.5) {
                gens.push(random_element(alg, rng));
            }
            (alg.generated(&k, &gens), "block idempotents".into())
        }
        _ => {
            let s = alg.full();
            let g = random_element(alg, rng);
            let nil = crate::ringstruct::nilradical(alg);
            let gen = alg.ideal_generated(&s, &[g]);
            let ideal = match rng.gen_range(0..4) {
                0 => gen,
                1 => alg.product_space(&gen, &gen),
                2 => alg.product_space(&nil, &gen),
                _ => alg.product_space(&nil, &nil),
            };
            (alg.close(&ideal.sum(f, k.space())), "base field plus an ideal".into())
        }
    }
}

/// Instance `index` of the stream for `seed`.
pub fn random_instance(profile: &RandomProfile, seed: u64, index: u64) -> Result<Extension> {
    let mut rng = instance_rng(seed, index);
    for _attempt in 0..64 {
        let p = *profile.primes.choose(&mut rng).expect("nonempty prime list");
        let f = Field::prime(p)?;
        let mut dim_cap = profile.max_dim;
        while dim_cap > profile.min_dim && (p as u64).checked_pow(dim_cap as u32).is_none_or(|v| v > profile.size_cap()) {
            dim_cap -= 1;
        }
        let target = rng.gen_range(profile.min_dim..=dim_cap);
        let mut blocks = Vec::new();
        let mut used = 0;
        while used < target {
            let b = random_block(&f, target - used, &mut rng)?;
            used += b.alg.dim();
            blocks.push(b);
        }
        let refs: Vec<&Algebra> = blocks.iter().map(|b| &b.alg).collect();
        let (alg, offsets) = algebra::product_algebra(&refs)?;
        let (r, how) = random_lower(&alg, &offsets, &mut rng);
        if r.dim() == alg.dim() {
            continue;
        }
        let labels: Vec<&str> = blocks.iter().map(|b| b.label.as_str()).collect();
        return Ok(Extension {
            id: format!("random_s{}_i{}", seed, index),
            s: alg.full(),
            r,
            alg,
            chain: None,
            generators: Vec::new(),
            expected: None,
            notes: Some(format!("S = {} over GF({}); R: {}", labels.join(" x "), p, how)),
        });
    }
    Err(Error::Internal("random generator failed to produce a proper extension".into()))
}

pub fn random_instances(profile: &RandomProfile, seed: u64, count: usize) -> Result<Vec<Extension>> {
    (0..count as u64).map(|i| random_instance(profile, seed, i)).collect()
}
