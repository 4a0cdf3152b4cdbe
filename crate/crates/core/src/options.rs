use serde::{Deserialize, Serialize};

use crate::field::Field;

/// Budgets shared by the scanning and sampling procedures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    /// Largest number of elements or cosets an exhaustive scan may visit.
    pub scan_cap: u64,
    /// Largest lattice an enumeration may build.
    pub node_cap: usize,
    /// Random samples drawn by sampled (infinite field) procedures.
    pub sample_budget: usize,
    /// Degree bound for random rational function coefficients.
    pub degree_budget: u32,
    /// Random candidates added to closure computations over infinite fields.
    pub closure_samples: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            scan_cap: 1 << 20,
            node_cap: 100_000,
            sample_budget: 1000,
            degree_budget: 3,
            closure_samples: 24,
            seed: 0,
        }
    }
}

impl Options {
    /// Samples drawn by one sampled procedure over `f`. Two-layer towers get
    /// a tenth of the budget: each sample costs about ten times as much.
    pub fn samples_for(&self, f: &Field) -> usize {
        if f.depth() >= 2 {
            self.sample_budget / 10
        } else {
            self.sample_budget
        }
    }
}
