use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Register, StateVector};
use crate::error::{Error, Result};

/// Outcome counts for repeated measurement of one register.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    pub width: usize,
    pub shots: u64,
    pub seed: u64,
    /// Register value → count; values never observed are absent.
    pub counts: BTreeMap<u64, u64>,
}

impl Histogram {
    pub fn count(&self, value: u64) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }
}

/// Draws `shots` independent samples from `probabilities` (indexed by value).
pub fn sample_distribution(
    probabilities: &[f64],
    width: usize,
    shots: u64,
    seed: u64,
) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::InvalidParameter("shots must be at least 1".into()));
    }
    let dist = WeightedIndex::new(probabilities)
        .map_err(|e| Error::InvalidParameter(format!("cannot sample: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        *counts.entry(dist.sample(&mut rng) as u64).or_insert(0) += 1;
    }
    Ok(Histogram {
        width,
        shots,
        seed,
        counts,
    })
}

impl StateVector {
    /// Measures `register` `shots` times on identically prepared copies of
    /// this state. The simulation is noiseless, so repeated preparation is
    /// the same as drawing i.i.d. from the register's marginal distribution.
    pub fn sample_register(&self, register: Register, shots: u64, seed: u64) -> Result<Histogram> {
        let marginal = self.marginal(register)?;
        sample_distribution(&marginal, register.width, shots, seed)
    }
}
