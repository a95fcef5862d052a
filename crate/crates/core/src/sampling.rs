//! Seeded normal draws and the per-sample statistics `X̄`, `S²`, `W`.
//!
//! # Reproducibility contract
//!
//! Trials are generated in chunks of [`CHUNK_TRIALS`] rows. Chunk `c` draws
//! from its own ChaCha8 stream seeded with `mix64(seed, c)`, so the grid is a
//! pure function of `(seed, trials, n)` no matter how many threads fill it.
//! Normal variates come from the ziggurat sampler in `rand_distr`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Trials per independently seeded chunk. Part of the reproducibility contract.
pub const CHUNK_TRIALS: usize = 1024;

/// Default cap on `trials * n` (2^28 doubles, 2 GiB).
pub const DEFAULT_MAX_VALUES: usize = 1 << 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

/// Mean and standard deviation of a normal law, `sigma > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalParams {
    mu: f64,
    sigma: f64,
}

impl NormalParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() || !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::Domain(format!(
                "need finite mu and sigma > 0, got mu={mu}, sigma={sigma}"
            )));
        }
        Ok(Self { mu, sigma })
    }

    pub fn standard() -> Self {
        Self {
            mu: 0.0,
            sigma: 1.0,
        }
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// `z = (x - μ) / σ`.
pub fn standardize(x: f64, p: NormalParams) -> f64 {
    (x - p.mu) / p.sigma
}

/// `x = μ + σ z`.
pub fn destandardize(z: f64, p: NormalParams) -> f64 {
    p.mu + p.sigma * z
}

/// The law each draw follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DrawLaw {
    StandardNormal,
    /// `Exp(1) - 1`: mean 0, variance 1, skewness 2.
    CenteredExponential,
}

/// A `trials × n` grid of draws, row-major, one row per trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleBatch {
    trials: usize,
    n: usize,
    values: Vec<f64>,
    seed: Seed,
}

impl SampleBatch {
    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> Seed {
        self.seed
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Trial `t` (0-based).
    pub fn row(&self, t: usize) -> &[f64] {
        &self.values[t * self.n..(t + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.n)
    }

    /// Maps every entry through `x = μ + σ z`.
    pub fn destandardize(&self, p: NormalParams) -> SampleBatch {
        SampleBatch {
            values: self.values.iter().map(|&z| destandardize(z, p)).collect(),
            ..self.clone()
        }
    }
}

/// SplitMix64 finaliser applied to `(seed, chunk)`.
pub fn mix64(seed: u64, chunk: u64) -> u64 {
    let mut z = seed ^ chunk.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `trials × n` i.i.d. `N(0, 1)` draws under the default memory budget.
pub fn standard_normal_batch(seed: Seed, trials: usize, n: usize) -> Result<SampleBatch> {
    generate_batch(seed, trials, n, DrawLaw::StandardNormal, DEFAULT_MAX_VALUES)
}

/// Generates a batch, filling chunks in parallel on the current rayon pool.
pub fn generate_batch(
    seed: Seed,
    trials: usize,
    n: usize,
    law: DrawLaw,
    max_values: usize,
) -> Result<SampleBatch> {
    if trials == 0 {
        return Err(Error::Usage("trials must be at least 1".into()));
    }
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    let total = trials
        .checked_mul(n)
        .filter(|&t| t <= max_values)
        .ok_or_else(|| {
            Error::Capacity(format!(
                "{trials} x {n} draws exceed the budget of {max_values} values"
            ))
        })?;
    let mut values = vec![0.0; total];
    values
        .par_chunks_mut(CHUNK_TRIALS * n)
        .enumerate()
        .for_each(|(chunk, cells)| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix64(seed.0, chunk as u64));
            match law {
                DrawLaw::StandardNormal => cells
                    .iter_mut()
                    .for_each(|c| *c = rng.sample(StandardNormal)),
                DrawLaw::CenteredExponential => cells
                    .iter_mut()
                    .for_each(|c| *c = rng.sample::<f64, _>(Exp1) - 1.0),
            }
        });
    Ok(SampleBatch {
        trials,
        n,
        values,
        seed,
    })
}

/// Mean, unbiased sample variance `S²`, and `W = Σ (v_i - v̄)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleStats {
    pub mean: f64,
    pub sample_variance: f64,
    pub w: f64,
}

/// Two-pass sample statistics: the mean first, then squared deviations.
pub fn sample_stats(v: &[f64]) -> Result<SampleStats> {
    let n = v.len();
    if n < 2 {
        return Err(Error::Degenerate(format!(
            "sample variance needs at least 2 values, got {n}"
        )));
    }
    let mean = v.iter().sum::<f64>() / n as f64;
    let w: f64 = v.iter().map(|x| (x - mean) * (x - mean)).sum();
    Ok(SampleStats {
        mean,
        sample_variance: w / (n - 1) as f64,
        w,
    })
}
