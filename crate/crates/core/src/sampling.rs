//! Seeded Monte Carlo plumbing.
//!
//! Samples are drawn in fixed-size blocks. Block `b` uses a ChaCha8 generator
//! seeded with the user seed and switched to stream `b`, so the sample set
//! depends only on `(seed, samples)` and never on how many worker threads
//! process the blocks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::{Frac, FracJson};

/// Samples per block.
pub const BLOCK: u64 = 4096;

/// How a quantity is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Mode {
    /// Full enumeration with integer counting.
    Exact,
    /// `samples` independent draws from the generator seeded with `seed`.
    Sampled { samples: u64, seed: u64 },
}

/// A sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

impl Estimate {
    /// Bernoulli estimate from `hits` successes out of `samples`.
    pub fn from_hits(hits: u64, samples: u64, seed: u64) -> Self {
        let p = hits as f64 / samples as f64;
        Estimate { mean: p, stderr: (p * (1.0 - p) / samples as f64).sqrt(), samples, seed }
    }

    /// Estimate from the sum and sum of squares of per-sample values.
    pub fn from_moments(sum: f64, sum_sq: f64, samples: u64, seed: u64) -> Self {
        let k = samples as f64;
        let mean = sum / k;
        let var = if samples > 1 { ((sum_sq - k * mean * mean) / (k - 1.0)).max(0.0) } else { 0.0 };
        Estimate { mean, stderr: (var / k).sqrt(), samples, seed }
    }

    /// `mean ± width * stderr`.
    pub fn interval(&self, width: f64) -> (f64, f64) {
        (self.mean - width * self.stderr, self.mean + width * self.stderr)
    }
}

/// A fraction that is either exact or estimated.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Fraction {
    Exact(FracJson),
    Sampled(Estimate),
}

impl Fraction {
    pub fn approx(&self) -> f64 {
        match self {
            Fraction::Exact(f) => crate::exact::to_f64(&f.0),
            Fraction::Sampled(e) => e.mean,
        }
    }

    pub fn exact(&self) -> Option<&Frac> {
        match self {
            Fraction::Exact(f) => Some(&f.0),
            Fraction::Sampled(_) => None,
        }
    }
}

pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Runs `body(rng, count)` once per block and returns the block results in
/// block order. The last block may be short.
pub fn run_blocks<T, F>(samples: u64, seed: u64, body: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
{
    let blocks = samples.div_ceil(BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let count = BLOCK.min(samples - b * BLOCK);
            body(&mut block_rng(seed, b), count)
        })
        .collect()
}

/// Counts how many of `samples` draws satisfy `hit`.
pub fn count_hits<F>(samples: u64, seed: u64, hit: F) -> u64
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    run_blocks(samples, seed, |rng, count| (0..count).filter(|_| hit(rng)).count() as u64).into_iter().sum()
}

/// Splits `0..total` into contiguous chunks and sums `body(range)` over them.
/// Integer sums make the result independent of the worker count.
pub fn par_range_sum<F>(total: u64, body: F) -> u64
where
    F: Fn(std::ops::Range<u64>) -> u64 + Sync,
{
    const CHUNK: u64 = 1 << 12;
    let chunks = total.div_ceil(CHUNK);
    (0..chunks).into_par_iter().map(|c| body(c * CHUNK..((c + 1) * CHUNK).min(total))).sum()
}
