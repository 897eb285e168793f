//! Reproducible random number streams.
//!
//! Patterns are drawn from ChaCha8, a counter-based stream cipher generator
//! whose output is a pure function of its 64-bit seed, so identical
//! `(seed, stream_index)` pairs reproduce identical draws on any platform
//! with IEEE-754 doubles. Replications and simulations use distinct stream
//! indices; the per-stream seed is a SplitMix64 hash of the pair.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Seed for one stream: `hash(seed, stream_index)`.
pub fn stream_seed(seed: u64, stream_index: u64) -> u64 {
    splitmix64(splitmix64(seed).wrapping_add(splitmix64(stream_index)))
}

/// A named position in the family of independent generator streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStream {
    pub seed: u64,
    pub stream_index: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        RngStream { seed, stream_index }
    }

    /// Fresh generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(stream_seed(self.seed, self.stream_index))
    }
}

/// Uniform draw in `[lo, hi)`.
pub fn uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    lo + rng.gen::<f64>() * (hi - lo)
}

/// Poisson count by chunked CDF inversion.
///
/// The rate is split into chunks of at most 16 so the inversion never
/// underflows; only elementary arithmetic and one `exp` per chunk are used,
/// keeping draws reproducible.
pub fn poisson_count(rng: &mut impl Rng, lambda: f64) -> usize {
    debug_assert!(lambda >= 0.0);
    if lambda == 0.0 {
        return 0;
    }
    let chunks = (lambda / 16.0).ceil().max(1.0) as usize;
    let rate = lambda / chunks as f64;
    let mut total = 0;
    for _ in 0..chunks {
        let u: f64 = rng.gen();
        let mut p = (-rate).exp();
        let mut cum = p;
        let mut k = 0usize;
        while u > cum && k < 1000 {
            k += 1;
            p *= rate / k as f64;
            cum += p;
        }
        total += k;
    }
    total
}
