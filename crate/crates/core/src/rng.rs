//! The seeded generator behind every random choice in the library.
//!
//! ChaCha20 keyed by `seed_from_u64(seed)`, with uniform integers drawn by
//! rejection sampling from whole 64-bit outputs. The sampling rule is fixed
//! here rather than delegated to a general-purpose `gen_range`, so that the
//! stream of field elements for a given seed stays stable across versions.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

/// Identifier recorded in reports so a run can be replayed elsewhere.
pub const ALGORITHM_ID: &str = "chacha20/seed_from_u64/u64-rejection-v1";

#[derive(Debug, Clone)]
pub struct CodeRng {
    inner: ChaCha20Rng,
}

impl CodeRng {
    pub fn new(seed: u64) -> Self {
        CodeRng {
            inner: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `[0, bound)`; `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        // largest multiple of `bound` representable in 2^64
        let zone = u64::MAX - (u64::MAX % bound + 1) % bound;
        loop {
            let x = self.inner.next_u64();
            if x <= zone {
                return x % bound;
            }
        }
    }

    /// A uniform `m`-subset of `0..n`, returned sorted.
    pub fn subset(&mut self, n: usize, m: usize) -> Vec<usize> {
        assert!(m <= n);
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..m {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        let mut out = pool[..m].to_vec();
        out.sort_unstable();
        out
    }

    /// A seed for a derived stream, taken from this stream.
    pub fn fork(&mut self) -> u64 {
        self.inner.next_u64()
    }
}
