//! Deterministic seeded randomness.
//!
//! Every random draw in the crate goes through [`SplitMix64`] so that
//! instances, embeddings, and experiment CSVs are bit-identical across
//! platforms and runs. Uniform reals are `(u64 >> 11) · 2⁻⁵³`; uniform
//! integers use rejection sampling on the minimal covering power of two.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 pseudo-random stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform real in `[0, 1)` built from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in the inclusive range `[lo, hi]`.
    ///
    /// Draws the low bits masked to the minimal covering power of two and
    /// rejects values past the range, so acceptance never biases.
    pub fn next_int(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        let span = hi - lo + 1;
        if span == 1 {
            return lo;
        }
        let mask = span.next_power_of_two() - 1;
        loop {
            let r = self.next_u64() & mask;
            if r < span {
                return lo + r;
            }
        }
    }

    /// Fisher–Yates shuffle driven by this stream.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.next_int(0, i as u64) as usize;
            xs.swap(i, j);
        }
    }
}

fn scramble(x: u64) -> u64 {
    SplitMix64::new(x).next_u64()
}

/// Derive a child seed from a master seed and a list of context words.
///
/// The derivation depends only on `(master, words)`, so e.g. adding sizes to
/// an experiment never reshuffles the instances of existing sizes.
pub fn derive_seed(master: u64, words: &[u64]) -> u64 {
    let mut acc = scramble(master);
    for &w in words {
        acc = scramble(acc ^ w);
    }
    acc
}
