use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// ChaCha8 stream that remembers every value it hands out, so that a choice
/// sequence can be fingerprinted and replayed.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    inner: ChaCha8Rng,
    draws: Vec<u64>,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
            draws: Vec::new(),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of values drawn so far.
    pub fn position(&self) -> usize {
        self.draws.len()
    }

    /// Every value drawn so far, in order. Floats are stored as their bits.
    pub fn draws(&self) -> &[u64] {
        &self.draws
    }

    /// Draws recorded since `position`.
    pub fn draws_since(&self, position: usize) -> Vec<u64> {
        self.draws[position.min(self.draws.len())..].to_vec()
    }

    /// Uniform index in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0)");
        let v = self.inner.gen_range(0..n);
        self.draws.push(v as u64);
        v
    }

    /// Uniform integer in `lo..=hi`.
    pub fn range_incl(&mut self, lo: i64, hi: i64) -> i64 {
        let v = self.inner.gen_range(lo..=hi);
        self.draws.push(v as u64);
        v
    }

    pub fn coin(&mut self) -> bool {
        let v = self.inner.gen_bool(0.5);
        self.draws.push(v as u64);
        v
    }

    /// Uniform float in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        let v: f64 = self.inner.gen();
        self.draws.push(v.to_bits());
        v
    }

    /// Sample of N(0, sigma^2).
    pub fn gaussian(&mut self, sigma: f64) -> f64 {
        let v = Normal::new(0.0, sigma)
            .expect("sigma is finite and non-negative")
            .sample(&mut self.inner);
        self.draws.push(v.to_bits());
        v
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_draws() {
        let mut a = SeededRng::new(9);
        let mut b = SeededRng::new(9);
        for _ in 0..20 {
            assert_eq!(a.below(7), b.below(7));
            assert_eq!(a.gaussian(0.1).to_bits(), b.gaussian(0.1).to_bits());
        }
        assert_eq!(a.draws(), b.draws());
        assert_eq!(a.position(), 40);
    }
}
