//! Small deterministic PRNG (SplitMix64) for seeded sampling. Identical
//! output on every platform; reports record the seed they used.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, n)` by rejection-free multiply-shift; the bias
    /// for n far below 2^64 is negligible and determinism is what matters.
    pub fn below(&mut self, n: usize) -> usize {
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Small signed integer in `[-bound, bound]`.
    pub fn small_i64(&mut self, bound: u64) -> i64 {
        let span = 2 * bound + 1;
        self.below(span as usize) as i64 - bound as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_sequence() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = SplitMix64::new(42);
        // Frozen first value so cross-version drift would be caught.
        assert_eq!(c.next_u64(), 13679457532755275413);
    }

    #[test]
    fn below_in_range() {
        let mut r = SplitMix64::new(7);
        for _ in 0..1000 {
            assert!(r.below(17) < 17);
            let v = r.small_i64(9);
            assert!((-9..=9).contains(&v));
        }
    }
}
