//! Seeded fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use volsel_core::generate::{log_uniform, log_uniform_int};
use volsel_core::PointSet;

pub const SEED: u64 = 42;

pub fn float_set(n: usize, d: usize, spread: f64) -> PointSet<f64> {
    log_uniform(&mut ChaCha8Rng::seed_from_u64(SEED), n, d, spread).expect("valid fixture")
}

pub fn int_set(n: usize, d: usize, spread: i64) -> PointSet<i64> {
    log_uniform_int(&mut ChaCha8Rng::seed_from_u64(SEED), n, d, spread).expect("valid fixture")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_repeatable() {
        assert_eq!(float_set(20, 3, 1e3), float_set(20, 3, 1e3));
        assert_eq!(int_set(5, 2, 100).len(), 5);
    }
}
