//! Monte Carlo estimate of the union volume (coverage estimator).
//!
//! Draw a box with probability proportional to its volume, draw a uniform point
//! inside it, and record the reciprocal of the number of boxes containing that
//! point. The mean reciprocal times the total box volume is an unbiased estimate
//! of the union volume.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::error::{Result, VolselError};

/// Sample-count constant `c` in `ceil(c * n * ln(2/delta) / eps^2)`.
pub const DEFAULT_MC_CONSTANT: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarlo {
    pub constant: f64,
}

impl Default for MonteCarlo {
    fn default() -> Self {
        MonteCarlo {
            constant: DEFAULT_MC_CONSTANT,
        }
    }
}

impl MonteCarlo {
    pub fn sample_count(&self, n: usize, eps: f64, delta: f64) -> u64 {
        (self.constant * n as f64 * (2.0 / delta).ln() / (eps * eps)).ceil() as u64
    }

    pub fn estimate<R: Rng + ?Sized>(
        &self,
        points: &[&[f64]],
        eps: f64,
        delta: f64,
        rng: &mut R,
    ) -> Result<f64> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(VolselError::InvalidParameter(format!(
                "eps must be positive, got {eps}"
            )));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(VolselError::InvalidParameter(format!(
                "delta must lie in (0, 1), got {delta}"
            )));
        }
        if !(self.constant.is_finite() && self.constant > 0.0) {
            return Err(VolselError::InvalidParameter(
                "Monte Carlo constant must be positive".into(),
            ));
        }
        if points.is_empty() {
            return Ok(0.0);
        }
        let volumes: Vec<f64> = points.iter().map(|p| p.iter().product()).collect();
        let total: f64 = volumes.iter().sum();
        let pick = WeightedIndex::new(&volumes)
            .map_err(|e| VolselError::InvalidParameter(format!("box volumes: {e}")))?;
        let samples = self.sample_count(points.len(), eps, delta);
        let dim = points[0].len();
        let mut sample = vec![0.0; dim];
        let mut acc = 0.0;
        for _ in 0..samples {
            let b = points[pick.sample(rng)];
            for (s, &c) in sample.iter_mut().zip(b) {
                *s = rng.random::<f64>() * c;
            }
            let covering = points
                .iter()
                .filter(|q| q.iter().zip(&sample).all(|(qa, sa)| sa <= qa))
                .count();
            acc += 1.0 / covering as f64;
        }
        Ok(total * (acc / samples as f64))
    }
}

/// `(1 ± eps)`-estimate of the union volume with probability at least
/// `1 - delta`, using the default sample-count constant.
pub fn hv_estimate<R: Rng + ?Sized>(
    points: &[&[f64]],
    eps: f64,
    delta: f64,
    rng: &mut R,
) -> Result<f64> {
    MonteCarlo::default().estimate(points, eps, delta, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_box_is_exact() {
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = hv_estimate(&[&[2.0, 3.0][..]], 0.3, 0.1, &mut rng).unwrap();
            assert_eq!(v, 6.0);
        }
    }

    #[test]
    fn two_boxes_within_tolerance() {
        let pts: Vec<&[f64]> = vec![&[1.0, 3.0], &[3.0, 1.0]];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let v = hv_estimate(&pts, 0.05, 0.01, &mut rng).unwrap();
        assert!((4.75..=5.25).contains(&v), "{v}");
    }

    #[test]
    fn seeded_runs_repeat() {
        let pts: Vec<&[f64]> = vec![&[1.0, 3.0, 2.0], &[3.0, 1.0, 1.5], &[2.0, 2.0, 2.0]];
        let a = hv_estimate(&pts, 0.2, 0.1, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
        let b = hv_estimate(&pts, 0.2, 0.1, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn rejects_bad_parameters() {
        let pts: Vec<&[f64]> = vec![&[1.0]];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(hv_estimate(&pts, 0.0, 0.1, &mut rng).is_err());
        assert!(hv_estimate(&pts, 0.1, 1.0, &mut rng).is_err());
        assert!(hv_estimate(&pts, 0.1, 0.0, &mut rng).is_err());
        assert_eq!(MonteCarlo::default().sample_count(2, 0.05, 0.01), 33_910);
    }
}
