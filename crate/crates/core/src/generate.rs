//! Random instances with log-uniform coordinates.
//!
//! Each coordinate is `spread^u` for uniform `u`, so points scatter evenly
//! across the exponential grid instead of piling into its top regions.

use rand::Rng;

use crate::error::{Result, VolselError};
use crate::geometry::PointSet;

fn check(n: usize, d: usize, spread: f64) -> Result<()> {
    if n == 0 {
        return Err(VolselError::InvalidParameter("n must be positive".into()));
    }
    if d == 0 {
        return Err(VolselError::ZeroDimension);
    }
    if !(spread.is_finite() && spread >= 1.0) {
        return Err(VolselError::InvalidParameter(format!(
            "spread must be a finite number >= 1, got {spread}"
        )));
    }
    Ok(())
}

/// `n` points in `[1, spread]^d`.
pub fn log_uniform<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    d: usize,
    spread: f64,
) -> Result<PointSet<f64>> {
    check(n, d, spread)?;
    let ln = spread.ln();
    let coords = (0..n * d)
        .map(|_| (rng.random::<f64>() * ln).exp().clamp(1.0, spread))
        .collect();
    PointSet::from_flat(d, coords)
}

/// `n` integer points in `[1, spread]^d`, each coordinate the floor of a
/// log-uniform draw from `[1, spread + 1)`.
pub fn log_uniform_int<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    d: usize,
    spread: i64,
) -> Result<PointSet<i64>> {
    check(n, d, spread as f64)?;
    let ln = ((spread as f64) + 1.0).ln();
    let coords = (0..n * d)
        .map(|_| ((rng.random::<f64>() * ln).exp().floor() as i64).clamp(1, spread))
        .collect();
    PointSet::from_flat(d, coords)
}
