//! Volume of the union of anchored boxes, via four engines: inclusion-exclusion
//! (test oracle), dimension sweep (default), Monte Carlo estimation, and the
//! incremental contribution used by greedy selection.

mod estimate;
mod inclusion_exclusion;
mod sweep;

pub use estimate::{hv_estimate, MonteCarlo, DEFAULT_MC_CONSTANT};
pub use inclusion_exclusion::{
    hv_inclusion_exclusion, hv_inclusion_exclusion_with_limit, DEFAULT_IE_LIMIT,
};
pub use sweep::hv_sweep;

use crate::coord::{Coord, VolumeValue};

/// `mu(set ∪ {p}) - mu(set)`: the volume of `box(p)` minus the union of the
/// boxes of `set` clipped to `box(p)`.
pub fn hv_contribution<T: Coord>(set: &[&[T]], p: &[T]) -> T::Volume {
    let own = p.iter().fold(T::Volume::ONE, |acc, c| acc * c.widen());
    if set.is_empty() {
        return own;
    }
    let clipped: Vec<T> = set
        .iter()
        .flat_map(|q| q.iter().zip(p).map(|(a, b)| a.min_of(*b)))
        .collect();
    let views: Vec<&[T]> = clipped.chunks_exact(p.len()).collect();
    own - hv_sweep(&views)
}
