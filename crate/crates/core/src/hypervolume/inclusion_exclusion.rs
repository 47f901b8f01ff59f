use crate::coord::{Coord, VolumeValue};
use crate::error::{Result, VolselError};

/// Default point limit for inclusion-exclusion (2^25 terms).
pub const DEFAULT_IE_LIMIT: usize = 25;

/// Volume by inclusion-exclusion over all nonempty subsets, with the default
/// size limit.
pub fn hv_inclusion_exclusion<T: Coord>(points: &[&[T]]) -> Result<T::Volume> {
    hv_inclusion_exclusion_with_limit(points, DEFAULT_IE_LIMIT)
}

/// Sum over nonempty `T ⊆ S` of `(-1)^(|T|+1) * prod_i min_{p in T} p_i`.
pub fn hv_inclusion_exclusion_with_limit<T: Coord>(
    points: &[&[T]],
    limit: usize,
) -> Result<T::Volume> {
    if points.len() > limit {
        return Err(VolselError::SizeLimit {
            size: points.len(),
            limit,
        });
    }
    let Some(first) = points.first() else {
        return Ok(T::Volume::ZERO);
    };
    let dim = first.len();
    // mins[depth] holds the componentwise minimum of the current subset.
    let mut mins = vec![T::ZERO; dim * (points.len() + 1)];
    let mut total = T::Volume::ZERO;
    descend(points, dim, 0, 0, true, &mut mins, &mut total);
    Ok(total)
}

fn descend<T: Coord>(
    points: &[&[T]],
    dim: usize,
    start: usize,
    depth: usize,
    positive: bool,
    mins: &mut [T],
    total: &mut T::Volume,
) {
    for i in start..points.len() {
        let (head, tail) = mins.split_at_mut((depth + 1) * dim);
        let cur = &head[depth * dim..];
        let next = &mut tail[..dim];
        let mut term = T::Volume::ONE;
        for a in 0..dim {
            next[a] = if depth == 0 {
                points[i][a]
            } else {
                cur[a].min_of(points[i][a])
            };
            term = term * next[a].widen();
        }
        if positive {
            *total += term;
        } else {
            *total -= term;
        }
        descend(points, dim, i + 1, depth + 1, !positive, mins, total);
    }
}
