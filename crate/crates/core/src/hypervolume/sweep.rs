//! Dimension-sweep hypervolume.
//!
//! `d = 2` is a staircase sweep, `d = 3` sweeps the last axis while maintaining
//! a 2D staircase in an ordered map (O(n log n)), and `d >= 4` sweeps the last
//! axis recomputing the (d-1)-dimensional volume of each prefix.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::Bound;

use crate::coord::{Coord, Ordered, VolumeValue};

/// Exact volume of the union of anchored boxes spanned by `points`.
pub fn hv_sweep<T: Coord>(points: &[&[T]]) -> T::Volume {
    match points.first() {
        None => T::Volume::ZERO,
        Some(p) => volume_in(points, p.len()),
    }
}

/// Volume of `points` projected onto their first `dims` axes.
fn volume_in<T: Coord>(points: &[&[T]], dims: usize) -> T::Volume {
    match dims {
        0 => T::Volume::ONE,
        1 => points
            .iter()
            .map(|p| p[0])
            .max_by(|a, b| a.total_cmp(b))
            .map_or(T::Volume::ZERO, Coord::widen),
        2 => area_2d(points),
        3 => volume_3d(points),
        _ => volume_by_last_axis(points, dims),
    }
}

fn area_2d<T: Coord>(points: &[&[T]]) -> T::Volume {
    let mut sorted: Vec<(T, T)> = points.iter().map(|p| (p[0], p[1])).collect();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
    let mut area = T::Volume::ZERO;
    let mut top = T::ZERO;
    for (x, y) in sorted {
        if y.total_cmp(&top) == Ordering::Greater {
            area += x.widen() * (y - top).widen();
            top = y;
        }
    }
    area
}

/// Incrementally maintained 2D staircase: `x -> y` with `y` strictly
/// decreasing as `x` increases.
pub(crate) struct Staircase<T: Coord> {
    front: BTreeMap<Ordered<T>, T>,
    area: T::Volume,
}

impl<T: Coord> Staircase<T> {
    pub(crate) fn new() -> Self {
        Staircase {
            front: BTreeMap::new(),
            area: T::Volume::ZERO,
        }
    }

    pub(crate) fn area(&self) -> T::Volume {
        self.area
    }

    /// Inserts `(x, y)` and returns the area it adds.
    pub(crate) fn insert(&mut self, x: T, y: T) -> T::Volume {
        let gt = |a: T, b: T| a.total_cmp(&b) == Ordering::Greater;
        // Height of the staircase just left of x.
        let mut height = match self.front.range(Ordered(x)..).next() {
            Some((_, &h)) if !gt(y, h) => return T::Volume::ZERO,
            Some((_, &h)) => h,
            None => T::ZERO,
        };
        let mut gained = T::Volume::ZERO;
        let mut right = x;
        let mut covered = false;
        for (&Ordered(xj), &yj) in self
            .front
            .range((Bound::Unbounded, Bound::Excluded(Ordered(x))))
            .rev()
        {
            gained += (right - xj).widen() * (y - height).widen();
            if !gt(y, yj) {
                covered = true;
                break;
            }
            height = yj;
            right = xj;
        }
        if !covered {
            gained += (right - T::ZERO).widen() * (y - height).widen();
        }

        let doomed: Vec<Ordered<T>> = self
            .front
            .range(..=Ordered(x))
            .rev()
            .take_while(|(_, &yj)| !gt(yj, y))
            .map(|(k, _)| *k)
            .collect();
        for k in doomed {
            self.front.remove(&k);
        }
        self.front.insert(Ordered(x), y);
        self.area += gained;
        gained
    }
}

fn volume_3d<T: Coord>(points: &[&[T]]) -> T::Volume {
    let mut sorted: Vec<&[T]> = points.to_vec();
    sorted.sort_by(|a, b| {
        b[2].total_cmp(&a[2])
            .then(b[0].total_cmp(&a[0]))
            .then(b[1].total_cmp(&a[1]))
    });
    let mut stairs = Staircase::new();
    let mut volume = T::Volume::ZERO;
    for (i, p) in sorted.iter().enumerate() {
        stairs.insert(p[0], p[1]);
        let next = sorted.get(i + 1).map_or(T::ZERO, |q| q[2]);
        if p[2].total_cmp(&next) == Ordering::Greater {
            volume += stairs.area() * (p[2] - next).widen();
        }
    }
    volume
}

fn volume_by_last_axis<T: Coord>(points: &[&[T]], dims: usize) -> T::Volume {
    let axis = dims - 1;
    let mut sorted: Vec<&[T]> = points.to_vec();
    sorted.sort_by(|a, b| {
        b[axis]
            .total_cmp(&a[axis])
            .then_with(|| crate::geometry::lex_desc(a, b))
    });
    let mut volume = T::Volume::ZERO;
    for i in 0..sorted.len() {
        let level = sorted[i][axis];
        let next = sorted.get(i + 1).map_or(T::ZERO, |q| q[axis]);
        if level.total_cmp(&next) == Ordering::Greater {
            volume += volume_in(&sorted[..=i], axis) * (level - next).widen();
        }
    }
    volume
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(hv_sweep::<f64>(&[]), 0.0);
        assert_eq!(hv_sweep(&[&[1.0, 1.0, 1.0][..]]), 1.0);
        assert_eq!(hv_sweep(&[&[1i64, 3][..], &[3, 1]]), 5);
        assert_eq!(hv_sweep(&[&[1i64, 3][..], &[2, 2], &[3, 1]]), 6);
        assert_eq!(hv_sweep(&[&[4i64][..], &[7], &[2]]), 7);
    }

    #[test]
    fn staircase_handles_ties_and_domination() {
        let mut s = Staircase::<i64>::new();
        assert_eq!(s.insert(2, 2), 4);
        assert_eq!(s.insert(2, 2), 0);
        assert_eq!(s.insert(1, 1), 0);
        assert_eq!(s.insert(2, 3), 2);
        assert_eq!(s.insert(4, 1), 2);
        assert_eq!(s.insert(1, 5), 2);
        assert_eq!(s.insert(5, 5), 25 - 10);
        assert_eq!(s.area(), 25);
        assert_eq!(s.front.len(), 1);
    }

    #[test]
    fn three_d_equal_levels() {
        let pts: Vec<&[i64]> = vec![&[1, 3, 2], &[3, 1, 2], &[2, 2, 1]];
        // z in (1,2]: area 5; z in (0,1]: union with (2,2) is 6.
        assert_eq!(hv_sweep(&pts), 5 + 6);
    }

    #[test]
    fn four_d_box_union() {
        let pts: Vec<&[i64]> = vec![&[2, 1, 1, 1], &[1, 2, 1, 1], &[1, 1, 1, 2]];
        assert_eq!(hv_sweep(&pts), 4);
    }
}
