//! Point sets, domination and Pareto filtering.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::coord::{Coord, Mode};
use crate::error::{Result, VolselError};

/// Largest admissible product of per-axis maxima in exact mode. Leaves 27 bits
/// of headroom so that inclusion-exclusion partial sums over up to 2^26 terms
/// cannot overflow `i128`.
const EXACT_VOLUME_BOUND: i128 = i128::MAX >> 27;

/// An indexed sequence of points in the strictly positive orthant.
///
/// Coordinates are stored row-major. Indices are stable: every [`Solution`]
/// refers to positions in this sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet<T> {
    dim: usize,
    coords: Vec<T>,
}

impl<T: Coord> PointSet<T> {
    pub fn new(dim: usize, points: Vec<Vec<T>>) -> Result<Self> {
        let mut coords = Vec::with_capacity(dim * points.len());
        for p in points {
            if p.len() != dim {
                return Err(VolselError::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            coords.extend(p);
        }
        Self::from_flat(dim, coords)
    }

    pub fn from_flat(dim: usize, coords: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return Err(VolselError::ZeroDimension);
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(VolselError::DimensionMismatch {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        for (i, c) in coords.iter().enumerate() {
            if !c.is_valid() {
                return Err(VolselError::InvalidCoordinate {
                    point: i / dim,
                    axis: i % dim,
                });
            }
        }
        let set = PointSet { dim, coords };
        if T::MODE == Mode::Exact {
            set.check_exact_bound()?;
        }
        Ok(set)
    }

    pub fn empty(dim: usize) -> Result<Self> {
        Self::from_flat(dim, Vec::new())
    }

    fn check_exact_bound(&self) -> Result<()> {
        let mut bound: i128 = 1;
        for axis in 0..self.dim {
            let max = self.iter().map(|p| p[axis].to_f64()).fold(0.0, f64::max);
            // Exact mode coordinates are i64, so the f64 view is only used for
            // the magnitude check; the product itself is done in i128.
            let max = max.ceil() as i128;
            bound = bound
                .checked_mul(max.max(1))
                .filter(|b| *b <= EXACT_VOLUME_BOUND)
                .ok_or(VolselError::ExactOverflow)?;
        }
        Ok(())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn mode(&self) -> Mode {
        T::MODE
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[T] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[T]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    /// Borrowed views of all points, in index order.
    pub fn refs(&self) -> Vec<&[T]> {
        self.iter().collect()
    }

    /// Borrowed views of the points at `indices`.
    pub fn select(&self, indices: &[usize]) -> Vec<&[T]> {
        indices.iter().map(|&i| self.point(i)).collect()
    }

    /// A new point set holding the points at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> PointSet<T> {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        PointSet {
            dim: self.dim,
            coords,
        }
    }
}

/// `p` dominates `q` when `p_i >= q_i` on every axis.
pub fn dominates<T: Coord>(p: &[T], q: &[T]) -> Result<bool> {
    if p.len() != q.len() {
        return Err(VolselError::DimensionMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    Ok(dominates_unchecked(p, q))
}

#[inline]
pub(crate) fn dominates_unchecked<T: Coord>(p: &[T], q: &[T]) -> bool {
    p.iter()
        .zip(q)
        .all(|(a, b)| a.total_cmp(b) != Ordering::Less)
}

/// Lexicographic comparison, larger points first.
pub(crate) fn lex_desc<T: Coord>(p: &[T], q: &[T]) -> Ordering {
    for (a, b) in p.iter().zip(q) {
        match b.total_cmp(a) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Positions of the non-dominated points of `points`, ascending.
///
/// Among identical points only the lowest position survives. Points are
/// visited in descending lexicographic order, so any dominator of a point is
/// visited before it; each point is checked only against the survivors so far.
pub fn pareto_positions<T: Coord>(points: &[&[T]]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| lex_desc(points[a], points[b]).then(a.cmp(&b)));
    let mut kept: Vec<usize> = Vec::new();
    for i in order {
        if !kept
            .iter()
            .any(|&k| dominates_unchecked(points[k], points[i]))
        {
            kept.push(i);
        }
    }
    kept.sort_unstable();
    kept
}

/// Result of [`pareto_filter`]: the surviving points and their original indices.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoFiltered<T> {
    pub points: PointSet<T>,
    /// `original[i]` is the index in the input of `points.point(i)`.
    pub original: Vec<usize>,
}

/// Removes every point dominated by a distinct other point, keeping one
/// representative (the lowest index) of each group of duplicates.
pub fn pareto_filter<T: Coord>(set: &PointSet<T>) -> ParetoFiltered<T> {
    let original = pareto_positions(&set.refs());
    ParetoFiltered {
        points: set.subset(&original),
        original,
    }
}

/// Solver that produced a [`Solution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Brute,
    Exact2d,
    Greedy,
    Eptas,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Brute => "brute",
            Algorithm::Exact2d => "exact2d",
            Algorithm::Greedy => "greedy",
            Algorithm::Eptas => "eptas",
        })
    }
}

/// Quality guarantee attached to a [`Solution`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Guarantee {
    None,
    Exact,
    /// Value is at least the factor times the optimum.
    Factor(f64),
    /// `(1 - eps)`-approximate set, `(1 + eps)`-approximate reported value.
    Eptas(f64),
}

impl fmt::Display for Guarantee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guarantee::None => f.write_str("none"),
            Guarantee::Exact => f.write_str("exact"),
            Guarantee::Factor(g) => write!(f, "factor({g})"),
            Guarantee::Eptas(e) => write!(f, "eptas({e})"),
        }
    }
}

impl Serialize for Guarantee {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A selected subset together with its volume.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution<V> {
    /// Original point indices, ascending.
    pub indices: Vec<usize>,
    pub value: V,
    pub algorithm: Algorithm,
    pub guarantee: Guarantee,
}
