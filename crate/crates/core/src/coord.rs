//! Scalar types for the two arithmetic modes.
//!
//! Float mode stores `f64` coordinates and accumulates volumes in `f64`.
//! Exact mode stores `i64` coordinates and accumulates volumes in `i128`;
//! construction of an exact [`PointSet`](crate::PointSet) rejects inputs whose
//! bounding volume could overflow the accumulator.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::Serialize;

/// Arithmetic mode of a point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Exact,
}

impl Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Float => "float",
            Mode::Exact => "exact",
        })
    }
}

/// A coordinate value.
pub trait Coord:
    Copy + PartialOrd + Sub<Output = Self> + Debug + Display + Send + Sync + 'static
{
    /// Accumulator used for volumes of boxes spanned by this coordinate type.
    type Volume: VolumeValue;

    const MODE: Mode;
    const ZERO: Self;

    fn widen(self) -> Self::Volume;

    fn total_cmp(&self, other: &Self) -> Ordering;

    /// Strictly positive and finite.
    fn is_valid(self) -> bool;

    fn to_f64(self) -> f64;

    #[inline]
    fn min_of(self, other: Self) -> Self {
        if other.total_cmp(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

/// A volume accumulator.
pub trait VolumeValue:
    Copy
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + 'static
{
    const ZERO: Self;
    const ONE: Self;

    fn to_f64(self) -> f64;

    fn total_cmp(&self, other: &Self) -> Ordering;
}

impl Coord for f64 {
    type Volume = f64;
    const MODE: Mode = Mode::Float;
    const ZERO: Self = 0.0;

    #[inline]
    fn widen(self) -> f64 {
        self
    }

    #[inline]
    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }

    #[inline]
    fn is_valid(self) -> bool {
        self.is_finite() && self > 0.0
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

impl Coord for i64 {
    type Volume = i128;
    const MODE: Mode = Mode::Exact;
    const ZERO: Self = 0;

    #[inline]
    fn widen(self) -> i128 {
        self as i128
    }

    #[inline]
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    #[inline]
    fn is_valid(self) -> bool {
        self > 0
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl VolumeValue for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }

    #[inline]
    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }
}

impl VolumeValue for i128 {
    const ZERO: Self = 0;
    const ONE: Self = 1;

    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }

    #[inline]
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// Total-order wrapper so coordinates can key ordered maps.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Ordered<T>(pub T);

impl<T: Coord> PartialEq for Ordered<T> {
    fn eq(&self, other: &Self) -> bool {
        self.0.total_cmp(&other.0) == Ordering::Equal
    }
}

impl<T: Coord> Eq for Ordered<T> {}

impl<T: Coord> PartialOrd for Ordered<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Coord> Ord for Ordered<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Relative closeness used by float-mode checks.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    (a - b).abs() <= tol * scale
}
