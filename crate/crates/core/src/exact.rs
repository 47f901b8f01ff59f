//! Exact volume selection: subset enumeration for any dimension and a
//! staircase dynamic program for the plane.

use std::cmp::Ordering;

use crate::coord::{Coord, VolumeValue};
use crate::error::{Result, VolselError};
use crate::geometry::{pareto_positions, Algorithm, Guarantee, PointSet, Solution};
use crate::hypervolume::{hv_contribution, hv_sweep};

/// Default cap on the number of enumerated subsets.
pub const DEFAULT_BRUTE_BUDGET: u128 = 10_000_000;

/// Number of subsets of size at most `k` of an `n`-set, saturating.
pub fn subsets_up_to(n: usize, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for j in 0..=k.min(n) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((n - j) as u128) / (j as u128 + 1);
    }
    total
}

pub(crate) fn check_k(k: usize, n: usize) -> Result<()> {
    if k > n {
        Err(VolselError::KOutOfRange { k, n })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForce {
    pub budget: u128,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce {
            budget: DEFAULT_BRUTE_BUDGET,
        }
    }
}

impl BruteForce {
    /// Best subset of size at most `k`; ties go to the lexicographically
    /// smallest index set.
    pub fn solve<T: Coord>(&self, set: &PointSet<T>, k: usize) -> Result<Solution<T::Volume>> {
        check_k(k, set.len())?;
        let required = subsets_up_to(set.len(), k);
        if required > self.budget {
            return Err(VolselError::BudgetExceeded {
                required,
                budget: self.budget,
            });
        }
        let mut search = Search {
            points: set.refs(),
            k,
            chosen: Vec::with_capacity(k),
            chosen_points: Vec::with_capacity(k),
            best_value: T::Volume::ZERO,
            best: Vec::new(),
        };
        search.visit(0, T::Volume::ZERO);
        // Report the sweep value of the winner, not the accumulated gains.
        let value = hv_sweep(&set.select(&search.best));
        Ok(Solution {
            indices: search.best,
            value,
            algorithm: Algorithm::Brute,
            guarantee: Guarantee::Exact,
        })
    }
}

/// Subsets are visited depth-first in lexicographic order of their sorted
/// index sequences, so keeping the first strict maximum realizes the tie-break.
struct Search<'a, T: Coord> {
    points: Vec<&'a [T]>,
    k: usize,
    chosen: Vec<usize>,
    chosen_points: Vec<&'a [T]>,
    best_value: T::Volume,
    best: Vec<usize>,
}

impl<'a, T: Coord> Search<'a, T> {
    fn visit(&mut self, start: usize, value: T::Volume) {
        if value.total_cmp(&self.best_value) == Ordering::Greater {
            self.best_value = value;
            self.best.clone_from(&self.chosen);
        }
        if self.chosen.len() == self.k {
            return;
        }
        for i in start..self.points.len() {
            let p = self.points[i];
            let gain = hv_contribution(&self.chosen_points, p);
            self.chosen.push(i);
            self.chosen_points.push(p);
            self.visit(i + 1, value + gain);
            self.chosen.pop();
            self.chosen_points.pop();
        }
    }
}

/// `VolSel(P, k)` by subset enumeration with the default budget.
pub fn volsel_brute<T: Coord>(set: &PointSet<T>, k: usize) -> Result<Solution<T::Volume>> {
    BruteForce::default().solve(set, k)
}

/// Exact `VolSel(P, k)` for `d = 2`.
///
/// After Pareto filtering and sorting by `x` ascending (so `y` descending),
/// `best[t][i]` is the largest area of a `t`-subset whose rightmost point is
/// `i`; appending `i` after `j` adds the strip `y_i * (x_i - x_j)`.
pub fn volsel_exact_2d<T: Coord>(set: &PointSet<T>, k: usize) -> Result<Solution<T::Volume>> {
    if set.dim() != 2 {
        return Err(VolselError::DimensionMismatch {
            expected: 2,
            found: set.dim(),
        });
    }
    check_k(k, set.len())?;
    let mut front = pareto_positions(&set.refs());
    front.sort_by(|&a, &b| set.point(a)[0].total_cmp(&set.point(b)[0]));
    let xs: Vec<T> = front.iter().map(|&i| set.point(i)[0]).collect();
    let ys: Vec<T> = front.iter().map(|&i| set.point(i)[1]).collect();
    let m = front.len();
    let rounds = k.min(m);

    let gt = |a: &T::Volume, b: &T::Volume| a.total_cmp(b) == Ordering::Greater;
    // best[t][i], pred[t][i] for t in 1..=rounds (row 0 unused).
    let mut best = vec![vec![T::Volume::ZERO; m]; rounds + 1];
    let mut pred = vec![vec![usize::MAX; m]; rounds + 1];
    let mut answer = (T::Volume::ZERO, 0usize, usize::MAX);
    for t in 1..=rounds {
        for i in 0..m {
            if t > i + 1 {
                continue;
            }
            let (mut value, mut from) = if t == 1 {
                ((xs[i] - T::ZERO).widen() * ys[i].widen(), usize::MAX)
            } else {
                (T::Volume::ZERO, usize::MAX)
            };
            if t > 1 {
                for j in (t - 2)..i {
                    let cand = best[t - 1][j] + ys[i].widen() * (xs[i] - xs[j]).widen();
                    if from == usize::MAX || gt(&cand, &value) {
                        value = cand;
                        from = j;
                    }
                }
            }
            best[t][i] = value;
            pred[t][i] = from;
            if gt(&value, &answer.0) {
                answer = (value, t, i);
            }
        }
    }

    let mut indices = Vec::new();
    let (value, mut t, mut i) = answer;
    while t > 0 && i != usize::MAX {
        indices.push(front[i]);
        i = pred[t][i];
        t -= 1;
    }
    indices.sort_unstable();
    Ok(Solution {
        indices,
        value,
        algorithm: Algorithm::Exact2d,
        guarantee: Guarantee::Exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn antichain() -> PointSet<i64> {
        PointSet::new(2, vec![vec![1, 3], vec![2, 2], vec![3, 1]]).unwrap()
    }

    #[test]
    fn brute_examples() {
        let p = antichain();
        let s = volsel_brute(&p, 1).unwrap();
        assert_eq!((s.value, s.indices.clone()), (4, vec![1]));
        assert_eq!(volsel_brute(&p, 3).unwrap().value, 6);
        let empty = volsel_brute(&p, 0).unwrap();
        assert_eq!((empty.value, empty.indices), (0, vec![]));
        // All pairs tie at 5; the smallest index set wins.
        assert_eq!(volsel_brute(&p, 2).unwrap().indices, vec![0, 1]);
    }

    #[test]
    fn brute_budget_and_range() {
        let p = antichain();
        let tiny = BruteForce { budget: 3 };
        assert_eq!(
            tiny.solve(&p, 2),
            Err(VolselError::BudgetExceeded {
                required: 7,
                budget: 3
            })
        );
        assert_eq!(
            volsel_brute(&p, 4),
            Err(VolselError::KOutOfRange { k: 4, n: 3 })
        );
        assert_eq!(subsets_up_to(18, 4), 1 + 18 + 153 + 816 + 3060);
        assert_eq!(subsets_up_to(5, 9), 32);
    }

    #[test]
    fn exact_2d_examples() {
        let two = PointSet::new(2, vec![vec![1i64, 3], vec![3, 1]]).unwrap();
        assert_eq!(volsel_exact_2d(&two, 2).unwrap().value, 5);
        let s = volsel_exact_2d(&antichain(), 2).unwrap();
        assert_eq!(s.value, 5);
        assert_eq!(s.indices.len(), 2);
        let three = PointSet::new(3, vec![vec![1i64, 1, 1]]).unwrap();
        assert_eq!(
            volsel_exact_2d(&three, 1),
            Err(VolselError::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
        assert_eq!(volsel_exact_2d(&antichain(), 0).unwrap().value, 0);
    }

    #[test]
    fn exact_2d_witness_maps_to_original_indices() {
        // Index 0 is dominated; index 3 duplicates index 2.
        let p = PointSet::new(
            2,
            vec![
                vec![1.0, 1.0],
                vec![1.0, 4.0],
                vec![4.0, 1.0],
                vec![4.0, 1.0],
                vec![2.5, 2.5],
            ],
        )
        .unwrap();
        for k in 0..=p.len() {
            let s = volsel_exact_2d(&p, k).unwrap();
            let b = volsel_brute(&p, k).unwrap();
            assert!(s.indices.len() <= k);
            assert_eq!(hv_sweep(&p.select(&s.indices)), s.value);
            assert_eq!(s.value, b.value);
        }
    }
}
