//! Greedy `(1 - 1/e)`-approximation with lazy marginal re-evaluation.
//!
//! Since volume is submodular, a marginal computed in an earlier round is an
//! upper bound on the current one. The heap orders entries by (bound desc,
//! index asc); an entry popped with an up-to-date bound is therefore the
//! smallest-index maximizer of the current marginal, the same choice the
//! plain greedy loop makes.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::coord::{Coord, VolumeValue};
use crate::error::Result;
use crate::exact::check_k;
use crate::geometry::{Algorithm, Guarantee, PointSet, Solution};
use crate::hypervolume::{hv_contribution, hv_sweep};

/// `1 - 1/e`.
pub const GREEDY_FACTOR: f64 = 1.0 - 1.0 / std::f64::consts::E;

/// Selection order and the marginal gain of each pick.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyTrace<V> {
    pub order: Vec<usize>,
    pub marginals: Vec<V>,
}

struct Entry<V> {
    bound: V,
    index: usize,
    round: usize,
}

impl<V: VolumeValue> Ord for Entry<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .total_cmp(&other.bound)
            .then_with(|| other.index.cmp(&self.index))
    }
}

impl<V: VolumeValue> PartialOrd for Entry<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: VolumeValue> PartialEq for Entry<V> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<V: VolumeValue> Eq for Entry<V> {}

/// Runs lazy greedy for at most `k` rounds, stopping early once the best
/// marginal is zero.
pub fn greedy_trace<T: Coord>(points: &[&[T]], k: usize) -> GreedyTrace<T::Volume> {
    let mut heap: BinaryHeap<Entry<T::Volume>> = points
        .iter()
        .enumerate()
        .map(|(index, p)| Entry {
            bound: hv_contribution(&[], p),
            index,
            round: 0,
        })
        .collect();
    let mut chosen: Vec<&[T]> = Vec::with_capacity(k);
    let mut trace = GreedyTrace {
        order: Vec::with_capacity(k),
        marginals: Vec::with_capacity(k),
    };
    'rounds: for round in 0..k {
        while let Some(top) = heap.pop() {
            if top.round == round {
                if top.bound.total_cmp(&T::Volume::ZERO) != Ordering::Greater {
                    break 'rounds;
                }
                chosen.push(points[top.index]);
                trace.order.push(top.index);
                trace.marginals.push(top.bound);
                continue 'rounds;
            }
            heap.push(Entry {
                bound: hv_contribution(&chosen, points[top.index]),
                index: top.index,
                round,
            });
        }
        break;
    }
    trace
}

pub fn volsel_greedy<T: Coord>(set: &PointSet<T>, k: usize) -> Result<Solution<T::Volume>> {
    check_k(k, set.len())?;
    let trace = greedy_trace(&set.refs(), k);
    let mut indices = trace.order;
    indices.sort_unstable();
    let value = hv_sweep(&set.select(&indices));
    Ok(Solution {
        indices,
        value,
        algorithm: Algorithm::Greedy,
        guarantee: Guarantee::Factor(GREEDY_FACTOR),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain greedy: full re-evaluation every round, smallest index on ties.
    pub(crate) fn naive<T: Coord>(points: &[&[T]], k: usize) -> Vec<usize> {
        let mut chosen: Vec<usize> = Vec::new();
        for _ in 0..k {
            let sel: Vec<&[T]> = chosen.iter().map(|&i| points[i]).collect();
            let mut best: Option<(T::Volume, usize)> = None;
            for (i, p) in points.iter().enumerate() {
                if chosen.contains(&i) {
                    continue;
                }
                let g = hv_contribution(&sel, p);
                if best.is_none_or(|(b, _)| g.total_cmp(&b) == Ordering::Greater) {
                    best = Some((g, i));
                }
            }
            match best {
                Some((g, i)) if g.total_cmp(&T::Volume::ZERO) == Ordering::Greater => {
                    chosen.push(i)
                }
                _ => break,
            }
        }
        chosen
    }

    #[test]
    fn first_pick_is_largest_box() {
        let p = PointSet::new(2, vec![vec![1i64, 3], vec![2, 2], vec![3, 1]]).unwrap();
        assert_eq!(volsel_greedy(&p, 1).unwrap().indices, vec![1]);
        assert_eq!(volsel_greedy(&p, 3).unwrap().value, 6);
    }

    #[test]
    fn stops_when_nothing_is_gained() {
        let p = PointSet::new(2, vec![vec![1i64, 1], vec![2, 2], vec![2, 2]]).unwrap();
        let s = volsel_greedy(&p, 3).unwrap();
        assert_eq!(s.indices, vec![1]);
        assert_eq!(s.value, 4);
        assert_eq!(s.guarantee, Guarantee::Factor(GREEDY_FACTOR));
    }

    #[test]
    fn lazy_matches_naive_on_ties() {
        let p = PointSet::new(
            2,
            vec![
                vec![1i64, 4],
                vec![4, 1],
                vec![2, 2],
                vec![2, 2],
                vec![3, 1],
            ],
        )
        .unwrap();
        for k in 0..=p.len() {
            assert_eq!(greedy_trace(&p.refs(), k).order, naive(&p.refs(), k));
        }
    }
}
