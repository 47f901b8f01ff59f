//! Exact per-cell tables `H[k'] = VolSel(cell, k')`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::grid::{materialize, ExponentPoint, GridParams};
use crate::error::{Result, VolselError};
use crate::greedy::greedy_trace;
use crate::hypervolume::hv_sweep;

/// Default largest cell (after pruning) solved by enumeration.
pub const DEFAULT_CELL_CAP: usize = 20;

/// Hard ceiling on the cap: the enumeration table has `2^cap` entries.
pub(crate) const MAX_CELL_CAP: usize = 26;

/// What to do with a cell larger than the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FallbackPolicy {
    #[default]
    Error,
    /// Fill the row greedily. The result no longer carries a guarantee.
    Greedy,
}

impl fmt::Display for FallbackPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FallbackPolicy::Error => "error",
            FallbackPolicy::Greedy => "greedy",
        })
    }
}

impl FromStr for FallbackPolicy {
    type Err = VolselError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "error" => Ok(FallbackPolicy::Error),
            "greedy" => Ok(FallbackPolicy::Greedy),
            other => Err(VolselError::InvalidParameter(format!(
                "unknown fallback policy '{other}'"
            ))),
        }
    }
}

/// `values[k']` for `k' = 0..=min(k, |cell|)`, nondecreasing, with
/// `witnesses[k']` the positions in the cell realizing it.
#[derive(Debug, Clone, PartialEq)]
pub struct CellRow {
    pub values: Vec<f64>,
    pub witnesses: Vec<Vec<usize>>,
    /// The row was filled greedily rather than exactly.
    pub fallback: bool,
}

/// Solves one cell with coordinates materialized as powers of `beta`.
pub fn solve_cell_exact(
    cell: &[ExponentPoint],
    params: &GridParams,
    k: usize,
    cap: usize,
    policy: FallbackPolicy,
) -> Result<CellRow> {
    let coords: Vec<f64> = cell
        .iter()
        .flat_map(|e| e.exps.iter().map(|&s| materialize(s, params)))
        .collect();
    solve_materialized(&coords, params.d(), k, cap, policy)
}

pub(crate) fn solve_materialized(
    coords: &[f64],
    d: usize,
    k: usize,
    cap: usize,
    policy: FallbackPolicy,
) -> Result<CellRow> {
    let points: Vec<&[f64]> = coords.chunks_exact(d).collect();
    let n = points.len();
    if n > cap.min(MAX_CELL_CAP) {
        return match policy {
            FallbackPolicy::Error => Err(VolselError::CellCapExceeded { size: n, cap }),
            FallbackPolicy::Greedy => Ok(greedy_row(&points, k)),
        };
    }
    let kmax = k.min(n);
    let union = subset_volumes(&points);

    let mut best = vec![(f64::NEG_INFINITY, 0usize); kmax + 1];
    best[0] = (0.0, 0);
    for (mask, &v) in union.iter().enumerate().skip(1) {
        let c = mask.count_ones() as usize;
        if c <= kmax && v > best[c].0 {
            best[c] = (v, mask);
        }
    }

    let mut row = CellRow {
        values: Vec::with_capacity(kmax + 1),
        witnesses: Vec::with_capacity(kmax + 1),
        fallback: false,
    };
    for (c, &(_, mask)) in best.iter().enumerate() {
        let witness: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        // The signed sums lose a few ulps; the reported value comes from the sweep.
        let value = hv_sweep(&witness.iter().map(|&i| points[i]).collect::<Vec<_>>());
        if c > 0 && value.total_cmp(&row.values[c - 1]) != Ordering::Greater {
            let prev = row.values[c - 1];
            let w = row.witnesses[c - 1].clone();
            row.values.push(prev);
            row.witnesses.push(w);
        } else {
            row.values.push(value);
            row.witnesses.push(witness);
        }
    }
    Ok(row)
}

/// Union volume of every subset, indexed by bitmask.
///
/// Each nonempty mask first receives its signed inclusion-exclusion term
/// `(-1)^(|T|+1) * vol(meet T)`; a subset-sum transform then turns terms into
/// union volumes.
fn subset_volumes(points: &[&[f64]]) -> Vec<f64> {
    let n = points.len();
    let d = points.first().map_or(0, |p| p.len());
    let mut f = vec![0.0; 1 << n];
    let mut mins = vec![0.0; d * (n + 1)];
    fn fill(
        points: &[&[f64]],
        f: &mut [f64],
        mins: &mut [f64],
        d: usize,
        depth: usize,
        start: usize,
        mask: usize,
    ) {
        for i in start..points.len() {
            let (done, rest) = mins.split_at_mut((depth + 1) * d);
            let next = &mut rest[..d];
            for a in 0..d {
                next[a] = if depth == 0 {
                    points[i][a]
                } else {
                    done[depth * d + a].min(points[i][a])
                };
            }
            let vol: f64 = next.iter().product();
            let m = mask | 1 << i;
            f[m] = if depth.is_multiple_of(2) { vol } else { -vol };
            fill(points, f, mins, d, depth + 1, i + 1, m);
        }
    }
    fill(points, &mut f, &mut mins, d, 0, 0, 0);
    for i in 0..n {
        let bit = 1 << i;
        for mask in 0..f.len() {
            if mask & bit != 0 {
                f[mask] += f[mask ^ bit];
            }
        }
    }
    f
}

fn greedy_row(points: &[&[f64]], k: usize) -> CellRow {
    let kmax = k.min(points.len());
    let order = greedy_trace(points, kmax).order;
    let mut row = CellRow {
        values: vec![0.0],
        witnesses: vec![vec![]],
        fallback: true,
    };
    for c in 1..=kmax {
        let mut w: Vec<usize> = order[..c.min(order.len())].to_vec();
        w.sort_unstable();
        let value = hv_sweep(&w.iter().map(|&i| points[i]).collect::<Vec<_>>());
        row.values.push(value);
        row.witnesses.push(w);
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coord::rel_close;
    use crate::eptas::grid::grid_params;
    use crate::exact::volsel_brute;
    use crate::geometry::PointSet;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ep(exps: &[i64]) -> ExponentPoint {
        ExponentPoint {
            exps: exps.to_vec(),
            origin: 0,
        }
    }

    #[test]
    fn single_point_row() {
        let p = grid_params(3, 0.5).unwrap();
        let row = solve_cell_exact(&[ep(&[3, 6, 1])], &p, 4, 20, FallbackPolicy::Error).unwrap();
        let expected = 2.0 * 4.0 * materialize(1, &p);
        assert_eq!(row.values.len(), 2);
        assert_eq!(row.values[0], 0.0);
        assert!(rel_close(row.values[1], expected, 1e-15));
        assert_eq!(row.witnesses, vec![vec![], vec![0]]);
    }

    #[test]
    fn chain_saturates_after_one() {
        let p = grid_params(2, 0.5).unwrap();
        let cell = [ep(&[1, 1]), ep(&[2, 3]), ep(&[4, 4])];
        let row = solve_cell_exact(&cell, &p, 3, 20, FallbackPolicy::Error).unwrap();
        let top = materialize(4, &p) * materialize(4, &p);
        assert_eq!(row.values, vec![0.0, top, top, top]);
        assert_eq!(row.witnesses[3], vec![2]);
    }

    #[test]
    fn matches_brute_force_on_random_cells() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for trial in 0..40 {
            let d = 2 + trial % 3;
            let p = grid_params(d, 0.3).unwrap();
            let n = rng.random_range(1..=12);
            let cell: Vec<ExponentPoint> = (0..n)
                .map(|_| {
                    ep(&(0..d)
                        .map(|_| rng.random_range(-20..40))
                        .collect::<Vec<_>>())
                })
                .collect();
            let k = rng.random_range(0..=n + 1);
            let row = solve_cell_exact(&cell, &p, k, 20, FallbackPolicy::Error).unwrap();
            let mat = PointSet::new(
                d,
                cell.iter()
                    .map(|e| e.exps.iter().map(|&s| materialize(s, &p)).collect())
                    .collect(),
            )
            .unwrap();
            assert_eq!(row.values.len(), k.min(n) + 1);
            for (kk, (&v, w)) in row.values.iter().zip(&row.witnesses).enumerate() {
                let b = volsel_brute(&mat, kk).unwrap().value;
                assert!(rel_close(v, b, 1e-9), "trial {trial} k'={kk}: {v} vs {b}");
                assert!(w.len() <= kk);
                assert_eq!(hv_sweep(&mat.select(w)), v);
            }
        }
    }

    #[test]
    fn cap_policies() {
        let coords: Vec<f64> = (1..=6).flat_map(|i| [i as f64, 7.0 - i as f64]).collect();
        assert_eq!(
            solve_materialized(&coords, 2, 3, 5, FallbackPolicy::Error),
            Err(VolselError::CellCapExceeded { size: 6, cap: 5 })
        );
        let row = solve_materialized(&coords, 2, 3, 5, FallbackPolicy::Greedy).unwrap();
        assert!(row.fallback);
        assert_eq!(row.values.len(), 4);
        assert!(row.values.windows(2).all(|w| w[0] <= w[1]));
        let exact = solve_materialized(&coords, 2, 3, 6, FallbackPolicy::Error).unwrap();
        assert!(!exact.fallback);
        assert!(exact.values[3] >= row.values[3]);
        assert_eq!(
            "greedy".parse::<FallbackPolicy>().unwrap(),
            FallbackPolicy::Greedy
        );
        assert!("both".parse::<FallbackPolicy>().is_err());
    }
}
