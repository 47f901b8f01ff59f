//! The full scheme: every offset class, exact cells, budget combine, and the
//! best offset's selection mapped back to input indices.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use super::cell::{solve_cell_exact, CellRow, FallbackPolicy, DEFAULT_CELL_CAP, MAX_CELL_CAP};
use super::combine::combine_dp;
use super::grid::{classify, grid_params, CellKey, ExponentPoint, GridParams, Offset};
use super::partition::{prune, Rounded};
use crate::error::{Result, VolselError};
use crate::exact::check_k;
use crate::geometry::{Algorithm, Guarantee, PointSet, Solution};
use crate::hypervolume::hv_sweep;

/// Internal accuracy is the requested one divided by this.
pub const DEFAULT_EPS_DIVISOR: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EptasConfig {
    pub cell_cap: usize,
    pub fallback: FallbackPolicy,
    pub eps_divisor: f64,
}

impl Default for EptasConfig {
    fn default() -> Self {
        EptasConfig {
            cell_cap: DEFAULT_CELL_CAP,
            fallback: FallbackPolicy::Error,
            eps_divisor: DEFAULT_EPS_DIVISOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EptasResult {
    pub solution: Solution<f64>,
    pub chosen_offset: Offset,
    /// Best combined cell value over all offsets.
    pub reported_value: f64,
    pub user_eps: f64,
    pub internal_eps: f64,
    pub tau: i64,
    pub lambda_exp: i64,
    /// Offsets actually evaluated, one per equivalence class.
    pub offsets_evaluated: usize,
    /// Cells, summed over evaluated offsets, that exceeded the cap and were
    /// filled greedily.
    pub fallback_events: usize,
}

struct OffsetValue {
    offset: Offset,
    value: f64,
    origins: Vec<usize>,
    fallback_events: usize,
}

type RowCache = Mutex<HashMap<Vec<i64>, Arc<CellRow>>>;

/// `(1 - eps)`-approximate volume selection on a float point set.
pub fn eptas_solve(
    set: &PointSet<f64>,
    k: usize,
    eps_user: f64,
    config: &EptasConfig,
) -> Result<EptasResult> {
    if !(eps_user > 0.0 && eps_user <= 0.5) {
        return Err(VolselError::InvalidParameter(format!(
            "eps must lie in (0, 1/2], got {eps_user}"
        )));
    }
    if !(config.eps_divisor.is_finite() && config.eps_divisor >= 1.0) {
        return Err(VolselError::InvalidParameter(format!(
            "eps divisor must be at least 1, got {}",
            config.eps_divisor
        )));
    }
    if config.cell_cap > MAX_CELL_CAP {
        return Err(VolselError::InvalidParameter(format!(
            "cell cap must be at most {MAX_CELL_CAP}, got {}",
            config.cell_cap
        )));
    }
    check_k(k, set.len())?;
    let internal_eps = eps_user / config.eps_divisor;
    let params = grid_params(set.dim(), internal_eps)?;
    let result = |offset: Offset, reported: f64, indices: Vec<usize>, evaluated, events| {
        let value = hv_sweep(&set.select(&indices));
        EptasResult {
            solution: Solution {
                indices,
                value,
                algorithm: Algorithm::Eptas,
                guarantee: if events == 0 {
                    Guarantee::Eptas(eps_user)
                } else {
                    Guarantee::None
                },
            },
            chosen_offset: offset,
            reported_value: reported,
            user_eps: eps_user,
            internal_eps,
            tau: params.tau(),
            lambda_exp: params.lambda_exp(),
            offsets_evaluated: evaluated,
            fallback_events: events,
        }
    };
    if k == 0 || set.is_empty() {
        let first = Offset(vec![1; set.dim()]);
        return Ok(result(first, 0.0, Vec::new(), 0, 0));
    }

    let rounded = Rounded::new(set, &params);
    let offsets = offset_representatives(&rounded, &params);
    let cache: RowCache = Mutex::new(HashMap::new());
    let evaluated: Vec<Result<OffsetValue>> = offsets
        .par_iter()
        .map(|off| evaluate_offset(&rounded, off, &params, k, config, &cache))
        .collect();

    let mut best: Option<OffsetValue> = None;
    let mut events = 0;
    for e in evaluated {
        let e = e?;
        events += e.fallback_events;
        if best.as_ref().is_none_or(|b| e.value > b.value) {
            best = Some(e);
        }
    }
    let best = best.expect("at least one offset");
    let mut indices = best.origins;
    indices.sort_unstable();
    Ok(result(
        best.offset,
        best.value,
        indices,
        offsets.len(),
        events,
    ))
}

/// The lexicographically smallest offset of every class of offsets inducing
/// the same partition of the rounded points, in lexicographic order.
///
/// Per axis, an offset is characterized by which occupied region coordinates
/// it puts on a boundary and how it groups the rest into cells; cell labels
/// that differ by a constant shift give the same partition.
fn offset_representatives(rounded: &Rounded, params: &GridParams) -> Vec<Offset> {
    let tau = params.tau();
    let per_axis: Vec<Vec<i64>> = (0..params.d())
        .map(|axis| {
            let occupied: BTreeSet<i64> = rounded.regions.iter().map(|x| x[axis]).collect();
            let mut classes: BTreeMap<Vec<Option<i64>>, i64> = BTreeMap::new();
            for l in 1..=tau {
                let cells: Vec<Option<i64>> = occupied
                    .iter()
                    .map(|&x| {
                        let r = x - l;
                        (r.rem_euclid(tau) != 0).then(|| r.div_euclid(tau))
                    })
                    .collect();
                let base = cells.iter().flatten().min().copied().unwrap_or(0);
                let signature = cells.into_iter().map(|c| c.map(|y| y - base)).collect();
                classes.entry(signature).or_insert(l);
            }
            let mut reps: Vec<i64> = classes.into_values().collect();
            reps.sort_unstable();
            reps
        })
        .collect();

    let mut offsets = vec![Vec::new()];
    for reps in &per_axis {
        offsets = offsets
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                reps.iter().map(move |&l| {
                    let mut v = prefix.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    offsets.into_iter().map(Offset).collect()
}

fn evaluate_offset(
    rounded: &Rounded,
    offset: &Offset,
    params: &GridParams,
    k: usize,
    config: &EptasConfig,
    cache: &RowCache,
) -> Result<OffsetValue> {
    let mut cells: BTreeMap<CellKey, Vec<ExponentPoint>> = BTreeMap::new();
    for (p, x) in rounded.points.iter().zip(&rounded.regions) {
        if let Some(key) = classify(x, offset, params) {
            cells.entry(key).or_default().push(p.clone());
        }
    }

    let mut rows: Vec<Arc<CellRow>> = Vec::with_capacity(cells.len());
    let mut members: Vec<Vec<ExponentPoint>> = Vec::with_capacity(cells.len());
    let mut fallback_events = 0;
    for pts in cells.into_values() {
        let mut pts = prune(pts);
        // Canonical order so that equal cells under different offsets share a row.
        pts.sort_unstable_by(|a, b| a.exps.cmp(&b.exps));
        let key: Vec<i64> = pts.iter().flat_map(|p| p.exps.iter().copied()).collect();
        let cached = cache.lock().expect("cache lock").get(&key).cloned();
        let row = match cached {
            Some(row) => row,
            None => {
                let row = Arc::new(solve_cell_exact(
                    &pts,
                    params,
                    k,
                    config.cell_cap,
                    config.fallback,
                )?);
                cache
                    .lock()
                    .expect("cache lock")
                    .insert(key, Arc::clone(&row));
                row
            }
        };
        fallback_events += usize::from(row.fallback);
        rows.push(row);
        members.push(pts);
    }

    let values: Vec<&[f64]> = rows.iter().map(|r| r.values.as_slice()).collect();
    let table = combine_dp(&values, k);
    let origins = table
        .allocation()
        .into_iter()
        .enumerate()
        .flat_map(|(i, share)| {
            rows[i].witnesses[share]
                .iter()
                .map(|&pos| members[i][pos].origin)
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(OffsetValue {
        offset: offset.clone(),
        value: table.value(),
        origins,
        fallback_events,
    })
}
