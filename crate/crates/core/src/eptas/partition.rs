//! Assignment of rounded points to grid cells.

use std::collections::{BTreeMap, HashMap};

use super::grid::{classify, CellKey, ExponentPoint, GridParams, Offset};
use crate::geometry::{pareto_positions, PointSet};

/// Rounded points grouped by cell for one offset. Boundary points are
/// dropped, points with equal exponents are merged into the one with the
/// lowest input index, and points whose exponents are dominated within their
/// cell are removed. Each cell lists its points by ascending `origin`.
pub fn partition(
    set: &PointSet<f64>,
    offset: &Offset,
    params: &GridParams,
) -> BTreeMap<CellKey, Vec<ExponentPoint>> {
    let mut cells = partition_unpruned(set, offset, params);
    for pts in cells.values_mut() {
        *pts = prune(std::mem::take(pts));
    }
    cells
}

/// As [`partition`] but keeping dominated points; only exact duplicates are merged.
pub fn partition_unpruned(
    set: &PointSet<f64>,
    offset: &Offset,
    params: &GridParams,
) -> BTreeMap<CellKey, Vec<ExponentPoint>> {
    let mut cells: BTreeMap<CellKey, Vec<ExponentPoint>> = BTreeMap::new();
    for (origin, p) in set.iter().enumerate() {
        let exps = params.round_point(p);
        if let Some(key) = classify(&params.regions(&exps), offset, params) {
            cells
                .entry(key)
                .or_default()
                .push(ExponentPoint { exps, origin });
        }
    }
    for pts in cells.values_mut() {
        let mut seen = std::collections::HashSet::new();
        pts.retain(|p| seen.insert(p.exps.clone()));
    }
    cells
}

/// Drops duplicates and dominated points. Input must be sorted by `origin`;
/// among duplicates the first survives.
pub(crate) fn prune(points: Vec<ExponentPoint>) -> Vec<ExponentPoint> {
    let views: Vec<&[i64]> = points.iter().map(|p| p.exps.as_slice()).collect();
    let keep = pareto_positions(&views);
    let mut keep = keep.into_iter().peekable();
    points
        .into_iter()
        .enumerate()
        .filter_map(|(i, p)| (keep.next_if_eq(&i).is_some()).then_some(p))
        .collect()
}

/// Input points rounded once, shared by all offsets.
///
/// A point dominated by another point of the same region is dominated within
/// whatever cell that region falls in, and a region is either wholly boundary
/// or wholly inside one cell, so such points are removed up front.
pub(crate) struct Rounded {
    pub points: Vec<ExponentPoint>,
    pub regions: Vec<Vec<i64>>,
}

impl Rounded {
    pub fn new(set: &PointSet<f64>, params: &GridParams) -> Self {
        let mut by_region: HashMap<Vec<i64>, Vec<ExponentPoint>> = HashMap::new();
        for (origin, p) in set.iter().enumerate() {
            let exps = params.round_point(p);
            by_region
                .entry(params.regions(&exps))
                .or_default()
                .push(ExponentPoint { exps, origin });
        }
        let mut points: Vec<ExponentPoint> = by_region.into_values().flat_map(prune).collect();
        points.sort_unstable_by_key(|p| p.origin);
        let regions = points.iter().map(|p| params.regions(&p.exps)).collect();
        Rounded { points, regions }
    }
}
