//! Independent set on induced triangular grids reduced to volume selection.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{diff_volume, gen_pm, lattice_adjacent, pm_volume, scale, shifted, Gadget};
use crate::error::{Result, VolselError};
use crate::exact::subsets_up_to;
use crate::geometry::PointSet;

/// Vertices `(i, j)` of the triangular grid, at `(i + j/2, j * sqrt(3)/2)`,
/// and a target independent-set size `ell`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriGridVertexSet {
    pub vertices: Vec<(i64, i64)>,
    pub ell: usize,
}

impl TriGridVertexSet {
    pub fn new(vertices: Vec<(i64, i64)>, ell: usize) -> Result<Self> {
        if vertices.is_empty() {
            return Err(VolselError::InvalidParameter("vertex set is empty".into()));
        }
        if ell == 0 || ell > vertices.len() {
            return Err(VolselError::InvalidParameter(format!(
                "ell must lie in 1..={}, got {ell}",
                vertices.len()
            )));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(VolselError::InvalidParameter("duplicate vertex".into()));
        }
        Ok(TriGridVertexSet { vertices, ell })
    }

    /// Parses one `i j` or `i,j` pair per line; blank lines and `#` comments
    /// are skipped.
    pub fn parse(text: &str, ell: usize) -> Result<Self> {
        let mut vertices = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|f| !f.is_empty())
                .collect();
            let parse_err = |message: String| VolselError::Parse {
                line: no + 1,
                message,
            };
            if fields.len() != 2 {
                return Err(parse_err(format!(
                    "expected 2 integers, found {}",
                    fields.len()
                )));
            }
            let num = |f: &str| {
                f.parse::<i64>()
                    .map_err(|_| parse_err(format!("invalid integer '{f}'")))
            };
            vertices.push((num(fields[0])?, num(fields[1])?));
        }
        Self::new(vertices, ell)
    }

    pub fn adjacent(a: (i64, i64), b: (i64, i64)) -> bool {
        matches!(
            (a.0 - b.0, a.1 - b.1),
            (1, 0) | (-1, 0) | (0, 1) | (0, -1) | (1, -1) | (-1, 1)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappingEntry {
    pub vertex: (i64, i64),
    /// Point of `P_{m-1}` whose shift is the selected point.
    pub lattice: [i64; 3],
    /// Index of that point in the instance.
    pub point: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardnessInstance {
    /// `P_m` followed by `Q_m(A)` in the order of the input vertices.
    pub points: PointSet<i64>,
    pub k: usize,
    pub v_scaled: i128,
    pub m: usize,
    pub scale: i64,
    pub ell: usize,
    pub pm_len: usize,
    pub mapping: Vec<MappingEntry>,
}

/// JSON sidecar written next to a generated instance.
#[derive(Debug, Clone, Serialize)]
pub struct Sidecar<'a> {
    pub m: usize,
    pub k: usize,
    #[serde(rename = "V_scaled")]
    pub v_scaled: String,
    pub scale: i64,
    pub ell: usize,
    pub mapping: &'a [MappingEntry],
}

impl HardnessInstance {
    /// `V_scaled` is written as a decimal string since it may exceed 2^53.
    pub fn sidecar(&self) -> Sidecar<'_> {
        Sidecar {
            m: self.m,
            k: self.k,
            v_scaled: self.v_scaled.to_string(),
            scale: self.scale,
            ell: self.ell,
            mapping: &self.mapping,
        }
    }

    fn q_points(&self) -> Vec<[i64; 3]> {
        self.mapping
            .iter()
            .map(|e| {
                let p = self.points.point(e.point);
                [p[0], p[1], p[2]]
            })
            .collect()
    }
}

/// Builds `(P_m ∪ Q_m(A), k, V)`.
///
/// After translating `A` to `min i = min j = 0`, vertex `(i, j)` maps to the
/// lattice point `(i + 1, j + 1, m - 3 - i - j)` of `P_{m-1}`, with
/// `m = max(i + j) + max(j) + 5`. Lattice neighbours are exactly triangular
/// grid neighbours; this is re-checked on the exact volumes and a mismatch
/// panics.
pub fn embed_instance(a: &TriGridVertexSet) -> Result<HardnessInstance> {
    let min_i = a.vertices.iter().map(|v| v.0).min().expect("nonempty");
    let min_j = a.vertices.iter().map(|v| v.1).min().expect("nonempty");
    let norm: Vec<(i64, i64)> = a
        .vertices
        .iter()
        .map(|&(i, j)| (i - min_i, j - min_j))
        .collect();
    let reach = norm.iter().map(|&(i, j)| i + j).max().expect("nonempty");
    let j_max = norm.iter().map(|v| v.1).max().expect("nonempty");
    let m = usize::try_from(reach + j_max + 5)
        .map_err(|_| VolselError::InvalidParameter("vertex coordinates too large".into()))?;
    if m > 1000 {
        return Err(VolselError::InvalidParameter(format!(
            "vertex set too spread out (m = {m})"
        )));
    }
    let pm = gen_pm(m)?;
    let pm_len = pm.len();
    let mut coords = pm.coords().to_vec();
    let mut mapping = Vec::with_capacity(norm.len());
    for (idx, (&vertex, &(i, j))) in a.vertices.iter().zip(&norm).enumerate() {
        let lat = [i + 1, j + 1, m as i64 - 3 - i - j];
        debug_assert!(lat[2] >= 1);
        coords.extend_from_slice(&shifted(m, lat));
        mapping.push(MappingEntry {
            vertex,
            lattice: lat,
            point: pm_len + idx,
        });
    }
    let points = PointSet::from_flat(3, coords)?;

    let gadget = Gadget::new(&pm);
    for x in 0..mapping.len() {
        for y in x + 1..mapping.len() {
            let (ex, ey) = (&mapping[x], &mapping[y]);
            let grid = TriGridVertexSet::adjacent(ex.vertex, ey.vertex);
            assert_eq!(grid, lattice_adjacent(ex.lattice, ey.lattice));
            let overlap = gadget.overlap(shifted(m, ex.lattice), shifted(m, ey.lattice));
            assert_eq!(
                grid,
                overlap > 0,
                "embedding broke adjacency between {:?} and {:?}",
                ex.vertex,
                ey.vertex
            );
        }
    }

    let k = (m - 1) * (m - 2) / 2 + a.ell;
    let v_scaled = pm_volume(m) + a.ell as i128 * diff_volume(m);
    Ok(HardnessInstance {
        points,
        k,
        v_scaled,
        m,
        scale: scale(m),
        ell: a.ell,
        pm_len,
        mapping,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionReport {
    pub m: usize,
    pub k: usize,
    pub ell: usize,
    pub vertices: usize,
    /// Some `ell` vertices are pairwise non-adjacent.
    pub independent_set: bool,
    pub witness: Option<Vec<(i64, i64)>>,
    /// Largest `mu(P_m ∪ Q_m(B))` over `|B| = ell`.
    pub best_volume: String,
    pub v_scaled: String,
    pub volume_reaches_threshold: bool,
    pub agree: bool,
}

fn combinations(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    fn go(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == r {
            f(cur);
            return;
        }
        for i in start..=n - (r - cur.len()) {
            cur.push(i);
            go(n, r, i + 1, cur, f);
            cur.pop();
        }
    }
    go(n, r, 0, &mut Vec::with_capacity(r), &mut f);
}

/// Decides both sides of the reduction by exhaustive search.
///
/// The volume side maximizes over `P_m ∪ Q_m(B)` with `|B| = ell`: any
/// selection reaching the threshold must contain all of `P_m`, since dropping
/// a point of `P_m` loses more than all of `Q_m` can add.
pub fn verify_reduction(inst: &HardnessInstance, budget: u128) -> Result<ReductionReport> {
    let n = inst.mapping.len();
    let ell = inst.ell;
    let required = subsets_up_to(n, ell) - subsets_up_to(n, ell - 1);
    if required > budget {
        return Err(VolselError::BudgetExceeded { required, budget });
    }
    let vertices: Vec<(i64, i64)> = inst.mapping.iter().map(|e| e.vertex).collect();
    let qs = inst.q_points();
    let pm = inst.points.subset(&(0..inst.pm_len).collect::<Vec<_>>());
    let gadget = Gadget::new(&pm);

    let mut witness: Option<Vec<(i64, i64)>> = None;
    let mut best = i128::MIN;
    combinations(n, ell, |b| {
        let independent = b.iter().enumerate().all(|(x, &u)| {
            b[x + 1..]
                .iter()
                .all(|&v| !TriGridVertexSet::adjacent(vertices[u], vertices[v]))
        });
        if independent && witness.is_none() {
            witness = Some(b.iter().map(|&u| vertices[u]).collect());
        }
        let extra: Vec<[i64; 3]> = b.iter().map(|&u| qs[u]).collect();
        best = best.max(gadget.with(&extra));
    });
    let independent_set = witness.is_some();
    let reaches = best >= inst.v_scaled;
    Ok(ReductionReport {
        m: inst.m,
        k: inst.k,
        ell,
        vertices: n,
        independent_set,
        witness,
        best_volume: best.to_string(),
        v_scaled: inst.v_scaled.to_string(),
        volume_reaches_threshold: reaches,
        agree: independent_set == reaches,
    })
}
