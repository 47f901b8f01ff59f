//! Hard instances: a lattice antichain `P_m`, a shifted layer `Q_m` whose
//! marginal regions overlap like a triangular grid, and the embedding of
//! independent set on induced triangular grid graphs.
//!
//! Coordinates are scaled by `sigma = 4 m^2` so that the shift `1/(4 m^2)`
//! becomes the all-ones vector and every volume is an integer.

mod checks;
mod reduction;

pub use checks::{
    check_m, lemma_all_p, lemma_reduction1, AllPCheck, HardnessReport, Reduction1Check,
};
pub use reduction::{
    embed_instance, verify_reduction, HardnessInstance, MappingEntry, ReductionReport, Sidecar,
    TriGridVertexSet,
};

use std::collections::BTreeSet;

use crate::error::{Result, VolselError};
use crate::geometry::PointSet;
use crate::hypervolume::hv_sweep;

/// `sigma = 4 m^2`.
pub fn scale(m: usize) -> i64 {
    4 * (m as i64) * (m as i64)
}

/// Triples of positive integers summing to `m`, ordered by `(a, b)`.
pub fn lattice(m: usize) -> Vec<[i64; 3]> {
    let m = m as i64;
    let mut out = Vec::new();
    for a in 1..=m - 2 {
        for b in 1..=m - 1 - a {
            out.push([a, b, m - a - b]);
        }
    }
    out
}

fn check_m_range(m: usize) -> Result<()> {
    if m < 3 {
        return Err(VolselError::InvalidParameter(format!(
            "m must be at least 3, got {m}"
        )));
    }
    if m > 1000 {
        return Err(VolselError::InvalidParameter(format!(
            "m must be at most 1000, got {m}"
        )));
    }
    Ok(())
}

/// `sigma * p` for every `p` in `P_m`.
pub fn gen_pm(m: usize) -> Result<PointSet<i64>> {
    check_m_range(m)?;
    let s = scale(m);
    let coords = lattice(m)
        .into_iter()
        .flat_map(|p| p.map(|c| c * s))
        .collect();
    PointSet::from_flat(3, coords)
}

/// `Q_m` point for a lattice point of `P_{m-1}`.
pub fn shifted(m: usize, p: [i64; 3]) -> [i64; 3] {
    let s = scale(m);
    p.map(|c| c * s + 1)
}

/// `sigma * p + (1, 1, 1)` for every `p` in `P_{m-1}`, in the order of
/// [`lattice`]`(m - 1)`. Empty for `m = 3`.
pub fn gen_qm(m: usize) -> Result<PointSet<i64>> {
    check_m_range(m)?;
    let coords = lattice(m - 1)
        .into_iter()
        .flat_map(|p| shifted(m, p))
        .collect();
    PointSet::from_flat(3, coords)
}

/// `vol(diff(q))` in scaled units: `3 sigma + 1`.
pub fn diff_volume(m: usize) -> i128 {
    3 * scale(m) as i128 + 1
}

/// `mu(P_m)` in scaled units: `m(m-1)(m-2)/6 * sigma^3`.
pub fn pm_volume(m: usize) -> i128 {
    let m128 = m as i128;
    let s = scale(m) as i128;
    m128 * (m128 - 1) * (m128 - 2) / 6 * s * s * s
}

/// Two lattice points of `P_{m-1}` are neighbours on the triangular grid.
pub fn lattice_adjacent(p: [i64; 3], q: [i64; 3]) -> bool {
    let (da, db) = (p[0] - q[0], p[1] - q[1]);
    matches!(
        (da, db),
        (1, 0) | (-1, 0) | (0, 1) | (0, -1) | (1, -1) | (-1, 1)
    )
}

/// Intersection graph of the regions `diff(q)` over `Q_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct TmGraph {
    pub m: usize,
    pub vertices: Vec<[i64; 3]>,
    /// Edges `(i, j)`, `i < j`, from exact volumes.
    pub geometric: BTreeSet<(usize, usize)>,
    /// Edges from [`lattice_adjacent`].
    pub lattice: BTreeSet<(usize, usize)>,
    /// Volume of `diff(q_i) ∩ diff(q_j)` for every geometric edge.
    pub overlaps: Vec<((usize, usize), i128)>,
}

impl TmGraph {
    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0; self.vertices.len()];
        for &(a, b) in &self.geometric {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }
}

/// Base set for repeated `mu(P ∪ extra)` evaluations.
pub(crate) struct Gadget {
    base: Vec<i64>,
    pub base_volume: i128,
}

impl Gadget {
    pub fn new(base: &PointSet<i64>) -> Self {
        Gadget {
            base: base.coords().to_vec(),
            base_volume: hv_sweep(&base.refs()),
        }
    }

    pub fn with(&self, extra: &[[i64; 3]]) -> i128 {
        let mut coords = self.base.clone();
        for q in extra {
            coords.extend_from_slice(q);
        }
        let views: Vec<&[i64]> = coords.chunks_exact(3).collect();
        hv_sweep(&views)
    }

    /// `vol(diff(q) ∩ diff(r))` by inclusion-exclusion on the four unions.
    pub fn overlap(&self, q: [i64; 3], r: [i64; 3]) -> i128 {
        self.with(&[q]) + self.with(&[r]) - self.base_volume - self.with(&[q, r])
    }
}

/// `T_m` with both the geometric and the lattice edge sets.
pub fn build_tm(m: usize) -> Result<TmGraph> {
    let pm = gen_pm(m)?;
    let lat = lattice(m - 1);
    let vertices: Vec<[i64; 3]> = lat.iter().map(|&p| shifted(m, p)).collect();
    let gadget = Gadget::new(&pm);
    let mut geometric = BTreeSet::new();
    let mut lattice_edges = BTreeSet::new();
    let mut overlaps = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let v = gadget.overlap(vertices[i], vertices[j]);
            if v > 0 {
                geometric.insert((i, j));
                overlaps.push(((i, j), v));
            }
            if lattice_adjacent(lat[i], lat[j]) {
                lattice_edges.insert((i, j));
            }
        }
    }
    Ok(TmGraph {
        m,
        vertices,
        geometric,
        lattice: lattice_edges,
        overlaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::dominates;

    #[test]
    fn cardinalities() {
        assert_eq!(gen_pm(3).unwrap().coords(), &[36, 36, 36]);
        assert_eq!(gen_pm(9).unwrap().len(), 28);
        assert_eq!(gen_qm(9).unwrap().len(), 21);
        assert_eq!(gen_qm(3).unwrap().len(), 0);
        for m in 3..=15 {
            assert_eq!(gen_pm(m).unwrap().len(), (m - 1) * (m - 2) / 2);
            assert_eq!(gen_qm(m).unwrap().len(), (m - 2) * (m - 3) / 2);
        }
        assert!(gen_pm(2).is_err());
    }

    #[test]
    fn pm_is_an_antichain() {
        let p = gen_pm(8).unwrap();
        for a in p.iter() {
            for b in p.iter() {
                assert!(a == b || !dominates(a, b).unwrap());
            }
        }
    }

    #[test]
    fn qm_lies_on_shifted_plane() {
        for m in 4..=10 {
            let s = scale(m);
            for q in gen_qm(m).unwrap().iter() {
                assert_eq!(q.iter().sum::<i64>(), s * (m as i64 - 1) + 3);
            }
        }
    }

    #[test]
    fn small_graphs() {
        let t4 = build_tm(4).unwrap();
        assert_eq!(t4.vertices.len(), 1);
        assert!(t4.geometric.is_empty());
        let t8 = build_tm(8).unwrap();
        assert_eq!(t8.geometric, t8.lattice);
        assert!(t8.overlaps.iter().all(|&(_, v)| v == 1));
        assert!(t8.max_degree() <= 6);
    }
}
