//! Exact spot checks of the gadget lemmas.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::{
    build_tm, diff_volume, gen_pm, gen_qm, lattice, lattice_adjacent, pm_volume, scale, Gadget,
};
use crate::error::Result;
use crate::hypervolume::hv_sweep;

/// `mu((P_m \ {p}) ∪ Q_m) < mu(P_m)` for one removed `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AllPCheck {
    pub removed: [i64; 3],
    pub volume_without: String,
    pub pm_volume: String,
    pub holds: bool,
}

pub fn lemma_all_p(m: usize) -> Result<Vec<AllPCheck>> {
    let pm = gen_pm(m)?;
    let qm = gen_qm(m)?;
    let full = hv_sweep(&pm.refs());
    let lat = lattice(m);
    Ok((0..pm.len())
        .map(|skip| {
            let mut pts: Vec<&[i64]> = pm
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, p)| p)
                .collect();
            pts.extend(qm.iter());
            let without = hv_sweep(&pts);
            AllPCheck {
                removed: lat[skip],
                volume_without: without.to_string(),
                pm_volume: full.to_string(),
                holds: without < full,
            }
        })
        .collect())
}

/// A subset `Q'` of `Q_m` and its exact volume against the lemma's prediction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reduction1Check {
    pub chosen: Vec<[i64; 3]>,
    pub independent: bool,
    pub volume: String,
    /// `mu(P_m) + |Q'| (3 sigma + 1)`.
    pub additive: String,
    /// Equality when independent, strict inequality otherwise.
    pub holds: bool,
}

/// Random independent and dependent subsets of `Q_m`, alternating.
pub fn lemma_reduction1<R: Rng + ?Sized>(
    m: usize,
    trials: usize,
    rng: &mut R,
) -> Result<Vec<Reduction1Check>> {
    let pm = gen_pm(m)?;
    let lat = lattice(m - 1);
    let gadget = Gadget::new(&pm);
    let mut out = Vec::with_capacity(trials);
    let edges: Vec<(usize, usize)> = (0..lat.len())
        .flat_map(|i| (i + 1..lat.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| lattice_adjacent(lat[i], lat[j]))
        .collect();
    for t in 0..trials {
        let mut order: Vec<usize> = (0..lat.len()).collect();
        order.shuffle(rng);
        let chosen: Vec<usize> = if t % 2 == 0 || edges.is_empty() {
            let mut pick: Vec<usize> = Vec::new();
            let want = rng.random_range(1..=lat.len());
            for i in order {
                if pick.len() < want && pick.iter().all(|&p| !lattice_adjacent(lat[p], lat[i])) {
                    pick.push(i);
                }
            }
            pick
        } else {
            let (a, b) = edges[rng.random_range(0..edges.len())];
            let mut pick = vec![a, b];
            let extra = rng.random_range(0..=lat.len() - 2);
            pick.extend(order.into_iter().filter(|&i| i != a && i != b).take(extra));
            pick
        };
        let independent = chosen.iter().enumerate().all(|(x, &u)| {
            chosen[x + 1..]
                .iter()
                .all(|&v| !lattice_adjacent(lat[u], lat[v]))
        });
        let qs: Vec<[i64; 3]> = chosen.iter().map(|&i| super::shifted(m, lat[i])).collect();
        let volume = gadget.with(&qs);
        let additive = gadget.base_volume + chosen.len() as i128 * diff_volume(m);
        out.push(Reduction1Check {
            chosen: chosen.iter().map(|&i| lat[i]).collect(),
            independent,
            volume: volume.to_string(),
            additive: additive.to_string(),
            holds: if independent {
                volume == additive
            } else {
                volume < additive
            },
        });
    }
    Ok(out)
}

/// Everything checkable about the gadget for one `m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardnessReport {
    pub m: usize,
    pub scale: i64,
    pub pm_points: usize,
    pub qm_points: usize,
    pub pm_volume: String,
    pub expected_pm_volume: String,
    pub pm_volume_matches: bool,
    pub diff_volume: String,
    pub diff_volume_matches: bool,
    pub tm_edges: usize,
    pub tm_matches_lattice: bool,
    pub tm_overlaps_unit: bool,
    pub all_p: Vec<AllPCheck>,
    pub all_p_holds: bool,
    pub passed: bool,
}

pub fn check_m(m: usize) -> Result<HardnessReport> {
    let pm = gen_pm(m)?;
    let qm = gen_qm(m)?;
    let gadget = Gadget::new(&pm);
    let expected = pm_volume(m);
    let diff = diff_volume(m);
    let diff_ok = qm
        .iter()
        .all(|q| gadget.with(&[[q[0], q[1], q[2]]]) - gadget.base_volume == diff);
    let (tm_edges, tm_ok, unit) = if m >= 4 {
        let t = build_tm(m)?;
        (
            t.geometric.len(),
            t.geometric == t.lattice,
            t.overlaps.iter().all(|&(_, v)| v == 1),
        )
    } else {
        (0, true, true)
    };
    let all_p = lemma_all_p(m)?;
    let all_p_holds = all_p.iter().all(|c| c.holds);
    let pm_ok = gadget.base_volume == expected;
    Ok(HardnessReport {
        m,
        scale: scale(m),
        pm_points: pm.len(),
        qm_points: qm.len(),
        pm_volume: gadget.base_volume.to_string(),
        expected_pm_volume: expected.to_string(),
        pm_volume_matches: pm_ok,
        diff_volume: diff.to_string(),
        diff_volume_matches: diff_ok,
        tm_edges,
        tm_matches_lattice: tm_ok,
        tm_overlaps_unit: unit,
        all_p,
        all_p_holds,
        passed: pm_ok && diff_ok && tm_ok && unit && all_p_holds,
    })
}
