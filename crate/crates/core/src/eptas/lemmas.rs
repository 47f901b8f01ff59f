//! Randomized checks of the four approximation lemmas behind the scheme,
//! each against brute-force optima.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cell::{solve_cell_exact, FallbackPolicy};
use super::combine::combine_dp;
use super::grid::{classify, grid_params, materialize, CellKey, GridParams, Offset};
use super::partition::partition;
use crate::error::{Result, VolselError};
use crate::exact::volsel_brute;
use crate::geometry::PointSet;
use crate::hypervolume::hv_sweep;

/// Relative slack for float comparisons of volumes computed along different paths.
pub const LEMMA_TOL: f64 = 1e-9;

const MAX_N: usize = 12;
const MAX_K: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaSuite {
    /// Dropping boundary points never increases the optimum, for every offset.
    BoundaryUpper,
    /// Some offset keeps at least `(1 - eps)` of the optimum.
    BoundaryLower,
    /// Rounding down to powers of `beta` keeps the optimum within `[(1 - eps), 1]`.
    Rounding,
    /// Union volume of sets in distinct cells versus the sum of their volumes.
    #[serde(rename = "independence-1")]
    IndependenceI,
    /// Combined per-cell optima versus the optimum of the union.
    #[serde(rename = "independence-2")]
    IndependenceII,
}

impl LemmaSuite {
    pub const ALL: [LemmaSuite; 5] = [
        LemmaSuite::BoundaryUpper,
        LemmaSuite::BoundaryLower,
        LemmaSuite::Rounding,
        LemmaSuite::IndependenceI,
        LemmaSuite::IndependenceII,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaSuite::BoundaryUpper => "boundary-upper",
            LemmaSuite::BoundaryLower => "boundary-lower",
            LemmaSuite::Rounding => "rounding",
            LemmaSuite::IndependenceI => "independence-1",
            LemmaSuite::IndependenceII => "independence-2",
        }
    }
}

impl fmt::Display for LemmaSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaSuite {
    type Err = VolselError;

    fn from_str(s: &str) -> Result<Self> {
        LemmaSuite::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| VolselError::InvalidParameter(format!("unknown lemma suite '{s}'")))
    }
}

/// `lhs <= rhs`, up to [`LEMMA_TOL`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl Comparison {
    fn new(label: &str, lhs: f64, rhs: f64) -> Self {
        let slack = LEMMA_TOL * lhs.abs().max(rhs.abs());
        Comparison {
            label: label.to_string(),
            lhs,
            rhs,
            holds: lhs <= rhs + slack,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub trial: usize,
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub passed: bool,
    pub comparisons: Vec<Comparison>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub suite: LemmaSuite,
    pub eps: f64,
    pub seed: u64,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn passes(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn passed(&self) -> bool {
        self.passes() == self.checks.len()
    }
}

/// Runs `trials` random instances of one suite. Instances have `d` in
/// `{2, 3}`, at most 12 points, `k <= 4`, and log-uniform coordinates
/// spanning `lambda^(2 tau)` so that points spread over several cells.
pub fn run_suite(suite: LemmaSuite, trials: usize, seed: u64, eps: f64) -> Result<LemmaReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::with_capacity(trials);
    for trial in 0..trials {
        let d = rng.random_range(2..=3);
        let params = grid_params(d, eps)?;
        let n = rng.random_range(2..=MAX_N);
        let k = rng.random_range(1..=MAX_K.min(n));
        let set = instance(&mut rng, &params, n);
        let comparisons = match suite {
            LemmaSuite::BoundaryUpper | LemmaSuite::BoundaryLower => {
                boundary(suite, &set, k, &params)?
            }
            LemmaSuite::Rounding => rounding(&set, k, &params)?,
            LemmaSuite::IndependenceI => independence_sets(&mut rng, &set, &params),
            LemmaSuite::IndependenceII => independence_optima(&mut rng, &set, k, &params)?,
        };
        checks.push(LemmaCheck {
            trial,
            d,
            n,
            k,
            passed: comparisons.iter().all(|c| c.holds),
            comparisons,
        });
    }
    Ok(LemmaReport {
        suite,
        eps,
        seed,
        checks,
    })
}

fn instance(rng: &mut ChaCha8Rng, params: &GridParams, n: usize) -> PointSet<f64> {
    let d = params.d();
    let log_spread = 2.0 * (params.tau() * params.lambda_exp()) as f64 * params.beta().ln();
    let coords = (0..n * d)
        .map(|_| (rng.random::<f64>() * log_spread).exp())
        .collect();
    PointSet::from_flat(d, coords).expect("positive coordinates")
}

fn all_offsets(d: usize, tau: i64) -> Vec<Offset> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (1..=tau).map(move |l| {
                    let mut w = v.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Offset).collect()
}

/// Input points grouped by the cell they fall in, boundary points dropped.
fn cells_of(set: &PointSet<f64>, offset: &Offset, params: &GridParams) -> Vec<Vec<usize>> {
    let mut cells: std::collections::BTreeMap<CellKey, Vec<usize>> = Default::default();
    for (i, p) in set.iter().enumerate() {
        let x = params.regions(&params.round_point(p));
        if let Some(key) = classify(&x, offset, params) {
            cells.entry(key).or_default().push(i);
        }
    }
    cells.into_values().collect()
}

fn opt(set: &PointSet<f64>, k: usize) -> Result<f64> {
    Ok(volsel_brute(set, k.min(set.len()))?.value)
}

fn boundary(
    suite: LemmaSuite,
    set: &PointSet<f64>,
    k: usize,
    params: &GridParams,
) -> Result<Vec<Comparison>> {
    let full = opt(set, k)?;
    let mut memo: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut best = 0.0f64;
    let mut out = Vec::new();
    for off in all_offsets(params.d(), params.tau()) {
        let mut kept: Vec<usize> = cells_of(set, &off, params).concat();
        kept.sort_unstable();
        let v = match memo.get(&kept) {
            Some(&v) => v,
            None => {
                let v = opt(&set.subset(&kept), k)?;
                memo.insert(kept, v);
                v
            }
        };
        best = best.max(v);
        if suite == LemmaSuite::BoundaryUpper {
            out.push(Comparison::new(
                &format!("VolSel(P_l,k) <= VolSel(P,k) at l={off}"),
                v,
                full,
            ));
        }
    }
    if suite == LemmaSuite::BoundaryLower {
        out.push(Comparison::new(
            "(1-eps) VolSel(P,k) <= max_l VolSel(P_l,k)",
            (1.0 - params.eps()) * full,
            best,
        ));
    }
    Ok(out)
}

fn rounded_set(set: &PointSet<f64>, params: &GridParams) -> PointSet<f64> {
    let coords = set
        .coords()
        .iter()
        .map(|&c| materialize(super::grid::round_exponent(c, params), params))
        .collect();
    PointSet::from_flat(set.dim(), coords).expect("positive coordinates")
}

fn rounding(set: &PointSet<f64>, k: usize, params: &GridParams) -> Result<Vec<Comparison>> {
    let original = opt(set, k)?;
    let rounded = opt(&rounded_set(set, params), k)?;
    Ok(vec![
        Comparison::new(
            "(1-eps) VolSel(P,k) <= VolSel(P~,k)",
            (1.0 - params.eps()) * original,
            rounded,
        ),
        Comparison::new("VolSel(P~,k) <= VolSel(P,k)", rounded, original),
    ])
}

fn random_offset(rng: &mut ChaCha8Rng, params: &GridParams) -> Offset {
    Offset(
        (0..params.d())
            .map(|_| rng.random_range(1..=params.tau()))
            .collect(),
    )
}

/// An offset splitting the set into as many cells as a few random draws find.
fn spread_offset(rng: &mut ChaCha8Rng, set: &PointSet<f64>, params: &GridParams) -> Offset {
    let mut best = random_offset(rng, params);
    let mut best_cells = cells_of(set, &best, params).len();
    for _ in 0..8 {
        let off = random_offset(rng, params);
        let c = cells_of(set, &off, params).len();
        if c > best_cells {
            best = off;
            best_cells = c;
        }
    }
    best
}

fn independence_sets(
    rng: &mut ChaCha8Rng,
    set: &PointSet<f64>,
    params: &GridParams,
) -> Vec<Comparison> {
    let off = spread_offset(rng, set, params);
    let mut union: Vec<usize> = Vec::new();
    let mut sum = 0.0;
    for cell in cells_of(set, &off, params) {
        let mut chosen: Vec<usize> = cell
            .iter()
            .copied()
            .filter(|_| rng.random_bool(0.5))
            .collect();
        if chosen.is_empty() {
            chosen.push(cell[rng.random_range(0..cell.len())]);
        }
        sum += hv_sweep(&set.select(&chosen));
        union.extend(chosen);
    }
    let together = hv_sweep(&set.select(&union));
    vec![
        Comparison::new(
            "(1-eps) sum mu(S_i) <= mu(U S_i)",
            (1.0 - params.eps()) * sum,
            together,
        ),
        Comparison::new("mu(U S_i) <= sum mu(S_i)", together, sum),
    ]
}

fn independence_optima(
    rng: &mut ChaCha8Rng,
    set: &PointSet<f64>,
    k: usize,
    params: &GridParams,
) -> Result<Vec<Comparison>> {
    let off = spread_offset(rng, set, params);
    let cells = partition(set, &off, params);
    let mut rows = Vec::with_capacity(cells.len());
    let mut union: Vec<Vec<f64>> = Vec::new();
    for pts in cells.values() {
        rows.push(solve_cell_exact(pts, params, k, MAX_N, FallbackPolicy::Error)?.values);
        union.extend(
            pts.iter()
                .map(|e| e.exps.iter().map(|&s| materialize(s, params)).collect()),
        );
    }
    let combined = combine_dp(&rows, k).value();
    let whole = if union.is_empty() {
        0.0
    } else {
        opt(&PointSet::new(set.dim(), union)?, k)?
    };
    Ok(vec![
        Comparison::new(
            "(1-eps) max sum VolSel(P~_i,k_i) <= VolSel(U P~_i,k)",
            (1.0 - params.eps()) * combined,
            whole,
        ),
        Comparison::new(
            "VolSel(U P~_i,k) <= max sum VolSel(P~_i,k_i)",
            whole,
            combined,
        ),
    ])
}
