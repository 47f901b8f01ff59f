//! Grid constants, exponent rounding and cell classification.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::precise::Wide;
use crate::error::{Result, VolselError};

/// Constants of the exponential grid for one `(d, eps)` pair.
///
/// The rounding base `beta = (1 - eps)^(-1/d)` is never stored as a float;
/// every comparison against a power of `beta` is decided on `c^d * q^s` with
/// `q = 1 - eps` held exactly.
#[derive(Debug, Clone)]
pub struct GridParams {
    d: usize,
    eps: f64,
    tau: i64,
    lambda_exp: i64,
    q: Wide,
    ln_beta: f64,
}

impl GridParams {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Cell width in regions, including the boundary region.
    pub fn tau(&self) -> i64 {
        self.tau
    }

    /// Region width `j` in exponents, so `lambda = beta^j`.
    pub fn lambda_exp(&self) -> i64 {
        self.lambda_exp
    }

    /// `beta` as a float, for display only.
    pub fn beta(&self) -> f64 {
        self.ln_beta.exp()
    }

    /// `beta^s <= c`.
    pub(crate) fn at_least_power(&self, c: f64, s: i64) -> bool {
        let lhs = Wide::from_f64(c).powi(self.d as u64);
        let ord = if s >= 0 {
            lhs.mul(self.q.powi(s as u64)).cmp(&Wide::ONE)
        } else {
            lhs.cmp(&self.q.powi(s.unsigned_abs()))
        };
        ord != Ordering::Less
    }

    /// Exponents of every coordinate of `p`.
    pub(crate) fn round_point(&self, p: &[f64]) -> Vec<i64> {
        p.iter().map(|&c| round_exponent(c, self)).collect()
    }

    /// Region coordinates of an exponent vector.
    pub(crate) fn regions(&self, exps: &[i64]) -> Vec<i64> {
        exps.iter().map(|&s| region_index(s, self)).collect()
    }
}

/// Grid constants for internal parameter `eps` in `(0, 1/2]`.
///
/// `tau` is the smallest integer with `tau * eps > d` and `j` the smallest
/// with `beta^j > d / eps`, both decided exactly for the binary value of `eps`.
pub fn grid_params(d: usize, eps: f64) -> Result<GridParams> {
    if d == 0 {
        return Err(VolselError::ZeroDimension);
    }
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(VolselError::InvalidParameter(format!(
            "internal eps must lie in (0, 1/2], got {eps}"
        )));
    }
    let df = d as f64;
    let e = Wide::from_f64(eps);
    let dw = Wide::from_f64(df);

    let tau_exceeds = |t: i64| Wide::from_f64(t as f64).mul(e).cmp(&dw) == Ordering::Greater;
    let mut tau = ((df / eps).floor() as i64).max(1);
    while !tau_exceeds(tau) {
        tau += 1;
    }
    while tau > 1 && tau_exceeds(tau - 1) {
        tau -= 1;
    }

    let q = Wide::from_sum(1.0, -eps);
    let ln_beta = -(-eps).ln_1p() / df;
    // beta^j > d/eps  <=>  eps^d > d^d * q^j
    let lhs = e.powi(d as u64);
    let rhs = dw.powi(d as u64);
    let lambda_exceeds = |j: i64| lhs.cmp(&rhs.mul(q.powi(j as u64))) == Ordering::Greater;
    let mut j = ((df / eps).ln() / ln_beta).ceil().max(1.0) as i64;
    while !lambda_exceeds(j) {
        j += 1;
    }
    while j > 1 && lambda_exceeds(j - 1) {
        j -= 1;
    }

    Ok(GridParams {
        d,
        eps,
        tau,
        lambda_exp: j,
        q,
        ln_beta,
    })
}

/// The unique `s` with `beta^s <= coord < beta^(s+1)`, for finite `coord > 0`.
pub fn round_exponent(coord: f64, params: &GridParams) -> i64 {
    debug_assert!(coord > 0.0 && coord.is_finite());
    let mut s = (coord.ln() / params.ln_beta).floor() as i64;
    while !params.at_least_power(coord, s) {
        s -= 1;
    }
    while params.at_least_power(coord, s + 1) {
        s += 1;
    }
    s
}

/// The smallest float not below `beta^s`.
///
/// Every float `c` with exponent `s` satisfies `materialize(s) <= c`, so a
/// materialized box is contained in the box of any point rounding to it.
pub fn materialize(s: i64, params: &GridParams) -> f64 {
    let tiny = f64::from_bits(1);
    let guess = (s as f64 * params.ln_beta).exp().clamp(tiny, f64::MAX);
    let holds = |bits: u64| params.at_least_power(f64::from_bits(bits), s);
    // Positive floats are ordered like their bit patterns.
    let (mut lo, mut hi) = (guess.to_bits(), guess.to_bits());
    let mut step = 1u64;
    while !holds(hi) {
        lo = hi;
        hi = (hi + step).min(f64::MAX.to_bits());
        step *= 2;
    }
    step = 1;
    while lo == hi || holds(lo) {
        if lo <= 1 {
            return tiny;
        }
        hi = lo;
        lo = lo.saturating_sub(step).max(1);
        step *= 2;
    }
    // Invariant: !holds(lo), holds(hi).
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    f64::from_bits(hi)
}

/// Region coordinate `floor(s / j)` of exponent `s`.
pub fn region_index(s: i64, params: &GridParams) -> i64 {
    s.div_euclid(params.lambda_exp)
}

/// Grid offset, one value per axis in `1..=tau`. Any integer is accepted and
/// only its residue modulo `tau` matters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Offset(pub Vec<i64>);

impl fmt::Display for Offset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Cell coordinates `y`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CellKey(pub Vec<i64>);

/// A rounded point: coordinate `i` is `beta^exps[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentPoint {
    pub exps: Vec<i64>,
    /// Index of an input point that rounds to `exps`.
    pub origin: usize,
}

/// `None` if the region `x` lies on a boundary for `offset`, otherwise the
/// cell containing it.
pub fn classify(x: &[i64], offset: &Offset, params: &GridParams) -> Option<CellKey> {
    let tau = params.tau;
    x.iter()
        .zip(&offset.0)
        .map(|(&xi, &li)| {
            let r = xi - li;
            (r.rem_euclid(tau) != 0).then(|| r.div_euclid(tau))
        })
        .collect::<Option<Vec<_>>>()
        .map(CellKey)
}
