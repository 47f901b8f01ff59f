//! Machine-readable run output.

use serde::Serialize;
use volsel_core::eptas::Offset;
use volsel_core::{Guarantee, Mode, Solution, VolumeValue};

pub const SCHEMA_VERSION: u32 = 1;

/// A volume in either arithmetic. Exact volumes are written as JSON integers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Volume {
    Float(f64),
    Exact(i128),
}

impl Volume {
    pub fn as_f64(self) -> f64 {
        match self {
            Volume::Float(v) => v,
            Volume::Exact(v) => v as f64,
        }
    }
}

pub trait IntoVolume: VolumeValue {
    fn into_volume(self) -> Volume;
}

impl IntoVolume for f64 {
    fn into_volume(self) -> Volume {
        Volume::Float(self)
    }
}

impl IntoVolume for i128 {
    fn into_volume(self) -> Volume {
        Volume::Exact(self)
    }
}

/// Result of one `solve` run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub algorithm: String,
    pub mode: Mode,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    pub value: Volume,
    pub indices: Vec<usize>,
    pub elapsed_ms: u64,
    pub seed: u64,
    pub guarantee: Guarantee,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback_events: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eptas: Option<EptasDetails>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EptasDetails {
    pub chosen_offset: Offset,
    pub reported_value: f64,
    pub internal_eps: f64,
    pub tau: i64,
    pub lambda_exp: i64,
    pub offsets_evaluated: usize,
}

impl RunRecord {
    pub fn new<V: IntoVolume>(
        solution: Solution<V>,
        mode: Mode,
        n: usize,
        d: usize,
        k: usize,
        seed: u64,
    ) -> Self {
        RunRecord {
            schema_version: SCHEMA_VERSION,
            algorithm: solution.algorithm.to_string(),
            mode,
            n,
            d,
            k,
            eps: None,
            value: solution.value.into_volume(),
            indices: solution.indices,
            elapsed_ms: 0,
            seed,
            guarantee: solution.guarantee,
            fallback_events: None,
            eptas: None,
        }
    }
}

/// Result of one `hv` run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HvRecord {
    pub schema_version: u32,
    pub engine: String,
    pub mode: Mode,
    pub n: usize,
    pub d: usize,
    pub value: Volume,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub elapsed_ms: u64,
    pub seed: u64,
}

/// One row of the `bench` table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub schema_version: u32,
    pub file: String,
    pub algorithm: String,
    pub mode: Mode,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub eps: Option<f64>,
    pub value: f64,
    pub indices: String,
    pub elapsed_ms: u64,
    pub seed: u64,
    pub guarantee: String,
    pub fallback_events: Option<usize>,
    /// `value` over the best value for the same file and `k`.
    pub ratio: f64,
}
