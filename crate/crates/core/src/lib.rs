//! Hypervolume subset selection.
//!
//! Given `n` points in the strictly positive orthant and a budget `k`, select
//! at most `k` points maximizing the volume of the union of their anchored
//! boxes `[0, p_1] x ... x [0, p_d]`.

pub mod coord;
pub mod eptas;
pub mod error;
pub mod exact;
pub mod generate;
pub mod geometry;
pub mod greedy;
pub mod hardness;
pub mod hypervolume;
pub mod io;

pub use coord::{Coord, Mode, VolumeValue};
pub use eptas::{eptas_solve, EptasConfig, EptasResult, FallbackPolicy};
pub use error::{Result, VolselError};
pub use exact::{volsel_brute, volsel_exact_2d, BruteForce};
pub use geometry::{
    dominates, pareto_filter, Algorithm, Guarantee, ParetoFiltered, PointSet, Solution,
};
pub use greedy::{volsel_greedy, GREEDY_FACTOR};
pub use hypervolume::{hv_contribution, hv_estimate, hv_inclusion_exclusion, hv_sweep};
