//! Approximation scheme via shifted exponential grids.
//!
//! Coordinates are rounded down to powers of `beta = (1 - eps)^(-1/d)` and all
//! grid logic runs on the integer exponents. Regions are blocks of `j`
//! consecutive exponents per axis, cells are `(tau - 1)^d` blocks of regions
//! separated by one-region-thick boundaries whose position is set by an
//! offset. For every offset, each cell is solved exactly and the per-cell
//! tables are combined by a budget-allocation dynamic program.

mod cell;
mod combine;
mod grid;
mod lemmas;
mod partition;
mod precise;
mod solve;

pub use cell::{solve_cell_exact, CellRow, FallbackPolicy, DEFAULT_CELL_CAP};
pub use combine::{combine_dp, CombineTable};
pub use grid::{
    classify, grid_params, materialize, region_index, round_exponent, CellKey, ExponentPoint,
    GridParams, Offset,
};
pub use lemmas::{run_suite, Comparison, LemmaCheck, LemmaReport, LemmaSuite, LEMMA_TOL};
pub use partition::{partition, partition_unpruned};
pub use solve::{eptas_solve, EptasConfig, EptasResult, DEFAULT_EPS_DIVISOR};
