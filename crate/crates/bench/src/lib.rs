//! Fixed inputs shared by the benchmarks.

use flashsim_core::{ControlSchedule, DimensionalParameters, DimensionlessGroups, SolverOptions, SpatialGrid};

/// Table-1 groups with the given current limit.
pub fn table1_groups(curly_i: f64) -> DimensionlessGroups {
    DimensionlessGroups::reduced(0.104, 0.126, 0.037, 0.15, curly_i)
}

pub fn table1_parameters() -> DimensionalParameters {
    DimensionalParameters::table1()
}

/// Voltage-then-current run up to `t_end`.
pub fn flash_run(n_cells: usize, t_end: f64) -> (DimensionlessGroups, ControlSchedule, SpatialGrid, SolverOptions) {
    (
        table1_groups(284.0),
        ControlSchedule::voltage_then_current(284.0),
        SpatialGrid::radial(n_cells).expect("n_cells >= 8"),
        SolverOptions::default().with_t_end(t_end),
    )
}

/// Cooling values spanning both asymptotic regimes of the critical curves.
pub fn cooling_sweep(n: usize) -> Vec<f64> {
    (0..n).map(|k| 1e-3 * 1e6f64.powf(k as f64 / (n - 1) as f64)).collect()
}
