//! Reduced models of Joule-heated ceramic samples in a furnace: scales and
//! dimensionless groups, exact steady states and their folds, transient
//! solvers with voltage-to-current control switching, and the dimensional
//! flash criterion.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub(crate) mod numerics;

pub mod model;
pub mod regime;
pub mod steady;
pub mod transient;

pub use model::{
    arrhenius_conductivity, conductivity_hat, nondimensionalize, ControlSchedule, DimensionalParameters,
    DimensionlessGroups, HighAspectGroups, ModelError, ScheduleMode,
};
pub use regime::{
    critical_field, critical_field_with, flash_condition, lumped_flash_condition, regime_diagram, FlashCriterion,
    FlashEvaluation, RegimeError, RegimeGrid,
};
pub use steady::{
    axial_critical_lambda, axial_steady_current, axial_steady_voltage, evaluate_profile, high_aspect_critical,
    lumped_current_equilibrium, lumped_flash_criterion, lumped_voltage_equilibrium, radial_critical_lambda,
    radial_steady_current, radial_steady_voltage, AxialSteadyState, Branch, HighAspectFold, LumpedCriterion,
    RadialSteadyState, SteadyError, SteadyProfile,
};
pub use transient::{
    solve_axial, solve_high_aspect, solve_lumped, solve_radial, BlowupReason, BlowupReport, ControlState, Geometry,
    Snapshot, SolveError, SolverOptions, SpatialGrid, TransientResult,
};
