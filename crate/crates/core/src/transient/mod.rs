//! Transient solvers: method of lines in space, adaptive implicit integration
//! in time, one-way voltage-to-current switching and blow-up classification.

mod grid;
mod integrator;
mod line;
mod lumped;
mod options;
mod result;

pub use grid::{Geometry, SpatialGrid, MIN_CELLS};
pub use line::{solve_axial, solve_high_aspect, solve_radial};
pub use lumped::solve_lumped;
pub use options::SolverOptions;
pub use result::{BlowupReason, BlowupReport, ControlState, Snapshot, TransientResult};

use thiserror::Error;

use crate::model::ModelError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("invalid input `{field}`: must satisfy {constraint} (got {value})")]
    InvalidInput {
        field: &'static str,
        constraint: &'static str,
        value: f64,
    },
    #[error("grid geometry {found:?} does not match the model ({expected:?})")]
    GeometryMismatch { expected: Geometry, found: Geometry },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("nonlinear iteration failed at t = {t} (last step {dt}, max theta {theta_max})")]
    NewtonFailure { t: f64, dt: f64, theta_max: f64 },
    #[error("step limit of {steps} reached at t = {t}")]
    StepLimit { t: f64, steps: usize },
    #[error("switch location failed for trial step {dt}")]
    EventLocation { dt: f64 },
}
