//! Scenario files: TOML documents describing one sample, one model and the
//! artifacts to produce.
//!
//! ```toml
//! model = "radial"
//!
//! [dimensional]
//! rho = 6050.0
//! # ... every DimensionalParameters field
//!
//! [schedule]
//! mode = "voltage_then_current"
//! # current_limit defaults to the dimensionless limit of the sample
//!
//! [grid]
//! n_cells = 64
//!
//! [solver]
//! t_end = 50.0
//!
//! [outputs]
//! timeseries = "timeseries"
//! ```
//!
//! Unknown keys are rejected everywhere.

use std::fs;
use std::path::{Path, PathBuf};

use flashsim_core::{
    nondimensionalize, ControlSchedule, DimensionalParameters, DimensionlessGroups, Geometry, HighAspectGroups,
    ScheduleMode, SolverOptions, SpatialGrid,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Radial,
    Axial,
    Lumped,
    HighAspect,
}

impl ModelKind {
    pub fn geometry(self) -> Option<Geometry> {
        match self {
            ModelKind::Radial => Some(Geometry::Radial),
            ModelKind::Axial | ModelKind::HighAspect => Some(Geometry::Axial),
            ModelKind::Lumped => None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleSpec {
    mode: ScheduleMode,
    voltage_setpoint: Option<f64>,
    current_limit: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridSpec {
    #[serde(default = "default_cells")]
    n_cells: usize,
}

fn default_cells() -> usize {
    64
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            n_cells: default_cells(),
        }
    }
}

/// Base names of the artifacts; the extension follows the output format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Outputs {
    pub timeseries: PathBuf,
    pub snapshots: PathBuf,
    pub steady: PathBuf,
    pub critical_curve: PathBuf,
    pub regime: PathBuf,
}

impl Default for Outputs {
    fn default() -> Self {
        Self {
            timeseries: "timeseries".into(),
            snapshots: "snapshots".into(),
            steady: "steady".into(),
            critical_curve: "critical_curve".into(),
            regime: "regime".into(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    model: ModelKind,
    dimensional: DimensionalParameters,
    schedule: ScheduleSpec,
    #[serde(default)]
    grid: GridSpec,
    #[serde(default)]
    solver: SolverOptions,
    #[serde(default)]
    outputs: Outputs,
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub dimensional: DimensionalParameters,
    pub model: ModelKind,
    pub schedule: ControlSchedule,
    /// `None` for the lumped model.
    pub grid: Option<SpatialGrid>,
    pub solver: SolverOptions,
    pub outputs: Outputs,
}

impl Scenario {
    pub fn groups(&self) -> DimensionlessGroups {
        nondimensionalize(&self.dimensional).expect("validated at load")
    }

    pub fn high_aspect_groups(&self) -> HighAspectGroups {
        HighAspectGroups::from(&self.groups())
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_scenario(&text).map_err(|e| match e {
        CliError::Config { message, .. } => CliError::Config {
            path: path.to_path_buf(),
            message,
        },
        other => other,
    })
}

pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    let config = |message: String| CliError::Config {
        path: PathBuf::new(),
        message,
    };
    let file: ScenarioFile = toml::from_str(text).map_err(|e| config(e.to_string().trim_end().to_string()))?;
    let groups = nondimensionalize(&file.dimensional).map_err(|e| config(format!("dimensional: {e}")))?;

    let schedule = ControlSchedule {
        mode: file.schedule.mode,
        voltage_setpoint: file.schedule.voltage_setpoint.unwrap_or(1.0),
        current_limit: match file.schedule.mode {
            ScheduleMode::VoltageOnly => file.schedule.current_limit.unwrap_or(f64::INFINITY),
            _ => file.schedule.current_limit.unwrap_or(groups.curly_i),
        },
    };
    schedule.validate().map_err(|e| config(format!("schedule: {e}")))?;

    let grid = match file.model.geometry() {
        Some(geometry) => {
            Some(SpatialGrid::new(file.grid.n_cells, geometry).map_err(|e| config(format!("grid: {e}")))?)
        }
        None => None,
    };
    file.solver.validate().map_err(|e| config(format!("solver: {e}")))?;

    Ok(Scenario {
        dimensional: file.dimensional,
        model: file.model,
        schedule,
        grid,
        solver: file.solver,
        outputs: file.outputs,
    })
}
