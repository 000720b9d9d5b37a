use serde::{Deserialize, Serialize};

use super::SolveError;

/// Step-size control and termination settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub dt_init: f64,
    pub dt_min: f64,
    pub dt_max: f64,
    /// Runs whose maximum temperature exceeds this are classified as blow-up.
    pub theta_cap: f64,
    pub t_end: f64,
    /// Times at which full profiles are stored; steps are shortened to hit them.
    pub snapshot_times: Vec<f64>,
    pub max_steps: usize,
    /// Replaces the zero initial temperature (one value per node, or one value
    /// for the lumped model).
    #[serde(skip)]
    pub initial_theta: Option<Vec<f64>>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            dt_init: 1e-4,
            dt_min: 1e-12,
            dt_max: 1.0,
            theta_cap: 25.0,
            t_end: 50.0,
            snapshot_times: Vec::new(),
            max_steps: 1_000_000,
            initial_theta: None,
        }
    }
}

impl SolverOptions {
    pub fn with_t_end(mut self, t_end: f64) -> Self {
        self.t_end = t_end;
        self
    }

    pub fn with_initial_theta(mut self, theta: Vec<f64>) -> Self {
        self.initial_theta = Some(theta);
        self
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        let check = |ok: bool, field, constraint, value| {
            if ok {
                Ok(())
            } else {
                Err(SolveError::InvalidInput {
                    field,
                    constraint,
                    value,
                })
            }
        };
        check(self.rel_tol > 0.0, "rel_tol", "rel_tol > 0", self.rel_tol)?;
        check(self.abs_tol > 0.0, "abs_tol", "abs_tol > 0", self.abs_tol)?;
        check(self.dt_min > 0.0, "dt_min", "dt_min > 0", self.dt_min)?;
        check(self.dt_min < self.dt_init, "dt_init", "dt_min < dt_init", self.dt_init)?;
        check(self.dt_init <= self.dt_max, "dt_max", "dt_init <= dt_max", self.dt_max)?;
        check(self.theta_cap > 0.0, "theta_cap", "theta_cap > 0", self.theta_cap)?;
        check(
            self.t_end > 0.0 && self.t_end.is_finite(),
            "t_end",
            "a finite t_end > 0",
            self.t_end,
        )?;
        check(self.max_steps > 0, "max_steps", "max_steps > 0", 0.0)?;
        for w in self.snapshot_times.windows(2) {
            check(w[0] < w[1], "snapshot_times", "strictly increasing times", w[1])?;
        }
        for &t in &self.snapshot_times {
            check(
                (0.0..=self.t_end).contains(&t),
                "snapshot_times",
                "times within [0, t_end]",
                t,
            )?;
        }
        Ok(())
    }
}
