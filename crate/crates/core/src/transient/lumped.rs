//! Lumped model `theta' = f(theta) - 2 (beta + delta^2 alpha) theta`.
//!
//! Integrated in `u = e^{-theta}`, where the voltage-controlled equation with
//! no cooling becomes `u' = -lambda V^2`: the approach to blow-up is a straight
//! line hitting zero, which the implicit scheme follows exactly, instead of a
//! logarithmic singularity.

use super::integrator::{integrate, Jacobian, Sample, Semidiscrete, Termination};
use super::result::{ControlState, Snapshot, TransientResult};
use super::{SolveError, SolverOptions};
use crate::model::{ControlSchedule, DimensionlessGroups};

struct LumpedSystem {
    /// `2 (beta + delta^2 alpha)`.
    g: f64,
    voltage_forcing: f64,
    current_forcing: f64,
    voltage_setpoint: f64,
    current_limit: f64,
}

impl LumpedSystem {
    fn electrical(&self, u: f64, mode: ControlState) -> (f64, f64) {
        match mode {
            ControlState::Voltage => (self.voltage_setpoint, self.voltage_setpoint / u),
            ControlState::Current => (self.current_limit * u, self.current_limit),
        }
    }
}

impl Semidiscrete for LumpedSystem {
    fn dim(&self) -> usize {
        1
    }

    fn admissible(&self, y: &[f64]) -> bool {
        y[0] > 0.0 && y[0].is_finite()
    }

    fn rhs(&self, y: &[f64], mode: ControlState, out: &mut [f64]) {
        let u = y[0];
        let cooling = -self.g * u * u.ln();
        out[0] = cooling
            + match mode {
                ControlState::Voltage => -self.voltage_forcing,
                ControlState::Current => -self.current_forcing * u * u,
            };
    }

    fn jacobian(&self, y: &[f64], mode: ControlState, jac: &mut Jacobian) {
        let u = y[0];
        let cooling = -self.g * (u.ln() + 1.0);
        jac.sub[0] = 0.0;
        jac.sup[0] = 0.0;
        jac.diag[0] = cooling
            + match mode {
                ControlState::Voltage => 0.0,
                ControlState::Current => -2.0 * self.current_forcing * u,
            };
        jac.rank_one = None;
    }

    fn theta_max(&self, y: &[f64]) -> f64 {
        -y[0].ln()
    }

    fn switch_indicator(&self, y: &[f64]) -> f64 {
        self.voltage_setpoint / y[0] - self.current_limit
    }

    /// Tolerances apply to `theta`: `d theta = -du / u`.
    fn error_scale(&self, _: usize, y_old: &[f64], y_new: &[f64], opts: &SolverOptions) -> f64 {
        let u = y_old[0].min(y_new[0]);
        let theta = (-y_old[0].ln()).abs().max((-y_new[0].ln()).abs());
        u * (opts.abs_tol + opts.rel_tol * theta)
    }
}

/// Spatially uniform heat balance with heating `lambda min(V^2 e^theta,
/// I^2 e^{-theta})` under the given schedule and linear cooling
/// `2 (beta + delta^2 alpha) theta`.
pub fn solve_lumped(
    groups: &DimensionlessGroups,
    schedule: &ControlSchedule,
    opts: &SolverOptions,
) -> Result<TransientResult, SolveError> {
    schedule.validate()?;
    opts.validate()?;
    for (field, value) in [
        ("lambda", groups.lambda),
        ("beta", groups.beta),
        ("alpha", groups.alpha),
        ("delta", groups.delta),
    ] {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(SolveError::InvalidInput {
                field,
                constraint: "a finite value >= 0",
                value,
            });
        }
    }
    let theta0 = match &opts.initial_theta {
        None => 0.0,
        Some(v) if v.len() == 1 && v[0].is_finite() => v[0],
        Some(v) => {
            return Err(SolveError::InvalidInput {
                field: "initial_theta",
                constraint: "a single finite value",
                value: v.len() as f64,
            })
        }
    };
    let vs = schedule.voltage_setpoint;
    let limit = schedule.current_limit;
    let sys = LumpedSystem {
        g: 2.0 * groups.bulk_cooling(),
        voltage_forcing: groups.lambda * vs * vs,
        current_forcing: groups.lambda * limit * limit,
        voltage_setpoint: vs,
        current_limit: limit,
    };
    let mut result = TransientResult::new(vec![0.0], Vec::new());
    let outcome = integrate(&sys, vec![(-theta0).exp()], schedule, opts, |s: Sample<'_>| {
        let u = s.y[0];
        let theta = [-u.ln()];
        let (v, i) = sys.electrical(u, s.mode);
        result.push(s.t, &theta, v, i, s.mode);
        if s.snapshot {
            result.snapshots.push(Snapshot {
                time: s.t,
                theta: theta.to_vec(),
                potential: Vec::new(),
            });
        }
        result.final_state = theta.to_vec();
    })?;
    result.switch_time = outcome.switch_time;
    if let Termination::Blowup(report) = outcome.termination {
        result.blowup = Some(report);
    }
    Ok(result)
}
