//! Radial model (insulated electrodes).
//!
//! Steady states are `theta(r) = -2 ln(c - b + b r^2)` with
//! `b = beta c (-ln c) / 2`. Writing `s = -ln c`, the admissible range is
//! `0 < s < 2/beta` (so that `c - b > 0`), and
//!
//! * voltage control: `lambda = 4 beta e^{-2s} s (1 - beta s / 2)`, zero at both
//!   ends of the range with a single interior maximum `lambda_c(beta)`;
//! * current control: `lambda I^2 = 4 beta s e^{2s} / (1 - beta s / 2)`, rising
//!   from 0 to infinity.

use serde::{Deserialize, Serialize};

use super::{require_cooling, require_non_negative, require_positive, Branch, SteadyError, SteadyProfile};
use crate::numerics::{bisect, unimodal_argmax};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialSteadyState {
    pub c: f64,
    pub b: f64,
    pub beta: f64,
    /// `lambda` on the voltage branches, `lambda I^2` on the current branch.
    pub forcing: f64,
    pub branch: Branch,
}

impl RadialSteadyState {
    pub(crate) fn from_log_c(s: f64, beta: f64, forcing: f64, branch: Branch) -> Self {
        let c = (-s).exp();
        Self {
            c,
            b: 0.5 * beta * c * s,
            beta,
            forcing,
            branch,
        }
    }

    /// Temperature on the axis.
    pub fn center_theta(&self) -> f64 {
        -2.0 * (self.c - self.b).ln()
    }

    /// Temperature on the outer surface, `-2 ln c`.
    pub fn surface_theta(&self) -> f64 {
        -2.0 * self.c.ln()
    }

    /// `d theta / dr` at radius `r`.
    pub fn slope(&self, r: f64) -> f64 {
        -4.0 * self.b * r / (self.c - self.b + self.b * r * r)
    }
}

impl SteadyProfile for RadialSteadyState {
    fn domain(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn theta_unchecked(&self, r: f64) -> f64 {
        -2.0 * (self.c - self.b + self.b * r * r).ln()
    }
}

pub(crate) fn voltage_forcing(s: f64, beta: f64) -> f64 {
    4.0 * beta * (-2.0 * s).exp() * s * (1.0 - 0.5 * beta * s)
}

fn voltage_log_slope(s: f64, beta: f64) -> f64 {
    1.0 / s - 2.0 - 0.5 * beta / (1.0 - 0.5 * beta * s)
}

pub(crate) fn current_forcing(s: f64, beta: f64) -> f64 {
    let gap = 1.0 - 0.5 * beta * s;
    if gap <= 0.0 {
        return f64::INFINITY;
    }
    4.0 * beta * s * (2.0 * s).exp() / gap
}

/// Maximizer `s*` of the voltage relation and the fold value `lambda_c`.
fn fold(beta: f64) -> (f64, f64) {
    let s_max = 2.0 / beta;
    let s_star =
        unimodal_argmax(0.0, s_max, |s| voltage_log_slope(s, beta)).expect("log-slope changes sign on (0, 2/beta)");
    (s_star, voltage_forcing(s_star, beta))
}

/// Critical heating above which the voltage-controlled radial problem has no
/// steady state.
///
/// Tends to 2 for strong cooling and to `2 beta / e` for weak cooling.
/// `beta = 0` is reported as [`SteadyError::InsulatedBoundary`].
pub fn radial_critical_lambda(beta: f64) -> Result<f64, SteadyError> {
    require_cooling("beta", beta)?;
    if beta.is_infinite() {
        return Err(SteadyError::InvalidParameter {
            name: "beta",
            constraint: "a finite value",
            value: beta,
        });
    }
    Ok(fold(beta).1)
}

/// All steady states of the voltage-controlled radial problem.
///
/// Two states below the fold (stable first), one at the fold (within a
/// relative 1e-12), none above it. An empty vector means no steady state.
pub fn radial_steady_voltage(lambda: f64, beta: f64) -> Result<Vec<RadialSteadyState>, SteadyError> {
    require_non_negative("lambda", lambda)?;
    require_positive("beta", beta)?;
    if lambda == 0.0 {
        return Ok(vec![RadialSteadyState {
            c: 1.0,
            b: 0.0,
            beta,
            forcing: 0.0,
            branch: Branch::Stable,
        }]);
    }
    let (s_star, lambda_c) = fold(beta);
    if (lambda - lambda_c).abs() <= 1e-12 * lambda_c {
        return Ok(vec![RadialSteadyState::from_log_c(
            s_star,
            beta,
            lambda,
            Branch::Stable,
        )]);
    }
    if lambda > lambda_c {
        return Ok(Vec::new());
    }
    let residual = |s: f64| voltage_forcing(s, beta) - lambda;
    let small = bisect(0.0, s_star, residual).ok_or(SteadyError::NotBracketed {
        relation: "radial voltage",
        forcing: lambda,
    })?;
    let large = bisect(s_star, 2.0 / beta, residual).ok_or(SteadyError::NotBracketed {
        relation: "radial voltage",
        forcing: lambda,
    })?;
    Ok(vec![
        RadialSteadyState::from_log_c(small, beta, lambda, Branch::Stable),
        RadialSteadyState::from_log_c(large, beta, lambda, Branch::Unstable),
    ])
}

/// The unique steady state of the current-controlled radial problem with
/// forcing `lambda I^2`.
pub fn radial_steady_current(lambda_i2: f64, beta: f64) -> Result<RadialSteadyState, SteadyError> {
    require_positive("lambdaI2", lambda_i2)?;
    require_positive("beta", beta)?;
    let s_max = 2.0 / beta;
    let s = bisect(0.0, s_max, |s| current_forcing(s, beta) - lambda_i2).ok_or(SteadyError::NotBracketed {
        relation: "radial current",
        forcing: lambda_i2,
    })?;
    Ok(RadialSteadyState::from_log_c(
        s,
        beta,
        lambda_i2,
        Branch::CurrentControlled,
    ))
}
