//! Axial model (insulated sides).
//!
//! Steady states are `theta(z) = 2 ln(cos(a z) / cos(a/2)) + b` on
//! `[-1/2, 1/2]` with `b = (2a/alpha) tan(a/2)` and `0 < a < pi`.
//!
//! * voltage control: `Lambda = 8 e^{-b} sin^2(a/2)`;
//! * current control: `Lambda I^2 = 2 a^2 e^b / cos^2(a/2)`, increasing from
//!   0 to infinity.
//!
//! `alpha = f64::INFINITY` is the Dirichlet limit `b = 0`, where the voltage
//! relation increases monotonically to its supremum 8 and has one root below it.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{require_cooling, require_non_negative, require_positive, Branch, SteadyError, SteadyProfile};
use crate::numerics::{bisect, unimodal_argmax};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxialSteadyState {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    /// `Lambda` on the voltage branches, `Lambda I^2` on the current branch.
    pub forcing: f64,
    pub branch: Branch,
}

impl AxialSteadyState {
    pub(crate) fn from_a(a: f64, alpha: f64, forcing: f64, branch: Branch) -> Self {
        Self {
            a,
            b: end_value(a, alpha),
            alpha,
            forcing,
            branch,
        }
    }

    /// Temperature at the midpoint `z = 0`.
    pub fn center_theta(&self) -> f64 {
        self.b - 2.0 * (0.5 * self.a).cos().ln()
    }

    /// Temperature at the electrodes `z = +-1/2`.
    pub fn end_theta(&self) -> f64 {
        self.b
    }

    /// `d theta / dz` at `z`.
    pub fn slope(&self, z: f64) -> f64 {
        -2.0 * self.a * (self.a * z).tan()
    }

    /// `int_{-1/2}^{1/2} e^{-theta} dz`.
    pub fn resistance_integral(&self) -> f64 {
        if self.a == 0.0 {
            return (-self.b).exp();
        }
        let half = 0.5 * self.a;
        (-self.b).exp() * half.cos().powi(2) * 2.0 * half.tan() / self.a
    }
}

impl SteadyProfile for AxialSteadyState {
    fn domain(&self) -> (f64, f64) {
        (-0.5, 0.5)
    }

    fn theta_unchecked(&self, z: f64) -> f64 {
        2.0 * ((self.a * z).cos() / (0.5 * self.a).cos()).ln() + self.b
    }
}

pub(crate) fn end_value(a: f64, alpha: f64) -> f64 {
    if alpha.is_infinite() || a == 0.0 {
        0.0
    } else {
        2.0 * a / alpha * (0.5 * a).tan()
    }
}

pub(crate) fn voltage_forcing(a: f64, alpha: f64) -> f64 {
    8.0 * (-end_value(a, alpha)).exp() * (0.5 * a).sin().powi(2)
}

fn voltage_log_slope(a: f64, alpha: f64) -> f64 {
    let half = 0.5 * a;
    let cot = 1.0 / half.tan();
    if alpha.is_infinite() {
        return cot;
    }
    cot - (2.0 / alpha) * half.tan() - (a / alpha) / half.cos().powi(2)
}

pub(crate) fn current_forcing(a: f64, alpha: f64) -> f64 {
    let cos_half = (0.5 * a).cos();
    if cos_half <= 0.0 {
        return f64::INFINITY;
    }
    2.0 * a * a * end_value(a, alpha).exp() / (cos_half * cos_half)
}

fn check_alpha(alpha: f64) -> Result<(), SteadyError> {
    require_positive("alpha", alpha)
}

/// Critical rescaled heating `Lambda_c(alpha)` of the voltage-controlled axial
/// problem. Equals 8 for `alpha = infinity`; tends to `2 alpha / e` for weak
/// electrode cooling. `alpha = 0` is reported as
/// [`SteadyError::InsulatedBoundary`].
pub fn axial_critical_lambda(alpha: f64) -> Result<f64, SteadyError> {
    require_cooling("alpha", alpha)?;
    if alpha.is_infinite() {
        return Ok(8.0);
    }
    Ok(fold(alpha).1)
}

fn fold(alpha: f64) -> (f64, f64) {
    let a_star = unimodal_argmax(0.0, PI, |a| voltage_log_slope(a, alpha)).expect("log-slope changes sign on (0, pi)");
    (a_star, voltage_forcing(a_star, alpha))
}

/// All steady states of the voltage-controlled axial problem with
/// `Lambda = lambda / delta^2`.
///
/// Two states below the fold (stable first), one at the fold, none above.
/// With `alpha = infinity` there is a single state for `Lambda < 8`.
pub fn axial_steady_voltage(lambda_big: f64, alpha: f64) -> Result<Vec<AxialSteadyState>, SteadyError> {
    require_non_negative("Lambda", lambda_big)?;
    check_alpha(alpha)?;
    if lambda_big == 0.0 {
        return Ok(vec![AxialSteadyState::from_a(0.0, alpha, 0.0, Branch::Stable)]);
    }
    if alpha.is_infinite() {
        if lambda_big >= 8.0 {
            return Ok(Vec::new());
        }
        let a = 2.0 * (lambda_big / 8.0).sqrt().asin();
        return Ok(vec![AxialSteadyState::from_a(a, alpha, lambda_big, Branch::Stable)]);
    }
    let (a_star, lambda_c) = fold(alpha);
    if (lambda_big - lambda_c).abs() <= 1e-12 * lambda_c {
        return Ok(vec![AxialSteadyState::from_a(
            a_star,
            alpha,
            lambda_big,
            Branch::Stable,
        )]);
    }
    if lambda_big > lambda_c {
        return Ok(Vec::new());
    }
    let residual = |a: f64| voltage_forcing(a, alpha) - lambda_big;
    let not_bracketed = SteadyError::NotBracketed {
        relation: "axial voltage",
        forcing: lambda_big,
    };
    let small = bisect(0.0, a_star, residual).ok_or(not_bracketed.clone())?;
    let large = bisect(a_star, PI, residual).ok_or(not_bracketed)?;
    Ok(vec![
        AxialSteadyState::from_a(small, alpha, lambda_big, Branch::Stable),
        AxialSteadyState::from_a(large, alpha, lambda_big, Branch::Unstable),
    ])
}

/// The unique steady state of the current-controlled axial problem with
/// forcing `Lambda I^2 = lambda I^2 / delta^2`.
pub fn axial_steady_current(lambda_i2: f64, alpha: f64) -> Result<AxialSteadyState, SteadyError> {
    require_positive("LambdaI2", lambda_i2)?;
    check_alpha(alpha)?;
    let a = bisect(0.0, PI, |a| current_forcing(a, alpha) - lambda_i2).ok_or(SteadyError::NotBracketed {
        relation: "axial current",
        forcing: lambda_i2,
    })?;
    Ok(AxialSteadyState::from_a(a, alpha, lambda_i2, Branch::CurrentControlled))
}
