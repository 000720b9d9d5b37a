//! Lumped (spatially uniform) heat balance `d theta/dt = f(theta) - g(theta)`
//! with `g = 2 (beta + delta^2 alpha) theta`.
//!
//! Under voltage control `f = lambda V^2 e^theta`; the curves `f` and `g` stop
//! intersecting once they touch, at `theta = 1`, which gives the flash
//! threshold `lambda = (2/e)(beta + delta^2 alpha)`. Under current control
//! `f = lambda I^2 e^{-theta}` and there is always exactly one equilibrium.

use serde::{Deserialize, Serialize};

use super::{require_non_negative, require_positive, SteadyError};
use crate::model::DimensionlessGroups;
use crate::numerics::bisect;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LumpedCriterion {
    pub flash: bool,
    /// `lambda - threshold`; positive means flash.
    pub margin: f64,
    /// `(2/e)(beta + delta^2 alpha)`.
    pub threshold: f64,
}

pub fn lumped_flash_criterion(groups: &DimensionlessGroups) -> LumpedCriterion {
    let threshold = 2.0 / std::f64::consts::E * groups.bulk_cooling();
    let margin = groups.lambda - threshold;
    LumpedCriterion {
        flash: margin > 0.0,
        margin,
        threshold,
    }
}

/// Equilibria of `forcing e^theta = 2 cooling theta`, smallest first.
///
/// `forcing` is `lambda V^2`, `cooling` is `beta + delta^2 alpha`. Two roots
/// below the tangency, one at it, none above (or with zero cooling).
pub fn lumped_voltage_equilibrium(forcing: f64, cooling: f64) -> Result<Vec<f64>, SteadyError> {
    require_non_negative("lambda", forcing)?;
    require_non_negative("cooling", cooling)?;
    if forcing == 0.0 {
        return Ok(vec![0.0]);
    }
    if cooling == 0.0 {
        return Ok(Vec::new());
    }
    let g = 2.0 * cooling;
    // The net rate forcing e^theta - g theta is convex with its minimum here.
    let theta_min = (g / forcing).ln();
    let net = |t: f64| forcing * t.exp() - g * t;
    let at_min = net(theta_min);
    if at_min > 0.0 {
        return Ok(Vec::new());
    }
    if at_min.abs() <= 1e-14 * forcing * theta_min.exp() {
        return Ok(vec![theta_min]);
    }
    let lower = bisect(0.0, theta_min, net).ok_or(SteadyError::NotBracketed {
        relation: "lumped voltage",
        forcing,
    })?;
    let mut hi = theta_min + 1.0;
    while net(hi) <= 0.0 {
        hi = theta_min + 2.0 * (hi - theta_min);
    }
    let upper = bisect(theta_min, hi, net).ok_or(SteadyError::NotBracketed {
        relation: "lumped voltage",
        forcing,
    })?;
    Ok(vec![lower, upper])
}

/// The unique root of `forcing e^{-theta} = 2 cooling theta` with
/// `forcing = lambda I^2`.
pub fn lumped_current_equilibrium(forcing: f64, cooling: f64) -> Result<f64, SteadyError> {
    require_non_negative("lambdaI2", forcing)?;
    if cooling == 0.0 {
        return Err(SteadyError::InsulatedBoundary { name: "cooling" });
    }
    require_positive("cooling", cooling)?;
    let g = 2.0 * cooling;
    if forcing == 0.0 {
        return Ok(0.0);
    }
    // theta <= forcing / g since e^{-theta} <= 1.
    bisect(0.0, forcing / g, |t| forcing * (-t).exp() - g * t).ok_or(SteadyError::NotBracketed {
        relation: "lumped current",
        forcing,
    })
}
