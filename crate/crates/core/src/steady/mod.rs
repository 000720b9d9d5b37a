//! Exact steady states, fold (critical) values and flash criteria of the
//! reduced models.
//!
//! * radial: insulated electrodes, temperature varies across the radius only;
//! * axial: insulated sides, temperature varies along the axis only;
//! * lumped: spatially uniform heat balance;
//! * high aspect: slender sample with side losses folded into a linear sink.
//!
//! The radial and axial families are parametrized by the closed-form
//! solutions `theta(r) = -2 ln(c - b + b r^2)` and
//! `theta(z) = 2 ln(cos(a z) / cos(a/2)) + b`. Roots of the parameter relations
//! are found by bisection run to machine precision; the voltage relations are
//! unimodal and are split at their maximizer, which is located by bisection on
//! the (strictly decreasing) logarithmic derivative.

mod axial;
mod high_aspect;
mod lumped;
mod radial;

pub use axial::{axial_critical_lambda, axial_steady_current, axial_steady_voltage, AxialSteadyState};
pub use high_aspect::{high_aspect_critical, HighAspectFold};
pub use lumped::{lumped_current_equilibrium, lumped_flash_criterion, lumped_voltage_equilibrium, LumpedCriterion};
pub use radial::{radial_critical_lambda, radial_steady_current, radial_steady_voltage, RadialSteadyState};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SteadyError {
    #[error("invalid parameter `{name}`: must satisfy {constraint} (got {value})")]
    InvalidParameter {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },
    /// Zero cooling with positive heating: no steady state exists for any
    /// positive forcing, so the critical value is zero.
    #[error("no steady state for any positive heating: `{name}` = 0 means the boundary is insulated")]
    InsulatedBoundary { name: &'static str },
    #[error("root of the {relation} relation is not bracketed (forcing {forcing})")]
    NotBracketed { relation: &'static str, forcing: f64 },
    #[error("coordinate {coord} outside [{lo}, {hi}]")]
    CoordinateOutOfDomain { coord: f64, lo: f64, hi: f64 },
    #[error(
        "fold continuation failed at center temperature {center_theta}: {reason} \
         (last converged Lambda = {last_lambda})"
    )]
    ContinuationFailed {
        reason: &'static str,
        center_theta: f64,
        last_lambda: f64,
    },
}

/// Which part of the solution family a steady state belongs to.
///
/// Under voltage control the smaller-amplitude root is labeled stable and the
/// other unstable; no stability computation is performed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Stable,
    Unstable,
    CurrentControlled,
}

/// A closed-form steady temperature profile on a one-dimensional domain.
pub trait SteadyProfile {
    /// Closed interval on which the profile is defined.
    fn domain(&self) -> (f64, f64);

    /// Profile value; callers are responsible for the domain check.
    fn theta_unchecked(&self, x: f64) -> f64;

    fn theta(&self, x: f64) -> Result<f64, SteadyError> {
        let (lo, hi) = self.domain();
        if !(x >= lo && x <= hi) {
            return Err(SteadyError::CoordinateOutOfDomain { coord: x, lo, hi });
        }
        Ok(self.theta_unchecked(x))
    }
}

/// Evaluates a steady profile at each coordinate.
pub fn evaluate_profile<P: SteadyProfile + ?Sized>(state: &P, coords: &[f64]) -> Result<Vec<f64>, SteadyError> {
    coords.iter().map(|&x| state.theta(x)).collect()
}

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<(), SteadyError> {
    if value > 0.0 && !value.is_nan() {
        Ok(())
    } else {
        Err(SteadyError::InvalidParameter {
            name,
            constraint: "a value > 0",
            value,
        })
    }
}

pub(crate) fn require_non_negative(name: &'static str, value: f64) -> Result<(), SteadyError> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(SteadyError::InvalidParameter {
            name,
            constraint: "a finite value >= 0",
            value,
        })
    }
}

/// Cooling parameter check for the critical-curve operations: zero cooling is
/// the flagged insulated case.
pub(crate) fn require_cooling(name: &'static str, value: f64) -> Result<(), SteadyError> {
    if value == 0.0 {
        return Err(SteadyError::InsulatedBoundary { name });
    }
    require_positive(name, value)
}
