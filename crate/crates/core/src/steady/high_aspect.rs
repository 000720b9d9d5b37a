//! Fold of the slender (high-aspect) steady problem
//!
//! ```text
//! theta'' + Lambda e^{-theta} / J^2 - B theta = 0,   J = int_{-1/2}^{1/2} e^{-theta} dz,
//! theta'(+-1/2) = -+ alpha theta(+-1/2).
//! ```
//!
//! Symmetric solutions are parametrized by their center value `theta0`. Writing
//! `mu = Lambda / J^2`, the local problem `theta'' = B theta - mu e^{-theta}`,
//! `theta(0) = theta0`, `theta'(0) = 0` is shot to `z = 1/2`. The end residual
//! `theta'(1/2) + alpha theta(1/2)` is strictly decreasing in `mu` (a larger
//! `mu` bends the trajectory down everywhere), so `mu` is found by bisection
//! and the nonlocal integral is then evaluated directly: `Lambda = mu J^2`.
//! The fold is the maximum of `Lambda(theta0)`.

use serde::{Deserialize, Serialize};

use super::{require_non_negative, SteadyError};
use crate::numerics::{bisect, golden_section_max, rk4_second_order, simpson_weights};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HighAspectFold {
    /// Critical rescaled heating above which no steady state exists.
    pub lambda_c: f64,
    /// Center temperature of the steady state at the fold.
    pub center_theta: f64,
}

const THETA0_START: f64 = 0.05;
const THETA0_STEP: f64 = 0.1;
const THETA0_MAX: f64 = 40.0;
const MAX_STEPS: usize = 64_000;

#[derive(Clone, Copy)]
struct Shooter {
    alpha: f64,
    b: f64,
    steps: usize,
}

impl Shooter {
    fn new(alpha: f64, b: f64) -> Self {
        // Resolve the boundary layer of width 1/sqrt(B).
        let layer = (400.0 * b.sqrt()).ceil() as usize;
        let steps = 2000usize.max(layer);
        Self {
            alpha,
            b,
            steps: steps + steps % 4,
        }
    }

    fn coarsened(&self) -> Self {
        Self {
            steps: self.steps / 2,
            ..*self
        }
    }

    /// Sign-definite end residual for given `theta0` and `mu`.
    fn residual(&self, theta0: f64, mu: f64) -> f64 {
        let b = self.b;
        let mut sunk = false;
        let (y, dy) = rk4_second_order(
            theta0,
            0.0,
            0.5,
            self.steps,
            |t| b * t - mu * (-t).exp(),
            |_, y, dy| {
                // Once negative and falling the trajectory keeps falling.
                sunk = y < 0.0 && dy < 0.0;
                !sunk && y.is_finite()
            },
        );
        if sunk {
            return -1.0;
        }
        if self.alpha.is_infinite() {
            y
        } else {
            dy + self.alpha * y
        }
    }

    /// `(Lambda, mu)` on the solution branch with center value `theta0`.
    fn lambda_at(&self, theta0: f64, last_lambda: f64) -> Result<(f64, f64), SteadyError> {
        let fail = |reason| SteadyError::ContinuationFailed {
            reason,
            center_theta: theta0,
            last_lambda,
        };
        let mut hi = theta0.exp().max(1.0);
        while self.residual(theta0, hi) >= 0.0 {
            hi *= 2.0;
            if !hi.is_finite() || hi > 1e300 {
                return Err(fail("no heating strength bends the profile to the boundary condition"));
            }
        }
        let mu =
            bisect(0.0, hi, |m| self.residual(theta0, m)).ok_or_else(|| fail("shooting residual is not bracketed"))?;
        let mut profile = Vec::with_capacity(self.steps + 1);
        profile.push((-theta0).exp());
        let b = self.b;
        rk4_second_order(
            theta0,
            0.0,
            0.5,
            self.steps,
            |t| b * t - mu * (-t).exp(),
            |_, y, _| {
                profile.push((-y).exp());
                true
            },
        );
        if profile.len() != self.steps + 1 {
            return Err(fail("shooting trajectory terminated early"));
        }
        let w = simpson_weights(self.steps, 0.5 / self.steps as f64);
        let half: f64 = w.iter().zip(&profile).map(|(w, e)| w * e).sum();
        let j = 2.0 * half;
        let lambda = mu * j * j;
        if !lambda.is_finite() {
            return Err(fail("non-finite Lambda"));
        }
        Ok((lambda, mu))
    }
}

/// Critical `Lambda` of the slender model for electrode cooling `alpha`
/// (`f64::INFINITY` allowed) and side cooling `b` (the rescaled `B`).
///
/// Reduces to the axial fold for `b = 0` and approaches `b / e` when `b` is
/// large. With `alpha = b = 0` the result is
/// [`SteadyError::InsulatedBoundary`]. If `Lambda(theta0)` is still rising at
/// the largest traced center value, the supremum seen there is returned.
pub fn high_aspect_critical(alpha: f64, b: f64) -> Result<HighAspectFold, SteadyError> {
    if !(alpha >= 0.0) {
        return Err(SteadyError::InvalidParameter {
            name: "alpha",
            constraint: "a value >= 0 or infinity",
            value: alpha,
        });
    }
    require_non_negative("B", b)?;
    if alpha == 0.0 && b == 0.0 {
        return Err(SteadyError::InsulatedBoundary { name: "alpha" });
    }
    let mut shooter = Shooter::new(alpha, b);

    let mut trace: Vec<(f64, f64)> = Vec::new();
    let mut last_lambda = 0.0;
    let mut theta0 = THETA0_START;
    while theta0 <= THETA0_MAX {
        // Large center values make the profile steep near the ends; refine
        // until halving the step no longer visibly changes Lambda.
        let (lambda, _) = shooter.lambda_at(theta0, last_lambda)?;
        let (check, _) = shooter.coarsened().lambda_at(theta0, last_lambda)?;
        if (check - lambda).abs() > 1e-7 * lambda {
            if shooter.steps >= MAX_STEPS {
                log::debug!("high-aspect trace unresolved at theta0 = {theta0}");
                break;
            }
            shooter.steps *= 2;
            continue;
        }
        trace.push((theta0, lambda));
        last_lambda = lambda;
        let n = trace.len();
        if n >= 3 && trace[n - 1].1 < trace[n - 2].1 && trace[n - 2].1 < trace[n - 3].1 {
            break;
        }
        theta0 += THETA0_STEP * (1.0 + theta0 / 10.0);
    }

    if trace.is_empty() {
        return Err(SteadyError::ContinuationFailed {
            reason: "shooting is unresolved at the first center value",
            center_theta: THETA0_START,
            last_lambda: 0.0,
        });
    }
    let (k, _) = trace.iter().enumerate().fold(
        (0, f64::NEG_INFINITY),
        |best, (i, &(_, l))| if l > best.1 { (i, l) } else { best },
    );
    if k + 1 == trace.len() {
        let (center_theta, lambda_c) = trace[k];
        log::debug!("high-aspect fold not reached by theta0 = {center_theta}; returning supremum");
        return Ok(HighAspectFold { lambda_c, center_theta });
    }
    let lo = if k == 0 { 0.5 * trace[0].0 } else { trace[k - 1].0 };
    let hi = trace[k + 1].0;
    let (center_theta, lambda_c) =
        golden_section_max(lo, hi, 1e-7, |t| shooter.lambda_at(t, last_lambda).map(|r| r.0))?;
    Ok(HighAspectFold {
        lambda_c: lambda_c.max(trace[k].1),
        center_theta,
    })
}
