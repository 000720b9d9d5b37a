//! Dimensional flash criterion and regime diagrams over furnace temperature
//! and field strength.
//!
//! Flash is predicted when
//!
//! ```text
//! (R^2 A E / (k R_g T^2)) (V/L)^2 exp(-E / (R_g T))  >  lambda_c(beta(T)),
//! beta(T) = (R h_s + 4 R eps S T^3) / k,
//! ```
//!
//! i.e. when the heating group evaluated at the furnace temperature exceeds
//! the fold of the radial model. The left side is quadratic in the field, so
//! the critical field has the closed form
//! `E* = sqrt(lambda_c k R_g T^2 / (R^2 A E)) exp(E / (2 R_g T))`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{DimensionalParameters, ModelError};
use crate::steady::{radial_critical_lambda, SteadyError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegimeError {
    #[error("invalid input `{field}`: must satisfy {constraint} (got {value})")]
    InvalidInput {
        field: &'static str,
        constraint: &'static str,
        value: f64,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Steady(#[from] SteadyError),
}

/// Which critical value the heating group is compared with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlashCriterion {
    /// Fold of the radial (insulated-electrode) model.
    #[default]
    Radial,
    /// Tangency threshold `(2/e)(beta + delta^2 alpha)` of the lumped model.
    Lumped,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlashEvaluation {
    pub flash: bool,
    /// Heating group at the furnace temperature.
    pub lhs: f64,
    /// Critical heating for the side cooling at that temperature.
    pub rhs: f64,
    pub beta: f64,
}

fn require_positive(field: &'static str, value: f64) -> Result<(), RegimeError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(RegimeError::InvalidInput {
            field,
            constraint: "a finite value > 0",
            value,
        })
    }
}

fn side_cooling(p: &DimensionalParameters, t: f64) -> f64 {
    let r = p.radius_r;
    (r * p.h_side + 4.0 * r * p.emissivity * p.stefan_boltzmann * t.powi(3)) / p.k_thermal
}

/// `lambda / (V/L)^2` at furnace temperature `t`.
fn heating_per_field_squared(p: &DimensionalParameters, t: f64) -> f64 {
    let r = p.radius_r;
    let rg_t = p.gas_constant * t;
    r * r * p.arrhenius_a * p.activation_e / (p.k_thermal * rg_t * t) * (-p.activation_e / rg_t).exp()
}

fn threshold(p: &DimensionalParameters, t: f64, criterion: FlashCriterion) -> Result<(f64, f64), RegimeError> {
    let beta = side_cooling(p, t);
    let rhs = match criterion {
        FlashCriterion::Radial => radial_critical_lambda(beta)?,
        FlashCriterion::Lumped => {
            let delta = p.radius_r / p.length_l;
            let alpha = p.h_electrode * p.length_l / p.k_thermal;
            2.0 / std::f64::consts::E * (beta + delta * delta * alpha)
        }
    };
    Ok((beta, rhs))
}

fn evaluate(
    p: &DimensionalParameters,
    t_furnace: f64,
    field: f64,
    criterion: FlashCriterion,
) -> Result<FlashEvaluation, RegimeError> {
    p.validate()?;
    require_positive("T_furnace", t_furnace)?;
    if !(field >= 0.0 && field.is_finite()) {
        return Err(RegimeError::InvalidInput {
            field: "field",
            constraint: "a finite value >= 0",
            value: field,
        });
    }
    let lhs = heating_per_field_squared(p, t_furnace) * field * field;
    let (beta, rhs) = threshold(p, t_furnace, criterion)?;
    Ok(FlashEvaluation {
        flash: lhs > rhs,
        lhs,
        rhs,
        beta,
    })
}

/// Radial flash criterion at furnace temperature `t_furnace` (K) and field
/// `field` (V/m). The furnace temperature and voltage stored in `p` are not
/// used.
pub fn flash_condition(p: &DimensionalParameters, t_furnace: f64, field: f64) -> Result<FlashEvaluation, RegimeError> {
    evaluate(p, t_furnace, field, FlashCriterion::Radial)
}

/// Same comparison against the lumped tangency threshold.
pub fn lumped_flash_condition(
    p: &DimensionalParameters,
    t_furnace: f64,
    field: f64,
) -> Result<FlashEvaluation, RegimeError> {
    evaluate(p, t_furnace, field, FlashCriterion::Lumped)
}

/// Field (V/m) above which the criterion predicts flash at `t_furnace`.
pub fn critical_field_with(
    p: &DimensionalParameters,
    t_furnace: f64,
    criterion: FlashCriterion,
) -> Result<f64, RegimeError> {
    p.validate()?;
    require_positive("T_furnace", t_furnace)?;
    let (_, rhs) = threshold(p, t_furnace, criterion)?;
    let rg_t = p.gas_constant * t_furnace;
    let r = p.radius_r;
    Ok(
        (rhs * p.k_thermal * rg_t * t_furnace / (r * r * p.arrhenius_a * p.activation_e)).sqrt()
            * (p.activation_e / (2.0 * rg_t)).exp(),
    )
}

/// Radial critical field (V/m) at `t_furnace`.
pub fn critical_field(p: &DimensionalParameters, t_furnace: f64) -> Result<f64, RegimeError> {
    critical_field_with(p, t_furnace, FlashCriterion::Radial)
}

/// Flash classification on a temperature x field grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeGrid {
    /// Furnace temperatures, K (uniform).
    #[serde(rename = "T_values")]
    pub t_values: Vec<f64>,
    /// Fields, V/m (log-uniform).
    #[serde(rename = "E_values")]
    pub e_values: Vec<f64>,
    /// `flash[i][j]` for `t_values[i]`, `e_values[j]`.
    pub flash: Vec<Vec<bool>>,
    /// Critical field at each temperature, V/m.
    pub boundary: Vec<f64>,
    pub criterion: FlashCriterion,
}

/// Relative width at which the boundary bisection stops.
const BOUNDARY_REL_TOL: f64 = 1e-9;

/// Bisection in `ln E` on the flash flag, starting from `[lo, hi]` and
/// widening the bracket geometrically if needed.
fn boundary_by_bisection(
    p: &DimensionalParameters,
    t: f64,
    mut lo: f64,
    mut hi: f64,
    criterion: FlashCriterion,
) -> Result<f64, RegimeError> {
    let flash = |e: f64| evaluate(p, t, e, criterion).map(|r| r.flash);
    let mut widenings = 0;
    while flash(lo)? {
        lo /= 10.0;
        widenings += 1;
        if widenings > 300 {
            return Ok(0.0);
        }
    }
    while !flash(hi)? {
        hi *= 10.0;
        widenings += 1;
        if widenings > 300 || !hi.is_finite() {
            return Ok(f64::INFINITY);
        }
    }
    while hi - lo > BOUNDARY_REL_TOL * hi {
        let mid = (lo * hi).sqrt();
        if mid <= lo || mid >= hi {
            break;
        }
        if flash(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo * hi).sqrt())
}

/// Classifies `n_t x n_e` points with `T` uniform on `t_range` and the field
/// log-uniform on `e_range`, and locates the boundary field at each `T` by
/// bisection on the flash flag. Rows are evaluated in parallel.
pub fn regime_diagram(
    p: &DimensionalParameters,
    t_range: (f64, f64),
    e_range: (f64, f64),
    resolution: (usize, usize),
    criterion: FlashCriterion,
) -> Result<RegimeGrid, RegimeError> {
    p.validate()?;
    require_positive("T_min", t_range.0)?;
    require_positive("T_max", t_range.1)?;
    require_positive("E_min", e_range.0)?;
    require_positive("E_max", e_range.1)?;
    let (n_t, n_e) = resolution;
    for (field, n) in [("T resolution", n_t), ("E resolution", n_e)] {
        if n < 2 {
            return Err(RegimeError::InvalidInput {
                field,
                constraint: "resolution >= 2",
                value: n as f64,
            });
        }
    }
    if t_range.1 < t_range.0 || e_range.1 < e_range.0 {
        return Err(RegimeError::InvalidInput {
            field: "range",
            constraint: "min <= max",
            value: t_range.1.min(e_range.1),
        });
    }
    let t_values: Vec<f64> = (0..n_t)
        .map(|i| t_range.0 + (t_range.1 - t_range.0) * i as f64 / (n_t - 1) as f64)
        .collect();
    let (ln_lo, ln_hi) = (e_range.0.ln(), e_range.1.ln());
    let e_values: Vec<f64> = (0..n_e)
        .map(|j| {
            if j == 0 {
                e_range.0
            } else if j == n_e - 1 {
                e_range.1
            } else {
                (ln_lo + (ln_hi - ln_lo) * j as f64 / (n_e - 1) as f64).exp()
            }
        })
        .collect();

    let rows: Result<Vec<(Vec<bool>, f64)>, RegimeError> = t_values
        .par_iter()
        .map(|&t| {
            let flags = e_values
                .iter()
                .map(|&e| evaluate(p, t, e, criterion).map(|r| r.flash))
                .collect::<Result<Vec<_>, _>>()?;
            let boundary = boundary_by_bisection(p, t, e_range.0, e_range.1, criterion)?;
            Ok((flags, boundary))
        })
        .collect();
    let (flash, boundary) = rows?.into_iter().unzip();
    Ok(RegimeGrid {
        t_values,
        e_values,
        flash,
        boundary,
        criterion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn table1_operating_point_flashes() {
        let p = DimensionalParameters::table1();
        let r = flash_condition(&p, 1110.0, 3e4).unwrap();
        assert!(r.flash);
        assert!((r.lhs - 0.104).abs() < 1e-3, "{}", r.lhs);
        assert!((r.rhs - 0.0898).abs() < 5e-4, "{}", r.rhs);
    }

    #[test]
    fn zero_field_never_flashes() {
        let p = DimensionalParameters::table1();
        for t in [600.0, 1110.0, 2000.0] {
            let r = flash_condition(&p, t, 0.0).unwrap();
            assert!(!r.flash);
            assert_eq!(r.lhs, 0.0);
        }
    }

    #[test]
    fn critical_field_flips_the_flag() {
        let p = DimensionalParameters::table1();
        for t in [900.0, 1110.0, 1400.0] {
            let e = critical_field(&p, t).unwrap();
            assert!(!flash_condition(&p, t, e * (1.0 - 1e-6)).unwrap().flash);
            assert!(flash_condition(&p, t, e * (1.0 + 1e-6)).unwrap().flash);
        }
    }

    #[test]
    fn critical_field_scales_with_heating_ratio() {
        let p = DimensionalParameters::table1();
        let lhs = flash_condition(&p, 1110.0, 3e4).unwrap();
        let want = 3e4 * (lhs.rhs / lhs.lhs).sqrt();
        assert_relative_eq!(critical_field(&p, 1110.0).unwrap(), want, max_relative = 1e-12);
    }

    #[test]
    fn larger_radius_lowers_critical_field() {
        let p = DimensionalParameters::table1();
        let mut wide = p;
        wide.radius_r *= 2.0;
        assert!(critical_field(&wide, 1110.0).unwrap() < critical_field(&p, 1110.0).unwrap());
    }

    #[test]
    fn boundary_matches_closed_form() {
        let p = DimensionalParameters::table1();
        let g = regime_diagram(&p, (900.0, 1400.0), (1e3, 1e5), (6, 9), FlashCriterion::Radial).unwrap();
        for (t, b) in g.t_values.iter().zip(&g.boundary) {
            assert_relative_eq!(*b, critical_field(&p, *t).unwrap(), max_relative = 1e-6);
        }
        for (row, b) in g.flash.iter().zip(&g.boundary) {
            for (f, e) in row.iter().zip(&g.e_values) {
                assert_eq!(*f, e > b);
            }
        }
    }

    #[test]
    fn lumped_alternative_uses_tangency_threshold() {
        let p = DimensionalParameters::table1();
        let r = lumped_flash_condition(&p, 1110.0, 3e4).unwrap();
        let want = 2.0 / std::f64::consts::E * (r.beta + 0.15f64.powi(2) * 10.0 * 0.01 / 2.7);
        assert_relative_eq!(r.rhs, want, max_relative = 1e-12);
    }

    #[test]
    fn degenerate_grid_is_four_evaluations() {
        let p = DimensionalParameters::table1();
        let g = regime_diagram(&p, (1000.0, 1200.0), (1e4, 5e4), (2, 2), FlashCriterion::Radial).unwrap();
        for (i, t) in g.t_values.iter().enumerate() {
            for (j, e) in g.e_values.iter().enumerate() {
                assert_eq!(g.flash[i][j], flash_condition(&p, *t, *e).unwrap().flash);
            }
        }
    }
}
