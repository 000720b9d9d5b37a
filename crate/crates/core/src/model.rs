//! Physical parameters, scalings and the conductivity laws.
//!
//! All quantities are SI. The reference temperature of the scaling is always
//! the furnace temperature.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter `{field}`: must satisfy {constraint} (got {value})")]
    InvalidParameter {
        field: &'static str,
        constraint: &'static str,
        value: f64,
    },
    #[error("{what} outside the domain of the conductivity law (got {value})")]
    Domain { what: &'static str, value: f64 },
}

/// Material constants and operating conditions of a cylindrical sample.
///
/// The serialized form is a flat key/value table whose keys are exactly the
/// field names used in scenario files (`arrhenius_A`, `T_furnace`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimensionalParameters {
    /// Density, kg m^-3.
    pub rho: f64,
    /// Specific heat, J kg^-1 K^-1.
    pub c_heat: f64,
    /// Thermal conductivity, W m^-1 K^-1.
    pub k_thermal: f64,
    /// Side emissivity in [0, 1].
    pub emissivity: f64,
    /// Stefan–Boltzmann constant, W m^-2 K^-4.
    pub stefan_boltzmann: f64,
    /// Side heat-transfer coefficient, W m^-2 K^-1.
    pub h_side: f64,
    /// Electrode heat-transfer coefficient, W m^-2 K^-1.
    pub h_electrode: f64,
    /// Arrhenius prefactor of the electrical conductivity, S m^-1.
    #[serde(rename = "arrhenius_A")]
    pub arrhenius_a: f64,
    /// Activation energy, J mol^-1.
    #[serde(rename = "activation_E")]
    pub activation_e: f64,
    /// Universal gas constant, J K^-1 mol^-1.
    pub gas_constant: f64,
    /// Sample length (electrode separation), m.
    #[serde(rename = "length_L")]
    pub length_l: f64,
    /// Sample radius, m.
    #[serde(rename = "radius_R")]
    pub radius_r: f64,
    /// Furnace temperature, K.
    #[serde(rename = "T_furnace")]
    pub t_furnace: f64,
    /// Applied voltage, V.
    #[serde(rename = "V0")]
    pub v0: f64,
    /// Current limit, A.
    #[serde(rename = "I0")]
    pub i0: f64,
}

impl DimensionalParameters {
    /// 3YSZ sample values: 10 mm x 1.5 mm cylinder at 1110 K, 300 V, 0.5 A limit.
    /// The electrode coefficient mirrors the side value.
    pub fn table1() -> Self {
        Self {
            rho: 6050.0,
            c_heat: 600.0,
            k_thermal: 2.7,
            emissivity: 0.7,
            stefan_boltzmann: 5.67e-8,
            h_side: 10.0,
            h_electrode: 10.0,
            arrhenius_a: 9.3e5,
            activation_e: 171e3,
            gas_constant: 8.31,
            length_l: 10e-3,
            radius_r: 1.5e-3,
            t_furnace: 1110.0,
            v0: 300.0,
            i0: 0.5,
        }
    }

    /// Checks the field constraints. A non-slender sample (`length_L <= radius_R`)
    /// is accepted with a logged warning.
    pub fn validate(&self) -> Result<(), ModelError> {
        let positive = [
            ("rho", self.rho),
            ("c_heat", self.c_heat),
            ("k_thermal", self.k_thermal),
            ("stefan_boltzmann", self.stefan_boltzmann),
            ("h_side", self.h_side),
            ("h_electrode", self.h_electrode),
            ("arrhenius_A", self.arrhenius_a),
            ("activation_E", self.activation_e),
            ("gas_constant", self.gas_constant),
            ("length_L", self.length_l),
            ("radius_R", self.radius_r),
            ("T_furnace", self.t_furnace),
            ("V0", self.v0),
            ("I0", self.i0),
        ];
        for (field, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ModelError::InvalidParameter {
                    field,
                    constraint: "a finite value > 0",
                    value,
                });
            }
        }
        if !(0.0..=1.0).contains(&self.emissivity) {
            return Err(ModelError::InvalidParameter {
                field: "emissivity",
                constraint: "emissivity ∈ [0,1]",
                value: self.emissivity,
            });
        }
        if self.length_l <= self.radius_r {
            log::warn!(
                "sample is not slender: length_L = {} m <= radius_R = {} m",
                self.length_l,
                self.radius_r
            );
        }
        Ok(())
    }

    /// Same sample with a different furnace temperature.
    pub fn with_furnace_temperature(mut self, t_furnace: f64) -> Self {
        self.t_furnace = t_furnace;
        self
    }

    /// Same sample driven by a field `field` (V m^-1), i.e. `V0 = field * L`.
    pub fn with_field(mut self, field: f64) -> Self {
        self.v0 = field * self.length_l;
        self
    }
}

/// Dimensionless groups and scales of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessGroups {
    /// Aspect ratio R/L.
    pub delta: f64,
    /// Ohmic heating strength.
    pub lambda: f64,
    /// Side cooling (convection plus linearized radiation).
    pub beta: f64,
    /// Electrode cooling.
    pub alpha: f64,
    /// Current limit.
    #[serde(rename = "curlyI")]
    pub curly_i: f64,
    /// Frank-Kamenetskii parameter R_g T0 / E.
    pub nu: f64,
    /// Conductivity at the reference temperature, S m^-1.
    pub sigma0: f64,
    /// Conduction time scale, s.
    pub t0: f64,
    /// Temperature perturbation scale, K.
    #[serde(rename = "deltaT")]
    pub delta_t: f64,
    /// Reference temperature, K.
    #[serde(rename = "T0")]
    pub t_ref: f64,
}

impl DimensionlessGroups {
    /// Groups specified directly in dimensionless form, for the reduced models.
    ///
    /// The dimensional scales are set to 1 and `nu` to 0 (the reduced models
    /// use the exponential conductivity). Cooling groups may be zero here.
    pub fn reduced(lambda: f64, beta: f64, alpha: f64, delta: f64, curly_i: f64) -> Self {
        Self {
            delta,
            lambda,
            beta,
            alpha,
            curly_i,
            nu: 0.0,
            sigma0: 1.0,
            t0: 1.0,
            delta_t: 1.0,
            t_ref: 1.0,
        }
    }

    /// Combined bulk cooling rate `beta + delta^2 alpha` of the lumped balance.
    pub fn bulk_cooling(&self) -> f64 {
        self.beta + self.delta * self.delta * self.alpha
    }

    /// Dimensional temperature for a dimensionless excess `theta`.
    pub fn temperature(&self, theta: f64) -> f64 {
        self.t_ref + self.delta_t * theta
    }
}

/// Groups of the high-aspect-ratio reduction, in which time is rescaled by
/// `delta^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HighAspectGroups {
    /// Rescaled heating `lambda / delta^2`.
    #[serde(rename = "Lambda")]
    pub lambda_big: f64,
    /// Rescaled side cooling `2 beta / delta^2`.
    #[serde(rename = "B")]
    pub b: f64,
    /// Electrode cooling; `f64::INFINITY` for ends held at the furnace temperature.
    pub alpha: f64,
    /// Factor converting original time to rescaled time (`delta^2`).
    pub time_rescale: f64,
}

impl HighAspectGroups {
    pub fn new(lambda_big: f64, b: f64, alpha: f64) -> Self {
        Self {
            lambda_big,
            b,
            alpha,
            time_rescale: 1.0,
        }
    }
}

impl From<&DimensionlessGroups> for HighAspectGroups {
    fn from(g: &DimensionlessGroups) -> Self {
        let d2 = g.delta * g.delta;
        Self {
            lambda_big: g.lambda / d2,
            b: 2.0 * g.beta / d2,
            alpha: g.alpha,
            time_rescale: d2,
        }
    }
}

/// Electrical protocol applied to the sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleMode {
    /// Fixed voltage until the current reaches the limit, then fixed current.
    VoltageThenCurrent,
    VoltageOnly,
    CurrentOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlSchedule {
    pub mode: ScheduleMode,
    /// Dimensionless applied voltage during the voltage phase.
    #[serde(default = "unit_voltage")]
    pub voltage_setpoint: f64,
    /// Dimensionless current limit; infinite means the limit is never reached.
    pub current_limit: f64,
}

fn unit_voltage() -> f64 {
    1.0
}

impl ControlSchedule {
    pub fn voltage_then_current(current_limit: f64) -> Self {
        Self {
            mode: ScheduleMode::VoltageThenCurrent,
            voltage_setpoint: 1.0,
            current_limit,
        }
    }

    pub fn voltage_only() -> Self {
        Self {
            mode: ScheduleMode::VoltageOnly,
            voltage_setpoint: 1.0,
            current_limit: f64::INFINITY,
        }
    }

    pub fn current_only(current_limit: f64) -> Self {
        Self {
            mode: ScheduleMode::CurrentOnly,
            voltage_setpoint: 1.0,
            current_limit,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.voltage_setpoint > 0.0 && self.voltage_setpoint.is_finite()) {
            return Err(ModelError::InvalidParameter {
                field: "voltage_setpoint",
                constraint: "a finite value > 0",
                value: self.voltage_setpoint,
            });
        }
        if !(self.current_limit > 0.0) {
            return Err(ModelError::InvalidParameter {
                field: "current_limit",
                constraint: "a value > 0",
                value: self.current_limit,
            });
        }
        if self.mode == ScheduleMode::CurrentOnly && self.current_limit.is_infinite() {
            return Err(ModelError::InvalidParameter {
                field: "current_limit",
                constraint: "a finite value under current_only control",
                value: self.current_limit,
            });
        }
        Ok(())
    }
}

/// Arrhenius conductivity `A exp(-E / (R_g T))`, S m^-1.
pub fn arrhenius_conductivity(t: f64, p: &DimensionalParameters) -> Result<f64, ModelError> {
    if !(t > 0.0) {
        return Err(ModelError::Domain {
            what: "temperature",
            value: t,
        });
    }
    Ok(p.arrhenius_a * (-p.activation_e / (p.gas_constant * t)).exp())
}

/// Computes the dimensionless groups, taking the furnace temperature as reference.
pub fn nondimensionalize(p: &DimensionalParameters) -> Result<DimensionlessGroups, ModelError> {
    p.validate()?;
    let t_ref = p.t_furnace;
    let sigma0 = arrhenius_conductivity(t_ref, p)?;
    let r = p.radius_r;
    let l = p.length_l;
    let delta_t = p.gas_constant * t_ref * t_ref / p.activation_e;
    let radiative = 4.0 * p.emissivity * p.stefan_boltzmann * t_ref.powi(3);
    Ok(DimensionlessGroups {
        delta: r / l,
        lambda: sigma0 * p.v0 * p.v0 * r * r / (p.k_thermal * delta_t * l * l),
        beta: (p.h_side * r + radiative * r) / p.k_thermal,
        alpha: p.h_electrode * l / p.k_thermal,
        curly_i: p.i0 * l / (sigma0 * p.v0 * PI * r * r),
        nu: p.gas_constant * t_ref / p.activation_e,
        sigma0,
        t0: p.rho * p.c_heat * r * r / p.k_thermal,
        delta_t,
        t_ref,
    })
}

/// Scaled conductivity `exp(theta / (1 + nu theta))`; `nu = 0` gives the
/// exponential form used by all reduced models.
pub fn conductivity_hat(theta: f64, nu: f64) -> Result<f64, ModelError> {
    let denom = 1.0 + nu * theta;
    if !(denom > 0.0) {
        return Err(ModelError::Domain {
            what: "1 + nu*theta",
            value: denom,
        });
    }
    Ok((theta / denom).exp())
}
