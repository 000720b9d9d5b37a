//! Method-of-lines discretizations of the radial, axial and high-aspect models.
//!
//! All three share the form `theta_t = L theta + kappa e^{s theta}` with a
//! linear operator `L` (diffusion plus linear cooling), `s = +1` for the
//! radial model and `s = -1` for the axial ones, and a source amplitude
//! `kappa = C / Q^p`, where `Q = sum_j w_j e^{s theta_j}` is the discrete
//! conductance (radial) or resistance (axial) integral and `p` is 0 or 2
//! depending on whether the control makes the source local.
//!
//! Radial: vertex-centred finite volumes on `r_i = i h`. The node at `r = 0`
//! uses the symmetry limit `4 (theta_1 - theta_0) / h^2`; the surface node owns
//! the half cell `[1 - h/2, 1]` and receives the Robin flux there. Control
//! volumes `w_0 = h^2/8`, `w_i = r_i h`, `w_N = h/2 - h^2/8` sum to `1/2`, so the
//! discrete heat balance is exact.
//!
//! Axial: central differences with ghost-point Robin ends (equivalently half
//! cells) and trapezoid weights. Infinite `alpha` pins the end nodes at zero.

use super::integrator::{integrate, Jacobian, Sample, Semidiscrete, Termination};
use super::result::{ControlState, Snapshot, TransientResult};
use super::{Geometry, SolveError, SolverOptions, SpatialGrid};
use crate::model::{ControlSchedule, DimensionlessGroups, HighAspectGroups};

pub(crate) struct LineSystem {
    geometry: Geometry,
    sub: Vec<f64>,
    diag: Vec<f64>,
    sup: Vec<f64>,
    weights: Vec<f64>,
    frozen_ends: bool,
    /// `+1` radial, `-1` axial.
    sign: f64,
    /// `C` under voltage and current control.
    voltage_amplitude: f64,
    current_amplitude: f64,
    voltage_setpoint: f64,
    current_limit: f64,
}

impl LineSystem {
    fn radial(n_cells: usize, beta: f64, lambda: f64, schedule: &ControlSchedule) -> Self {
        let n = n_cells + 1;
        let h = 1.0 / n_cells as f64;
        let h2 = h * h;
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut weights = vec![0.0; n];

        sup[0] = 4.0 / h2;
        diag[0] = -4.0 / h2;
        weights[0] = h2 / 8.0;
        for i in 1..n_cells {
            let r = i as f64 * h;
            sub[i] = (r - 0.5 * h) / (r * h2);
            sup[i] = (r + 0.5 * h) / (r * h2);
            diag[i] = -(sub[i] + sup[i]);
            weights[i] = r * h;
        }
        let w_n = 0.5 * h - h2 / 8.0;
        sub[n_cells] = (1.0 - 0.5 * h) / (h * w_n);
        diag[n_cells] = -sub[n_cells] - beta / w_n;
        weights[n_cells] = w_n;

        let vs = schedule.voltage_setpoint;
        let limit = schedule.current_limit;
        Self {
            geometry: Geometry::Radial,
            sub,
            diag,
            sup,
            weights,
            frozen_ends: false,
            sign: 1.0,
            voltage_amplitude: lambda * vs * vs,
            current_amplitude: 0.25 * lambda * limit * limit,
            voltage_setpoint: vs,
            current_limit: limit,
        }
    }

    /// `theta_t = d theta_zz - sink theta + heating`.
    fn axial(n_cells: usize, d: f64, sink: f64, alpha: f64, lambda: f64, schedule: &ControlSchedule) -> Self {
        let n = n_cells + 1;
        let h = 1.0 / n_cells as f64;
        let k = d / (h * h);
        let mut sub = vec![k; n];
        let mut diag = vec![-2.0 * k - sink; n];
        let mut sup = vec![k; n];
        let mut weights = vec![h; n];
        weights[0] = 0.5 * h;
        weights[n_cells] = 0.5 * h;
        sub[0] = 0.0;
        sup[n_cells] = 0.0;
        let frozen_ends = alpha.is_infinite();
        if frozen_ends {
            for i in [0, n_cells] {
                sub[i] = 0.0;
                sup[i] = 0.0;
                diag[i] = 0.0;
            }
        } else {
            sup[0] = 2.0 * k;
            diag[0] = -2.0 * k * (1.0 + h * alpha) - sink;
            sub[n_cells] = 2.0 * k;
            diag[n_cells] = -2.0 * k * (1.0 + h * alpha) - sink;
        }
        let vs = schedule.voltage_setpoint;
        let limit = schedule.current_limit;
        Self {
            geometry: Geometry::Axial,
            sub,
            diag,
            sup,
            weights,
            frozen_ends,
            sign: -1.0,
            voltage_amplitude: lambda * vs * vs,
            current_amplitude: lambda * limit * limit,
            voltage_setpoint: vs,
            current_limit: limit,
        }
    }

    fn n(&self) -> usize {
        self.diag.len()
    }

    fn is_frozen(&self, i: usize) -> bool {
        self.frozen_ends && (i == 0 || i + 1 == self.n())
    }

    fn integral(&self, y: &[f64]) -> f64 {
        self.weights.iter().zip(y).map(|(w, t)| w * (self.sign * t).exp()).sum()
    }

    /// Whether the source amplitude depends on the state in this mode.
    fn nonlocal(&self, mode: ControlState) -> bool {
        matches!(
            (self.geometry, mode),
            (Geometry::Radial, ControlState::Current) | (Geometry::Axial, ControlState::Voltage)
        )
    }

    fn kappa(&self, y: &[f64], mode: ControlState) -> f64 {
        let c = match mode {
            ControlState::Voltage => self.voltage_amplitude,
            ControlState::Current => self.current_amplitude,
        };
        if self.nonlocal(mode) {
            let q = self.integral(y);
            c / (q * q)
        } else {
            c
        }
    }

    /// `(V, I)` reported for state `y`.
    fn electrical(&self, y: &[f64], mode: ControlState) -> (f64, f64) {
        let q = self.integral(y);
        match (self.geometry, mode) {
            (Geometry::Radial, ControlState::Voltage) => (self.voltage_setpoint, 2.0 * self.voltage_setpoint * q),
            (Geometry::Radial, ControlState::Current) => (self.current_limit / (2.0 * q), self.current_limit),
            (Geometry::Axial, ControlState::Voltage) => (self.voltage_setpoint, self.voltage_setpoint / q),
            (Geometry::Axial, ControlState::Current) => (self.current_limit * q, self.current_limit),
        }
    }

    /// Potential on `z_k = -1/2 + k h`, zero mean, `V/2` at `z = -1/2`.
    fn potential(&self, y: &[f64], v: f64, i: f64, z: &[f64]) -> Vec<f64> {
        match self.geometry {
            Geometry::Radial => z.iter().map(|&z| -v * z).collect(),
            Geometry::Axial => {
                let mut phi = Vec::with_capacity(y.len());
                let mut acc = 0.0;
                phi.push(0.5 * v);
                for k in 1..y.len() {
                    let h = z[k] - z[k - 1];
                    acc += 0.5 * h * ((-y[k - 1]).exp() + (-y[k]).exp());
                    phi.push(0.5 * v - i * acc);
                }
                phi
            }
        }
    }
}

impl Semidiscrete for LineSystem {
    fn dim(&self) -> usize {
        self.n()
    }

    fn rhs(&self, y: &[f64], mode: ControlState, out: &mut [f64]) {
        let n = self.n();
        let kappa = self.kappa(y, mode);
        for i in 0..n {
            if self.is_frozen(i) {
                out[i] = 0.0;
                continue;
            }
            let mut v = self.diag[i] * y[i] + kappa * (self.sign * y[i]).exp();
            if i > 0 {
                v += self.sub[i] * y[i - 1];
            }
            if i + 1 < n {
                v += self.sup[i] * y[i + 1];
            }
            out[i] = v;
        }
    }

    fn jacobian(&self, y: &[f64], mode: ControlState, jac: &mut Jacobian) {
        let n = self.n();
        let kappa = self.kappa(y, mode);
        jac.sub.copy_from_slice(&self.sub);
        jac.sup.copy_from_slice(&self.sup);
        let e: Vec<f64> = y.iter().map(|t| (self.sign * t).exp()).collect();
        for (i, ei) in e.iter().enumerate() {
            jac.diag[i] = if self.is_frozen(i) {
                0.0
            } else {
                self.diag[i] + self.sign * kappa * ei
            };
        }
        jac.rank_one = if self.nonlocal(mode) {
            let q = self.integral(y);
            let u: Vec<f64> = (0..n).map(|i| if self.is_frozen(i) { 0.0 } else { e[i] }).collect();
            let v: Vec<f64> = (0..n)
                .map(|j| -2.0 * self.sign * kappa * self.weights[j] * e[j] / q)
                .collect();
            Some((u, v))
        } else {
            None
        };
    }

    fn nonlocal_scalar(&self, y: &[f64], mode: ControlState) -> f64 {
        self.kappa(y, mode)
    }

    fn theta_max(&self, y: &[f64]) -> f64 {
        y.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    fn switch_indicator(&self, y: &[f64]) -> f64 {
        self.electrical(y, ControlState::Voltage).1 - self.current_limit
    }
}

fn invalid(field: &'static str, constraint: &'static str, value: f64) -> SolveError {
    SolveError::InvalidInput {
        field,
        constraint,
        value,
    }
}

fn check_finite_non_negative(field: &'static str, value: f64) -> Result<(), SolveError> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(invalid(field, "a finite value >= 0", value))
    }
}

fn check_geometry(grid: &SpatialGrid, expected: Geometry) -> Result<(), SolveError> {
    grid.validate()?;
    if grid.geometry != expected {
        return Err(SolveError::GeometryMismatch {
            expected,
            found: grid.geometry,
        });
    }
    Ok(())
}

fn run(
    sys: &LineSystem,
    grid: &SpatialGrid,
    schedule: &ControlSchedule,
    opts: &SolverOptions,
) -> Result<TransientResult, SolveError> {
    schedule.validate()?;
    opts.validate()?;
    let n = grid.len();
    let y0 = match &opts.initial_theta {
        None => vec![0.0; n],
        Some(theta) => {
            if theta.len() != n {
                return Err(invalid("initial_theta", "one value per grid node", theta.len() as f64));
            }
            if let Some(&bad) = theta.iter().find(|t| !t.is_finite()) {
                return Err(invalid("initial_theta", "finite values", bad));
            }
            if sys.frozen_ends && (theta[0] != 0.0 || theta[n - 1] != 0.0) {
                return Err(invalid(
                    "initial_theta",
                    "zero end values with infinite alpha",
                    theta[0].abs().max(theta[n - 1].abs()),
                ));
            }
            theta.clone()
        }
    };
    let nodes = grid.nodes();
    let potential_nodes = SpatialGrid {
        n_cells: grid.n_cells,
        geometry: Geometry::Axial,
    }
    .nodes();
    let mut result = TransientResult::new(nodes, potential_nodes.clone());
    let outcome = integrate(sys, y0, schedule, opts, |s: Sample<'_>| {
        let (v, i) = sys.electrical(s.y, s.mode);
        result.push(s.t, s.y, v, i, s.mode);
        if s.snapshot {
            result.snapshots.push(Snapshot {
                time: s.t,
                theta: s.y.to_vec(),
                potential: sys.potential(s.y, v, i, &potential_nodes),
            });
        }
        result.final_state.clear();
        result.final_state.extend_from_slice(s.y);
    })?;
    result.switch_time = outcome.switch_time;
    if let Termination::Blowup(report) = outcome.termination {
        result.blowup = Some(report);
    }
    Ok(result)
}

/// Radial model: insulated electrodes, Robin side condition with `beta`.
///
/// Under voltage control the source is `lambda V^2 e^theta`; under current
/// control `V = I / (2 int_0^1 e^theta r dr)`.
pub fn solve_radial(
    groups: &DimensionlessGroups,
    schedule: &ControlSchedule,
    grid: &SpatialGrid,
    opts: &SolverOptions,
) -> Result<TransientResult, SolveError> {
    check_geometry(grid, Geometry::Radial)?;
    check_finite_non_negative("lambda", groups.lambda)?;
    check_finite_non_negative("beta", groups.beta)?;
    let sys = LineSystem::radial(grid.n_cells, groups.beta, groups.lambda, schedule);
    run(&sys, grid, schedule, opts)
}

/// Axial model: insulated sides, Robin electrode condition with `alpha`
/// (infinite allowed), diffusion `delta^2 theta_zz`.
///
/// Under voltage control the source is `lambda V^2 e^{-theta} / J^2` with
/// `J = int e^{-theta} dz`; under current control `lambda I^2 e^{-theta}`.
pub fn solve_axial(
    groups: &DimensionlessGroups,
    schedule: &ControlSchedule,
    grid: &SpatialGrid,
    opts: &SolverOptions,
) -> Result<TransientResult, SolveError> {
    check_geometry(grid, Geometry::Axial)?;
    check_finite_non_negative("lambda", groups.lambda)?;
    if !(groups.alpha >= 0.0) {
        return Err(invalid("alpha", "a value >= 0 or infinity", groups.alpha));
    }
    if !(groups.delta > 0.0 && groups.delta.is_finite()) {
        return Err(invalid("delta", "a finite value > 0", groups.delta));
    }
    let d = groups.delta * groups.delta;
    let sys = LineSystem::axial(grid.n_cells, d, 0.0, groups.alpha, groups.lambda, schedule);
    run(&sys, grid, schedule, opts)
}

/// Slender model in the rescaled time `t~ = delta^2 t`:
/// `theta_t = theta_zz + Lambda e^{-theta} / J^2 - B theta` under voltage
/// control and `theta_zz + Lambda I^2 e^{-theta} - B theta` under current
/// control.
pub fn solve_high_aspect(
    ha: &HighAspectGroups,
    schedule: &ControlSchedule,
    grid: &SpatialGrid,
    opts: &SolverOptions,
) -> Result<TransientResult, SolveError> {
    check_geometry(grid, Geometry::Axial)?;
    check_finite_non_negative("Lambda", ha.lambda_big)?;
    check_finite_non_negative("B", ha.b)?;
    if !(ha.alpha >= 0.0) {
        return Err(invalid("alpha", "a value >= 0 or infinity", ha.alpha));
    }
    let sys = LineSystem::axial(grid.n_cells, 1.0, ha.b, ha.alpha, ha.lambda_big, schedule);
    run(&sys, grid, schedule, opts)
}
