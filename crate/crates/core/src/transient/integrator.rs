//! Adaptive TR-BDF2 for semi-discrete systems whose Jacobian is tridiagonal
//! plus an optional rank-one term (the nonlocal coupling through the current
//! or voltage constraint).
//!
//! Each step is a trapezoid stage to `t + gamma h` followed by a BDF2 stage to
//! `t + h`, `gamma = 2 - sqrt(2)`, which gives both stages the same iteration
//! matrix `I - (gamma/2) h J`. The local error is estimated against the
//! third-order quadrature through the three stage values and filtered through
//! that matrix. Newton systems are solved exactly: Thomas elimination for the
//! tridiagonal part and Sherman–Morrison for the rank-one correction.

use super::result::{BlowupReason, BlowupReport, ControlState};
use super::{SolveError, SolverOptions};
use crate::model::{ControlSchedule, ScheduleMode};
use crate::numerics::solve_tridiagonal;

const GAMMA: f64 = 2.0 - std::f64::consts::SQRT_2;
const NEWTON_MAX_ITERS: usize = 25;
const NEWTON_TOL: f64 = 1e-3;
const NONLOCAL_TOL: f64 = 1e-10;
const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;
const NEWTON_FAIL_FACTOR: f64 = 0.25;
const EVENT_TIME_TOL: f64 = 1e-8;

/// `J = tridiag(sub, diag, sup) + u v^T`.
pub(crate) struct Jacobian {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rank_one: Option<(Vec<f64>, Vec<f64>)>,
}

impl Jacobian {
    fn zeros(n: usize) -> Self {
        Self {
            sub: vec![0.0; n],
            diag: vec![0.0; n],
            sup: vec![0.0; n],
            rank_one: None,
        }
    }

    /// Solves `(I - c J) x = b` in place.
    fn solve_shifted(&self, c: f64, b: &mut [f64]) -> bool {
        let n = b.len();
        let sub: Vec<f64> = self.sub.iter().map(|s| -c * s).collect();
        let sup: Vec<f64> = self.sup.iter().map(|s| -c * s).collect();
        let diag: Vec<f64> = self.diag.iter().map(|d| 1.0 - c * d).collect();
        if !solve_tridiagonal(&sub, &diag, &sup, b) {
            return false;
        }
        if let Some((u, v)) = &self.rank_one {
            let mut z = u.clone();
            if !solve_tridiagonal(&sub, &diag, &sup, &mut z) {
                return false;
            }
            let vb: f64 = v.iter().zip(b.iter()).map(|(v, b)| v * b).sum();
            let vz: f64 = v.iter().zip(&z).map(|(v, z)| v * z).sum();
            let denom = 1.0 - c * vz;
            if denom == 0.0 || !denom.is_finite() {
                return false;
            }
            let scale = c * vb / denom;
            for i in 0..n {
                b[i] += scale * z[i];
            }
        }
        b.iter().all(|x| x.is_finite())
    }
}

/// A method-of-lines system `y' = f(y)` under a given control state.
pub(crate) trait Semidiscrete {
    fn dim(&self) -> usize;

    fn admissible(&self, y: &[f64]) -> bool {
        y.iter().all(|v| v.is_finite())
    }

    fn rhs(&self, y: &[f64], mode: ControlState, out: &mut [f64]);

    fn jacobian(&self, y: &[f64], mode: ControlState, jac: &mut Jacobian);

    /// Coefficient of the nonlocal source, iterated to a tight relative
    /// tolerance by Newton. Zero when the source is local.
    fn nonlocal_scalar(&self, _y: &[f64], _mode: ControlState) -> f64 {
        0.0
    }

    /// Largest temperature, used for blow-up classification.
    fn theta_max(&self, y: &[f64]) -> f64;

    /// Positive once the current under voltage control exceeds the limit.
    fn switch_indicator(&self, y: &[f64]) -> f64;

    /// Error weight of component `i` between the old and new state.
    fn error_scale(&self, i: usize, y_old: &[f64], y_new: &[f64], opts: &SolverOptions) -> f64 {
        opts.abs_tol + opts.rel_tol * y_old[i].abs().max(y_new[i].abs())
    }
}

pub(crate) enum Termination {
    Completed,
    Blowup(BlowupReport),
}

pub(crate) struct Outcome {
    pub termination: Termination,
    pub switch_time: Option<f64>,
}

/// An accepted point handed to the observer.
pub(crate) struct Sample<'a> {
    pub t: f64,
    pub y: &'a [f64],
    pub mode: ControlState,
    pub snapshot: bool,
}

struct StepResult {
    y: Vec<f64>,
    err: f64,
}

enum StepFailure {
    Newton,
}

struct Stepper<'a, S: Semidiscrete> {
    sys: &'a S,
    opts: &'a SolverOptions,
    jac: Jacobian,
}

impl<'a, S: Semidiscrete> Stepper<'a, S> {
    fn wrms(&self, e: &[f64], y_old: &[f64], y_new: &[f64]) -> f64 {
        let n = e.len();
        let sum: f64 = (0..n)
            .map(|i| {
                let w = e[i] / self.sys.error_scale(i, y_old, y_new, self.opts);
                w * w
            })
            .sum();
        (sum / n as f64).sqrt()
    }

    /// Solves `y - c f(y) = r`.
    fn newton(&mut self, r: &[f64], c: f64, mut y: Vec<f64>, mode: ControlState) -> Result<Vec<f64>, StepFailure> {
        let n = y.len();
        let mut f = vec![0.0; n];
        let mut delta = vec![0.0; n];
        let mut kappa_prev = self.sys.nonlocal_scalar(&y, mode);
        for _ in 0..NEWTON_MAX_ITERS {
            self.sys.rhs(&y, mode, &mut f);
            for i in 0..n {
                delta[i] = -(y[i] - c * f[i] - r[i]);
            }
            self.sys.jacobian(&y, mode, &mut self.jac);
            if !self.jac.solve_shifted(c, &mut delta) {
                return Err(StepFailure::Newton);
            }
            let y_old = y.clone();
            for i in 0..n {
                y[i] += delta[i];
            }
            if !self.sys.admissible(&y) {
                return Err(StepFailure::Newton);
            }
            let kappa = self.sys.nonlocal_scalar(&y, mode);
            let kappa_ok = (kappa - kappa_prev).abs() <= NONLOCAL_TOL * kappa.abs();
            kappa_prev = kappa;
            if self.wrms(&delta, &y_old, &y) <= NEWTON_TOL && kappa_ok {
                return Ok(y);
            }
        }
        Err(StepFailure::Newton)
    }

    fn step(&mut self, y: &[f64], h: f64, mode: ControlState) -> Result<StepResult, StepFailure> {
        let n = y.len();
        let c = 0.5 * GAMMA * h;
        let mut f0 = vec![0.0; n];
        self.sys.rhs(y, mode, &mut f0);

        let r1: Vec<f64> = (0..n).map(|i| y[i] + c * f0[i]).collect();
        let y_gamma = self.newton(&r1, c, y.to_vec(), mode)?;
        let mut f_gamma = vec![0.0; n];
        self.sys.rhs(&y_gamma, mode, &mut f_gamma);

        let w1 = 1.0 / (GAMMA * (2.0 - GAMMA));
        let w0 = (1.0 - GAMMA).powi(2) / (GAMMA * (2.0 - GAMMA));
        let r2: Vec<f64> = (0..n).map(|i| w1 * y_gamma[i] - w0 * y[i]).collect();
        let mut guess: Vec<f64> = (0..n).map(|i| y[i] + (y_gamma[i] - y[i]) / GAMMA).collect();
        if !self.sys.admissible(&guess) {
            guess = y_gamma.clone();
        }
        let y1 = self.newton(&r2, c, guess, mode)?;
        let mut f1 = vec![0.0; n];
        self.sys.rhs(&y1, mode, &mut f1);

        let b1 = 1.0 / (6.0 * GAMMA * (1.0 - GAMMA));
        let b2 = 0.5 - 1.0 / (6.0 * (1.0 - GAMMA));
        let b0 = 1.0 - b1 - b2;
        let mut est: Vec<f64> = (0..n)
            .map(|i| y1[i] - y[i] - h * (b0 * f0[i] + b1 * f_gamma[i] + b2 * f1[i]))
            .collect();
        self.sys.jacobian(&y1, mode, &mut self.jac);
        if !self.jac.solve_shifted(c, &mut est) {
            return Err(StepFailure::Newton);
        }
        let err = self.wrms(&est, y, &y1);
        Ok(StepResult { y: y1, err })
    }
}

fn growth(err: f64) -> f64 {
    if err == 0.0 {
        MAX_FACTOR
    } else {
        (SAFETY * err.powf(-1.0 / 3.0)).clamp(MIN_FACTOR, MAX_FACTOR)
    }
}

/// Integrates from `t = 0` to `opts.t_end`, reporting every accepted point
/// (including the initial one) to `observe`.
pub(crate) fn integrate<S, O>(
    sys: &S,
    y0: Vec<f64>,
    schedule: &ControlSchedule,
    opts: &SolverOptions,
    mut observe: O,
) -> Result<Outcome, SolveError>
where
    S: Semidiscrete,
    O: FnMut(Sample<'_>),
{
    let mut stepper = Stepper {
        sys,
        opts,
        jac: Jacobian::zeros(sys.dim()),
    };
    let can_switch = schedule.mode == ScheduleMode::VoltageThenCurrent && schedule.current_limit.is_finite();
    let mut mode = match schedule.mode {
        ScheduleMode::CurrentOnly => ControlState::Current,
        _ => ControlState::Voltage,
    };
    let mut switch_time = None;
    let mut t = 0.0;
    let mut y = y0;

    if can_switch && sys.switch_indicator(&y) >= 0.0 {
        mode = ControlState::Current;
        switch_time = Some(0.0);
    }

    let mut snapshots = opts.snapshot_times.iter().copied().peekable();
    let snap_now = snapshots.next_if(|&s| s <= 0.0).is_some();
    observe(Sample {
        t,
        y: &y,
        mode,
        snapshot: snap_now,
    });

    let blowup = |t: f64, y: &[f64], reason| BlowupReport {
        detected: true,
        t_estimate: t,
        theta_max_at_stop: sys.theta_max(y),
        reason,
    };

    let mut h = opts.dt_init;
    let mut steps = 0usize;
    while t < opts.t_end {
        steps += 1;
        if steps > opts.max_steps {
            return Err(SolveError::StepLimit {
                t,
                steps: opts.max_steps,
            });
        }
        let target = snapshots.peek().copied().unwrap_or(opts.t_end).min(opts.t_end);
        let h_try = h.min(opts.dt_max).min(target - t);
        let hits_target = h_try >= target - t;

        match stepper.step(&y, h_try, mode) {
            Err(StepFailure::Newton) => {
                h = h_try * NEWTON_FAIL_FACTOR;
                if h < opts.dt_min {
                    let theta = sys.theta_max(&y);
                    if theta < 0.5 * opts.theta_cap {
                        return Err(SolveError::NewtonFailure {
                            t,
                            dt: h_try,
                            theta_max: theta,
                        });
                    }
                    return Ok(Outcome {
                        termination: Termination::Blowup(blowup(t, &y, BlowupReason::DtUnderflow)),
                        switch_time,
                    });
                }
                continue;
            }
            Ok(res) if res.err > 1.0 || !res.err.is_finite() => {
                h = h_try * growth(res.err).min(1.0);
                if h < opts.dt_min {
                    return Ok(Outcome {
                        termination: Termination::Blowup(blowup(t, &y, BlowupReason::DtUnderflow)),
                        switch_time,
                    });
                }
                continue;
            }
            Ok(res) => {
                let mut y_new = res.y;
                let mut t_new = if hits_target { target } else { t + h_try };
                let mut switched_here = false;
                if can_switch && mode == ControlState::Voltage && sys.switch_indicator(&y_new) >= 0.0 {
                    let (dt_event, y_event) = locate_switch(&mut stepper, &y, h_try, &y_new)?;
                    if dt_event < h_try {
                        t_new = t + dt_event;
                        y_new = y_event;
                    }
                    switched_here = true;
                }
                let snapshot = t_new == target && snapshots.peek().is_some_and(|&s| s <= t_new);
                if snapshot {
                    snapshots.next();
                }
                t = t_new;
                y = y_new;
                // A step shortened to land on a target says nothing against
                // the previous step size.
                h = if h_try < h {
                    h.max(h_try * growth(res.err))
                } else {
                    h_try * growth(res.err)
                };
                if switched_here {
                    mode = ControlState::Current;
                    switch_time = Some(t);
                }
                observe(Sample {
                    t,
                    y: &y,
                    mode,
                    snapshot,
                });
                if sys.theta_max(&y) > opts.theta_cap {
                    return Ok(Outcome {
                        termination: Termination::Blowup(blowup(t, &y, BlowupReason::ThetaCapExceeded)),
                        switch_time,
                    });
                }
            }
        }
    }
    Ok(Outcome {
        termination: Termination::Completed,
        switch_time,
    })
}

/// Bisection on the step length for the first point where the switch
/// indicator becomes non-negative. Returns the step and the state there.
fn locate_switch<S: Semidiscrete>(
    stepper: &mut Stepper<'_, S>,
    y: &[f64],
    h: f64,
    y_end: &[f64],
) -> Result<(f64, Vec<f64>), SolveError> {
    let sys = stepper.sys;
    let (mut lo, mut hi) = (0.0, h);
    let mut y_hi = y_end.to_vec();
    while hi - lo > EVENT_TIME_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match stepper.step(y, mid, ControlState::Voltage) {
            Ok(res) => {
                if sys.switch_indicator(&res.y) >= 0.0 {
                    hi = mid;
                    y_hi = res.y;
                } else {
                    lo = mid;
                }
            }
            Err(StepFailure::Newton) => return Err(SolveError::EventLocation { dt: mid }),
        }
    }
    Ok((hi, y_hi))
}
