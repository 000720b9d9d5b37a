use std::path::{Path, PathBuf};

use flashsim_core::{
    axial_critical_lambda, axial_steady_current, axial_steady_voltage, high_aspect_critical,
    lumped_current_equilibrium, lumped_voltage_equilibrium, radial_critical_lambda, radial_steady_current,
    radial_steady_voltage, regime_diagram, solve_axial, solve_high_aspect, solve_lumped, solve_radial, Branch,
    DimensionalParameters, FlashCriterion, SteadyProfile, TransientResult,
};
use serde::Serialize;

use crate::output::{self, artifact_path, num, write_json, write_table, Format};
use crate::scenario::{load_scenario, ModelKind, Outputs, Scenario};
use crate::{geometric, parse_range, CliError, Command, Common, CriterionArg, EXIT_BLOWUP, EXIT_OK};

pub fn execute(cmd: &Command) -> Result<i32, CliError> {
    match cmd {
        Command::Nondim(common) => nondim(common),
        Command::Steady(common) => steady(common),
        Command::Crit {
            common,
            model,
            beta_range,
            alpha_range,
            b_value,
        } => crit(common, *model, beta_range.as_deref(), alpha_range.as_deref(), *b_value),
        Command::Run(common) => run(common),
        Command::Regime {
            common,
            t_range,
            e_range,
            criterion,
        } => regime(common, t_range, e_range, *criterion),
    }
}

fn scenario(common: &Common) -> Result<Scenario, CliError> {
    let path = common
        .config
        .as_deref()
        .ok_or_else(|| CliError::Usage("--config is required for this command".into()))?;
    load_scenario(path)
}

fn out_dir(common: &Common) -> PathBuf {
    common.out.clone().unwrap_or_else(|| PathBuf::from("."))
}

/// `dir/base.ext` when `--out` was given, standard output otherwise.
fn optional_target(common: &Common, base: &str) -> Result<Option<PathBuf>, CliError> {
    match &common.out {
        Some(dir) => Ok(Some(artifact_path(dir, Path::new(base), common.format)?)),
        None => Ok(None),
    }
}

fn nondim(common: &Common) -> Result<i32, CliError> {
    let sc = scenario(common)?;
    let g = sc.groups();
    let target = optional_target(common, "nondim")?;
    match common.format {
        Format::Json => write_json(target.as_deref(), &g)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = [
                ("delta", g.delta),
                ("lambda", g.lambda),
                ("beta", g.beta),
                ("alpha", g.alpha),
                ("curlyI", g.curly_i),
                ("nu", g.nu),
                ("sigma0", g.sigma0),
                ("t0", g.t0),
                ("deltaT", g.delta_t),
                ("T0", g.t_ref),
            ]
            .iter()
            .map(|(k, v)| vec![k.to_string(), num(*v)])
            .collect();
            write_table(target.as_deref(), &["group", "value"], &rows)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct SteadyEntry {
    branch: Branch,
    forcing: f64,
    theta_max: f64,
    coord: Vec<f64>,
    theta: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct SteadyReport {
    model: ModelKind,
    /// Heating group under the voltage phase.
    heating: f64,
    /// Critical heating of the model for this sample's cooling.
    critical: f64,
    states: Vec<SteadyEntry>,
}

fn entry<P: SteadyProfile>(state: &P, branch: Branch, forcing: f64, coords: &[f64]) -> SteadyEntry {
    let theta: Vec<f64> = coords.iter().map(|&x| state.theta_unchecked(x)).collect();
    SteadyEntry {
        branch,
        forcing,
        theta_max: theta.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        coord: coords.to_vec(),
        theta,
    }
}

fn steady_report(sc: &Scenario) -> Result<SteadyReport, CliError> {
    let g = sc.groups();
    let v = sc.schedule.voltage_setpoint;
    let limit = sc.schedule.current_limit;
    let coords = sc.grid.map(|grid| grid.nodes()).unwrap_or_else(|| vec![0.0]);
    let mut states = Vec::new();
    let (heating, critical) = match sc.model {
        ModelKind::Radial => {
            let heating = g.lambda * v * v;
            for st in radial_steady_voltage(heating, g.beta)? {
                states.push(entry(&st, st.branch, heating, &coords));
            }
            if limit.is_finite() {
                let forcing = g.lambda * limit * limit;
                let st = radial_steady_current(forcing, g.beta)?;
                states.push(entry(&st, st.branch, forcing, &coords));
            }
            (heating, radial_critical_lambda(g.beta)?)
        }
        ModelKind::Axial => {
            let d2 = g.delta * g.delta;
            let heating = g.lambda * v * v / d2;
            for st in axial_steady_voltage(heating, g.alpha)? {
                states.push(entry(&st, st.branch, heating, &coords));
            }
            if limit.is_finite() {
                let forcing = g.lambda * limit * limit / d2;
                let st = axial_steady_current(forcing, g.alpha)?;
                states.push(entry(&st, st.branch, forcing, &coords));
            }
            (heating, axial_critical_lambda(g.alpha)?)
        }
        ModelKind::HighAspect => {
            let ha = sc.high_aspect_groups();
            let heating = ha.lambda_big * v * v;
            (heating, high_aspect_critical(ha.alpha, ha.b)?.lambda_c)
        }
        ModelKind::Lumped => {
            let cooling = g.bulk_cooling();
            let heating = g.lambda * v * v;
            let roots = lumped_voltage_equilibrium(heating, cooling)?;
            for (k, theta) in roots.iter().enumerate() {
                let branch = if k == 0 { Branch::Stable } else { Branch::Unstable };
                states.push(SteadyEntry {
                    branch,
                    forcing: heating,
                    theta_max: *theta,
                    coord: vec![0.0],
                    theta: vec![*theta],
                });
            }
            if limit.is_finite() {
                let forcing = g.lambda * limit * limit;
                let theta = lumped_current_equilibrium(forcing, cooling)?;
                states.push(SteadyEntry {
                    branch: Branch::CurrentControlled,
                    forcing,
                    theta_max: theta,
                    coord: vec![0.0],
                    theta: vec![theta],
                });
            }
            (heating, 2.0 / std::f64::consts::E * cooling)
        }
    };
    if states.is_empty() && sc.model != ModelKind::HighAspect {
        log::warn!("no voltage-controlled steady state: heating {heating} exceeds the critical value {critical}");
    }
    Ok(SteadyReport {
        model: sc.model,
        heating,
        critical,
        states,
    })
}

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::Stable => "stable",
        Branch::Unstable => "unstable",
        Branch::CurrentControlled => "current_controlled",
    }
}

fn steady(common: &Common) -> Result<i32, CliError> {
    let sc = scenario(common)?;
    let report = steady_report(&sc)?;
    let dir = out_dir(common);
    match common.format {
        Format::Json => write_json(Some(&artifact_path(&dir, &sc.outputs.steady, Format::Json)?), &report)?,
        Format::Csv => {
            let mut summary = Vec::new();
            for st in &report.states {
                let name = branch_name(st.branch);
                let mut base = sc.outputs.steady.clone().into_os_string();
                base.push(format!("_{name}"));
                let path = artifact_path(&dir, Path::new(&base), Format::Csv)?;
                write_table(
                    Some(&path),
                    &["coord", "theta"],
                    &output::profile_rows(&st.coord, &st.theta),
                )?;
                summary.push(vec![name.to_string(), num(st.forcing), num(st.theta_max)]);
            }
            let path = artifact_path(&dir, &sc.outputs.steady, Format::Csv)?;
            let header = ["branch", "forcing", "theta_max"];
            write_table(Some(&path), &header, &summary)?;
            eprintln!(
                "{:?}: heating {} vs critical {} ({})",
                report.model,
                report.heating,
                report.critical,
                if report.heating > report.critical {
                    "no voltage-controlled steady state"
                } else {
                    "subcritical"
                }
            );
        }
    }
    Ok(EXIT_OK)
}

fn crit(
    common: &Common,
    model: ModelKind,
    beta_range: Option<&str>,
    alpha_range: Option<&str>,
    b_value: f64,
) -> Result<i32, CliError> {
    let (flag, text) = match model {
        ModelKind::Radial | ModelKind::Lumped => ("beta-range", beta_range),
        ModelKind::Axial | ModelKind::HighAspect => ("alpha-range", alpha_range),
    };
    let text = text.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --model {model:?}")))?;
    let (lo, hi, n) = parse_range(flag, text)?;
    if !(lo > 0.0) {
        return Err(CliError::Usage(format!("--{flag}: values must be > 0")));
    }
    if !(b_value >= 0.0 && b_value.is_finite()) {
        return Err(CliError::Usage("--b-value must be finite and >= 0".into()));
    }
    let xs = geometric(lo, hi, n);
    let mut curve = Vec::with_capacity(n);
    for &x in &xs {
        let y = match model {
            ModelKind::Radial => radial_critical_lambda(x)?,
            ModelKind::Lumped => 2.0 / std::f64::consts::E * x,
            ModelKind::Axial => axial_critical_lambda(x)?,
            ModelKind::HighAspect => high_aspect_critical(x, b_value)?.lambda_c,
        };
        curve.push((x, y));
    }
    let (x_name, y_name) = match model {
        ModelKind::Radial => ("beta", "lambda_c"),
        ModelKind::Lumped => ("cooling", "lambda_c"),
        ModelKind::Axial | ModelKind::HighAspect => ("alpha", "Lambda_c"),
    };
    let target = optional_target(common, "critical_curve")?;
    match common.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = curve.iter().map(|(x, y)| vec![num(*x), num(*y)]).collect();
            write_table(target.as_deref(), &[x_name, y_name], &rows)?;
        }
        Format::Json => {
            let value = serde_json::json!({
                "model": model,
                x_name: curve.iter().map(|p| p.0).collect::<Vec<_>>(),
                y_name: curve.iter().map(|p| p.1).collect::<Vec<_>>(),
            });
            write_json(target.as_deref(), &value)?;
        }
    }
    Ok(EXIT_OK)
}

pub fn solve(sc: &Scenario) -> Result<TransientResult, CliError> {
    let res = match sc.model {
        ModelKind::Radial => solve_radial(&sc.groups(), &sc.schedule, &sc.grid.expect("grid"), &sc.solver)?,
        ModelKind::Axial => solve_axial(&sc.groups(), &sc.schedule, &sc.grid.expect("grid"), &sc.solver)?,
        ModelKind::HighAspect => solve_high_aspect(
            &sc.high_aspect_groups(),
            &sc.schedule,
            &sc.grid.expect("grid"),
            &sc.solver,
        )?,
        ModelKind::Lumped => solve_lumped(&sc.groups(), &sc.schedule, &sc.solver)?,
    };
    Ok(res)
}

fn write_run(res: &TransientResult, outputs: &Outputs, dir: &Path, format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => write_json(Some(&artifact_path(dir, &outputs.timeseries, Format::Json)?), res),
        Format::Csv => {
            let path = artifact_path(dir, &outputs.timeseries, Format::Csv)?;
            write_table(Some(&path), &output::TIMESERIES_HEADER, &output::timeseries_rows(res))?;
            if !res.snapshots.is_empty() {
                let path = artifact_path(dir, &outputs.snapshots, Format::Csv)?;
                write_table(Some(&path), &["time", "coord", "theta"], &output::snapshot_rows(res))?;
                if !res.potential_nodes.is_empty() {
                    let mut base = outputs.snapshots.clone().into_os_string();
                    base.push("_potential");
                    let path = artifact_path(dir, Path::new(&base), Format::Csv)?;
                    write_table(Some(&path), &["time", "z", "phi"], &output::potential_rows(res))?;
                }
            }
            Ok(())
        }
    }
}

fn run(common: &Common) -> Result<i32, CliError> {
    let sc = scenario(common)?;
    let res = solve(&sc)?;
    write_run(&res, &sc.outputs, &out_dir(common), common.format)?;
    if let Some(t) = res.switch_time {
        eprintln!("switched to current control at t = {t}");
    }
    match &res.blowup {
        Some(b) => {
            eprintln!(
                "blow-up ({:?}) at t = {} with max theta {}",
                b.reason, b.t_estimate, b.theta_max_at_stop
            );
            Ok(EXIT_BLOWUP)
        }
        None => Ok(EXIT_OK),
    }
}

fn regime(common: &Common, t_range: &str, e_range: &str, criterion: CriterionArg) -> Result<i32, CliError> {
    let (params, base) = match &common.config {
        Some(_) => {
            let sc = scenario(common)?;
            (sc.dimensional, sc.outputs.regime)
        }
        None => (DimensionalParameters::table1(), Outputs::default().regime),
    };
    let (t_lo, t_hi, n_t) = parse_range("t-range", t_range)?;
    let (e_lo, e_hi, n_e) = parse_range("e-range", e_range)?;
    let criterion = match criterion {
        CriterionArg::Radial => FlashCriterion::Radial,
        CriterionArg::Lumped => FlashCriterion::Lumped,
    };
    let grid = regime_diagram(&params, (t_lo, t_hi), (e_lo, e_hi), (n_t, n_e), criterion)?;
    let dir = out_dir(common);
    match common.format {
        Format::Json => write_json(Some(&artifact_path(&dir, &base, Format::Json)?), &grid)?,
        Format::Csv => {
            let (points, boundary) = output::regime_rows(&grid);
            write_table(
                Some(&artifact_path(&dir, &base, Format::Csv)?),
                &["T", "E", "flash"],
                &points,
            )?;
            let mut b = base.into_os_string();
            b.push("_boundary");
            write_table(
                Some(&artifact_path(&dir, Path::new(&b), Format::Csv)?),
                &["T", "E_star"],
                &boundary,
            )?;
        }
    }
    Ok(EXIT_OK)
}
