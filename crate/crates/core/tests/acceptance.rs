//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Tolerances and runtime limits are fixed here. Reference values are either
//! the documented Table-1 groups, closed-form asymptotes, or exact steady
//! states checked independently by the residual oracle in `common`.

mod common;

use std::f64::consts::E;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{axial_residual, max_gap, profile, radial_residual};
use flashsim_core::{
    axial_critical_lambda, axial_steady_current, axial_steady_voltage, critical_field, flash_condition,
    high_aspect_critical, nondimensionalize, radial_critical_lambda, radial_steady_current, radial_steady_voltage,
    solve_axial, solve_lumped, solve_radial, Branch, ControlSchedule, ControlState, DimensionalParameters,
    DimensionlessGroups, SolverOptions, SpatialGrid, TransientResult,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: String) -> Check {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

fn nondim() -> Check {
    let g = nondimensionalize(&DimensionalParameters::table1()).map_err(|e| e.to_string())?;
    let expected = [
        ("delta", g.delta, 0.15),
        ("lambda", g.lambda, 0.104),
        ("beta", g.beta, 0.126),
        ("alpha", g.alpha, 0.037),
        ("curlyI", g.curly_i, 284.0),
        ("nu", g.nu, 0.054),
        ("sigma0", g.sigma0, 8.30e-3),
        ("t0", g.t0, 3.025),
    ];
    let (name, worst) = expected
        .iter()
        .map(|&(n, got, want)| (n, rel(got, want)))
        .fold(("", 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    ensure(
        worst < 0.01,
        format!("worst relative deviation {worst:.2e} ({name}), limit 1e-2"),
    )
}

fn asymptotics() -> Check {
    let f = |r: Result<f64, _>| r.map_err(|e: flashsim_core::SteadyError| e.to_string());
    let strong = rel(f(radial_critical_lambda(1e3))?, 2.0);
    let weak = rel(f(radial_critical_lambda(1e-3))?, 2e-3 / E);
    let fixed_ends = (f(axial_critical_lambda(f64::INFINITY))? - 8.0).abs();
    let weak_axial = rel(f(axial_critical_lambda(1e-3))?, 2e-3 / E);
    ensure(
        strong < 0.01 && weak < 0.01 && fixed_ends < 1e-8 && weak_axial < 0.01,
        format!(
            "radial beta=1e3 {strong:.2e}, radial beta=1e-3 {weak:.2e}, axial alpha=inf {fixed_ends:.1e} (abs), \
             axial alpha=1e-3 {weak_axial:.2e}"
        ),
    )
}

fn residuals() -> Check {
    const CELLS: usize = 512;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for _ in 0..20 {
        let beta = log_uniform(&mut rng, 1e-2, 10.0);
        let lambda = rng.gen_range(0.05..0.95) * radial_critical_lambda(beta).map_err(|e| e.to_string())?;
        let st = radial_steady_voltage(lambda, beta).map_err(|e| e.to_string())?;
        let stable = st
            .iter()
            .find(|s| s.branch == Branch::Stable)
            .ok_or("no stable radial state")?;
        worst = worst.max(radial_residual(stable, false, CELLS));

        let alpha = log_uniform(&mut rng, 1e-2, 100.0);
        let lambda = rng.gen_range(0.05..0.95) * axial_critical_lambda(alpha).map_err(|e| e.to_string())?;
        let st = axial_steady_voltage(lambda, alpha).map_err(|e| e.to_string())?;
        let stable = st
            .iter()
            .find(|s| s.branch == Branch::Stable)
            .ok_or("no stable axial state")?;
        worst = worst.max(axial_residual(stable, false, CELLS));
        count += 2;
    }
    for _ in 0..20 {
        let beta = log_uniform(&mut rng, 1e-2, 10.0);
        let forcing = log_uniform(&mut rng, 1e-2, 1e2);
        let st = radial_steady_current(forcing, beta).map_err(|e| e.to_string())?;
        worst = worst.max(radial_residual(&st, true, CELLS));

        let alpha = log_uniform(&mut rng, 1e-2, 100.0);
        let forcing = log_uniform(&mut rng, 1e-2, 1e2);
        let st = axial_steady_current(forcing, alpha).map_err(|e| e.to_string())?;
        worst = worst.max(axial_residual(&st, true, CELLS));
        count += 2;
    }
    ensure(
        worst < 1e-5,
        format!("{count} profiles, worst residual {worst:.2e}, limit 1e-5"),
    )
}

fn subcritical_gap(radial: bool, n: usize) -> Result<f64, String> {
    let opts = SolverOptions::default().with_t_end(50.0);
    let schedule = ControlSchedule::voltage_only();
    let (res, exact) = if radial {
        let lambda = 0.5 * radial_critical_lambda(1.0).map_err(|e| e.to_string())?;
        let groups = DimensionlessGroups::reduced(lambda, 1.0, 0.0, 0.15, f64::INFINITY);
        let grid = SpatialGrid::radial(n).map_err(|e| e.to_string())?;
        let res = solve_radial(&groups, &schedule, &grid, &opts).map_err(|e| e.to_string())?;
        let st = radial_steady_voltage(lambda, 1.0).map_err(|e| e.to_string())?;
        let exact = profile(&st[0], &res.nodes);
        (res, exact)
    } else {
        let lambda = 0.5 * axial_critical_lambda(1.0).map_err(|e| e.to_string())?;
        let groups = DimensionlessGroups::reduced(lambda, 0.0, 1.0, 1.0, f64::INFINITY);
        let grid = SpatialGrid::axial(n).map_err(|e| e.to_string())?;
        let res = solve_axial(&groups, &schedule, &grid, &opts).map_err(|e| e.to_string())?;
        let st = axial_steady_voltage(lambda, 1.0).map_err(|e| e.to_string())?;
        let exact = profile(&st[0], &res.nodes);
        (res, exact)
    };
    if res.blew_up() {
        return Err("subcritical run blew up".into());
    }
    Ok(max_gap(&res.final_state, &exact))
}

fn convergence() -> Check {
    let mut parts = Vec::new();
    let mut ok = true;
    for (radial, name) in [(true, "radial"), (false, "axial")] {
        let gaps = [16, 32, 64]
            .iter()
            .map(|&n| subcritical_gap(radial, n))
            .collect::<Result<Vec<_>, _>>()?;
        let ratio = (gaps[0] / gaps[1]).min(gaps[1] / gaps[2]);
        ok &= gaps[2] < 1e-3 && ratio >= 3.5;
        parts.push(format!("{name} gap(n=64) {:.2e}, min ratio {ratio:.2}", gaps[2]));
    }
    ensure(ok, format!("{} (limits 1e-3, 3.5)", parts.join("; ")))
}

fn flash_trajectory() -> Check {
    let grid = SpatialGrid::radial(64).map_err(|e| e.to_string())?;
    let limited = DimensionlessGroups::reduced(0.104, 0.126, 0.037, 0.15, 284.0);
    let res = solve_radial(
        &limited,
        &ControlSchedule::voltage_then_current(284.0),
        &grid,
        &SolverOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let monotone = res.current.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12));
    let i_max = res.current.iter().cloned().fold(0.0, f64::max);
    let one_way = match res.control.iter().position(|&c| c == ControlState::Current) {
        Some(k) => res.control[k..].iter().all(|&c| c == ControlState::Current),
        None => false,
    };
    let exact = profile(
        &radial_steady_current(0.104 * 284.0 * 284.0, 0.126).map_err(|e| e.to_string())?,
        &res.nodes,
    );
    let gap = max_gap(&res.final_state, &exact);

    let unlimited = DimensionlessGroups::reduced(0.104, 0.126, 0.037, 0.15, f64::INFINITY);
    let runaway = solve_radial(
        &unlimited,
        &ControlSchedule::voltage_only(),
        &grid,
        &SolverOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let t_blow = runaway.blowup.as_ref().map(|b| b.t_estimate);

    let ok = monotone
        && rel(i_max, 284.0) < 1e-6
        && one_way
        && res.switch_time.is_some()
        && res.blowup.is_none()
        && gap < 1e-3
        && t_blow.is_some_and(f64::is_finite);
    ensure(
        ok,
        format!(
            "I monotone {monotone}, max I {i_max:.6}, switch at t = {:.4}, one-way {one_way}, final gap {gap:.2e}; \
             unlimited blow-up at t = {}",
            res.switch_time.unwrap_or(f64::NAN),
            t_blow.map_or("none".to_string(), |t| format!("{t:.4}")),
        ),
    )
}

fn lumped_oracle() -> Check {
    let groups = DimensionlessGroups::reduced(0.104, 0.0, 0.0, 0.15, f64::INFINITY);
    let res = solve_lumped(&groups, &ControlSchedule::voltage_only(), &SolverOptions::default())
        .map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for (t, th) in res.times.iter().zip(&res.theta_max) {
        if *th <= 20.0 {
            worst = worst.max((th + (1.0 - 0.104 * t).ln()).abs());
            checked += 1;
        }
    }
    let t_blow = res.blowup.map(|b| b.t_estimate).unwrap_or(f64::NAN);
    let err_t = rel(t_blow, 1.0 / 0.104);
    ensure(
        worst < 1e-6 && err_t < 1e-3 && checked > 10,
        format!("max |theta - exact| {worst:.2e} over {checked} steps, blow-up t = {t_blow:.5} (rel {err_t:.2e})"),
    )
}

fn lumped_blows_up(lambda: f64, beta: f64, alpha: f64, delta: f64) -> Result<bool, String> {
    let g = 2.0 * (beta + delta * delta * alpha);
    let t_end = 1000.0 / g;
    let opts = SolverOptions {
        t_end,
        dt_max: t_end / 100.0,
        ..SolverOptions::default()
    };
    let groups = DimensionlessGroups::reduced(lambda, beta, alpha, delta, f64::INFINITY);
    let res = solve_lumped(&groups, &ControlSchedule::voltage_only(), &opts).map_err(|e| e.to_string())?;
    Ok(res.blew_up())
}

fn tangency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < 50 {
        let beta = rng.gen_range(1e-3..0.05);
        let delta = rng.gen_range(0.05..0.5);
        let alpha = rng.gen_range(0.0..1.0);
        let cooling = beta + delta * delta * alpha;
        if cooling >= 0.05 {
            continue;
        }
        let threshold = 2.0 / E * cooling;
        let (mut lo, mut hi) = (0.8 * threshold, 1.2 * threshold);
        if lumped_blows_up(lo, beta, alpha, delta)? || !lumped_blows_up(hi, beta, alpha, delta)? {
            return Err(format!("no bracket for beta {beta}, alpha {alpha}, delta {delta}"));
        }
        for _ in 0..10 {
            let mid = 0.5 * (lo + hi);
            if lumped_blows_up(mid, beta, alpha, delta)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        worst = worst.max(rel(0.5 * (lo + hi), threshold));
        done += 1;
    }
    ensure(
        worst < 0.02,
        format!("{done} triples, worst boundary deviation {worst:.2e}, limit 2e-2"),
    )
}

fn attraction_runs(
    solve: impl Fn(&SolverOptions) -> Result<TransientResult, String>,
    nodes: &[f64],
    center: f64,
    half_width: f64,
) -> Result<f64, String> {
    let runs = [0.0, 0.5, 6.0]
        .iter()
        .map(|amp| {
            let theta0 = nodes
                .iter()
                .map(|&x| amp * (1.0 - ((x - center) / half_width).powi(2)).max(0.0))
                .collect();
            solve(&SolverOptions::default().with_initial_theta(theta0))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut worst: f64 = 0.0;
    for a in 0..3 {
        for b in a + 1..3 {
            worst = worst.max(max_gap(&runs[a].final_state, &runs[b].final_state));
        }
    }
    Ok(worst)
}

fn global_attraction() -> Check {
    let axial_grid = SpatialGrid::axial(64).map_err(|e| e.to_string())?;
    let axial = DimensionlessGroups::reduced(50.0, 0.0, 1.0, 1.0, 1.0);
    let gap_axial = attraction_runs(
        |o| solve_axial(&axial, &ControlSchedule::current_only(1.0), &axial_grid, o).map_err(|e| e.to_string()),
        &axial_grid.nodes(),
        0.2,
        0.4,
    )?;
    let radial_grid = SpatialGrid::radial(64).map_err(|e| e.to_string())?;
    let radial = DimensionlessGroups::reduced(40.0, 0.5, 0.0, 0.15, 1.0);
    let gap_radial = attraction_runs(
        |o| solve_radial(&radial, &ControlSchedule::current_only(1.0), &radial_grid, o).map_err(|e| e.to_string()),
        &radial_grid.nodes(),
        0.0,
        0.8,
    )?;
    ensure(
        gap_axial < 1e-3 && gap_radial < 1e-3,
        format!("pairwise gaps axial {gap_axial:.2e}, radial {gap_radial:.2e}, limit 1e-3"),
    )
}

fn high_aspect() -> Check {
    let mut parts = Vec::new();
    let mut ok = true;
    for alpha in [0.1, 1.0, 10.0] {
        let fold = high_aspect_critical(alpha, 0.0).map_err(|e| e.to_string())?.lambda_c;
        let err = rel(fold, axial_critical_lambda(alpha).map_err(|e| e.to_string())?);
        ok &= err < 1e-3;
        parts.push(format!("B=0 alpha={alpha} {err:.1e}"));
    }
    for alpha in [1.0, 10.0] {
        let fold = high_aspect_critical(alpha, 1e3).map_err(|e| e.to_string())?.lambda_c;
        let err = rel(fold, 1e3 / E);
        ok &= err < 0.05;
        parts.push(format!("B=1e3 alpha={alpha} {err:.1e}"));
    }
    ensure(ok, format!("{} (limits 1e-3, 5e-2)", parts.join(", ")))
}

fn regime() -> Check {
    let p = DimensionalParameters::table1();
    let e_star = critical_field(&p, 1110.0).map_err(|e| e.to_string())?;
    let expected = 3e4 * (radial_critical_lambda(0.126).map_err(|e| e.to_string())? / 0.104).sqrt();
    let err = rel(e_star, expected);
    let flash = flash_condition(&p, 1110.0, 3e4).map_err(|e| e.to_string())?.flash;
    let mut decreasing = true;
    let mut prev = f64::INFINITY;
    for k in 0..=500 {
        let e = critical_field(&p, 900.0 + k as f64).map_err(|e| e.to_string())?;
        decreasing &= e < prev;
        prev = e;
    }
    ensure(
        err < 5e-3 && flash && decreasing,
        format!(
            "E*(1110 K) = {e_star:.5e} V/m (rel {err:.1e}), operating point flash {flash}, E* decreasing {decreasing}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("nondimensionalization", Duration::from_millis(1), nondim),
        ("critical-curve asymptotics", Duration::from_secs(1), asymptotics),
        ("exact-solution residuals", Duration::from_secs(5), residuals),
        ("transient-to-steady convergence", Duration::from_secs(30), convergence),
        ("flash trajectory", Duration::from_secs(60), flash_trajectory),
        ("lumped oracle", Duration::from_secs(1), lumped_oracle),
        ("tangency criterion", Duration::from_secs(30), tangency),
        ("current-control attraction", Duration::from_secs(60), global_attraction),
        ("high-aspect limits", Duration::from_secs(60), high_aspect),
        ("regime diagram", Duration::from_secs(10), regime),
    ];
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let (pass, detail) = match outcome {
            Ok(msg) => (in_time, msg),
            Err(msg) => (false, msg),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {detail} [{:.3?}, limit {limit:?}]",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            elapsed,
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
