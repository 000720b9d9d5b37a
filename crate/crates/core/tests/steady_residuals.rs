mod common;

use common::{axial_residual, radial_residual};
use flashsim_core::{
    axial_critical_lambda, axial_steady_current, axial_steady_voltage, radial_critical_lambda, radial_steady_current,
    radial_steady_voltage, Branch,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CELLS: usize = 512;

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

#[test]
fn radial_voltage_states_satisfy_the_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let beta = log_uniform(&mut rng, 1e-2, 10.0);
        let lambda = rng.gen_range(0.05..0.95) * radial_critical_lambda(beta).unwrap();
        for st in radial_steady_voltage(lambda, beta).unwrap() {
            if st.branch != Branch::Stable {
                continue;
            }
            let r = radial_residual(&st, false, CELLS);
            assert!(r < 1e-5, "beta {beta} lambda {lambda}: residual {r:e}");
        }
    }
}

#[test]
fn radial_current_states_satisfy_the_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let beta = log_uniform(&mut rng, 1e-2, 10.0);
        let forcing = log_uniform(&mut rng, 1e-2, 1e2);
        let st = radial_steady_current(forcing, beta).unwrap();
        let r = radial_residual(&st, true, CELLS);
        assert!(r < 1e-5, "beta {beta} forcing {forcing}: residual {r:e}");
    }
}

#[test]
fn table1_current_state_satisfies_the_equation() {
    let st = radial_steady_current(0.104 * 284.0 * 284.0, 0.126).unwrap();
    assert!(radial_residual(&st, true, CELLS) < 1e-6);
}

#[test]
fn axial_voltage_states_satisfy_the_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..40 {
        let alpha = log_uniform(&mut rng, 1e-2, 100.0);
        let lambda = rng.gen_range(0.05..0.95) * axial_critical_lambda(alpha).unwrap();
        for st in axial_steady_voltage(lambda, alpha).unwrap() {
            if st.branch != Branch::Stable {
                continue;
            }
            let r = axial_residual(&st, false, CELLS);
            assert!(r < 1e-5, "alpha {alpha} Lambda {lambda}: residual {r:e}");
        }
    }
}

#[test]
fn axial_current_states_satisfy_the_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..40 {
        let alpha = log_uniform(&mut rng, 1e-2, 100.0);
        let forcing = log_uniform(&mut rng, 1e-2, 1e2);
        let st = axial_steady_current(forcing, alpha).unwrap();
        let r = axial_residual(&st, true, CELLS);
        assert!(r < 1e-5, "alpha {alpha} forcing {forcing}: residual {r:e}");
    }
}

#[test]
fn steep_current_states_converge_at_fourth_order() {
    // Strong forcing gives thin hot layers that 512 cells do not resolve; the
    // residual is then stencil truncation and falls by ~2^8 over two doublings.
    let st = radial_steady_current(1e4, 3.0).unwrap();
    let coarse = radial_residual(&st, true, CELLS);
    let fine = radial_residual(&st, true, 4 * CELLS);
    assert!(coarse > 1e-4 && fine < coarse / 100.0, "{coarse:e} {fine:e}");

    let st = axial_steady_current(1e4, 10.0).unwrap();
    let coarse = axial_residual(&st, true, CELLS);
    let fine = axial_residual(&st, true, 4 * CELLS);
    assert!(coarse > 1e-4 && fine < coarse / 100.0, "{coarse:e} {fine:e}");
}

#[test]
fn unstable_branch_also_satisfies_the_equation() {
    let beta = 1.0;
    let lambda = 0.5 * radial_critical_lambda(beta).unwrap();
    let states = radial_steady_voltage(lambda, beta).unwrap();
    let unstable = states.iter().find(|s| s.branch == Branch::Unstable).unwrap();
    assert!(radial_residual(unstable, false, CELLS) < 1e-5);

    let alpha = 1.0;
    let lambda = 0.5 * axial_critical_lambda(alpha).unwrap();
    let states = axial_steady_voltage(lambda, alpha).unwrap();
    let unstable = states.iter().find(|s| s.branch == Branch::Unstable).unwrap();
    assert!(axial_residual(unstable, false, CELLS) < 1e-5);
}

#[test]
fn radial_heat_balance_closes() {
    // Total generation int kappa e^theta r dr equals the side loss beta theta(1).
    let beta = 0.3;
    let lambda = 0.6 * radial_critical_lambda(beta).unwrap();
    let st = &radial_steady_voltage(lambda, beta).unwrap()[0];
    let n = 2000;
    let h = 1.0 / n as f64;
    let mut gen = 0.0;
    for i in 0..=n {
        let r = i as f64 * h;
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let theta = -2.0 * (st.c - st.b + st.b * r * r).ln();
        gen += w * lambda * theta.exp() * r;
    }
    gen *= h / 3.0;
    assert!((gen - beta * st.surface_theta()).abs() < 1e-10);
}
