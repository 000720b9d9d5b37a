//! Oracles shared by the integration and acceptance tests.
//!
//! The residual checks sample a closed-form profile on a uniform grid (ghost
//! points included, taken from the same formula), differentiate it with
//! fourth-order central differences and evaluate nonlocal integrals with
//! composite Simpson. None of this shares code with the library.
#![allow(dead_code)]

use flashsim_core::{AxialSteadyState, RadialSteadyState, SteadyProfile};

pub fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len() - 1;
    assert!(n % 2 == 0);
    let mut s = values[0] + values[n];
    for (i, v) in values.iter().enumerate().take(n).skip(1) {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * v;
    }
    s * h / 3.0
}

fn d1(f: &[f64], i: usize, h: f64) -> f64 {
    (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h)
}

fn d2(f: &[f64], i: usize, h: f64) -> f64 {
    (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] - f[i - 2]) / (12.0 * h * h)
}

fn radial_formula(st: &RadialSteadyState, r: f64) -> f64 {
    -2.0 * (st.c - st.b + st.b * r * r).ln()
}

/// Max-norm residual of `theta'' + theta'/r + kappa e^theta = 0` and of the
/// Robin condition `theta'(1) + beta theta(1) = 0`, where `kappa` is the
/// forcing under voltage control and `forcing / (4 K^2)`,
/// `K = int_0^1 e^theta r dr`, under current control.
pub fn radial_residual(st: &RadialSteadyState, current_controlled: bool, cells: usize) -> f64 {
    let h = 1.0 / cells as f64;
    // index k <-> r = (k - 2) h
    let theta: Vec<f64> = (0..cells + 5)
        .map(|k| radial_formula(st, (k as f64 - 2.0) * h))
        .collect();
    let kappa = if current_controlled {
        let integrand: Vec<f64> = (0..=cells).map(|i| theta[i + 2].exp() * i as f64 * h).collect();
        let k = simpson(&integrand, h);
        st.forcing / (4.0 * k * k)
    } else {
        st.forcing
    };
    let mut worst: f64 = 0.0;
    for i in 0..=cells {
        let k = i + 2;
        let r = i as f64 * h;
        let lap = if i == 0 {
            2.0 * d2(&theta, k, h)
        } else {
            d2(&theta, k, h) + d1(&theta, k, h) / r
        };
        worst = worst.max((lap + kappa * theta[k].exp()).abs());
    }
    let robin = d1(&theta, cells + 2, h) + st.beta * theta[cells + 2];
    worst.max(robin.abs())
}

fn axial_formula(st: &AxialSteadyState, z: f64) -> f64 {
    2.0 * ((st.a * z).cos() / (0.5 * st.a).cos()).ln() + st.b
}

/// Max-norm residual of `theta'' + kappa e^{-theta} = 0` on `[-1/2, 1/2]` and
/// of the Robin conditions `theta'(+-1/2) = -+ alpha theta(+-1/2)`, where
/// `kappa = Lambda / J^2`, `J = int e^{-theta}`, under voltage control and
/// `kappa = Lambda I^2` under current control.
pub fn axial_residual(st: &AxialSteadyState, current_controlled: bool, cells: usize) -> f64 {
    let h = 1.0 / cells as f64;
    let theta: Vec<f64> = (0..cells + 5)
        .map(|k| axial_formula(st, -0.5 + (k as f64 - 2.0) * h))
        .collect();
    let kappa = if current_controlled {
        st.forcing
    } else {
        let integrand: Vec<f64> = (0..=cells).map(|i| (-theta[i + 2]).exp()).collect();
        let j = simpson(&integrand, h);
        st.forcing / (j * j)
    };
    let mut worst: f64 = 0.0;
    for i in 0..=cells {
        let k = i + 2;
        worst = worst.max((d2(&theta, k, h) + kappa * (-theta[k]).exp()).abs());
    }
    let left = d1(&theta, 2, h) - st.alpha * theta[2];
    let right = d1(&theta, cells + 2, h) + st.alpha * theta[cells + 2];
    worst.max(left.abs()).max(right.abs())
}

/// Profile values at the given nodes.
pub fn profile<P: SteadyProfile>(st: &P, nodes: &[f64]) -> Vec<f64> {
    nodes.iter().map(|&x| st.theta(x).unwrap()).collect()
}
