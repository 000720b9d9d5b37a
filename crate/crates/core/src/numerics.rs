//! Small scalar and banded-matrix routines shared by the steady and transient solvers.

/// Bisection on `[lo, hi]` for a sign change of `f`, run to machine precision.
///
/// Endpoint values may be infinite (the current-controlled relations diverge at
/// the right end of their domain). Returns `None` when the endpoints do not
/// bracket a root.
pub(crate) fn bisect<F>(mut lo: f64, mut hi: f64, mut f: F) -> Option<f64>
where
    F: FnMut(f64) -> f64,
{
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.is_nan() || f_hi.is_nan() || f_lo.signum() == f_hi.signum() {
        return None;
    }
    let lo_negative = f_lo < 0.0;
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if (f_mid < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Locates the maximizer of a smooth unimodal function on `(lo, hi)` given the
/// derivative of its logarithm, which must be strictly decreasing and change
/// sign inside the interval.
pub(crate) fn unimodal_argmax<F>(lo: f64, hi: f64, log_slope: F) -> Option<f64>
where
    F: FnMut(f64) -> f64,
{
    bisect(lo, hi, log_slope)
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `x_tol`. Returns `(argmax, max)`.
pub(crate) fn golden_section_max<F, E>(mut lo: f64, mut hi: f64, x_tol: f64, mut f: F) -> Result<(f64, f64), E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > x_tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 > f2 { (x1, f1) } else { (x2, f2) })
}

/// Thomas algorithm for a tridiagonal system. `sub[0]` and `sup[n-1]` are
/// ignored. `rhs` is overwritten with the solution. Returns `false` on a zero
/// pivot.
pub(crate) fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &mut [f64]) -> bool {
    let n = diag.len();
    debug_assert!(sub.len() == n && sup.len() == n && rhs.len() == n);
    let mut c_prime = vec![0.0; n];
    let mut pivot = diag[0];
    if pivot == 0.0 || !pivot.is_finite() {
        return false;
    }
    c_prime[0] = sup[0] / pivot;
    rhs[0] /= pivot;
    for i in 1..n {
        pivot = diag[i] - sub[i] * c_prime[i - 1];
        if pivot == 0.0 || !pivot.is_finite() {
            return false;
        }
        c_prime[i] = if i + 1 < n { sup[i] / pivot } else { 0.0 };
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= c_prime[i] * rhs[i + 1];
    }
    true
}

/// Classical fourth-order Runge–Kutta for a second-order scalar ODE
/// `y'' = accel(y)` written as a first-order pair. Calls `visit(k, y, y')`
/// after each of the `steps` steps; returning `false` aborts the march.
pub(crate) fn rk4_second_order<A, V>(y0: f64, dy0: f64, length: f64, steps: usize, accel: A, mut visit: V) -> (f64, f64)
where
    A: Fn(f64) -> f64,
    V: FnMut(usize, f64, f64) -> bool,
{
    let h = length / steps as f64;
    let (mut y, mut dy) = (y0, dy0);
    for k in 1..=steps {
        let k1y = dy;
        let k1v = accel(y);
        let k2y = dy + 0.5 * h * k1v;
        let k2v = accel(y + 0.5 * h * k1y);
        let k3y = dy + 0.5 * h * k2v;
        let k3v = accel(y + 0.5 * h * k2y);
        let k4y = dy + h * k3v;
        let k4v = accel(y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        dy += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if !visit(k, y, dy) {
            break;
        }
    }
    (y, dy)
}

/// Composite Simpson weights for `n` (even) uniform intervals of width `h`.
pub(crate) fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    debug_assert!(n % 2 == 0 && n > 0);
    (0..=n)
        .map(|i| {
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w * h / 3.0
        })
        .collect()
}
