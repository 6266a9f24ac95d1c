//! Bessel functions of the first kind, orders 0 and 1, for real arguments.
//!
//! Small arguments use the power series; beyond [`SERIES_CUTOFF`] the Hankel
//! asymptotic expansion is summed up to its smallest term.

use crate::error::{Error, Result};

pub const SERIES_CUTOFF: f64 = 12.0;

pub fn bessel_j0(x: f64) -> Result<f64> {
    bessel(0, x)
}

pub fn bessel_j1(x: f64) -> Result<f64> {
    bessel(1, x)
}

fn bessel(order: u32, x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::InvalidArgument("Bessel argument is NaN".into()));
    }
    // J0 is even, J1 odd
    let (ax, sign) = if x < 0.0 && order == 1 {
        (-x, -1.0)
    } else {
        (x.abs(), 1.0)
    };
    let v = if ax <= SERIES_CUTOFF {
        series(order, ax)
    } else {
        asymptotic(order, ax)
    };
    Ok(sign * v)
}

fn series(order: u32, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = if order == 0 { 1.0 } else { 0.5 * x };
    let mut sum = term;
    let nu = f64::from(order);
    for k in 1..200 {
        let k = f64::from(k);
        term *= q / (k * (k + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn asymptotic(order: u32, x: f64) -> f64 {
    let mu = 4.0 * f64::from(order * order);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0; // a_k(ν) / x^k
    let mut prev = f64::INFINITY;
    for k in 1..100u32 {
        let odd = f64::from(2 * k - 1);
        let next = a * (mu - odd * odd) / (f64::from(k) * 8.0 * x);
        if next.abs() >= prev || next.abs() < 1e-17 {
            break;
        }
        prev = next.abs();
        a = next;
        // P collects even k with alternating signs, Q the odd ones
        match k % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
    }
    let chi = x - (0.5 * f64::from(order) + 0.25) * std::f64::consts::PI;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}
