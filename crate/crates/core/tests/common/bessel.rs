//! Integral representations of the Bessel functions.

use super::{periodic_trapezoid, simpson};
use std::f64::consts::PI;

pub fn j_oracle(n: f64, x: f64) -> f64 {
    periodic_trapezoid(|t| (n * t - x * t.sin()).cos(), 2.0 * PI, 512) / (2.0 * PI)
}

/// Schläfli's integral for Y_n, n in {0, 1}.
pub fn y_oracle(n: f64, x: f64) -> f64 {
    let finite = simpson(|t| (x * t.sin() - n * t).sin(), 0.0, PI, 200_000) / PI;
    let upper = (60.0 / x).asinh() + 1.0;
    let sign = if n == 0.0 { 1.0 } else { -1.0 };
    let tail = simpson(|t| ((n * t).exp() + sign * (-n * t).exp()) * (-x * t.sinh()).exp(), 0.0, upper, 200_000) / PI;
    finite - tail
}

pub fn k1_oracle(x: f64) -> f64 {
    let upper = (60.0 / x).acosh().max(1.0) + 1.0;
    simpson(|t| (-x * t.cosh()).exp() * t.cosh(), 0.0, upper, 200_000)
}

pub fn samples() -> Vec<f64> {
    // 50 points spread over [0.1, 50], denser at small x.
    (0..50).map(|i| 0.1 * (500f64).powf(i as f64 / 49.0)).collect()
}

/// Oscillating functions are compared against their envelope √(2/(πx)) so
/// points near a zero do not inflate the error.
pub fn envelope(x: f64) -> f64 {
    (2.0 / (PI * x)).sqrt()
}
