//! Two-point functions of a free scalar field of mass `m`.
//!
//! Everything here is expressed through the Wightman function
//! `W(r, t) = <0|Φ(x, t) Φ(0, 0)|0>` with `r = |x|`:
//!
//! ```text
//! W(r, t) = 1/(4π² r) ∫ dk  k sin(k r) / ω  e^{-i ω t},    ω = √(k² + m²)
//! ```
//!
//! Off the light cone it has the closed form
//!
//! ```text
//! Re W = m Y1(m σ) / (8π σ)           σ = √(t² - r²)   (time-like)
//!      = 2m K1(m σ) / (8π² σ)         σ = √(r² - t²)   (space-like)
//! Im W = sgn(t) m J1(m σ) / (8π σ)    (time-like; zero when space-like)
//! ```
//!
//! plus the distribution `-sgn(t) δ(t² - r²)/(4π)` in `Im W`. The commutator
//! function is `Δ = 2 Im W`. Both branches of `Re W` share the pole
//! `-1/(4π² s²)` at the cone, which is what makes principal values across it
//! finite.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_oscillatory, QuadratureConfig};
use crate::special::{bessel_j1, bessel_k1, bessel_y1, k1_regular, y1_regular};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Universal strength of the `1/s²` light-cone pole of `Re W`.
pub const POLE_STRENGTH: f64 = -1.0 / (4.0 * PI * PI);

/// Scalar mass; zero is the massless field.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Mass(f64);

impl Mass {
    pub fn new(m: f64) -> Result<Mass> {
        if m.is_finite() && m >= 0.0 {
            Ok(Mass(m))
        } else {
            Err(Error::validation("m", format!("mass must be finite and >= 0, got {m}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Separation between two events: spatial distance `r`, time difference `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalPoint {
    r: f64,
    t: f64,
    s2: f64,
}

impl IntervalPoint {
    pub fn new(r: f64, t: f64) -> Result<IntervalPoint> {
        if !(r.is_finite() && t.is_finite()) || r < 0.0 {
            return Err(Error::domain("IntervalPoint", format!("need finite r >= 0 and t, got r={r}, t={t}")));
        }
        Ok(IntervalPoint { r, t, s2: t * t - r * r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// `t² - r²`.
    pub fn s2(&self) -> f64 {
        self.s2
    }
}

fn check_finite(op: &'static str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("non-finite argument {x}")))
    }
}

/// Smooth time-like part of the commutator kernel, `m J1(m√s²) / (8π√s²)`,
/// and zero for `s² <= 0`. The delta function on the cone is left to callers.
pub fn pauli_jordan_smooth(s2: f64, m: Mass) -> Result<f64> {
    check_finite("pauli_jordan_smooth", s2)?;
    let m = m.get();
    if s2 <= 0.0 || m == 0.0 {
        return Ok(0.0);
    }
    let sigma = s2.sqrt();
    let x = m * sigma;
    // J1(x)/x -> 1/2; the series is exact enough that no special case is needed
    // beyond avoiding 0/0.
    if x < 1e-150 {
        return Ok(m * m / (16.0 * PI));
    }
    Ok(m * bessel_j1(x)? / (8.0 * PI * sigma))
}

/// `Re W` as a function of `s²`, split as `regular + pole_strength / s²`.
///
/// `regular` is finite away from the cone and only logarithmically singular
/// at it; `pole_strength` is always [`POLE_STRENGTH`].
pub fn wightman_imag_kernel(s2: f64, m: Mass) -> Result<(f64, f64)> {
    check_finite("wightman_imag_kernel", s2)?;
    if s2 == 0.0 {
        return Err(Error::domain("wightman_imag_kernel", "s2 = 0 is the light-cone pole"));
    }
    Ok((kernel_regular(s2, m)?, POLE_STRENGTH))
}

pub(crate) fn kernel_regular(s2: f64, m: Mass) -> Result<f64> {
    let m = m.get();
    if m == 0.0 {
        return Ok(0.0);
    }
    let sigma = s2.abs().sqrt();
    let x = m * sigma;
    if s2 > 0.0 {
        Ok(m * y1_regular(x)? / (8.0 * PI * sigma))
    } else {
        Ok(2.0 * m * k1_regular(x)? / (8.0 * PI * PI * sigma))
    }
}

/// Full `Re W` off the cone, using the unsplit Bessel functions.
pub(crate) fn kernel_full(s2: f64, m: Mass) -> Result<f64> {
    let mv = m.get();
    if mv == 0.0 {
        return Ok(POLE_STRENGTH / s2);
    }
    let sigma = s2.abs().sqrt();
    let x = mv * sigma;
    if x < 1e-3 {
        return Ok(kernel_regular(s2, m)? + POLE_STRENGTH / s2);
    }
    if s2 > 0.0 {
        Ok(mv * bessel_y1(x)? / (8.0 * PI * sigma))
    } else {
        Ok(2.0 * mv * bessel_k1(x)? / (8.0 * PI * PI * sigma))
    }
}

/// Closed-form `W(r, t)` away from the light cone.
pub fn wightman_closed_form(p: IntervalPoint, m: Mass) -> Result<Complex64> {
    let s2 = p.s2();
    if s2 == 0.0 {
        return Err(Error::domain("wightman_closed_form", "point lies on the light cone"));
    }
    let re = kernel_full(s2, m)?;
    let im = if s2 > 0.0 { p.t().signum() * pauli_jordan_smooth(s2, m)? } else { 0.0 };
    Ok(Complex64::new(re, im))
}

fn damped_cutoff(eps: f64, cfg: &QuadratureConfig) -> f64 {
    cfg.k_max.min(50.0 / eps)
}

/// `W` evaluated with the factor `e^{-ε ω}` inside the momentum integral,
/// i.e. `W(r, t - iε)`. Requires `r > 0` and `ε > 0`.
pub fn wightman_damped(p: IntervalPoint, m: Mass, eps: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let (r, t) = (p.r(), p.t());
    if r <= 0.0 {
        return Err(Error::domain("wightman_damped", "r must be positive; use vacuum_wightman_equal_point"));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::domain("wightman_damped", format!("damping must be positive, got {eps}")));
    }
    let m2 = m.get() * m.get();
    let k_cut = damped_cutoff(eps, cfg);
    let integrand = |k: f64| {
        let w = (k * k + m2).sqrt();
        let amp = k * (k * r).sin() / w * (-eps * w).exp();
        Complex64::from_polar(amp, -w * t)
    };
    let res = integrate_oscillatory(integrand, 0.0, k_cut, r + t.abs(), cfg)?;
    Ok(res.value / (4.0 * PI * PI * r))
}

/// Momentum-space evaluation of `W(r, t)` for `r > 0`, independent of the
/// Bessel closed forms.
///
/// The damped integral is an analytic function of `ε` off the cone, so it is
/// evaluated at `ε0, ε0/2, .., ε0/16` and extrapolated to `ε = 0` by Neville's
/// scheme. `ε0` is `cfg.uv_damping`, shrunk to a quarter of the distance to the
/// cone when that is smaller.
pub fn wightman_momentum_oracle(p: IntervalPoint, m: Mass, cfg: &QuadratureConfig) -> Result<Complex64> {
    let gap = (p.t().abs() - p.r()).abs();
    if gap == 0.0 {
        return Err(Error::domain("wightman_momentum_oracle", "point lies on the light cone"));
    }
    if cfg.uv_damping <= 0.0 {
        return Err(Error::domain("wightman_momentum_oracle", "uv_damping must be positive"));
    }
    let eps0 = cfg.uv_damping.min(0.25 * gap);
    const LEVELS: usize = 5;
    let mut h = [0.0; LEVELS];
    let mut table = [Complex64::default(); LEVELS];
    for i in 0..LEVELS {
        h[i] = eps0 / f64::powi(2.0, i as i32);
        table[i] = wightman_damped(p, m, h[i], cfg)?;
    }
    // Neville extrapolation to h = 0.
    for level in 1..LEVELS {
        for i in (level..LEVELS).rev() {
            let (hi, hj) = (h[i], h[i - level]);
            table[i] = (table[i] * hj - table[i - 1] * hi) / (hj - hi);
        }
    }
    Ok(table[LEVELS - 1])
}

/// `W(0, τ)` regularised by `e^{-ε ω}` with `ε = cfg.uv_damping`:
/// `1/(4π²) ∫ dk  k²/ω  e^{-iωτ - εω}`.
pub fn vacuum_wightman_equal_point(tau: f64, m: Mass, cfg: &QuadratureConfig) -> Result<Complex64> {
    check_finite("vacuum_wightman_equal_point", tau)?;
    let eps = cfg.uv_damping;
    if eps <= 0.0 {
        return Err(Error::domain(
            "vacuum_wightman_equal_point",
            "uv_damping must be positive: the coincident limit diverges",
        ));
    }
    let m2 = m.get() * m.get();
    let integrand = |k: f64| {
        let w = (k * k + m2).sqrt();
        Complex64::from_polar(k * k / w * (-eps * w).exp(), -w * tau)
    };
    let res = integrate_oscillatory(integrand, 0.0, damped_cutoff(eps, cfg), tau.abs(), cfg)?;
    Ok(res.value / (4.0 * PI * PI))
}

/// Positive- and negative-frequency pieces of the step function,
/// `Θ±(τ) = -1/(2πi) ∫ dω e^{-iωτ}/(ω + iε)` over `[0, Ω]` and `[-Ω, 0]`
/// with `Ω = cfg.k_max`.
pub fn theta_frequency_split(tau: f64, eps: f64, cfg: &QuadratureConfig) -> Result<(Complex64, Complex64)> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::domain("theta_frequency_split", format!("eps must be positive, got {eps}")));
    }
    if !tau.is_finite() || tau == 0.0 {
        return Err(Error::domain("theta_frequency_split", "tau must be finite and non-zero"));
    }
    let integrand = |w: f64| Complex64::from_polar(1.0, -w * tau) / Complex64::new(w, eps);
    let omega = cfg.k_max;
    let prefactor = -1.0 / Complex64::new(0.0, 2.0 * PI);
    let plus = integrate_oscillatory(integrand, 0.0, omega, tau.abs(), cfg)?.value;
    let minus = integrate_oscillatory(integrand, -omega, 0.0, tau.abs(), cfg)?.value;
    Ok((prefactor * plus, prefactor * minus))
}
