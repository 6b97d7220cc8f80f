//! One-point localization densities in the state left behind by the point
//! source. The field is the vacuum plus `g Δ̃` with `Δ̃ = Θ(t - y0) Δ±`, so
//! both densities are `g²` times a squared two-point function:
//!
//! * Glauber: `g² |W(r, t - y0)|²`;
//! * Newton–Wigner: `g² |(R W)(r, t - y0)|²`, where `R = √2 (m² - ∇²)^{1/4}`
//!   multiplies each mode by `√(2ω)`.
//!
//! Neither vanishes outside the light cone of the source.

use crate::error::{Error, Result};
use crate::propagators::{wightman_closed_form, wightman_damped, IntervalPoint};
use crate::quadrature::{integrate_oscillatory, QuadratureConfig};
use crate::response::Scenario;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    GlauberDensity,
    NewtonWignerDensity,
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Observable::GlauberDensity => "glauber",
            Observable::NewtonWignerDensity => "newton-wigner",
        })
    }
}

/// A density sampled on a radial grid at a fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub observable: Observable,
    pub t: f64,
    /// `t - y0`: points with larger `r` are space-like to the source.
    pub light_cone_radius: f64,
    /// `(r, density)` in grid order.
    pub points: Vec<(f64, f64)>,
    pub scenario: Scenario,
    pub epsilon_uv: f64,
}

fn check_point(op: &'static str, r: f64, t: f64, scen: &Scenario) -> Result<()> {
    scen.validate()?;
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::domain(op, format!("r must be positive, got {r}")));
    }
    if !t.is_finite() {
        return Err(Error::domain(op, format!("t must be finite, got {t}")));
    }
    Ok(())
}

/// `g² |W(r, t - y0)|²`, zero until the source fires.
///
/// Off the cone `W` is taken in closed form; exactly on it, where the closed
/// form has its pole, the damped mode sum at `cfg.uv_damping` is used.
pub fn glauber_density(r: f64, t: f64, scen: &Scenario, cfg: &QuadratureConfig) -> Result<f64> {
    check_point("glauber_density", r, t, scen)?;
    let tau = t - scen.y0;
    if tau <= 0.0 {
        return Ok(0.0);
    }
    let p = IntervalPoint::new(r, tau)?;
    let w = if p.s2() == 0.0 {
        cfg.validate()?;
        if cfg.uv_damping <= 0.0 {
            return Err(Error::domain("glauber_density", "on the light cone the density needs uv_damping > 0"));
        }
        wightman_damped(p, scen.mass()?, cfg.uv_damping, cfg)?
    } else {
        wightman_closed_form(p, scen.mass()?)?
    };
    Ok(scen.g * scen.g * w.norm_sqr())
}

/// `(R W)(r, τ) = 1/(4π² r) ∫ dk  k sin(kr)/ω · √(2ω) · e^{-iωτ - εω}`.
fn newton_wigner_amplitude(r: f64, tau: f64, m: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let eps = cfg.uv_damping;
    let m2 = m * m;
    let integrand = |k: f64| {
        let w = (k * k + m2).sqrt();
        let amp = k * (k * r).sin() / w * (2.0 * w).sqrt() * (-eps * w).exp();
        Complex64::from_polar(amp, -w * tau)
    };
    let k_cut = cfg.k_max.min(50.0 / eps);
    let v = integrate_oscillatory(integrand, 0.0, k_cut, r + tau.abs(), cfg)?.value;
    Ok(v / (4.0 * PI * PI * r))
}

/// `g² |(R W)(r, t - y0)|²` at fixed damping `cfg.uv_damping`, zero until the
/// source fires. The mode integral grows like `√k`, so the damping is part of
/// the definition and must be positive.
pub fn newton_wigner_density(r: f64, t: f64, scen: &Scenario, cfg: &QuadratureConfig) -> Result<f64> {
    check_point("newton_wigner_density", r, t, scen)?;
    cfg.validate()?;
    if cfg.uv_damping <= 0.0 {
        return Err(Error::domain("newton_wigner_density", "uv_damping must be positive"));
    }
    let tau = t - scen.y0;
    if tau <= 0.0 {
        return Ok(0.0);
    }
    let a = newton_wigner_amplitude(r, tau, scen.m, cfg)?;
    Ok(scen.g * scen.g * a.norm_sqr())
}

/// Evaluates `observable` at every radius of `r_grid` (in parallel, output in
/// grid order).
pub fn density_profile(
    observable: Observable,
    t: f64,
    r_grid: &[f64],
    scen: &Scenario,
    cfg: &QuadratureConfig,
) -> Result<DensityProfile> {
    if r_grid.windows(2).any(|w| w[0] >= w[1]) || r_grid.iter().any(|&r| r <= 0.0) {
        return Err(Error::validation("r_grid", "must be positive and strictly increasing"));
    }
    let eval = |&r: &f64| -> Result<(f64, f64)> {
        let v = match observable {
            Observable::GlauberDensity => glauber_density(r, t, scen, cfg)?,
            Observable::NewtonWignerDensity => newton_wigner_density(r, t, scen, cfg)?,
        };
        Ok((r, v))
    };
    let points = r_grid.par_iter().map(eval).collect::<Result<Vec<_>>>()?;
    Ok(DensityProfile {
        observable,
        t,
        light_cone_radius: t - scen.y0,
        points,
        scenario: *scen,
        epsilon_uv: cfg.uv_damping,
    })
}
