//! A quick battery that checks the reduced formulas against their
//! brute-force counterparts. Every check reports its residual and tolerance.

use crate::error::Result;
use crate::propagators::{wightman_closed_form, wightman_momentum_oracle, IntervalPoint, Mass};
use crate::quadrature::QuadratureConfig;
use crate::response::{amplitude_p2, amplitude_p3, detect, oracle_gd, oracle_udd, DetectorKind, Scenario};
use crate::signal::{hilbert_numeric, im_v_analytic, re_v, FrontSignal, UniformSamples};
use crate::special::{bessel_j0, bessel_j1, bessel_y0, bessel_y1};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.residual < self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelfTestReport {
    pub checks: Vec<Check>,
}

impl SelfTestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn check(name: impl Into<String>, residual: f64, tolerance: f64) -> Check {
    Check { name: name.into(), residual, tolerance }
}

/// Runs the battery with `cfg`. Evaluation errors abort the run; a check that
/// computes but misses its tolerance is reported as failed.
pub fn run_selftest(cfg: &QuadratureConfig) -> Result<SelfTestReport> {
    let mut checks = Vec::new();

    let mut residual = 0.0f64;
    for x in [0.5, 3.0, 12.0, 40.0] {
        let w = bessel_j1(x)? * bessel_y0(x)? - bessel_j0(x)? * bessel_y1(x)?;
        residual = residual.max(rel(w, 2.0 / (PI * x)));
    }
    checks.push(check("bessel wronskian", residual, 1e-10));

    let m = Mass::new(1.0)?;
    let mut residual = 0.0f64;
    for (r, t) in [(1.0, 3.0), (2.0, 0.5), (1.5, -1.0)] {
        let p = IntervalPoint::new(r, t)?;
        let closed = wightman_closed_form(p, m)?;
        residual = residual.max((closed - wightman_momentum_oracle(p, m, cfg)?).norm() / closed.norm());
    }
    checks.push(check("wightman closed form vs mode sum", residual, 1e-6));

    let base = Scenario::default();
    let scenarios = [
        ("mixed window", base),
        ("time-like window", Scenario { t_i: 1.5, ..base }),
        ("space-like detector", base.with_distance(4.0)),
    ];
    for (label, s) in scenarios {
        let udd = s.g * s.g * amplitude_p2(&s, cfg)?.norm_sqr();
        let o = oracle_udd(&s, 64, cfg)?;
        // The commutator term vanishes outside the cone; compare absolutely there.
        let residual = if o == 0.0 || udd == 0.0 { (udd - o).abs() } else { rel(udd, o) };
        checks.push(check(format!("udd vs mode sum, {label}"), residual, 1e-3));
        let gd = detect(&s, DetectorKind::Gd, cfg)?.probability;
        checks.push(check(format!("gd vs mode sum, {label}"), rel(gd, oracle_gd(&s, 64, cfg)?), 1e-3));
    }

    let s = Scenario { m: 0.0, ..base };
    let closed = -Complex64::from_polar(2.0 * s.c1 * s.m_eg_abs / (8.0 * PI * s.r()), s.omega_eg * (s.r() + s.y0));
    checks.push(check("massless closed form", (amplitude_p2(&s, cfg)? - closed).norm() / closed.norm(), 1e-12));

    let halved = QuadratureConfig { pv_excision: 0.5 * cfg.pv_excision, ..*cfg };
    let a = amplitude_p3(&base, cfg)?;
    let b = amplitude_p3(&base, &halved)?;
    checks.push(check("principal value under halved excision", (a - b).norm() / a.norm(), cfg.rel_tol));

    let (f0, dz) = (1.0, 0.1);
    let samples = UniformSamples::from_fn(-6.0, 6.0, 12_000, |t| re_v(&FrontSignal { f0, dz, z: 0.0, t }));
    let mut residual = 0.0f64;
    for t in [-1.0005, -0.2005, 0.0505, 0.4005] {
        let exact = im_v_analytic(&FrontSignal::new(f0, dz, 0.0, t)?)?;
        residual = residual.max((hilbert_numeric(&samples, t)? - exact).abs());
    }
    checks.push(check("hilbert transform of the front", residual, 1e-4));

    Ok(SelfTestReport { checks })
}
