//! Acceptance battery. Prints one line per criterion and exits nonzero if any
//! of them fails.

mod common;

use causal_detectors::quadrature::QuadratureConfig;
use causal_detectors::response::*;
use causal_detectors::signal::{front_scan, FrontRow};
use causal_detectors::special::*;
use causal_detectors::{localization, Error};
use common::bessel::{envelope, j_oracle, k1_oracle, samples, y_oracle};
use common::{rel, rng, uniform};
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;

type Outcome = Result<String, String>;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail(e: Error) -> String {
    e.to_string()
}

fn unit_vector(g: &mut ChaCha8Rng) -> [f64; 3] {
    let z = uniform(g, -1.0, 1.0);
    let phi = uniform(g, 0.0, 2.0 * PI);
    let rho = (1.0 - z * z).sqrt();
    [rho * phi.cos(), rho * phi.sin(), z]
}

fn place(base: Scenario, r: f64, dir: [f64; 3]) -> Scenario {
    Scenario { x: [0, 1, 2].map(|i| base.y[i] + r * dir[i]), ..base }
}

/// A randomized scenario whose detector stays space-like to the source for
/// the whole window, plus the direction used to place it.
fn space_like_scenario(g: &mut ChaCha8Rng, i: usize) -> (Scenario, [f64; 3], f64) {
    let m = [0.5, 1.0, 2.0][i % 3];
    let y0 = uniform(g, -1.0, 1.0);
    let t_i = y0 + uniform(g, -1.0, 1.0);
    let t_f = (t_i + uniform(g, 0.5, 2.0)).max(y0 + 0.3);
    let base = Scenario {
        m,
        omega_eg: uniform(g, 0.5, 2.0),
        y0,
        y: [uniform(g, -1.0, 1.0), uniform(g, -1.0, 1.0), uniform(g, -1.0, 1.0)],
        t_i,
        t_f,
        ..Default::default()
    };
    let dir = unit_vector(g);
    let gap = uniform(g, 0.1, 1.5);
    (place(base, t_f - y0 + gap, dir), dir, gap)
}

fn space_like_battery() -> Vec<(Scenario, [f64; 3], f64)> {
    let mut g = rng(2024);
    (0..20).map(|i| space_like_scenario(&mut g, i)).collect()
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    for (s, dir, _) in space_like_battery() {
        let b = detect(&s, DetectorKind::Udd, &cfg()).map_err(fail)?;
        let p1 = b.vacuum_p1.ok_or("UDD breakdown without a vacuum term")?;
        ensure(b.probability - p1 == 0.0, || format!("UDD source term {} at {s:?}", b.probability - p1))?;
        let interior = place(s, 0.5 * (s.t_f - s.y0), dir);
        let scale = oracle_udd(&interior, 64, &cfg()).map_err(fail)?;
        let tail = oracle_udd(&s, 64, &cfg()).map_err(fail)?;
        worst = worst.max(tail / scale);
    }
    ensure(worst < 1e-6, || format!("oracle tail {worst:.2e} of the interior scale"))?;
    Ok(format!("20 scenarios gated exactly; oracle tail <= {worst:.1e} of interior"))
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    for (s, dir, gap) in space_like_battery() {
        let p = detect(&s, DetectorKind::Gd, &cfg()).map_err(fail)?.probability;
        ensure(p > 0.0, || format!("GD = {p} at {s:?}"))?;
        let o = oracle_gd(&s, 64, &cfg()).map_err(fail)?;
        worst = worst.max(rel(p, o));
        let cone = s.t_f - s.y0;
        let trail: Vec<f64> = (0..5)
            .map(|j| {
                let sc = place(s, cone + gap * (1.0 + 0.5 * j as f64), dir);
                detect(&sc, DetectorKind::Gd, &cfg()).map(|b| b.probability)
            })
            .collect::<Result<_, _>>()
            .map_err(fail)?;
        ensure(trail.windows(2).all(|w| w[1] < w[0]), || format!("not decreasing: {trail:?} at {s:?}"))?;
    }
    ensure(worst < 1e-3, || format!("GD vs oracle {worst:.2e}"))?;
    Ok(format!("20 scenarios positive and decreasing; worst oracle deviation {worst:.1e}"))
}

fn criterion_3() -> Outcome {
    for (s, _, _) in space_like_battery() {
        let p = detect(&s, DetectorKind::Md, &cfg()).map_err(fail)?.probability;
        ensure(p == 0.0, || format!("MD = {p} at {s:?}"))?;
    }
    let mut g = rng(7);
    let mut worst = 0.0f64;
    for i in 0..10 {
        let r = uniform(&mut g, 0.3, 2.0);
        let t_i = r + uniform(&mut g, 0.05, 1.0);
        let s = Scenario { m: [0.5, 1.0, 2.0][i % 3], t_i, t_f: t_i + uniform(&mut g, 0.2, 2.0), ..Default::default() }
            .with_distance(r);
        let md = detect(&s, DetectorKind::Md, &cfg()).map_err(fail)?.probability;
        let gd = detect(&s, DetectorKind::Gd, &cfg()).map_err(fail)?.probability;
        worst = worst.max(rel(md, gd));
    }
    ensure(worst < 1e-6, || format!("MD vs GD inside the cone {worst:.2e}"))?;
    Ok(format!("MD exactly 0 on 20 space-like scenarios; inside the cone MD/GD agree to {worst:.1e}"))
}

fn benchmarks() -> Vec<Scenario> {
    let d = Scenario::default();
    vec![
        d,
        Scenario { t_i: 1.5, t_f: 3.0, ..d },
        Scenario { m: 2.0, omega_eg: 0.7, y0: -0.4, ..d },
        Scenario { m: 0.3, omega_eg: 1.8, t_i: -0.5, t_f: 2.5, ..d }.with_distance(1.7),
        Scenario { m: 1.5, y0: 0.2, t_i: 2.0, t_f: 4.0, ..d }.with_distance(0.6),
    ]
}

fn criterion_4() -> Outcome {
    let mut worst = 0.0f64;
    for s in benchmarks() {
        let p2 = amplitude_p2(&s, &cfg()).map_err(fail)?;
        let udd = s.g * s.g * p2.norm_sqr();
        let o = oracle_udd(&s, 64, &cfg()).map_err(fail)?;
        worst = worst.max(rel(udd, o));
        let gd = detect(&s, DetectorKind::Gd, &cfg()).map_err(fail)?.probability;
        let o = oracle_gd(&s, 64, &cfg()).map_err(fail)?;
        worst = worst.max(rel(gd, o));
    }
    ensure(worst < 1e-3, || format!("worst deviation {worst:.2e}"))?;
    Ok(format!("5 benchmarks, UDD and GD against the mode sums: worst {worst:.1e}"))
}

fn criterion_5() -> Outcome {
    let (f0, dz, z) = (1.0, 0.1, 0.0);
    let times: Vec<f64> = (0..100).map(|j| z - 0.005 - 0.02 * j as f64).collect();
    let scan = front_scan(f0, dz, z, &times, 1e-3).map_err(fail)?;
    let mut worst = 0.0f64;
    for (t, row) in &scan.rows {
        let FrontRow { glauber_g, mean_field, im_v, im_v_numeric, .. } = *row.as_ref().map_err(|e| e.to_string())?;
        ensure(glauber_g > 0.0 && mean_field == 0.0, || format!("t = {t}: G = {glauber_g}, mean = {mean_field}"))?;
        worst = worst.max((im_v_numeric - im_v).abs());
    }
    ensure(worst < 1e-4, || format!("Hilbert deviation {worst:.2e}"))?;
    Ok(format!("100 pre-arrival points with G > 0 and zero mean field; Hilbert deviation {worst:.1e}"))
}

fn criterion_6() -> Outcome {
    let mut wronskian = 0.0f64;
    for i in 0..500 {
        let x = 0.1 + 49.9 * i as f64 / 499.0;
        let w = bessel_j1(x).map_err(fail)? * bessel_y0(x).map_err(fail)?
            - bessel_j0(x).map_err(fail)? * bessel_y1(x).map_err(fail)?;
        wronskian = wronskian.max((w - 2.0 / (PI * x)).abs() * PI * x / 2.0);
    }
    ensure(wronskian < 1e-10, || format!("Wronskian residual {wronskian:.2e}"))?;
    let mut worst = 0.0f64;
    for x in samples() {
        let env = envelope(x);
        let j = j_oracle(1.0, x);
        let y = y_oracle(1.0, x);
        worst = worst.max((bessel_j1(x).map_err(fail)? - j).abs() / j.abs().max(env));
        worst = worst.max((bessel_y1(x).map_err(fail)? - y).abs() / y.abs().max(env));
        worst = worst.max(rel(bessel_k1(x).map_err(fail)?, k1_oracle(x)));
    }
    ensure(worst < 1e-10, || format!("oracle deviation {worst:.2e}"))?;
    Ok(format!("Wronskian residual {wronskian:.1e}; J1/Y1/K1 at 50 points within {worst:.1e}"))
}

fn criterion_7() -> Outcome {
    use localization::{glauber_density, newton_wigner_density};
    let s = Scenario::default();
    let mut g = rng(99);
    for _ in 0..20 {
        let t = uniform(&mut g, 0.2, 3.0);
        let r = t + uniform(&mut g, 0.05, 3.0);
        let gl = glauber_density(r, t, &s, &cfg()).map_err(fail)?;
        let nw = newton_wigner_density(r, t, &s, &cfg()).map_err(fail)?;
        ensure(gl > 0.0 && nw > 0.0, || format!("r = {r}, t = {t}: {gl}, {nw}"))?;
    }
    let late = Scenario { y0: 1.0, ..s };
    for t in [-1.0, 0.5, 1.0] {
        for r in [0.5, 2.0] {
            let gl = glauber_density(r, t, &late, &cfg()).map_err(fail)?;
            let nw = newton_wigner_density(r, t, &late, &cfg()).map_err(fail)?;
            ensure(gl == 0.0 && nw == 0.0, || format!("nonzero before the source at t = {t}"))?;
        }
    }
    let mut worst = 0.0f64;
    for (r, t) in [(2.0, 1.0), (4.0, 1.5), (0.5, 2.0), (3.0, 0.3)] {
        let a = newton_wigner_density(r, t, &s, &QuadratureConfig { k_max: 400.0, ..cfg() }).map_err(fail)?;
        let b = newton_wigner_density(r, t, &s, &QuadratureConfig { k_max: 800.0, ..cfg() }).map_err(fail)?;
        worst = worst.max(rel(a, b));
    }
    ensure(worst < 1e-2, || format!("cutoff doubling moved NW by {worst:.2e}"))?;
    Ok(format!("both densities > 0 at 20 space-like points, 0 before the source; NW cutoff doubling {worst:.1e}"))
}

fn criterion_8() -> Outcome {
    // Mixed windows route P3 through the principal value; any failure of the
    // built-in halving check surfaces as an error here.
    let mut calls = 0;
    let mut worst = 0.0f64;
    for m in [0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
        for omega_eg in [0.3, 1.0, 3.0] {
            for (t_i, t_f) in [(0.2, 2.0), (-1.0, 1.5), (0.9, 4.0)] {
                let s = Scenario { m, omega_eg, t_i, t_f, ..Default::default() };
                for kind in [DetectorKind::Gd, DetectorKind::Md] {
                    detect(&s, kind, &cfg()).map_err(|e| format!("{kind} at {s:?}: {e}"))?;
                }
                let a = amplitude_p3(&s, &cfg()).map_err(fail)?;
                let halved = QuadratureConfig { pv_excision: 0.5 * cfg().pv_excision, ..cfg() };
                let b = amplitude_p3(&s, &halved).map_err(fail)?;
                worst = worst.max((a - b).norm() / (cfg().rel_tol * a.norm()));
                calls += 1;
            }
        }
    }
    ensure(worst < 1.0, || format!("halving moved P3 by {worst:.2} rel_tol"))?;
    Ok(format!("{calls} mixed windows pass; halving the excision moves P3 by <= {worst:.2} rel_tol"))
}

fn criterion_9() -> Outcome {
    let mut worst_closed = 0.0f64;
    let mut worst_oracle = 0.0f64;
    for (r, y0, omega_eg) in [(1.0, 0.0, 1.0), (0.7, -0.4, 2.0), (2.0, 0.5, 0.6)] {
        let s =
            Scenario { m: 0.0, y0, omega_eg, t_i: y0 + 0.1, t_f: y0 + r + 1.0, ..Default::default() }.with_distance(r);
        let p2 = amplitude_p2(&s, &cfg()).map_err(fail)?;
        let closed = -Complex64::from_polar(2.0 * s.c1 * s.m_eg_abs / (8.0 * PI * r), omega_eg * (r + y0));
        worst_closed = worst_closed.max((p2 - closed).norm() / closed.norm());
        let o = oracle_udd(&s, 64, &cfg()).map_err(fail)?;
        worst_oracle = worst_oracle.max(rel(s.g * s.g * p2.norm_sqr(), o));
    }
    ensure(worst_closed < 1e-12, || format!("closed form deviation {worst_closed:.2e}"))?;
    ensure(worst_oracle < 1e-3, || format!("oracle deviation {worst_oracle:.2e}"))?;
    Ok(format!("closed form within {worst_closed:.1e}; oracle within {worst_oracle:.1e}"))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({secs:.1}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.1}s) {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
