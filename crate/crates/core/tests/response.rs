mod common;

use causal_detectors::propagators::Mass;
use causal_detectors::quadrature::QuadratureConfig;
use causal_detectors::response::*;
use causal_detectors::special::bessel_k1;
use causal_detectors::{propagators, Error};
use common::{rel, rel_c, simpson, simpson_c};
use num_complex::Complex64;
use std::f64::consts::PI;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn at(r: f64) -> Scenario {
    Scenario::default().with_distance(r)
}

#[test]
fn massless_commutator_integral_is_the_delta_term() {
    let s = Scenario { m: 0.0, y0: 0.3, ..Default::default() };
    let expected = -Complex64::from_polar(2.0 / (8.0 * PI), s.omega_eg * (s.y0 + 1.0));
    for (u2, v2) in [(4.0, 0.0), (2.5, 1.0)] {
        assert!(rel_c(f1(u2, v2, &s, &cfg()).unwrap(), expected) < 1e-14);
    }
}

#[test]
fn commutator_integral_matches_the_mode_sum() {
    // Window [0, √5] around a unit-distance source: s² runs from -1 to 4.
    let s = Scenario { t_i: 0.0, t_f: 5f64.sqrt(), ..Default::default() };
    let f = f1(4.0, 0.0, &s, &cfg()).unwrap();
    let oracle = oracle_udd(&s, 64, &cfg()).unwrap();
    assert!(rel(f.norm_sqr(), oracle) < 1e-3);
}

#[test]
fn time_like_re_w_integral_is_converged() {
    let s = Scenario::default();
    let loose = f2(4.0, 1.0, &s, &cfg()).unwrap();
    let tight = f2(4.0, 1.0, &s, &QuadratureConfig { rel_tol: 1e-12, ..cfg() }).unwrap();
    assert!((loose - tight).norm() < 1e-6 * tight.norm());
}

/// `∫ dτ e^{iωτ} 2m K1(m√(r²-τ²)) / (8π²√(r²-τ²))` by Simpson.
fn space_like_reference(s: &Scenario, tau_lo: f64, tau_hi: f64) -> Complex64 {
    let r = s.r();
    let integrand = |tau: f64| {
        let sigma = (r * r - tau * tau).sqrt();
        let k = 2.0 * s.m * bessel_k1(s.m * sigma).unwrap() / (8.0 * PI * PI * sigma);
        Complex64::from_polar(k, s.omega_eg * (tau + s.y0))
    };
    simpson_c(integrand, tau_lo, tau_hi, 40_000)
}

#[test]
fn space_like_integral_against_direct_quadrature() {
    let s = at(5.0);
    let tau = |s2: f64| (s2 + 25.0f64).sqrt();
    let near = f3(-1.0, -4.0, &s, &cfg()).unwrap();
    let far = f3(-1.0, -25.0, &s, &cfg()).unwrap();
    assert!(rel_c(near, space_like_reference(&s, tau(-4.0), tau(-1.0))) < 1e-9);
    assert!(rel_c(far, space_like_reference(&s, 0.0, tau(-1.0))) < 1e-9);
    let tail_bound = space_like_reference(&Scenario { omega_eg: 1e-300, ..s }, 0.0, tau(-4.0)).norm();
    assert!(far.norm() > 0.0 && near.norm() > 0.0);
    assert!(far.norm() <= near.norm() + tail_bound);
    let heavy = Scenario { m: 10.0, ..at(3.0) };
    assert!(f3(-1.0, -4.0, &heavy, &cfg()).unwrap().norm() < 1e-6);
}

#[test]
fn principal_value_path_matches_symmetric_excision() {
    let s = Scenario { t_i: 0.4, t_f: 2.2, ..Default::default() };
    let eta = 1e-5;
    let s2 = |tau: f64| (tau - 1.0) * (tau + 1.0);
    let excised = f2(s2(2.2), s2(1.0 + eta), &s, &cfg()).unwrap() + f3(s2(1.0 - eta), s2(0.4), &s, &cfg()).unwrap();
    let p3 = amplitude_p3(&s, &cfg()).unwrap();
    let expected = Complex64::new(0.0, -1.0) * excised;
    assert!(rel_c(p3, expected) < 1e-3);
}

#[test]
fn time_like_window_needs_no_principal_value() {
    let s = Scenario { t_i: 1.5, t_f: 3.0, ..Default::default() };
    let geo = s.geometry().unwrap();
    let direct = Complex64::new(0.0, -1.0) * f2(geo.s_f2, geo.s_i2, &s, &cfg()).unwrap();
    assert!(rel_c(amplitude_p3(&s, &cfg()).unwrap(), direct) < 1e-12);
}

#[test]
fn after_window_cases() {
    let s = Scenario { y0: 5.0, ..Default::default() };
    let udd = detect(&s, DetectorKind::Udd, &cfg()).unwrap();
    assert_eq!(udd.case, Case::SourceAfterWindow);
    assert_eq!(udd.probability, vacuum_p1(&s, &cfg()).unwrap());
    assert_eq!(detect(&s, DetectorKind::Gd, &cfg()).unwrap().probability, 0.0);
    assert_eq!(detect(&s, DetectorKind::Md, &cfg()).unwrap().probability, 0.0);
    assert_eq!(amplitude_p2(&s, &cfg()).unwrap(), Complex64::default());
}

#[test]
fn commutator_amplitude_is_continuous_at_the_cone() {
    let s = Scenario { t_i: 0.2, ..Default::default() };
    let delta_only = -Complex64::from_polar(2.0 / (8.0 * PI), 1.0);
    let on = amplitude_p2(&Scenario { t_f: 1.0, ..s }, &cfg()).unwrap();
    assert!(rel_c(on, delta_only) < 1e-14);
    let above = amplitude_p2(&Scenario { t_f: 1.0 + 1e-6, ..s }, &cfg()).unwrap();
    assert!(rel_c(above, delta_only) < 1e-4);
    let below = amplitude_p2(&Scenario { t_f: 1.0 - 1e-9, ..s }, &cfg()).unwrap();
    assert_eq!(below, Complex64::default());
}

#[test]
fn on_cone_edges() {
    let s = Scenario { t_i: 0.2, t_f: 1.0, ..Default::default() };
    let udd = detect(&s, DetectorKind::Udd, &cfg()).unwrap();
    assert!(udd.on_cone);
    assert!(matches!(detect(&s, DetectorKind::Gd, &cfg()), Err(Error::Domain { .. })));
    let off = detect(&Scenario { t_f: 1.5, ..s }, DetectorKind::Udd, &cfg()).unwrap();
    assert!(!off.on_cone);
}

#[test]
fn source_at_window_start_is_the_limit_of_an_earlier_source() {
    let base = Scenario { t_i: 0.0, t_f: 2.5, ..Default::default() };
    let before = Scenario { y0: -1e-9, ..base };
    let inside = Scenario { y0: 1e-9, ..base };
    for kind in DetectorKind::ALL {
        let a = detect(&before, kind, &cfg()).unwrap();
        let b = detect(&inside, kind, &cfg()).unwrap();
        assert_eq!(a.case, Case::SourceBeforeWindow);
        assert_eq!(b.case, Case::SourceInsideWindow);
        assert!(rel(b.source_part(), a.source_part()) < 1e-4, "{kind}");
    }
}

#[test]
fn source_dependent_part_scales_with_g_squared() {
    for kind in DetectorKind::ALL {
        let per_g2: Vec<f64> = [0.1, 1.0, 10.0]
            .iter()
            .map(|&g| detect(&Scenario { g, ..Default::default() }, kind, &cfg()).unwrap().source_part() / (g * g))
            .collect();
        assert!(rel(per_g2[0], per_g2[1]) < 1e-12 && rel(per_g2[2], per_g2[1]) < 1e-12, "{kind}: {per_g2:?}");
    }
}

#[test]
fn vacuum_term_properties() {
    let s = Scenario { t_i: 0.0, t_f: 2.0, ..Default::default() };
    let p1 = vacuum_p1(&s, &cfg()).unwrap();
    assert!(p1 > 0.0);
    let moved = Scenario { g: 7.0, y0: -3.0, y: [0.3, 0.1, -2.0], ..s };
    assert_eq!(vacuum_p1(&moved, &cfg()).unwrap(), p1);
    let doubled = vacuum_p1(&Scenario { c1: 2.0, ..s }, &cfg()).unwrap();
    assert!(rel(doubled, 4.0 * p1) < 1e-14);
    let short = vacuum_p1(&s, &QuadratureConfig { k_max: 400.0, ..cfg() }).unwrap();
    let long = vacuum_p1(&s, &QuadratureConfig { k_max: 800.0, ..cfg() }).unwrap();
    assert!(rel(short, long) < 1e-2);
    assert!(vacuum_p1(&s, &QuadratureConfig { uv_damping: 0.0, ..cfg() }).is_err());
}

#[test]
fn vacuum_term_from_the_time_domain() {
    // P1 = 2 c1²|m|² Re ∫_0^T (T - τ) e^{-iω τ} W(0, τ) dτ.
    let s = Scenario { t_i: 0.0, t_f: 2.0, ..Default::default() };
    let m = Mass::new(s.m).unwrap();
    let t = s.t_f - s.t_i;
    let integrand = |tau: f64| {
        let w = propagators::vacuum_wightman_equal_point(tau, m, &cfg()).unwrap();
        ((t - tau) * Complex64::from_polar(1.0, -s.omega_eg * tau) * w).re
    };
    let time_domain = 2.0 * simpson(integrand, 0.0, t, 800);
    assert!(rel(vacuum_p1(&s, &cfg()).unwrap(), time_domain) < 1e-6);
}

#[test]
fn milonni_drops_the_space_like_tail_only() {
    // Strictly inside the forward cone the MD and GD coincide.
    let s = Scenario { t_i: 1.5, t_f: 3.0, ..Default::default() };
    let md = detect(&s, DetectorKind::Md, &cfg()).unwrap();
    let gd = detect(&s, DetectorKind::Gd, &cfg()).unwrap();
    assert!(rel(md.probability, gd.probability) < 1e-12);
    // Across the cone they differ.
    let s = Scenario::default();
    let md = detect(&s, DetectorKind::Md, &cfg()).unwrap().probability;
    let gd = detect(&s, DetectorKind::Gd, &cfg()).unwrap().probability;
    assert!(md > 0.0 && (md - gd).abs() > 1e-3 * gd);
}

#[test]
fn oracle_grid_is_converged() {
    let s = Scenario::default();
    for oracle in [oracle_udd, oracle_gd] {
        let a = oracle(&s, 64, &cfg()).unwrap();
        let b = oracle(&s, 128, &cfg()).unwrap();
        assert!(rel(a, b) < 1e-4);
    }
    assert!(oracle_gd(&s, 8, &cfg()).is_err());
    let a = oracle_gd(&s, 64, &cfg()).unwrap();
    let b = oracle_gd(&Scenario { g: 2.0, ..s }, 64, &cfg()).unwrap();
    assert!(rel(b, 4.0 * a) < 1e-14);
}
