//! One-dimensional quadrature for complex-valued integrands.
//!
//! * [`integrate_adaptive`]: globally adaptive Gauss–Kronrod (7/15) bisection.
//! * [`integrate_oscillatory`]: the same engine, started from a partition whose
//!   panels are no wider than `pi / (4 omega)` for a declared frequency.
//! * [`integrate_sqrt_endpoint`]: `∫ f(u)/√u du` through `u = w²`.
//! * [`integrate_principal_value`]: `PV ∫ [f_reg(u) + c/u] du` across `u = 0`
//!   with the pole integrated exactly and a symmetric excision check.
//! * [`integrate_fixed_grid`]: composite 8-point Gauss–Legendre on a uniform
//!   grid, used by the momentum-space oracles.
//!
//! Panel contributions are always reduced pairwise in left-to-right order so
//! results are bit-identical between runs.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

/// Numerical controls shared by every integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
    /// Half-width of the symmetric excision around a principal-value pole.
    pub pv_excision: f64,
    /// `ε` in the `e^{-ε ω}` damping of momentum integrals.
    pub uv_damping: f64,
    /// Hard momentum cutoff of the momentum-space integrals.
    pub k_max: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-15,
            rel_tol: 1e-8,
            max_panels: 200_000,
            pv_excision: 1e-10,
            uv_damping: 0.05,
            k_max: 1e4,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::validation(name, format!("must be finite and positive, got {v}")))
            }
        };
        positive("abs_tol", self.abs_tol)?;
        positive("rel_tol", self.rel_tol)?;
        positive("pv_excision", self.pv_excision)?;
        positive("k_max", self.k_max)?;
        if !(self.uv_damping.is_finite() && self.uv_damping >= 0.0) {
            return Err(Error::validation("uv_damping", "must be finite and non-negative"));
        }
        if self.max_panels < 16 {
            return Err(Error::validation("max_panels", "must be at least 16"));
        }
        Ok(())
    }

    fn target(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

/// Value of an integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub panels_used: usize,
}

impl IntegralResult {
    pub const ZERO: IntegralResult =
        IntegralResult { value: Complex64::new(0.0, 0.0), error_estimate: 0.0, panels_used: 0 };

    fn combine(self, other: IntegralResult) -> IntegralResult {
        IntegralResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            panels_used: self.panels_used + other.panels_used,
        }
    }
}

const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// 7-point Gauss weights at Kronrod nodes 1, 3, 5 and the centre.
const GAUSS_WEIGHTS: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    /// `∫|f|` over the panel.
    magnitude: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Complex64,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<Complex64> {
        let v = f(x);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Integrand { abscissa: x })
        }
    };
    let fc = eval(centre)?;
    let mut kronrod = fc * KRONROD_WEIGHTS[7];
    let mut gauss = fc * GAUSS_WEIGHTS[3];
    let mut abs_sum = fc.norm() * KRONROD_WEIGHTS[7];
    let mut samples = [(Complex64::default(), Complex64::default()); 7];
    for (j, &node) in KRONROD_NODES[..7].iter().enumerate() {
        let dx = half * node;
        let lo = eval(centre - dx)?;
        let hi = eval(centre + dx)?;
        samples[j] = (lo, hi);
        kronrod += (lo + hi) * KRONROD_WEIGHTS[j];
        abs_sum += (lo.norm() + hi.norm()) * KRONROD_WEIGHTS[j];
        if j % 2 == 1 {
            gauss += (lo + hi) * GAUSS_WEIGHTS[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = (fc - mean).norm() * KRONROD_WEIGHTS[7];
    for (j, (lo, hi)) in samples.iter().enumerate() {
        asc += ((lo - mean).norm() + (hi - mean).norm()) * KRONROD_WEIGHTS[j];
    }
    let scale = half.abs();
    let value = kronrod * half;
    let res_abs = abs_sum * scale;
    let res_asc = asc * scale;
    let mut error = ((kronrod - gauss) * half).norm();
    // QUADPACK error rescaling.
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Panel { a, b, value, error, magnitude: res_abs })
}

fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::default(),
        1 => values[0],
        n => {
            let (l, r) = values.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

fn adaptive_from_breakpoints<F>(
    f: &F,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
    op: &'static str,
    cancellation_floor: f64,
) -> Result<IntegralResult>
where
    F: Fn(f64) -> Complex64,
{
    let mut heap = BinaryHeap::with_capacity(breakpoints.len());
    let mut total = Complex64::default();
    let mut total_err = 0.0;
    let mut magnitude = 0.0;
    for w in breakpoints.windows(2) {
        let p = gauss_kronrod(f, w[0], w[1])?;
        total += p.value;
        total_err += p.error;
        magnitude += p.magnitude;
        heap.push(p);
    }
    let cfg = &QuadratureConfig { abs_tol: cfg.abs_tol.max(cancellation_floor * magnitude), ..*cfg };
    let mut frozen: Vec<Panel> = Vec::new();
    let mut frozen_err = 0.0;
    while total_err > cfg.target(total) {
        if heap.len() + frozen.len() >= cfg.max_panels {
            let best = collect(heap, frozen);
            return Err(Error::Convergence {
                op,
                best_re: best.value.re,
                best_im: best.value.im,
                error_estimate: best.error_estimate,
                panels: best.panels_used,
            });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Cannot bisect further in floating point.
            frozen_err += worst.error;
            frozen.push(worst);
            if frozen_err > cfg.target(total) {
                let best = collect(heap, frozen);
                return Err(Error::Convergence {
                    op,
                    best_re: best.value.re,
                    best_im: best.value.im,
                    error_estimate: best.error_estimate,
                    panels: best.panels_used,
                });
            }
            continue;
        }
        let left = gauss_kronrod(f, worst.a, mid)?;
        let right = gauss_kronrod(f, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    Ok(collect(heap, frozen))
}

fn collect(heap: BinaryHeap<Panel>, frozen: Vec<Panel>) -> IntegralResult {
    let mut panels = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let values: Vec<Complex64> = panels.iter().map(|p| p.value).collect();
    let errors: f64 = panels.iter().map(|p| p.error).sum();
    IntegralResult { value: pairwise_sum(&values), error_estimate: errors, panels_used: panels.len() }
}

fn check_interval(op: &'static str, a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::domain(op, format!("need finite a <= b, got [{a}, {b}]")));
    }
    Ok(())
}

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: Fn(f64) -> Complex64,
{
    check_interval("integrate_adaptive", a, b)?;
    if a == b {
        return Ok(IntegralResult::ZERO);
    }
    adaptive_from_breakpoints(&f, &[a, b], cfg, "integrate_adaptive", 0.0)
}

/// Relative size, against `∫|f|`, below which cancellation between the
/// oscillations of an integrand is lost to rounding.
const OSCILLATORY_FLOOR: f64 = 100.0 * f64::EPSILON;

/// Adaptive integration of an integrand whose dominant oscillation has
/// angular frequency `omega`: the interval is first cut into panels no wider
/// than `pi / (4 omega)`.
///
/// Long oscillatory integrals can cancel to far below the size of their
/// integrand. The absolute tolerance is therefore raised to
/// `100 ε ∫|f|` (`ε` the machine epsilon) when that is larger, which is the
/// accuracy the cancellation itself allows.
pub fn integrate_oscillatory<F>(f: F, a: f64, b: f64, omega: f64, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: Fn(f64) -> Complex64,
{
    check_interval("integrate_oscillatory", a, b)?;
    if a == b {
        return Ok(IntegralResult::ZERO);
    }
    let width = if omega.abs() > 0.0 { PI / (4.0 * omega.abs()) } else { b - a };
    let n = (((b - a) / width).ceil() as usize).max(1);
    if n >= cfg.max_panels {
        return Err(Error::domain(
            "integrate_oscillatory",
            format!("{n} initial panels exceed max_panels = {}", cfg.max_panels),
        ));
    }
    let breakpoints: Vec<f64> = (0..=n).map(|i| if i == n { b } else { a + (b - a) * i as f64 / n as f64 }).collect();
    adaptive_from_breakpoints(&f, &breakpoints, cfg, "integrate_oscillatory", OSCILLATORY_FLOOR)
}

/// `∫_a^b f_smooth(u) / √u du` for `0 <= a <= b`, evaluated as
/// `∫_{√a}^{√b} 2 f_smooth(w²) dw`.
pub fn integrate_sqrt_endpoint<F>(f_smooth: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: Fn(f64) -> Complex64,
{
    check_interval("integrate_sqrt_endpoint", a, b)?;
    if a < 0.0 {
        return Err(Error::domain("integrate_sqrt_endpoint", format!("lower limit {a} < 0")));
    }
    if a == b {
        return Ok(IntegralResult::ZERO);
    }
    adaptive_from_breakpoints(
        &|w: f64| f_smooth(w * w) * 2.0,
        &[a.sqrt(), b.sqrt()],
        cfg,
        "integrate_sqrt_endpoint",
        0.0,
    )
}

/// `PV ∫_a^b [f_reg(u) + strength / u] du` with `a < 0 < b`.
///
/// The pole contributes `strength · ln(b/|a|)` exactly. `f_reg` may still
/// carry an integrable (logarithmic) singularity at `u = 0`, so it is
/// integrated over `[a, -δ] ∪ [δ, b]` and the core `[-δ, δ]` separately; the
/// Gauss–Kronrod nodes never touch `u = 0`. As a check the core is redone
/// as strips plus `[-δ/2, δ/2]`, and the two must agree to `rel_tol · |value|`.
pub fn integrate_principal_value<F>(
    f_reg: F,
    a: f64,
    b: f64,
    strength: Complex64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult>
where
    F: Fn(f64) -> Complex64,
{
    if !(a.is_finite() && b.is_finite() && a < 0.0 && b > 0.0) {
        return Err(Error::domain("integrate_principal_value", format!("need a < 0 < b, got [{a}, {b}]")));
    }
    let delta = cfg.pv_excision.min(0.25 * (-a).min(b));
    let outer = adaptive_from_breakpoints(&f_reg, &[a, -delta], cfg, "integrate_principal_value", 0.0)?
        .combine(adaptive_from_breakpoints(&f_reg, &[delta, b], cfg, "integrate_principal_value", 0.0)?);
    let part = |lo: f64, hi: f64| adaptive_from_breakpoints(&f_reg, &[lo, hi], cfg, "integrate_principal_value", 0.0);
    let core = part(-delta, 0.0)?.combine(part(0.0, delta)?);
    let refined = part(-delta, -0.5 * delta)?
        .combine(part(-0.5 * delta, 0.0)?)
        .combine(part(0.0, 0.5 * delta)?)
        .combine(part(0.5 * delta, delta)?);
    let pole = strength * (b / -a).ln();
    let result = IntegralResult { value: outer.value + refined.value + pole, ..outer.combine(refined) };
    let change = (refined.value - core.value).norm();
    if change > cfg.rel_tol * result.value.norm() && change > cfg.abs_tol {
        return Err(Error::Convergence {
            op: "integrate_principal_value (excision check)",
            best_re: result.value.re,
            best_im: result.value.im,
            error_estimate: change,
            panels: result.panels_used,
        });
    }
    Ok(result)
}

const GL8_NODES: [f64; 4] =
    [0.183_434_642_495_649_8, 0.525_532_409_916_329, 0.796_666_477_413_626_7, 0.960_289_856_497_536_3];
const GL8_WEIGHTS: [f64; 4] =
    [0.362_683_783_378_362, 0.313_706_645_877_887_3, 0.222_381_034_453_374_5, 0.101_228_536_290_376_3];

/// Composite 8-point Gauss–Legendre over `panels` equal panels of `[a, b]`.
/// No error control; callers check convergence by refining the grid.
pub fn integrate_fixed_grid<F>(f: F, a: f64, b: f64, panels: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    if panels == 0 || a == b {
        return Complex64::default();
    }
    let width = (b - a) / panels as f64;
    let half = 0.5 * width;
    let values: Vec<Complex64> = (0..panels)
        .map(|i| {
            let centre = a + (i as f64 + 0.5) * width;
            let mut acc = Complex64::default();
            for (x, w) in GL8_NODES.iter().zip(GL8_WEIGHTS) {
                acc += (f(centre - half * x) + f(centre + half * x)) * w;
            }
            acc * half
        })
        .collect();
    pairwise_sum(&values)
}
