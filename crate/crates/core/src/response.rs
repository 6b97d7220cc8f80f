//! Excitation probabilities of a two-level detector at rest at `x` switched on
//! during `[t_i, t_f]`, when a point source kicks the field at `(y0, y)`.
//!
//! Writing `τ = t - y0` and `r = |x - y|`, the field seen by the detector is
//! the vacuum plus the classical part `g Δ(r, τ) Θ(τ)`. Every source-dependent
//! amplitude is therefore a time integral over `τ ∈ [max(τ_i, 0), τ_f]`:
//!
//! * `P2 = c1 |m_eg| ∫ e^{iω_eg t} Δ`, which only sees the cone and its
//!   interior, so it vanishes identically while `τ_f < r`;
//! * `P3 = -i c1 |m_eg| ∫ e^{iω_eg t} Re W`, which also picks up the
//!   space-like `K1` tail.
//!
//! The Unruh–DeWitt detector (UDD) sees `P1 + g²|P2|²`; the Glauber detector
//! (GD) sees `g²|½P2 + P3|²`, which equals `g² c1² |m_eg|² |∫ e^{iω_eg t} W|²`.
//! The Milonni detector (MD) keeps only the time-like part of `P3`.
//!
//! In the variable `s² = τ² - r²` the integrals split into the three
//! functions [`f1`], [`f2`], [`f3`] (commutator, time-like `Re W`, space-like
//! `Re W`). Across the cone the `1/s²` poles of `f2` and `f3` cancel in the
//! principal-value sense and are integrated together.

use crate::error::{Error, Result};
use crate::propagators::{kernel_full, kernel_regular, pauli_jordan_smooth, Mass, POLE_STRENGTH};
use crate::quadrature::{
    integrate_adaptive, integrate_fixed_grid, integrate_oscillatory, integrate_principal_value,
    integrate_sqrt_endpoint, QuadratureConfig,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Detector model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectorKind {
    /// Unruh–DeWitt: couples to the full field.
    Udd,
    /// Glauber: couples to the positive-frequency part only.
    Gd,
    /// Milonni: Glauber detector fed the retarded source field.
    Md,
}

impl DetectorKind {
    pub const ALL: [DetectorKind; 3] = [DetectorKind::Udd, DetectorKind::Gd, DetectorKind::Md];
}

impl fmt::Display for DetectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetectorKind::Udd => "udd",
            DetectorKind::Gd => "gd",
            DetectorKind::Md => "md",
        })
    }
}

impl FromStr for DetectorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "udd" => Ok(DetectorKind::Udd),
            "gd" => Ok(DetectorKind::Gd),
            "md" => Ok(DetectorKind::Md),
            _ => Err(Error::validation("detector", format!("unknown detector `{s}`, expected udd, gd or md"))),
        }
    }
}

/// When the source fires relative to the detection window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    /// `y0 <= t_i`.
    SourceBeforeWindow,
    /// `t_i < y0 < t_f`.
    SourceInsideWindow,
    /// `y0 >= t_f`.
    SourceAfterWindow,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::SourceBeforeWindow => "source-before-window",
            Case::SourceInsideWindow => "source-inside-window",
            Case::SourceAfterWindow => "source-after-window",
        })
    }
}

/// All physical parameters of one detector/source experiment, in natural
/// units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub m: f64,
    pub omega_eg: f64,
    pub c1: f64,
    pub m_eg_abs: f64,
    pub g: f64,
    pub y0: f64,
    pub y: [f64; 3],
    pub x: [f64; 3],
    pub t_i: f64,
    pub t_f: f64,
}

impl Default for Scenario {
    /// Unit couplings and gap, source at the origin at `t = 0`, detector at
    /// distance 1 watching `[0.5, 3]`.
    fn default() -> Self {
        Scenario {
            m: 1.0,
            omega_eg: 1.0,
            c1: 1.0,
            m_eg_abs: 1.0,
            g: 1.0,
            y0: 0.0,
            y: [0.0; 3],
            x: [1.0, 0.0, 0.0],
            t_i: 0.5,
            t_f: 3.0,
        }
    }
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::validation(name, format!("must be finite, got {v}")))
            }
        };
        Mass::new(self.m)?;
        for (name, v) in [("c1", self.c1), ("g", self.g), ("y0", self.y0), ("t_i", self.t_i), ("t_f", self.t_f)] {
            finite(name, v)?;
        }
        if !(self.omega_eg.is_finite() && self.omega_eg > 0.0) {
            return Err(Error::validation(
                "omega_eg",
                format!("gap must be finite and positive, got {}", self.omega_eg),
            ));
        }
        if !(self.m_eg_abs.is_finite() && self.m_eg_abs >= 0.0) {
            return Err(Error::validation("m_eg_abs", format!("must be finite and >= 0, got {}", self.m_eg_abs)));
        }
        for v in self.y {
            finite("y", v)?;
        }
        for v in self.x {
            finite("x", v)?;
        }
        if self.t_i >= self.t_f {
            return Err(Error::validation(
                "window",
                format!("t_i = {} must be earlier than t_f = {}", self.t_i, self.t_f),
            ));
        }
        let r = self.r();
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::validation("x", "detector must not coincide with the source (r = 0)"));
        }
        Ok(())
    }

    /// Distance between detector and source.
    pub fn r(&self) -> f64 {
        let d: Vec<f64> = self.x.iter().zip(self.y).map(|(x, y)| x - y).collect();
        d.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn mass(&self) -> Result<Mass> {
        Mass::new(self.m)
    }

    pub fn geometry(&self) -> Result<LightconeGeometry> {
        self.validate()?;
        Ok(LightconeGeometry::of(self))
    }

    /// Moves the detector along the source-detector line to distance `r`.
    pub fn with_distance(&self, r: f64) -> Scenario {
        let old = self.r();
        let mut out = *self;
        for i in 0..3 {
            out.x[i] = self.y[i] + (self.x[i] - self.y[i]) * (r / old);
        }
        out
    }

    fn coupling(&self) -> f64 {
        self.c1 * self.m_eg_abs
    }
}

/// Interval data that decides which branch of every formula applies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightconeGeometry {
    pub r: f64,
    /// `(t_i - y0)² - r²`.
    pub s_i2: f64,
    /// `(t_f - y0)² - r²`.
    pub s_f2: f64,
    pub case: Case,
}

impl LightconeGeometry {
    fn of(scen: &Scenario) -> LightconeGeometry {
        let r = scen.r();
        let (ti, tf) = (scen.t_i - scen.y0, scen.t_f - scen.y0);
        let case = if scen.y0 <= scen.t_i {
            Case::SourceBeforeWindow
        } else if scen.y0 < scen.t_f {
            Case::SourceInsideWindow
        } else {
            Case::SourceAfterWindow
        };
        LightconeGeometry { r, s_i2: (ti - r) * (ti + r), s_f2: (tf - r) * (tf + r), case }
    }
}

/// Source-relative integration window `[lo, hi]` in `τ = t - y0`, already
/// clipped to `τ >= 0`. Empty when `hi <= lo`.
#[derive(Debug, Clone, Copy)]
struct Window {
    lo: f64,
    hi: f64,
    r: f64,
}

impl Window {
    fn of(scen: &Scenario) -> Window {
        Window { lo: (scen.t_i - scen.y0).max(0.0), hi: scen.t_f - scen.y0, r: scen.r() }
    }

    fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }
}

/// Per-detector decomposition of a detection probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseBreakdown {
    pub detector: DetectorKind,
    pub case: Case,
    /// Vacuum term, reported for the UDD only.
    pub vacuum_p1: Option<f64>,
    pub amp_p2: Complex64,
    /// `P3` for the GD, its causally clipped version for the MD.
    pub amp_p3: Option<Complex64>,
    pub probability: f64,
    /// Damping used in the vacuum term.
    pub epsilon_uv: f64,
    /// A window edge sits exactly on the light cone of the source.
    pub on_cone: bool,
}

impl ResponseBreakdown {
    /// Probability minus the vacuum term.
    pub fn source_part(&self) -> f64 {
        self.probability - self.vacuum_p1.unwrap_or(0.0)
    }
}

fn phase(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, x)
}

/// `sin(x)/x`.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `(e^{ix} - 1)/x` without cancellation near zero.
fn expm1_i_over(x: f64, omega: f64) -> Complex64 {
    // (e^{iωu} - 1)/u = iω e^{iωu/2} sinc(ωu/2)
    Complex64::new(0.0, omega) * phase(0.5 * x) * sinc(0.5 * x)
}

/// Wraps a fallible kernel for the quadrature engines: a failure becomes a
/// NaN sample, which the engines report as an integrand error.
fn or_nan(v: Result<Complex64>) -> Complex64 {
    v.unwrap_or(Complex64::new(f64::NAN, f64::NAN))
}

/// `∫_{v2}^{u2} ds² e^{iω_eg √(s²+r²)} / (2√(s²+r²)) · kernel(s²)`, evaluated in
/// `U = s² + r²` where the `1/√U` factor is an endpoint weight.
fn s2_integral<K>(scen: &Scenario, u2: f64, v2: f64, kernel: K, cfg: &QuadratureConfig) -> Result<Complex64>
where
    K: Fn(f64) -> Result<f64>,
{
    let r2 = scen.r() * scen.r();
    let w = scen.omega_eg;
    let f = |uu: f64| or_nan(kernel(uu - r2).map(|k| phase(w * uu.sqrt()) * (0.5 * k)));
    Ok(integrate_sqrt_endpoint(f, (v2 + r2).max(0.0), u2 + r2, cfg)?.value)
}

fn check_order(op: &'static str, u2: f64, v2: f64) -> Result<()> {
    if !(u2.is_finite() && v2.is_finite()) || v2 > u2 {
        return Err(Error::domain(op, format!("need v2 <= u2, got u2={u2}, v2={v2}")));
    }
    Ok(())
}

/// Commutator integral over the time-like range `[v2, u2]`, including the
/// light-cone delta term:
/// `2 e^{iω_eg y0} { -e^{iω_eg r}/(8πr) + ∫ ds² e^{iω_eg τ}/(2τ) m J1(m√s²)/(8π√s²) }`.
pub fn f1(u2: f64, v2: f64, scen: &Scenario, cfg: &QuadratureConfig) -> Result<Complex64> {
    scen.validate()?;
    check_order("f1", u2, v2)?;
    if v2 < 0.0 {
        return Err(Error::domain("f1", "time-like branch needs 0 <= v2"));
    }
    let r = scen.r();
    let m = scen.mass()?;
    let delta_term = -phase(scen.omega_eg * r) / (8.0 * PI * r);
    let smooth = s2_integral(scen, u2, v2, |s2| pauli_jordan_smooth(s2, m), cfg)?;
    Ok(phase(scen.omega_eg * scen.y0) * (delta_term + smooth) * 2.0)
}

/// Time-like `Re W` integral over `[v2, u2]` with `0 < v2 <= u2`:
/// `e^{iω_eg y0} ∫ ds² e^{iω_eg τ}/(2τ) m Y1(m√s²)/(8π√s²)`.
///
/// `v2 = 0` puts the light-cone pole on the endpoint and is rejected: that
/// piece only exists paired with [`f3`] inside [`amplitude_p3`].
pub fn f2(u2: f64, v2: f64, scen: &Scenario, cfg: &QuadratureConfig) -> Result<Complex64> {
    scen.validate()?;
    check_order("f2", u2, v2)?;
    if v2 <= 0.0 {
        return Err(Error::domain(
            "f2",
            "lower limit on the light cone; the pole is only integrable paired with f3 (see amplitude_p3)",
        ));
    }
    let m = scen.mass()?;
    let v = s2_integral(scen, u2, v2, |s2| kernel_full(s2, m), cfg)?;
    Ok(phase(scen.omega_eg * scen.y0) * v)
}

/// Space-like `Re W` integral over `[v2, u2]` with `-r² <= v2 <= u2 < 0`:
/// `e^{iω_eg y0} ∫ ds² e^{iω_eg τ}/(2τ) 2m K1(m√-s²)/(8π²√-s²)`.
pub fn f3(u2: f64, v2: f64, scen: &Scenario, cfg: &QuadratureConfig) -> Result<Complex64> {
    scen.validate()?;
    check_order("f3", u2, v2)?;
    if u2 >= 0.0 {
        return Err(Error::domain(
            "f3",
            "upper limit on the light cone; the pole is only integrable paired with f2 (see amplitude_p3)",
        ));
    }
    let r = scen.r();
    if v2 < -r * r {
        return Err(Error::domain("f3", format!("v2 = {v2} is below -r² (before the source fired)")));
    }
    let m = scen.mass()?;
    let v = s2_integral(scen, u2, v2, |s2| kernel_full(s2, m), cfg)?;
    Ok(phase(scen.omega_eg * scen.y0) * v)
}

fn s2_of(tau: f64, r: f64) -> f64 {
    (tau - r) * (tau + r)
}

/// Source-dependent UDD amplitude `c1 |m_eg| ∫ e^{iω_eg t} Δ(r, t - y0) dt`.
/// Exactly zero while the window ends outside the light cone.
pub fn amplitude_p2(scen: &Scenario, cfg: &QuadratureConfig) -> Result<Complex64> {
    scen.validate()?;
    cfg.validate()?;
    let win = Window::of(scen);
    let r = win.r;
    if win.is_empty() || win.hi < r {
        return Ok(Complex64::default());
    }
    let s_f2 = s2_of(win.hi, r);
    let value = if win.lo < r {
        // The window crosses the cone: delta term plus the interior.
        f1(s_f2, 0.0, scen, cfg)?
    } else {
        let s_i2 = s2_of(win.lo, r);
        let delta_free = phase(scen.omega_eg * (scen.y0 + r)) * (-2.0 / (8.0 * PI * r));
        f1(s_f2, s_i2, scen, cfg)? - delta_free
    };
    Ok(value * scen.coupling())
}

/// `∫ e^{iω_eg τ} Re W(r, τ) dτ` over `[lo, hi]` with `lo < r < hi`, as a
/// principal value in `u = τ - r`.
///
/// With `c = -1/(4π²)` and `s² = u(u + 2r)`, the pole part `c/s²` is
/// `c/(2r) [1/u - 1/(u + 2r)]`; the `1/u` piece is split once more as
/// `e^{iω r}/u + e^{iω r}(e^{iω u} - 1)/u` so that only a constant-strength
/// pole is left for the exact treatment.
fn pole_pieces(scen: &Scenario, m: Mass) -> (impl Fn(f64) -> Complex64, Complex64) {
    let r = scen.r();
    let w = scen.omega_eg;
    let c = POLE_STRENGTH / (2.0 * r);
    let anchor = phase(w * r);
    let f_reg = move |u: f64| {
        let tau = r + u;
        let s2 = u * (u + 2.0 * r);
        let regular = or_nan(kernel_regular(s2, m).map(Complex64::from));
        phase(w * tau) * (regular - c / (tau + r)) + anchor * expm1_i_over(w * u, w) * c
    };
    (f_reg, anchor * c)
}

fn re_w_across_cone(scen: &Scenario, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let r = scen.r();
    let (f_reg, strength) = pole_pieces(scen, scen.mass()?);
    Ok(integrate_principal_value(f_reg, lo - r, hi - r, strength, cfg)?.value)
}

fn on_cone_error(op: &'static str) -> Error {
    Error::domain(op, "a window edge lies exactly on the light cone, where the Re W integral diverges logarithmically")
}

/// Glauber amplitude `-i c1 |m_eg| ∫ e^{iω_eg t} Re W(r, t - y0) dt` over the
/// window clipped to `t >= y0`. Non-zero even for entirely space-like
/// windows.
pub fn amplitude_p3(scen: &Scenario, cfg: &QuadratureConfig) -> Result<Complex64> {
    scen.validate()?;
    cfg.validate()?;
    let win = Window::of(scen);
    if win.is_empty() {
        return Ok(Complex64::default());
    }
    let r = win.r;
    if win.hi == r || win.lo == r {
        return Err(on_cone_error("amplitude_p3"));
    }
    let s_f2 = s2_of(win.hi, r);
    let s_i2 = s2_of(win.lo, r);
    let combination = if s_i2 > 0.0 {
        f2(s_f2, s_i2, scen, cfg)?
    } else if s_f2 < 0.0 {
        f3(s_f2, s_i2, scen, cfg)?
    } else {
        phase(scen.omega_eg * scen.y0) * re_w_across_cone(scen, win.lo, win.hi, cfg)?
    };
    Ok(Complex64::new(0.0, -scen.coupling()) * combination)
}

/// Milonni version of `P3`: only the time-like part of the window,
/// `τ ∈ [max(τ_i, r), τ_f]`.
///
/// When the clipped window starts on the cone the pole sits on its lower
/// edge; the integral is then its Hadamard finite part with reference scale
/// `r`, i.e. the pole contributes `c e^{iω_eg r}/(2r) · ln((τ_f - r)/r)`.
fn amplitude_p3_clipped(scen: &Scenario, cfg: &QuadratureConfig) -> Result<Complex64> {
    let win = Window::of(scen);
    let r = win.r;
    if win.hi < r || win.is_empty() {
        return Ok(Complex64::default());
    }
    if win.hi == r {
        return Err(on_cone_error("amplitude_p3 (clipped)"));
    }
    let combination = if win.lo > r {
        f2(s2_of(win.hi, r), s2_of(win.lo, r), scen, cfg)?
    } else {
        let (f_reg, strength) = pole_pieces(scen, scen.mass()?);
        let regular = integrate_adaptive(f_reg, 0.0, win.hi - r, cfg)?.value;
        phase(scen.omega_eg * scen.y0) * (regular + strength * ((win.hi - r) / r).ln())
    };
    Ok(Complex64::new(0.0, -scen.coupling()) * combination)
}

/// Vacuum contribution to the UDD probability,
/// `c1² |m_eg|² ∬ dt' dt'' e^{iω_eg (t'' - t')} W(0, t' - t'')` over the window,
/// with `W` damped by `e^{-ε ω}`, `ε = cfg.uv_damping`.
///
/// Doing the time integrals first gives
/// `c1² |m_eg|²/(4π²) ∫ dk k²/ω e^{-εω} [2 sin(ΩT/2)/Ω]²`, `Ω = ω_eg + ω`.
pub fn vacuum_p1(scen: &Scenario, cfg: &QuadratureConfig) -> Result<f64> {
    scen.validate()?;
    cfg.validate()?;
    let eps = cfg.uv_damping;
    if eps <= 0.0 {
        return Err(Error::domain("vacuum_p1", "uv_damping must be positive: the vacuum term diverges"));
    }
    let m2 = scen.m * scen.m;
    let t = scen.t_f - scen.t_i;
    let w_eg = scen.omega_eg;
    let integrand = |k: f64| {
        let w = (k * k + m2).sqrt();
        let big = w_eg + w;
        let window = t * sinc(0.5 * big * t);
        Complex64::from(k * k / w * (-eps * w).exp() * window * window)
    };
    let k_cut = cfg.k_max.min(50.0 / eps);
    let v = integrate_oscillatory(integrand, 0.0, k_cut, t, cfg)?.value.re;
    let c = scen.coupling();
    Ok(c * c * v / (4.0 * PI * PI))
}

/// Detection probability of the chosen detector model.
pub fn detect(scen: &Scenario, kind: DetectorKind, cfg: &QuadratureConfig) -> Result<ResponseBreakdown> {
    let geo = scen.geometry()?;
    cfg.validate()?;
    let win = Window::of(scen);
    let tau_i = scen.t_i - scen.y0;
    let on_cone = win.hi == geo.r || tau_i == geo.r;
    let g2 = scen.g * scen.g;
    let zero = Complex64::default();
    let mut out = ResponseBreakdown {
        detector: kind,
        case: geo.case,
        vacuum_p1: None,
        amp_p2: zero,
        amp_p3: None,
        probability: 0.0,
        epsilon_uv: cfg.uv_damping,
        on_cone,
    };
    match kind {
        DetectorKind::Udd => {
            let p1 = vacuum_p1(scen, cfg)?;
            let p2 = amplitude_p2(scen, cfg)?;
            out.vacuum_p1 = Some(p1);
            out.amp_p2 = p2;
            out.probability = p1 + g2 * p2.norm_sqr();
        }
        DetectorKind::Gd => {
            if geo.case == Case::SourceAfterWindow {
                out.amp_p3 = Some(zero);
                return Ok(out);
            }
            let p2 = amplitude_p2(scen, cfg)?;
            let p3 = amplitude_p3(scen, cfg)?;
            out.amp_p2 = p2;
            out.amp_p3 = Some(p3);
            out.probability = g2 * (p2 * 0.5 + p3).norm_sqr();
        }
        DetectorKind::Md => {
            if geo.case == Case::SourceAfterWindow || geo.s_f2 < 0.0 {
                out.amp_p3 = Some(zero);
                return Ok(out);
            }
            let p2 = amplitude_p2(scen, cfg)?;
            let p3 = amplitude_p3_clipped(scen, cfg)?;
            out.amp_p2 = p2;
            out.amp_p3 = Some(p3);
            out.probability = g2 * (p2 * 0.5 + p3).norm_sqr();
        }
    }
    if !(out.probability >= 0.0 && out.probability.is_finite()) {
        return Err(Error::Invariant(format!(
            "{kind} probability {} is not a finite non-negative number",
            out.probability
        )));
    }
    Ok(out)
}

/// `∫_lo^hi e^{iΩτ} dτ`.
fn plane_wave_window(big: f64, lo: f64, hi: f64) -> Complex64 {
    let len = hi - lo;
    phase(0.5 * big * (lo + hi)) * (len * sinc(0.5 * big * len))
}

/// C∞ switch-off: 1 below `k_max/2`, 0 at `k_max`.
fn taper(k: f64, k_max: f64) -> f64 {
    let s = (k / k_max - 0.5) * 2.0;
    if s <= 0.0 {
        return 1.0;
    }
    if s >= 1.0 {
        return 0.0;
    }
    let bump = |x: f64| if x <= 0.0 { 0.0 } else { (-1.0 / x).exp() };
    let (up, down) = (bump(s), bump(1.0 - s));
    down / (up + down)
}

/// Momentum-space amplitude `∫ dτ e^{iω_eg τ} K(r, τ)` over the clipped
/// window, where `K` is `W` (positive frequencies only) or `Δ = 2 Im W`.
///
/// For each mode the time integral is a plane-wave window done exactly, so
/// the only quadrature is over `k`, on a fixed Gauss–Legendre grid with
/// `grid_n` nodes per period of the fastest phase. The conditionally
/// convergent `k` tail is switched off smoothly between `k_max/2` and `k_max`,
/// which leaves a truncation error that decays faster than any power of
/// `k_max`.
fn oracle_amplitude(scen: &Scenario, commutator: bool, grid_n: usize, cfg: &QuadratureConfig) -> Result<Complex64> {
    scen.validate()?;
    cfg.validate()?;
    if grid_n < 64 {
        return Err(Error::domain("oracle", format!("grid_n must be at least 64, got {grid_n}")));
    }
    let win = Window::of(scen);
    if win.is_empty() {
        return Ok(Complex64::default());
    }
    let (r, lo, hi) = (win.r, win.lo, win.hi);
    let m2 = scen.m * scen.m;
    let w_eg = scen.omega_eg;
    let k_max = cfg.k_max;
    let integrand = |k: f64| {
        let w = (k * k + m2).sqrt();
        let amp = k * (k * r).sin() / w * taper(k, k_max);
        let mut time = plane_wave_window(w_eg - w, lo, hi);
        if commutator {
            time = (time - plane_wave_window(w_eg + w, lo, hi)) / Complex64::new(0.0, 1.0);
        }
        time * amp
    };
    let fastest = r + lo.abs().max(hi.abs());
    let periods = k_max * fastest / (2.0 * PI);
    let panels = ((periods * grid_n as f64 / 8.0).ceil() as usize).max(grid_n);
    let v = integrate_fixed_grid(integrand, 0.0, k_max, panels);
    Ok(phase(w_eg * scen.y0) * v * (scen.coupling() / (4.0 * PI * PI * r)))
}

/// Independent evaluation of the source-dependent UDD probability
/// `g² c1² |m_eg|² |∫ e^{iω_eg t} Δ(r, t - y0) dt|²` from the mode sum.
pub fn oracle_udd(scen: &Scenario, grid_n: usize, cfg: &QuadratureConfig) -> Result<f64> {
    let a = oracle_amplitude(scen, true, grid_n, cfg)?;
    Ok(scen.g * scen.g * a.norm_sqr())
}

/// Independent evaluation of the GD probability
/// `g² c1² |m_eg|² |∫ e^{iω_eg t} W(r, t - y0) dt|²` from the mode sum.
pub fn oracle_gd(scen: &Scenario, grid_n: usize, cfg: &QuadratureConfig) -> Result<f64> {
    let a = oracle_amplitude(scen, false, grid_n, cfg)?;
    Ok(scen.g * scen.g * a.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn case_classification_and_ties() {
        let mut s = Scenario::default();
        assert_eq!(s.geometry().unwrap().case, Case::SourceBeforeWindow);
        s.y0 = s.t_i;
        assert_eq!(s.geometry().unwrap().case, Case::SourceBeforeWindow);
        s.y0 = 1.0;
        assert_eq!(s.geometry().unwrap().case, Case::SourceInsideWindow);
        s.y0 = s.t_f;
        assert_eq!(s.geometry().unwrap().case, Case::SourceAfterWindow);
    }

    #[test]
    fn rejects_bad_scenarios() {
        let s = Scenario { t_i: 3.0, t_f: 1.0, ..Default::default() };
        match s.validate() {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "window"),
            other => panic!("{other:?}"),
        }
        let s = Scenario { x: [0.0; 3], ..Default::default() };
        assert!(s.validate().is_err());
        let s = Scenario { omega_eg: 0.0, ..Default::default() };
        assert!(s.validate().is_err());
    }

    #[test]
    fn empty_ranges_vanish() {
        let s = Scenario::default();
        assert_eq!(f2(2.0, 2.0, &s, &cfg()).unwrap(), Complex64::default());
        assert_eq!(f3(-0.5, -0.5, &s, &cfg()).unwrap(), Complex64::default());
        let d = f1(3.0, 3.0, &s, &cfg()).unwrap();
        let delta = phase(1.0) * (-2.0 / (8.0 * PI));
        assert!((d - delta).norm() < 1e-16);
    }

    #[test]
    fn pole_endpoints_are_rejected_standalone() {
        let s = Scenario::default();
        assert!(f2(1.0, 0.0, &s, &cfg()).is_err());
        assert!(f3(0.0, -0.5, &s, &cfg()).is_err());
        assert!(f1(1.0, 2.0, &s, &cfg()).is_err());
    }

    #[test]
    fn taper_is_a_smooth_switch() {
        assert_eq!(taper(0.3, 1.0), 1.0);
        assert_eq!(taper(1.0, 1.0), 0.0);
        assert!((taper(0.75, 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn tilde_helpers_are_stable() {
        let w = 1.3;
        for u in [1e-12, 1e-5, 0.7] {
            let exact = (phase(w * u) - 1.0) / u;
            assert!((expm1_i_over(w * u, w) - exact).norm() < 1e-9 * (1.0 + exact.norm()));
        }
        let e = plane_wave_window(0.0, 1.0, 3.0);
        assert!((e - Complex64::new(2.0, 0.0)).norm() < 1e-15);
    }
}
