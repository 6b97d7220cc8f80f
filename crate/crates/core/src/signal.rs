//! A classical plane-wave pulse with a sharp front and its analytic signal.
//!
//! The real part of the signal is a top hat of height `f0` occupying
//! `t - z ∈ [0, dz]`. Its imaginary part is fixed by a Hilbert transform and,
//! unlike the real part, has logarithmic tails on both sides:
//!
//! ```text
//! Im V = (f0/π) ln |(t - z) / (t - z - dz)|
//! ```
//!
//! A photodetector reading `|V|²` therefore clicks before the front arrives,
//! while the mean field `2 Re V` is still exactly zero.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Evaluations closer than this to a front edge are rejected.
pub const EDGE_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontSignal {
    pub f0: f64,
    /// Length of the pulse.
    pub dz: f64,
    pub z: f64,
    pub t: f64,
}

impl FrontSignal {
    pub fn new(f0: f64, dz: f64, z: f64, t: f64) -> Result<FrontSignal> {
        if !(dz.is_finite() && dz > 0.0) {
            return Err(Error::validation("dz", format!("front length must be positive, got {dz}")));
        }
        if !(f0.is_finite() && z.is_finite() && t.is_finite()) {
            return Err(Error::validation("signal", "f0, z and t must be finite"));
        }
        Ok(FrontSignal { f0, dz, z, t })
    }

    fn lag(&self) -> f64 {
        self.t - self.z
    }
}

/// `Re V`: `f0` inside the pulse, zero elsewhere.
pub fn re_v(sig: &FrontSignal) -> f64 {
    let lag = sig.lag();
    if (0.0..=sig.dz).contains(&lag) {
        sig.f0
    } else {
        0.0
    }
}

/// Mean field `<Φ> = 2 Re V`.
pub fn mean_field(sig: &FrontSignal) -> f64 {
    2.0 * re_v(sig)
}

/// Closed-form `Im V`.
pub fn im_v_analytic(sig: &FrontSignal) -> Result<f64> {
    let lag = sig.lag();
    if lag.abs() < EDGE_GUARD || (lag - sig.dz).abs() < EDGE_GUARD {
        return Err(Error::domain("im_v_analytic", format!("t - z = {lag} sits on a front edge")));
    }
    Ok(sig.f0 / PI * (lag / (lag - sig.dz)).abs().ln())
}

/// Glauber correlation `G(x, x) = |V|² = (Re V)² + (Im V)²`.
pub fn glauber_g(sig: &FrontSignal) -> Result<f64> {
    let re = re_v(sig);
    let im = im_v_analytic(sig)?;
    Ok(re * re + im * im)
}

/// A real signal sampled at the centres of equal cells: `values[j]` stands for
/// the cell `[start + j h, start + (j + 1) h]`.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformSamples {
    pub start: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl UniformSamples {
    /// Samples `f` at the centres of `n` cells covering `[start, stop]`.
    pub fn from_fn(start: f64, stop: f64, n: usize, f: impl Fn(f64) -> f64) -> UniformSamples {
        let step = (stop - start) / n as f64;
        let values = (0..n).map(|j| f(start + (j as f64 + 0.5) * step)).collect();
        UniformSamples { start, step, values }
    }

    pub fn end(&self) -> f64 {
        self.start + self.step * self.values.len() as f64
    }
}

/// Discrete Hilbert transform `(1/π) PV ∫ s(t') / (t - t') dt'` of the
/// sampled signal, evaluated at `t_eval`.
///
/// Each cell is integrated exactly as a constant; the cell holding `t_eval`
/// is taken in the principal-value sense. Summed over cells this is
/// `(1/π) Σ_k (v_k - v_{k-1}) ln|t - x_k|` over cell boundaries `x_k`, which is
/// how it is evaluated: flat stretches cost nothing and a sharp edge enters
/// as a single log.
pub fn hilbert_numeric(samples: &UniformSamples, t_eval: f64) -> Result<f64> {
    let h = samples.step;
    if !(h.is_finite() && h > 0.0) || samples.values.is_empty() {
        return Err(Error::domain("hilbert_numeric", "need a positive step and at least one sample"));
    }
    if !(t_eval > samples.start && t_eval < samples.end()) {
        return Err(Error::domain(
            "hilbert_numeric",
            format!("t = {t_eval} outside the sampled window [{}, {}]", samples.start, samples.end()),
        ));
    }
    let n = samples.values.len();
    let mut acc = 0.0;
    for k in 0..=n {
        let before = if k == 0 { 0.0 } else { samples.values[k - 1] };
        let after = if k == n { 0.0 } else { samples.values[k] };
        let jump = after - before;
        if jump == 0.0 {
            continue;
        }
        let dist = (t_eval - (samples.start + k as f64 * h)).abs();
        if dist < EDGE_GUARD * h.max(1.0) {
            return Err(Error::domain("hilbert_numeric", format!("t = {t_eval} sits on a jump of the samples")));
        }
        acc += jump * dist.ln();
    }
    Ok(acc / PI)
}

/// One row of a front scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontRow {
    pub re_v: f64,
    pub im_v: f64,
    pub im_v_numeric: f64,
    pub glauber_g: f64,
    pub mean_field: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontScan {
    pub f0: f64,
    pub dz: f64,
    pub z: f64,
    /// Sample spacing of the numeric Hilbert transform.
    pub step: f64,
    pub rows: Vec<(f64, std::result::Result<FrontRow, Error>)>,
}

/// Evaluates the pulse at fixed `z` for each time in `times`, with the numeric
/// Hilbert transform on a grid of spacing `step`.
///
/// The grid covers at least 50 pulse lengths on either side of the pulse and
/// every requested time, with `z` on a cell boundary. The top hat vanishes
/// outside the pulse, so cutting the grid off loses nothing.
pub fn front_scan(f0: f64, dz: f64, z: f64, times: &[f64], step: f64) -> Result<FrontScan> {
    FrontSignal::new(f0, dz, z, z)?;
    if !(step.is_finite() && step > 0.0 && step < dz) {
        return Err(Error::validation("step", format!("need 0 < step < dz, got {step}")));
    }
    let t_min = times.iter().copied().fold(z - 50.0 * dz, f64::min) - dz;
    let t_max = times.iter().copied().fold(z + 51.0 * dz, f64::max) + dz;
    let below = ((z - t_min) / step).ceil();
    let above = ((t_max - z) / step).ceil();
    let start = z - below * step;
    let samples = UniformSamples::from_fn(start, z + above * step, (below + above) as usize, |t| {
        re_v(&FrontSignal { f0, dz, z, t })
    });
    let rows = times
        .iter()
        .map(|&t| {
            let row = (|| {
                let sig = FrontSignal::new(f0, dz, z, t)?;
                let im_v = im_v_analytic(&sig)?;
                let re = re_v(&sig);
                Ok(FrontRow {
                    re_v: re,
                    im_v,
                    im_v_numeric: hilbert_numeric(&samples, t)?,
                    glauber_g: re * re + im_v * im_v,
                    mean_field: mean_field(&sig),
                })
            })();
            (t, row)
        })
        .collect();
    Ok(FrontScan { f0, dz, z, step, rows })
}
