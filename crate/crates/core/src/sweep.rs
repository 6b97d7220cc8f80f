//! Parameter sweeps and the light-cone causality scan.

use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;
use crate::response::{detect, DetectorKind, ResponseBreakdown, Scenario};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// Scenario parameter varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Source-detector distance, moving the detector along their line.
    R,
    TF,
    M,
    OmegaEg,
}

impl Axis {
    fn apply(self, scen: &Scenario, v: f64) -> Scenario {
        match self {
            Axis::R => scen.with_distance(v),
            Axis::TF => Scenario { t_f: v, ..*scen },
            Axis::M => Scenario { m: v, ..*scen },
            Axis::OmegaEg => Scenario { omega_eg: v, ..*scen },
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::R => "r",
            Axis::TF => "t_f",
            Axis::M => "m",
            Axis::OmegaEg => "omega_eg",
        })
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r" => Ok(Axis::R),
            "t_f" => Ok(Axis::TF),
            "m" => Ok(Axis::M),
            "omega_eg" => Ok(Axis::OmegaEg),
            _ => Err(Error::validation("axis", format!("unknown axis `{s}`, expected r, t_f, m or omega_eg"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub n: usize,
    pub scale: Scale,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(Error::validation(
                "sweep",
                format!("need finite start < stop, got {} .. {}", self.start, self.stop),
            ));
        }
        if self.n < 2 {
            return Err(Error::validation("sweep", format!("need at least 2 points, got {}", self.n)));
        }
        if self.scale == Scale::Log && self.start <= 0.0 {
            return Err(Error::validation("sweep", "log scale needs a positive start"));
        }
        Ok(())
    }

    /// Sweep abscissae, endpoints included exactly.
    pub fn points(&self) -> Vec<f64> {
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                if i == self.n - 1 {
                    return self.stop;
                }
                let f = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * f,
                    Scale::Log => self.start * (self.stop / self.start).powf(f),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub outcome: std::result::Result<ResponseBreakdown, Error>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub axis: Axis,
    pub kind: DetectorKind,
    pub rows: Vec<SweepRow>,
}

/// Evaluates `detect` at every sweep point. Points are computed in parallel
/// but reported in sweep order; a failing point records its error and the
/// sweep carries on.
pub fn run_sweep(scen: &Scenario, kind: DetectorKind, sweep: &SweepSpec, cfg: &QuadratureConfig) -> Result<SweepTable> {
    sweep.validate()?;
    cfg.validate()?;
    let rows = sweep
        .points()
        .into_par_iter()
        .map(|v| SweepRow { value: v, outcome: detect(&sweep.axis.apply(scen, v), kind, cfg) })
        .collect();
    Ok(SweepTable { axis: sweep.axis, kind, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// No source-dependent response beyond the light cone.
    CausalGated,
    /// Response above the floor at space-like separation.
    SpaceLikeTail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CausalGated => "causal-gated",
            Verdict::SpaceLikeTail => "space-like-tail",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KindScan {
    pub kind: DetectorKind,
    /// Largest scanned `r` whose source-dependent response exceeds `floor`.
    pub boundary: Option<f64>,
    /// Largest response at time-like distances (`r` below the cone radius).
    pub interior_max: f64,
    pub floor: f64,
    pub verdict: Verdict,
    /// Grid points where the evaluation failed and that were left out.
    pub failed_points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CausalityReport {
    /// `t_f - y0`: detectors farther away than this never enter the forward
    /// light cone of the source during the window.
    pub cone_radius: f64,
    pub step: f64,
    pub kinds: Vec<KindScan>,
}

/// Relative floor below which a response counts as absent.
pub const RESPONSE_FLOOR: f64 = 1e-12;

/// [`causality_scan_with`] on 64 points.
pub fn causality_scan(scen: &Scenario, cfg: &QuadratureConfig) -> Result<CausalityReport> {
    causality_scan_with(scen, 64, cfg)
}

/// Scans `r` over `(R/2, 3R/2)`, `R = t_f - y0`, on `n` cell centres (so `R`
/// itself is never a grid point), for all three detectors.
pub fn causality_scan_with(scen: &Scenario, n: usize, cfg: &QuadratureConfig) -> Result<CausalityReport> {
    scen.validate()?;
    cfg.validate()?;
    let cone = scen.t_f - scen.y0;
    if cone <= 0.0 {
        return Err(Error::validation("window", "the source fires after the window closes; there is no cone to scan"));
    }
    // An even count keeps R on a cell boundary.
    let n = (n.max(4) + 1) & !1;
    let step = cone / n as f64;
    let grid: Vec<f64> = (0..n).map(|j| 0.5 * cone + (j as f64 + 0.5) * step).collect();
    let kinds = DetectorKind::ALL
        .iter()
        .map(|&kind| {
            let responses: Vec<Option<f64>> = grid
                .par_iter()
                .map(|&r| {
                    detect(&scen.with_distance(r), kind, cfg)
                        .ok()
                        .map(|b| scen.g * scen.g * source_amplitude(&b).norm_sqr())
                })
                .collect();
            summarize(kind, cone, &grid, &responses)
        })
        .collect();
    Ok(CausalityReport { cone_radius: cone, step, kinds })
}

fn source_amplitude(b: &ResponseBreakdown) -> num_complex::Complex64 {
    match b.detector {
        DetectorKind::Udd => b.amp_p2,
        _ => b.amp_p2 * 0.5 + b.amp_p3.unwrap_or_default(),
    }
}

fn summarize(kind: DetectorKind, cone: f64, grid: &[f64], responses: &[Option<f64>]) -> KindScan {
    let interior_max =
        grid.iter().zip(responses).filter(|(&r, _)| r < cone).filter_map(|(_, v)| *v).fold(0.0, f64::max);
    let floor = RESPONSE_FLOOR * interior_max;
    let boundary =
        grid.iter().zip(responses).filter(|(_, v)| v.is_some_and(|v| v > floor)).map(|(&r, _)| r).next_back();
    let verdict = match boundary {
        Some(b) if b > cone => Verdict::SpaceLikeTail,
        _ => Verdict::CausalGated,
    };
    KindScan {
        kind,
        boundary,
        interior_max,
        floor,
        verdict,
        failed_points: responses.iter().filter(|v| v.is_none()).count(),
    }
}
