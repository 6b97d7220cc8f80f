//! TOML scenario documents.
//!
//! ```toml
//! [physics]            # all optional; defaults m = omega_eg = c1 = m_eg_abs = g = 1
//! m = 1.0
//! omega_eg = 1.0
//!
//! [source]             # optional; defaults y0 = 0, y = [0, 0, 0]
//! y0 = 0.0
//! y = [0.0, 0.0, 0.0]
//!
//! [detector]           # required
//! x = [1.0, 0.0, 0.0]
//! t_i = 0.5
//! t_f = 3.0
//! kind = "gd"          # udd (default), gd or md
//!
//! [numerics]           # optional QuadratureConfig overrides
//! rel_tol = 1e-8
//! ```
//!
//! Unknown keys are errors, with a suggestion when one is a near miss.
//! Violated invariants are reported against the line of the offending key.

use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;
use crate::response::{DetectorKind, Scenario};
use serde::Deserialize;
use std::ops::Range;
use toml::Spanned;

/// A parsed and validated scenario document.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub scenario: Scenario,
    pub kind: DetectorKind,
    pub numerics: QuadratureConfig,
}

type Field<T> = Option<Spanned<T>>;

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawPhysics {
    m: Field<f64>,
    omega_eg: Field<f64>,
    c1: Field<f64>,
    m_eg_abs: Field<f64>,
    g: Field<f64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSource {
    y0: Field<f64>,
    y: Field<[f64; 3]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDetector {
    x: Spanned<[f64; 3]>,
    t_i: Spanned<f64>,
    t_f: Spanned<f64>,
    kind: Field<DetectorKind>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default)]
    physics: RawPhysics,
    #[serde(default)]
    source: RawSource,
    detector: RawDetector,
    numerics: Field<QuadratureConfig>,
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |nl| before.len() - nl - 1) + 1;
    (line, column)
}

/// Appends "did you mean" to serde's unknown-field message when a listed
/// field is within two edits of the typo.
fn suggest(message: &str) -> String {
    let message = message.trim_end();
    let Some(rest) = message.strip_prefix("unknown field `") else {
        return message.to_string();
    };
    let Some((typo, expected)) = rest.split_once('`') else {
        return message.to_string();
    };
    let best = expected.split('`').skip(1).step_by(2).map(|cand| (strsim::damerau_levenshtein(typo, cand), cand)).min();
    match best {
        Some((d, cand)) if d <= 2 => format!("{message}; did you mean `{cand}`?"),
        _ => message.to_string(),
    }
}

fn value<T: Copy>(field: &Field<T>, default: T) -> T {
    field.as_ref().map_or(default, |s| *s.get_ref())
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<ScenarioFile> {
    let raw: RawDocument = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_column(text, s.start));
        Error::Parse { line, column, message: suggest(e.message()) }
    })?;
    let defaults = Scenario::default();
    let p = &raw.physics;
    let scenario = Scenario {
        m: value(&p.m, defaults.m),
        omega_eg: value(&p.omega_eg, defaults.omega_eg),
        c1: value(&p.c1, defaults.c1),
        m_eg_abs: value(&p.m_eg_abs, defaults.m_eg_abs),
        g: value(&p.g, defaults.g),
        y0: value(&raw.source.y0, 0.0),
        y: value(&raw.source.y, [0.0; 3]),
        x: *raw.detector.x.get_ref(),
        t_i: *raw.detector.t_i.get_ref(),
        t_f: *raw.detector.t_f.get_ref(),
    };
    let numerics = value(&raw.numerics, QuadratureConfig::default());
    let span_of = |field: &str| -> Option<Range<usize>> {
        let opt = |f: &Field<f64>| f.as_ref().map(|s| s.span());
        match field {
            "m" => opt(&p.m),
            "omega_eg" => opt(&p.omega_eg),
            "c1" => opt(&p.c1),
            "m_eg_abs" => opt(&p.m_eg_abs),
            "g" => opt(&p.g),
            "y0" => opt(&raw.source.y0),
            "y" => raw.source.y.as_ref().map(|s| s.span()),
            "x" => Some(raw.detector.x.span()),
            "t_i" | "window" => Some(raw.detector.t_i.span()),
            "t_f" => Some(raw.detector.t_f.span()),
            _ => raw.numerics.as_ref().map(|s| s.span()),
        }
    };
    let anchor = |err: Error| match err {
        Error::Validation { field, message } => {
            let message = match span_of(&field) {
                Some(span) => {
                    let (line, column) = line_column(text, span.start);
                    format!("{message} (line {line}, column {column})")
                }
                None => message,
            };
            Error::Validation { field, message }
        }
        other => other,
    };
    scenario.validate().map_err(anchor)?;
    numerics.validate().map_err(anchor)?;
    Ok(ScenarioFile { scenario, kind: value(&raw.detector.kind, DetectorKind::Udd), numerics })
}
