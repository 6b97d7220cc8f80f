//! CSV rendering of every result table. Reals are written with 17
//! significant digits so they read back bit-exactly; complex values take two
//! columns.

use crate::localization::DensityProfile;
use crate::response::ResponseBreakdown;
use crate::selftest::SelfTestReport;
use crate::signal::FrontScan;
use crate::sweep::{CausalityReport, SweepTable};
use num_complex::Complex64;

/// A table that can be written as CSV.
pub trait CsvTable {
    fn header(&self) -> Vec<String>;
    fn records(&self) -> Vec<Vec<String>>;
}

/// Renders `table` as RFC 4180 CSV with a header row.
pub fn emit_csv(table: &impl CsvTable) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    // Writing into a Vec cannot fail.
    w.write_record(table.header()).expect("in-memory write");
    for rec in table.records() {
        w.write_record(rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV output is UTF-8")
}

pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_real(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

fn complex(z: Option<Complex64>) -> [String; 2] {
    match z {
        Some(z) => [real(z.re), real(z.im)],
        None => [String::new(), String::new()],
    }
}

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}

const BREAKDOWN_COLUMNS: [&str; 10] =
    ["detector", "case", "on_cone", "probability", "vacuum_p1", "p2_re", "p2_im", "p3_re", "p3_im", "epsilon_uv"];

fn breakdown_fields(b: &ResponseBreakdown) -> Vec<String> {
    let [p2r, p2i] = complex(Some(b.amp_p2));
    let [p3r, p3i] = complex(b.amp_p3);
    vec![
        b.detector.to_string(),
        b.case.to_string(),
        b.on_cone.to_string(),
        real(b.probability),
        opt_real(b.vacuum_p1),
        p2r,
        p2i,
        p3r,
        p3i,
        real(b.epsilon_uv),
    ]
}

impl CsvTable for ResponseBreakdown {
    fn header(&self) -> Vec<String> {
        header(&BREAKDOWN_COLUMNS)
    }

    fn records(&self) -> Vec<Vec<String>> {
        vec![breakdown_fields(self)]
    }
}

impl CsvTable for SweepTable {
    fn header(&self) -> Vec<String> {
        let mut h = vec![self.axis.to_string()];
        h.extend(header(&BREAKDOWN_COLUMNS));
        h.extend(header(&["p2_abs", "p3_abs", "error"]));
        h
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|row| {
                let mut rec = vec![real(row.value)];
                match &row.outcome {
                    Ok(b) => {
                        rec.extend(breakdown_fields(b));
                        rec.push(real(b.amp_p2.norm()));
                        rec.push(opt_real(b.amp_p3.map(|z| z.norm())));
                        rec.push(String::new());
                    }
                    Err(e) => {
                        rec.push(self.kind.to_string());
                        rec.extend(std::iter::repeat_n(String::new(), BREAKDOWN_COLUMNS.len() + 1));
                        rec.push(e.to_string());
                    }
                }
                rec
            })
            .collect()
    }
}

impl CsvTable for DensityProfile {
    fn header(&self) -> Vec<String> {
        header(&["observable", "t", "light_cone_radius", "r", "density", "epsilon_uv"])
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.points
            .iter()
            .map(|&(r, v)| {
                vec![
                    self.observable.to_string(),
                    real(self.t),
                    real(self.light_cone_radius),
                    real(r),
                    real(v),
                    real(self.epsilon_uv),
                ]
            })
            .collect()
    }
}

impl CsvTable for CausalityReport {
    fn header(&self) -> Vec<String> {
        header(&[
            "detector",
            "cone_radius",
            "grid_step",
            "boundary_r",
            "interior_max",
            "floor",
            "failed_points",
            "verdict",
        ])
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.kinds
            .iter()
            .map(|k| {
                vec![
                    k.kind.to_string(),
                    real(self.cone_radius),
                    real(self.step),
                    opt_real(k.boundary),
                    real(k.interior_max),
                    real(k.floor),
                    k.failed_points.to_string(),
                    k.verdict.to_string(),
                ]
            })
            .collect()
    }
}

impl CsvTable for FrontScan {
    fn header(&self) -> Vec<String> {
        header(&["t", "t_minus_z", "re_v", "im_v", "im_v_numeric", "glauber_g", "mean_field", "error"])
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|(t, row)| {
                let mut rec = vec![real(*t), real(t - self.z)];
                match row {
                    Ok(r) => {
                        rec.extend([r.re_v, r.im_v, r.im_v_numeric, r.glauber_g, r.mean_field].map(real));
                        rec.push(String::new());
                    }
                    Err(e) => {
                        rec.extend(std::iter::repeat_n(String::new(), 5));
                        rec.push(e.to_string());
                    }
                }
                rec
            })
            .collect()
    }
}

impl CsvTable for SelfTestReport {
    fn header(&self) -> Vec<String> {
        header(&["check", "residual", "tolerance", "status"])
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.checks
            .iter()
            .map(|c| {
                let status = if c.passed() { "pass" } else { "fail" };
                vec![c.name.clone(), real(c.residual), real(c.tolerance), status.to_string()]
            })
            .collect()
    }
}
