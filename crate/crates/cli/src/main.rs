//! `detlab`: evaluate detector responses, sweeps and scans, writing CSV.

use causal_detectors::csv_out::{emit_csv, CsvTable};
use causal_detectors::localization::{density_profile, Observable};
use causal_detectors::quadrature::QuadratureConfig;
use causal_detectors::response::{detect, DetectorKind, Scenario};
use causal_detectors::scenario_file::{parse_scenario, ScenarioFile};
use causal_detectors::selftest::run_selftest;
use causal_detectors::signal::front_scan;
use causal_detectors::sweep::{causality_scan_with, run_sweep, Axis, Scale, SweepSpec};
use causal_detectors::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "detlab", version, about = "Detector responses near the light cone, as CSV")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario file (TOML). Without it the benchmark scenario is used.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// UV damping for momentum integrals; overrides the scenario file.
    #[arg(long = "eps-uv")]
    eps_uv: Option<f64>,
    /// Relative quadrature tolerance; overrides the scenario file.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct Grid {
    #[arg(long, allow_negative_numbers = true)]
    from: f64,
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    #[arg(long, default_value_t = 50)]
    n: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Detector {
    Udd,
    Gd,
    Md,
}

impl From<Detector> for DetectorKind {
    fn from(d: Detector) -> Self {
        match d {
            Detector::Udd => DetectorKind::Udd,
            Detector::Gd => DetectorKind::Gd,
            Detector::Md => DetectorKind::Md,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepAxis {
    R,
    #[value(name = "t_f")]
    TF,
    M,
    #[value(name = "omega_eg")]
    OmegaEg,
}

impl From<SweepAxis> for Axis {
    fn from(a: SweepAxis) -> Self {
        match a {
            SweepAxis::R => Axis::R,
            SweepAxis::TF => Axis::TF,
            SweepAxis::M => Axis::M,
            SweepAxis::OmegaEg => Axis::OmegaEg,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ObservableArg {
    Glauber,
    NewtonWigner,
}

#[derive(Subcommand)]
enum Command {
    /// Response probability of one detector, with its breakdown.
    Respond {
        #[command(flatten)]
        common: Common,
        /// Overrides the kind given in the scenario file.
        #[arg(long)]
        detector: Option<Detector>,
    },
    /// Response along one scenario parameter.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        detector: Option<Detector>,
        #[arg(long, value_enum)]
        axis: SweepAxis,
        #[command(flatten)]
        grid: Grid,
        /// Space the points logarithmically.
        #[arg(long)]
        log: bool,
    },
    /// Sharp-front signal and its precursor over a grid of times.
    Frontscan {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        f0: f64,
        #[arg(long, default_value_t = 0.1)]
        dz: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        z: f64,
        /// Sample spacing of the numeric Hilbert transform.
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[command(flatten)]
        grid: Grid,
    },
    /// Localization density against distance at a fixed time.
    Localization {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "glauber")]
        observable: ObservableArg,
        #[arg(long, allow_negative_numbers = true)]
        time: f64,
        #[command(flatten)]
        grid: Grid,
    },
    /// Scans the detector distance across the light cone for all detectors.
    CausalityScan {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
    /// Checks the reduced formulas against brute-force references.
    Selftest {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "eps-uv")]
        eps_uv: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// Failures of the front end itself, on top of the library's errors.
enum Failure {
    Lib(Error),
    Io(String),
    /// The selftest ran but some checks missed their tolerance.
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn with_overrides(mut cfg: QuadratureConfig, eps_uv: Option<f64>, tol: Option<f64>) -> Result<QuadratureConfig, Error> {
    if let Some(e) = eps_uv {
        cfg.uv_damping = e;
    }
    if let Some(t) = tol {
        cfg.rel_tol = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn load(common: &Common) -> Result<ScenarioFile, Failure> {
    let file = match &common.scenario {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            parse_scenario(&text)?
        }
        None => ScenarioFile {
            scenario: Scenario::default(),
            kind: DetectorKind::Udd,
            numerics: QuadratureConfig::default(),
        },
    };
    let numerics = with_overrides(file.numerics, common.eps_uv, common.tol)?;
    Ok(ScenarioFile { numerics, ..file })
}

fn write(out: &Option<PathBuf>, table: &impl CsvTable) -> Result<(), Failure> {
    let text = emit_csv(table);
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn linspace(grid: &Grid) -> Result<Vec<f64>, Error> {
    let plan = SweepSpec { axis: Axis::R, start: grid.from, stop: grid.to, n: grid.n, scale: Scale::Linear };
    plan.validate()?;
    Ok(plan.points())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Respond { common, detector } => {
            let f = load(&common)?;
            let kind = detector.map_or(f.kind, Into::into);
            let b = detect(&f.scenario, kind, &f.numerics)?;
            write(&common.out, &b)
        }
        Command::Sweep { common, detector, axis, grid, log } => {
            let f = load(&common)?;
            let plan = SweepSpec {
                axis: axis.into(),
                start: grid.from,
                stop: grid.to,
                n: grid.n,
                scale: if log { Scale::Log } else { Scale::Linear },
            };
            let table = run_sweep(&f.scenario, detector.map_or(f.kind, Into::into), &plan, &f.numerics)?;
            write(&common.out, &table)
        }
        Command::Frontscan { out, f0, dz, z, step, grid } => {
            let scan = front_scan(f0, dz, z, &linspace(&grid)?, step)?;
            write(&out, &scan)
        }
        Command::Localization { common, observable, time, grid } => {
            let f = load(&common)?;
            let observable = match observable {
                ObservableArg::Glauber => Observable::GlauberDensity,
                ObservableArg::NewtonWigner => Observable::NewtonWignerDensity,
            };
            let profile = density_profile(observable, time, &linspace(&grid)?, &f.scenario, &f.numerics)?;
            write(&common.out, &profile)
        }
        Command::CausalityScan { common, n } => {
            let f = load(&common)?;
            write(&common.out, &causality_scan_with(&f.scenario, n, &f.numerics)?)
        }
        Command::Selftest { out, eps_uv, tol } => {
            let cfg = with_overrides(QuadratureConfig::default(), eps_uv, tol)?;
            let report = run_selftest(&cfg)?;
            write(&out, &report)?;
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("detlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("detlab: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Checks) => {
            eprintln!("detlab: selftest failed");
            ExitCode::from(4)
        }
    }
}
