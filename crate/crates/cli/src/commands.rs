//! Subcommand bodies. Each writes a plain `key: value` report to `out`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use chshctx_core::bridge::{classify, scan_grid, scan_point, CorrelationPoint, Thresholds};
use chshctx_core::chsh::{beta_closed_form, chsh_max_correlation, chsh_max_direct, chsh_value, ChshSettings};
use chshctx_core::kcbs::{kcbs_observables, kcbs_value, quantum_minimum, standard_pentagram, CLASSICAL_BOUND};
use chshctx_core::sampler::{estimate_chsh, estimate_kcbs, ShotEstimate};
use chshctx_core::{concurrence_pure, Error};
use rayon::prelude::*;

use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};
use crate::format::{fmt_sig, write_records, ScanRecord};
use crate::state::StateInput;

pub(crate) fn io(e: std::io::Error) -> CliError {
    CliError::Io(format!("write failed: {e}"))
}

pub(crate) struct Report<'a> {
    out: &'a mut dyn Write,
    digits: usize,
}

impl<'a> Report<'a> {
    pub(crate) fn new(out: &'a mut dyn Write, digits: usize) -> Self {
        Self { out, digits }
    }

    pub(crate) fn num(&mut self, key: &str, value: f64) -> Result<()> {
        writeln!(self.out, "{key}: {}", fmt_sig(value, self.digits)).map_err(io)
    }

    pub(crate) fn text(&mut self, key: &str, value: impl std::fmt::Display) -> Result<()> {
        writeln!(self.out, "{key}: {value}").map_err(io)
    }

    pub(crate) fn line(&mut self, line: impl std::fmt::Display) -> Result<()> {
        writeln!(self.out, "{line}").map_err(io)
    }

    pub(crate) fn sig(&self, value: f64) -> String {
        fmt_sig(value, self.digits)
    }
}

pub fn cmd_kcbs(cfg: &RunConfig, state: &StateInput, out: &mut dyn Write) -> Result<()> {
    let qutrit = state.qutrit()?;
    let obs = kcbs_observables(&standard_pentagram())?;
    let value = kcbs_value(&qutrit, &obs);
    let mut r = Report::new(out, cfg.output.precision);
    r.num("kcbs_value", value)?;
    r.num("classical_bound", CLASSICAL_BOUND)?;
    r.num("quantum_minimum", quantum_minimum())?;
    r.text(
        "verdict",
        if value < CLASSICAL_BOUND {
            "CONTEXTUAL"
        } else {
            "NON-CONTEXTUAL"
        },
    )
}

fn thresholds(r: &mut Report<'_>) -> Result<()> {
    let t = Thresholds::default();
    r.num("threshold_local", t.beta_local)?;
    r.num("threshold_noncontextual", t.beta_noncontextual)?;
    r.num("threshold_tsirelson", t.beta_tsirelson)
}

pub fn cmd_chsh(cfg: &RunConfig, state: &StateInput, out: &mut dyn Write) -> Result<()> {
    let psi = state.two_qubit();
    let c = concurrence_pure(&psi)?.value();
    let beta = chsh_max_correlation(&psi)?;
    let direct = chsh_max_direct(&psi, &cfg.optimizer_params())?;
    let mut r = Report::new(out, cfg.output.precision);
    r.num("concurrence", c)?;
    r.num("beta_correlation", beta)?;
    r.num("beta_direct", direct.beta)?;
    r.num("beta_closed_form", beta_closed_form(c)?)?;
    r.text("regime", classify(beta)?)?;
    thresholds(&mut r)
}

pub fn cmd_classify(cfg: &RunConfig, beta: f64, out: &mut dyn Write) -> Result<()> {
    let digits = cfg.output.precision;
    let regime = classify(beta).map_err(|e| match e {
        Error::OutOfRange { min, max, .. } => CliError::input(format!(
            "beta = {} is outside the valid interval [{}, {}]",
            fmt_sig(beta, digits),
            fmt_sig(min, digits),
            fmt_sig(max, digits)
        )),
        e => CliError::Core(e),
    })?;
    let t = Thresholds::default();
    let mut r = Report::new(out, cfg.output.precision);
    r.num("beta", beta)?;
    r.text("regime", regime)?;
    r.num("distance_to_local", beta - t.beta_local)?;
    r.num("distance_to_noncontextual", beta - t.beta_noncontextual)?;
    r.num("distance_to_tsirelson", beta - t.beta_tsirelson)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanArgs {
    pub c_min: f64,
    pub c_max: f64,
    pub steps: usize,
    /// Adds a row at `C* = 1/√5` when it lies in range.
    pub include_threshold: bool,
}

/// Grid points in parallel, rows in grid order.
pub fn scan_points(cfg: &RunConfig, args: &ScanArgs) -> Result<Vec<CorrelationPoint>> {
    let opt = cfg.optimizer_params();
    opt.validate()?;
    let tol = cfg.tolerances();
    let mut grid = scan_grid(args.c_min, args.c_max, args.steps)?;
    let c_star = Thresholds::default().c_star;
    if args.include_threshold
        && (args.c_min..=args.c_max).contains(&c_star)
        && !grid.iter().any(|&c| (c - c_star).abs() < 1e-12)
    {
        grid.push(c_star);
        grid.sort_by(f64::total_cmp);
    }
    grid.par_iter()
        .map(|&c| scan_point(c, &opt, &tol).map_err(CliError::from))
        .collect()
}

pub fn cmd_scan(
    cfg: &RunConfig,
    args: &ScanArgs,
    format: Format,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Vec<CorrelationPoint>> {
    let mut sink: Box<dyn Write + '_> = match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))?,
        )),
        None => Box::new(&mut *out),
    };
    let points = scan_points(cfg, args)?;
    let records: Vec<ScanRecord> = points
        .iter()
        .map(|p| ScanRecord::from_point(p, cfg.output.precision))
        .collect();
    write_records(&records, format, &mut sink)?;
    sink.flush().map_err(io)?;
    Ok(points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scenario {
    Kcbs,
    Chsh,
}

/// Shot estimate plus the exact value it targets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleOutcome {
    pub estimate: ShotEstimate,
    pub exact: f64,
}

impl SampleOutcome {
    /// `(mean − exact) / stderr`; zero when both the deviation and stderr vanish.
    pub fn z_score(&self) -> f64 {
        let d = self.estimate.mean - self.exact;
        if self.estimate.stderr > 0.0 {
            d / self.estimate.stderr
        } else if d == 0.0 {
            0.0
        } else {
            f64::INFINITY.copysign(d)
        }
    }
}

pub fn sample(state: &StateInput, scenario: Scenario, shots: u64, seed: u64) -> Result<SampleOutcome> {
    if shots == 0 {
        return Err(CliError::input("shots must be at least 1"));
    }
    match scenario {
        Scenario::Kcbs => {
            let q = state.qutrit()?;
            let obs = kcbs_observables(&standard_pentagram())?;
            Ok(SampleOutcome {
                estimate: estimate_kcbs(&q, &obs, shots, seed)?,
                exact: kcbs_value(&q, &obs),
            })
        }
        Scenario::Chsh => {
            let psi = state.two_qubit();
            let s = ChshSettings::canonical();
            Ok(SampleOutcome {
                estimate: estimate_chsh(&psi, &s, shots, seed)?,
                exact: chsh_value(&psi, &s)?,
            })
        }
    }
}

pub fn cmd_sample(
    cfg: &RunConfig,
    state: &StateInput,
    scenario: Scenario,
    shots: u64,
    seed: u64,
    out: &mut dyn Write,
) -> Result<()> {
    let s = sample(state, scenario, shots, seed)?;
    let mut r = Report::new(out, cfg.output.precision);
    r.text(
        "scenario",
        match scenario {
            Scenario::Kcbs => "kcbs",
            Scenario::Chsh => "chsh (canonical settings)",
        },
    )?;
    r.text("shots_per_term", shots)?;
    r.text("seed", seed)?;
    let (mean, err) = (r.sig(s.estimate.mean), r.sig(s.estimate.stderr));
    r.text("estimate", format!("{mean} ± {err}"))?;
    r.num("exact", s.exact)?;
    r.num("z_score", s.z_score())?;
    if s.estimate.variance_undefined {
        r.line("warning: one shot per term, stderr reported as 0")?;
    }
    Ok(())
}
