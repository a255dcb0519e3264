//! The reproduction report: every headline number recomputed and gated.

use std::io::Write;

use chshctx_core::bridge::{c_from_smin, classify, CorrelationPoint, OracleStatus, Regime, Thresholds};
use chshctx_core::chsh::{beta_closed_form, chsh_max_correlation, chsh_max_direct, chsh_operator, ChshSettings, TSIRELSON};
use chshctx_core::kcbs::{kcbs_observables, kcbs_value, s_min_closed_form, standard_pentagram};
use chshctx_core::sampler::estimate_kcbs;
use chshctx_core::{commutator_norm, concurrence_pure, eigensystem, Direction3, PureState, QutritPure, SymmetricTwoQubit, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::commands::{scan_points, Report, ScanArgs};
use crate::config::RunConfig;
use crate::error::{CliError, Result};

pub const RANDOM_STATES: usize = 200;
pub const RANDOM_SETTINGS: usize = 1000;
pub const SAMPLER_SEEDS: u64 = 100;
pub const SAMPLER_MIN_WITHIN: usize = 99;
pub const SAMPLER_SIGMAS: f64 = 5.0;
pub const REGIME_PROBES: [(f64, Regime); 6] = [
    (1.9, Regime::LocalNoncontextual),
    (2.0, Regime::LocalNoncontextual),
    (2.1, Regime::NonlocalNoncontextual),
    (2.19089, Regime::NonlocalNoncontextual),
    (2.2, Regime::NonlocalContextual),
    (2.82843, Regime::NonlocalContextual),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub detail: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ReproduceReport {
    pub checks: Vec<Check>,
}

impl ReproduceReport {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }
}

struct Checks<'a> {
    report: Report<'a>,
    checks: Vec<Check>,
}

impl Checks<'_> {
    fn push(&mut self, name: &str, pass: bool, detail: String) -> Result<()> {
        let mark = if pass { "PASS" } else { "FAIL" };
        self.report.line(format!("[{mark}] {name}: {detail}"))?;
        self.checks.push(Check {
            name: name.to_string(),
            detail,
            pass,
        });
        Ok(())
    }

    /// `|value − expected| ≤ tol`.
    fn close(&mut self, name: &str, value: f64, expected: f64, tol: f64) -> Result<()> {
        let dev = (value - expected).abs();
        let detail = format!(
            "{} (expected {}, |diff| {:.1e} <= {:.0e})",
            self.report.sig(value),
            self.report.sig(expected),
            dev,
            tol
        );
        self.push(name, dev <= tol, detail)
    }

    fn section(&mut self, title: &str) -> Result<()> {
        self.report.line(format!("== {title}"))
    }
}

fn gaussian_c64(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure two-qubit state.
pub fn random_two_qubit(rng: &mut ChaCha8Rng) -> PureState {
    let v: Vec<C64> = (0..4).map(|_| gaussian_c64(rng)).collect();
    chshctx_core::normalize(&v).expect("gaussian vector is nonzero")
}

/// Symmetric state with Gaussian-distributed `(a, b, c)`.
pub fn random_symmetric(rng: &mut ChaCha8Rng) -> SymmetricTwoQubit {
    SymmetricTwoQubit::normalized(gaussian_c64(rng), gaussian_c64(rng), gaussian_c64(rng))
        .expect("gaussian vector is nonzero")
}

pub fn random_direction(rng: &mut ChaCha8Rng) -> Direction3 {
    loop {
        let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
        if let Ok(d) = Direction3::normalized(v[0], v[1], v[2]) {
            return d;
        }
    }
}

fn headline(c: &mut Checks<'_>) -> Result<()> {
    c.section("headline numbers")?;
    let obs = kcbs_observables(&standard_pentagram())?;
    let value = kcbs_value(&QutritPure::spin_z(0), &obs);
    c.close("kcbs minimum 5-4sqrt5 at |0>", value, 5.0 - 4.0 * 5.0_f64.sqrt(), 1e-9)?;
    c.close("s_min closed form at C=0 (-sqrt5)", s_min_closed_form(0.0)?, -(5.0_f64.sqrt()), 1e-12)?;
    let c_star = c_from_smin(-3.0)?;
    c.close("C* = c_from_smin(-3) = 1/sqrt5", c_star, 1.0 / 5.0_f64.sqrt(), 1e-12)?;
    c.close("beta* = beta(C*) = sqrt(24/5)", beta_closed_form(c_star)?, (24.0_f64 / 5.0).sqrt(), 1e-12)
}

fn kcbs_grid(cfg: &RunConfig, c: &mut Checks<'_>) -> Result<()> {
    c.section("KCBS law S_min(C) = (5-3sqrt5)C - sqrt5 against the optimizer")?;
    let tol = cfg.tolerances();
    let args = ScanArgs {
        c_min: 0.0,
        c_max: 1.0,
        steps: 11,
        include_threshold: false,
    };
    let points = scan_points(cfg, &args)?;
    let mut flagged = Vec::new();
    for p in &points {
        let name = format!("grid C={}", c.report.sig(p.concurrence));
        grid_line(c, &name, p, tol.smin_grid)?;
        if p.status == OracleStatus::BelowClosedForm {
            flagged.push(p.concurrence);
        }
    }
    if !flagged.is_empty() {
        c.report.line(format!("flagged discrepancies (oracle below the law): C = {flagged:?}"))?;
    }
    for (p, name) in [(points.first(), "endpoint C=0 -> -sqrt5"), (points.last(), "endpoint C=1 -> 5-4sqrt5")] {
        let p = p.expect("grid has 11 points");
        grid_line(c, name, p, tol.smin_endpoint)?;
    }
    Ok(())
}

fn grid_line(c: &mut Checks<'_>, name: &str, p: &CorrelationPoint, tol: f64) -> Result<()> {
    match (&p.status, p.s_min_oracle) {
        (OracleStatus::Failed(e), _) => c.push(name, false, format!("optimizer failed: {e}")),
        (_, Some(s)) => c.close(name, s, p.s_min_closed, tol),
        (_, None) => c.push(name, false, "optimizer produced no value".to_string()),
    }
}

fn chsh_law(cfg: &RunConfig, c: &mut Checks<'_>) -> Result<()> {
    c.section("CHSH law beta(C) = 2sqrt(1+C^2) on random states")?;
    let tol = cfg.tolerances();
    let opt = cfg.optimizer_params();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.optimizer.seed);
    let general: Vec<PureState> = (0..RANDOM_STATES).map(|_| random_two_qubit(&mut rng)).collect();
    let symmetric: Vec<PureState> = (0..RANDOM_STATES).map(|_| random_symmetric(&mut rng).embed()).collect();

    let fast_vs_direct = |psi: &PureState| -> Result<f64> {
        let fast = chsh_max_correlation(psi)?;
        let direct = chsh_max_direct(psi, &opt)?.beta;
        Ok((fast - direct).abs())
    };
    // An optimizer error counts as an infinite deviation.
    let dev: Vec<f64> = general
        .par_iter()
        .map(|psi| fast_vs_direct(psi).unwrap_or(f64::INFINITY))
        .collect();
    max_dev_check(c, "general states: correlation vs direct optimizer", &dev, tol.beta_optimizer)?;

    let law = |psi: &PureState| -> Result<(f64, f64)> {
        let closed = beta_closed_form(concurrence_pure(psi)?.value())?;
        let fast = chsh_max_correlation(psi)?;
        let direct = chsh_max_direct(psi, &opt)?.beta;
        Ok(((fast - closed).abs(), (direct - closed).abs()))
    };
    let dev: Vec<(f64, f64)> = symmetric
        .par_iter()
        .map(|psi| law(psi).unwrap_or((f64::INFINITY, f64::INFINITY)))
        .collect();
    let (fast, direct): (Vec<f64>, Vec<f64>) = dev.into_iter().unzip();
    max_dev_check(c, "symmetric states: correlation vs 2sqrt(1+C^2)", &fast, tol.beta_closed)?;
    max_dev_check(c, "symmetric states: direct optimizer vs 2sqrt(1+C^2)", &direct, tol.beta_optimizer)
}

fn max_dev_check(c: &mut Checks<'_>, name: &str, dev: &[f64], tol: f64) -> Result<()> {
    let max = dev.iter().copied().fold(0.0, f64::max);
    let bad = dev.iter().filter(|&&d| !(d <= tol)).count();
    c.push(
        name,
        bad == 0,
        format!("{} states, max |diff| {max:.1e} <= {tol:.0e}, {bad} outside", dev.len()),
    )
}

fn structure(cfg: &RunConfig, c: &mut Checks<'_>) -> Result<()> {
    c.section("structural invariants")?;
    let p = standard_pentagram();
    let d = p.directions();
    let ortho = (0..5).map(|i| d[i].dot(&d[(i + 1) % 5]).abs()).fold(0.0, f64::max);
    c.push("pentagram adjacent orthogonality", ortho < 1e-12, format!("max |l_i.l_i+1| {ortho:.1e} < 1e-12"))?;

    let obs = kcbs_observables(&p)?;
    let comm = (0..5)
        .map(|i| commutator_norm(&obs.a_ops[i], &obs.a_ops[(i + 1) % 5]))
        .collect::<chshctx_core::Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    c.push("adjacent A_i commute", comm < 1e-12, format!("max ||[A_i, A_i+1]|| {comm:.1e} < 1e-12"))?;

    let mut spec_dev = 0.0_f64;
    for a in &obs.a_ops {
        let e = eigensystem(a)?;
        for (v, want) in e.eigenvalues.iter().zip([-1.0, 1.0, 1.0]) {
            spec_dev = spec_dev.max((v - want).abs());
        }
    }
    c.push("A_i spectra {-1, +1, +1}", spec_dev <= 1e-9, format!("max deviation {spec_dev:.1e} <= 1e-9"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.optimizer.seed ^ 0x5e77_1165);
    let mut radius = 0.0_f64;
    for _ in 0..RANDOM_SETTINGS {
        let s = ChshSettings::new(
            random_direction(&mut rng),
            random_direction(&mut rng),
            random_direction(&mut rng),
            random_direction(&mut rng),
        );
        let e = eigensystem(&chsh_operator(&s)?)?;
        radius = radius.max(e.min().abs()).max(e.max().abs());
    }
    c.push(
        "CHSH operator spectra within 2sqrt2",
        radius <= TSIRELSON + 1e-9,
        format!("{RANDOM_SETTINGS} settings, max |eigenvalue| {} <= {}", c.report.sig(radius), c.report.sig(TSIRELSON)),
    )
}

fn regimes(c: &mut Checks<'_>) -> Result<()> {
    c.section("regime partition")?;
    let t = Thresholds::default();
    c.report.line(format!(
        "thresholds: local {}, non-contextual {}, tsirelson {}",
        c.report.sig(t.beta_local),
        c.report.sig(t.beta_noncontextual),
        c.report.sig(t.beta_tsirelson)
    ))?;
    for (beta, want) in REGIME_PROBES {
        let got = classify(beta);
        let pass = got.as_ref().ok() == Some(&want);
        let shown = got.map(|r| r.to_string()).unwrap_or_else(|e| e.to_string());
        c.push(&format!("classify({beta})"), pass, format!("{shown} (expected {want})"))?;
    }
    Ok(())
}

fn sampler(cfg: &RunConfig, c: &mut Checks<'_>) -> Result<()> {
    c.section("sampler statistics at |0>")?;
    let obs = kcbs_observables(&standard_pentagram())?;
    let zero = QutritPure::spin_z(0);
    let exact = kcbs_value(&zero, &obs);
    let shots = cfg.sampler.shots;
    let base = cfg.sampler.seed;
    let runs: Vec<_> = (0..SAMPLER_SEEDS)
        .into_par_iter()
        .map(|k| estimate_kcbs(&zero, &obs, shots, base.wrapping_add(k)))
        .collect::<chshctx_core::Result<_>>()?;
    let within = runs
        .iter()
        .filter(|e| (e.mean - exact).abs() <= SAMPLER_SIGMAS * e.stderr)
        .count();
    c.push(
        "estimate within 5 stderr",
        within >= SAMPLER_MIN_WITHIN,
        format!("{within}/{SAMPLER_SEEDS} seeds at {shots} shots per term (need >= {SAMPLER_MIN_WITHIN})"),
    )?;
    let small = estimate_kcbs(&zero, &obs, 10_000, base)?;
    let large = estimate_kcbs(&zero, &obs, 1_000_000, base)?;
    let ratio = small.stderr / large.stderr;
    c.push(
        "stderr shrinks 10x from 1e4 to 1e6 shots",
        (7.0..=13.0).contains(&ratio),
        format!("ratio {} in [7, 13]", c.report.sig(ratio)),
    )
}

/// Runs every check, printing one `[PASS]`/`[FAIL]` line each.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<ReproduceReport> {
    let mut c = Checks {
        report: Report::new(out, cfg.output.precision),
        checks: Vec::new(),
    };
    headline(&mut c)?;
    kcbs_grid(cfg, &mut c)?;
    chsh_law(cfg, &mut c)?;
    structure(cfg, &mut c)?;
    regimes(&mut c)?;
    sampler(cfg, &mut c)?;
    let report = ReproduceReport { checks: c.checks };
    let total = report.checks.len();
    let failed = report.failed();
    c.report.line(format!("summary: {} passed, {failed} failed", total - failed))?;
    Ok(report)
}

pub fn cmd_reproduce(cfg: &RunConfig, out: &mut dyn Write) -> Result<ReproduceReport> {
    let report = run(cfg, out)?;
    if report.all_pass() {
        Ok(report)
    } else {
        Err(CliError::ChecksFailed {
            failed: report.failed(),
            total: report.checks.len(),
        })
    }
}
