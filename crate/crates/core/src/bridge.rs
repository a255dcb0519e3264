//! Linking the KCBS and CHSH concurrence laws.
//!
//! Setting the KCBS minimum to the non-contextual bound −3 fixes
//! `C* = 1/√5`; the CHSH maximum at that concurrence is `√(24/5)`. A CHSH
//! value above `√(24/5)` therefore certifies KCBS-type contextuality of the
//! symmetric state, which splits the CHSH range into three regimes.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;


use crate::chsh::{beta_closed_form, chsh_max_correlation, LOCAL_BOUND, TSIRELSON};
use crate::error::{Error, Result};
use crate::kcbs::{kcbs_min_for_concurrence, quantum_minimum, s_min_closed_form, CLASSICAL_BOUND, SQRT_5};
use crate::optimize::OptimizerParams;
use crate::tolerances::Tolerances;

/// Slack accepted above the Tsirelson bound by [`classify`]: half a unit in
/// the sixth significant digit, so the rendered value 2.82843 still classifies.
pub const CLASSIFY_SLACK: f64 = 5e-6;

/// Round-off slack at the regime boundaries and range ends of the inverse laws.
const BOUNDARY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    LocalNoncontextual,
    NonlocalNoncontextual,
    NonlocalContextual,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::LocalNoncontextual => "LOCAL_NONCONTEXTUAL",
            Regime::NonlocalNoncontextual => "NONLOCAL_NONCONTEXTUAL",
            Regime::NonlocalContextual => "NONLOCAL_CONTEXTUAL",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownRegime;

impl fmt::Display for UnknownRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown regime tag")
    }
}

impl FromStr for Regime {
    type Err = UnknownRegime;
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        [
            Regime::LocalNoncontextual,
            Regime::NonlocalNoncontextual,
            Regime::NonlocalContextual,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
        .ok_or(UnknownRegime)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub beta_local: f64,
    pub beta_noncontextual: f64,
    pub beta_tsirelson: f64,
    pub s_noncontextual: f64,
    pub c_star: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            beta_local: LOCAL_BOUND,
            beta_noncontextual: (24.0_f64 / 5.0).sqrt(),
            beta_tsirelson: TSIRELSON,
            s_noncontextual: CLASSICAL_BOUND,
            c_star: 1.0 / SQRT_5,
        }
    }
}

fn out_of_range(name: &'static str, value: f64, min: f64, max: f64) -> Error {
    Error::OutOfRange { name, value, min, max }
}

/// Inverse of the KCBS law: `(s + √5) / (5 − 3√5)`.
pub fn c_from_smin(s: f64) -> Result<f64> {
    let (lo, hi) = (quantum_minimum(), -SQRT_5);
    if !(s >= lo - BOUNDARY_SLACK && s <= hi + BOUNDARY_SLACK) {
        return Err(out_of_range("s_min", s, lo, hi));
    }
    Ok(((s + SQRT_5) / (5.0 - 3.0 * SQRT_5)).clamp(0.0, 1.0))
}

/// Inverse of the CHSH law: `√(β²/4 − 1)`.
pub fn c_from_beta(beta: f64) -> Result<f64> {
    if !(LOCAL_BOUND - BOUNDARY_SLACK..=TSIRELSON + BOUNDARY_SLACK).contains(&beta) {
        return Err(out_of_range("beta", beta, LOCAL_BOUND, TSIRELSON));
    }
    Ok((beta * beta / 4.0 - 1.0).max(0.0).sqrt().min(1.0))
}

/// KCBS minimum implied by a maximal CHSH value through the shared concurrence.
pub fn smin_from_beta(beta: f64) -> Result<f64> {
    s_min_closed_form(c_from_beta(beta)?)
}

/// Upper-inclusive partition: `β ≤ 2`, `2 < β ≤ √(24/5)`, `√(24/5) < β ≤ 2√2`.
pub fn classify(beta: f64) -> Result<Regime> {
    let t = Thresholds::default();
    if !(beta >= 0.0 && beta <= t.beta_tsirelson + CLASSIFY_SLACK) {
        return Err(out_of_range("beta", beta, 0.0, t.beta_tsirelson));
    }
    Ok(if beta <= t.beta_local + BOUNDARY_SLACK {
        Regime::LocalNoncontextual
    } else if beta <= t.beta_noncontextual + BOUNDARY_SLACK {
        Regime::NonlocalNoncontextual
    } else {
        Regime::NonlocalContextual
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleStatus {
    /// Oracle and closed form agree within the grid tolerance.
    Ok,
    /// The oracle found a KCBS value below the closed form by more than the
    /// grid tolerance.
    BelowClosedForm,
    /// The oracle stayed above the closed form by more than the grid tolerance.
    AboveClosedForm,
    Failed(Error),
}

impl OracleStatus {
    pub fn is_ok(&self) -> bool {
        matches!(self, OracleStatus::Ok)
    }
}

impl fmt::Display for OracleStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleStatus::Ok => f.write_str("ok"),
            OracleStatus::BelowClosedForm => f.write_str("below_closed_form"),
            OracleStatus::AboveClosedForm => f.write_str("above_closed_form"),
            OracleStatus::Failed(e) => write!(f, "failed: {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationPoint {
    pub concurrence: f64,
    pub s_min_closed: f64,
    pub s_min_oracle: Option<f64>,
    pub beta_closed: f64,
    pub beta_oracle: Option<f64>,
    pub regime: Regime,
    pub status: OracleStatus,
}

impl CorrelationPoint {
    /// `s_min_oracle − s_min_closed`, when the oracle succeeded.
    pub fn s_min_deviation(&self) -> Option<f64> {
        self.s_min_oracle.map(|s| s - self.s_min_closed)
    }
}

/// `steps` equally spaced concurrences from `c_min` to `c_max` inclusive.
pub fn scan_grid(c_min: f64, c_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&c_min) {
        return Err(out_of_range("c_min", c_min, 0.0, 1.0));
    }
    if !(c_min..=1.0).contains(&c_max) {
        return Err(out_of_range("c_max", c_max, c_min, 1.0));
    }
    if steps == 0 {
        return Err(Error::InvalidParams("steps must be at least 1"));
    }
    if steps == 1 {
        return Ok(alloc::vec![c_min]);
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| if k == steps - 1 { c_max } else { c_min + (c_max - c_min) * k as f64 / last })
        .collect())
}

/// Closed-form and oracle values at one concurrence. Optimizer errors are
/// recorded in the point instead of being returned.
pub fn scan_point(c: f64, opt: &OptimizerParams, tol: &Tolerances) -> Result<CorrelationPoint> {
    let s_min_closed = s_min_closed_form(c)?;
    let beta_closed = beta_closed_form(c)?;
    let regime = classify(beta_closed)?;
    let oracle = kcbs_min_for_concurrence(c, opt).and_then(|m| {
        let beta = chsh_max_correlation(&m.argmin.to_symmetric().embed())?;
        Ok((m.value, beta))
    });
    let (s_min_oracle, beta_oracle, status) = match oracle {
        Ok((s, beta)) => {
            let status = if s < s_min_closed - tol.smin_grid {
                OracleStatus::BelowClosedForm
            } else if s > s_min_closed + tol.smin_grid {
                OracleStatus::AboveClosedForm
            } else {
                OracleStatus::Ok
            };
            (Some(s), Some(beta), status)
        }
        Err(e) => (None, None, OracleStatus::Failed(e)),
    };
    Ok(CorrelationPoint {
        concurrence: c,
        s_min_closed,
        s_min_oracle,
        beta_closed,
        beta_oracle,
        regime,
        status,
    })
}

/// Serial scan over [`scan_grid`], ordered by grid index.
pub fn scan(c_min: f64, c_max: f64, steps: usize, opt: &OptimizerParams) -> Result<Vec<CorrelationPoint>> {
    opt.validate()?;
    let tol = Tolerances::default();
    scan_grid(c_min, c_max, steps)?
        .into_iter()
        .map(|c| scan_point(c, opt, &tol))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_invariants() {
        let t = Thresholds::default();
        assert!(t.beta_local < t.beta_noncontextual && t.beta_noncontextual < t.beta_tsirelson);
        assert!((beta_closed_form(t.c_star).unwrap() - t.beta_noncontextual).abs() < 1e-12);
        assert!((s_min_closed_form(t.c_star).unwrap() - t.s_noncontextual).abs() < 1e-12);
    }

    #[test]
    fn inverse_laws_at_reference_points() {
        let c_star = 1.0 / SQRT_5;
        assert!((c_from_smin(-3.0).unwrap() - c_star).abs() < 1e-12);
        assert!(c_from_smin(-SQRT_5).unwrap().abs() < 1e-15);
        assert!((c_from_smin(quantum_minimum()).unwrap() - 1.0).abs() < 1e-12);
        assert!(c_from_beta(2.0).unwrap().abs() < 1e-15);
        assert!((c_from_beta(TSIRELSON).unwrap() - 1.0).abs() < 1e-12);
        assert!((c_from_beta((24.0_f64 / 5.0).sqrt()).unwrap() - c_star).abs() < 1e-12);
        assert!((smin_from_beta((24.0_f64 / 5.0).sqrt()).unwrap() + 3.0).abs() < 1e-12);
        assert!((smin_from_beta(2.0).unwrap() + SQRT_5).abs() < 1e-12);
        assert!((smin_from_beta(TSIRELSON).unwrap() - quantum_minimum()).abs() < 1e-12);
    }

    #[test]
    fn inverse_laws_reject_out_of_range() {
        assert!(matches!(c_from_smin(-2.0), Err(Error::OutOfRange { .. })));
        assert!(matches!(c_from_smin(-4.0), Err(Error::OutOfRange { .. })));
        assert!(matches!(c_from_beta(1.9), Err(Error::OutOfRange { .. })));
        assert!(matches!(c_from_beta(2.9), Err(Error::OutOfRange { .. })));
        assert!(matches!(smin_from_beta(f64::NAN), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(1.5).unwrap(), Regime::LocalNoncontextual);
        assert_eq!(classify(2.0).unwrap(), Regime::LocalNoncontextual);
        assert_eq!(classify(2.190_89).unwrap(), Regime::NonlocalNoncontextual);
        assert_eq!(classify((24.0_f64 / 5.0).sqrt()).unwrap(), Regime::NonlocalNoncontextual);
        assert_eq!(classify(2.191).unwrap(), Regime::NonlocalContextual);
        assert_eq!(classify(2.5).unwrap(), Regime::NonlocalContextual);
        assert_eq!(classify(TSIRELSON).unwrap(), Regime::NonlocalContextual);
        assert!(matches!(classify(3.0), Err(Error::OutOfRange { .. })));
        assert!(matches!(classify(-0.1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn regime_tags_round_trip() {
        for r in [
            Regime::LocalNoncontextual,
            Regime::NonlocalNoncontextual,
            Regime::NonlocalContextual,
        ] {
            assert_eq!(r.as_str().parse::<Regime>(), Ok(r));
        }
        assert!("LOCAL".parse::<Regime>().is_err());
    }

    #[test]
    fn semi_quantum_window() {
        let s = s_min_closed_form(0.4).unwrap();
        let beta = beta_closed_form(0.4).unwrap();
        assert!(s > -3.0 && beta > 2.0);
        assert_eq!(classify(beta).unwrap(), Regime::NonlocalNoncontextual);
    }

    #[test]
    fn grid_shapes() {
        let g = scan_grid(0.0, 1.0, 11).unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!((g[0], g[10]), (0.0, 1.0));
        assert!((g[3] - 0.3).abs() < 1e-15);
        assert_eq!(scan_grid(0.5, 0.5, 1).unwrap(), [0.5]);
        assert!(scan_grid(0.6, 0.5, 3).is_err());
        assert!(scan_grid(0.0, 1.0, 0).is_err());
        assert!(scan_grid(-0.1, 1.0, 2).is_err());
    }

    #[test]
    fn failed_oracle_is_marked_not_fatal() {
        let starved = OptimizerParams {
            restarts: 2,
            max_evals: 3,
            ..OptimizerParams::default()
        };
        let p = scan_point(0.5, &starved, &Tolerances::default()).unwrap();
        assert!(matches!(p.status, OracleStatus::Failed(_)));
        assert_eq!(p.s_min_oracle, None);
        assert!((p.s_min_closed + 3.090_17).abs() < 1e-5);
    }
}
