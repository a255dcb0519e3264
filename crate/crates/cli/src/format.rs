//! Significant-digit rendering and the scan table writers.

use std::io::Write;

use chshctx_core::bridge::{CorrelationPoint, OracleStatus};
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::{CliError, Result};

/// `x` rounded to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

/// Shortest decimal text of `round_sig(x, digits)`; parses back to exactly
/// that value.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    let r = round_sig(x, digits);
    if r == 0.0 {
        "0".to_string()
    } else {
        r.to_string()
    }
}

/// One scan row at the output precision. Column order is the CSV header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub c: f64,
    pub s_min_closed: f64,
    pub s_min_oracle: Option<f64>,
    pub beta_closed: f64,
    pub beta_oracle: Option<f64>,
    pub regime: String,
    pub oracle_status: String,
}

pub const SCAN_COLUMNS: [&str; 7] = [
    "c",
    "s_min_closed",
    "s_min_oracle",
    "beta_closed",
    "beta_oracle",
    "regime",
    "oracle_status",
];

impl ScanRecord {
    pub fn from_point(p: &CorrelationPoint, digits: usize) -> Self {
        let r = |x: f64| {
            let v = round_sig(x, digits);
            if v == 0.0 {
                0.0
            } else {
                v
            }
        };
        Self {
            c: r(p.concurrence),
            s_min_closed: r(p.s_min_closed),
            s_min_oracle: p.s_min_oracle.map(r),
            beta_closed: r(p.beta_closed),
            beta_oracle: p.beta_oracle.map(r),
            regime: p.regime.as_str().to_string(),
            oracle_status: match &p.status {
                OracleStatus::Failed(_) => "failed".to_string(),
                s => s.to_string(),
            },
        }
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(format!("csv: {e}"))
}

pub fn write_csv<W: Write>(records: &[ScanRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(csv_err)?;
    }
    if records.is_empty() {
        w.write_record(SCAN_COLUMNS).map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::Io(format!("csv: {e}")))
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<ScanRecord>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(csv_err)
}

pub fn write_json<W: Write>(records: &[ScanRecord], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, records).map_err(|e| CliError::Io(format!("json: {e}")))?;
    writeln!(out).map_err(|e| CliError::Io(format!("json: {e}")))
}

pub fn write_records<W: Write>(records: &[ScanRecord], format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => write_csv(records, out),
        Format::Json => write_json(records, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig((24.0_f64 / 5.0).sqrt(), 6), "2.19089");
        assert_eq!(fmt_sig(1.0 / 5.0_f64.sqrt(), 6), "0.447214");
        assert_eq!(fmt_sig(5.0 - 4.0 * 5.0_f64.sqrt(), 6), "-3.94427");
        assert_eq!(fmt_sig(2.0, 6), "2");
        assert_eq!(fmt_sig(-0.0, 6), "0");
        assert_eq!(fmt_sig(std::f64::consts::PI, 17), "3.141592653589793");
        assert_eq!(fmt_sig(1.23456789e-7, 6), "0.000000123457");
    }

    #[test]
    fn rounding_is_idempotent() {
        for x in [0.1, 2.0_f64.sqrt(), -3.0901699437494745, 123456.789] {
            for d in 6..=17 {
                let r = round_sig(x, d);
                assert_eq!(round_sig(r, d), r);
                assert_eq!(fmt_sig(x, d).parse::<f64>().unwrap(), r);
            }
        }
    }
}
