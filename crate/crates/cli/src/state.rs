//! State input: a JSON document, a file holding one, or inline reals.
//!
//! ```text
//! {"symmetric": [[re, im], [re, im], [re, im]]}
//! {"two_qubit": [[re, im], [re, im], [re, im], [re, im]]}
//! 0,1,0            symmetric triple (a, b, c)
//! 0.7071,0,0,0.7071  two-qubit amplitudes
//! ```
//!
//! Amplitudes are normalized on input.

use std::path::Path;

use chshctx_core::symmetric::project_symmetric;
use chshctx_core::tolerances;
use chshctx_core::{normalize, PureState, QutritPure, SymmetricTwoQubit, C64};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub symmetric: Option<[[f64; 2]; 3]>,
    pub two_qubit: Option<[[f64; 2]; 4]>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateInput {
    Symmetric(SymmetricTwoQubit),
    TwoQubit(PureState),
}

fn complex(pairs: &[[f64; 2]]) -> Vec<C64> {
    pairs.iter().map(|&[re, im]| C64::new(re, im)).collect()
}

fn check_finite(field: &str, values: &[f64]) -> Result<()> {
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(CliError::input(format!("state field `{field}`: non-finite amplitude {v}")));
    }
    Ok(())
}

impl StateSpec {
    pub fn resolve(&self) -> Result<StateInput> {
        match (&self.symmetric, &self.two_qubit) {
            (Some(_), Some(_)) => Err(CliError::input(
                "state: give exactly one of `symmetric` and `two_qubit`, not both",
            )),
            (None, None) => Err(CliError::input("state: missing field `symmetric` or `two_qubit`")),
            (Some(t), None) => {
                check_finite("symmetric", t.as_flattened())?;
                let z = complex(t);
                SymmetricTwoQubit::normalized(z[0], z[1], z[2])
                    .map(StateInput::Symmetric)
                    .map_err(|e| CliError::input(format!("state field `symmetric`: {e}")))
            }
            (None, Some(v)) => {
                check_finite("two_qubit", v.as_flattened())?;
                normalize(&complex(v))
                    .map(StateInput::TwoQubit)
                    .map_err(|e| CliError::input(format!("state field `two_qubit`: {e}")))
            }
        }
    }
}

fn parse_inline(text: &str) -> Option<Result<StateInput>> {
    let values: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .ok()?;
    let pairs: Vec<[f64; 2]> = values.iter().map(|&x| [x, 0.0]).collect();
    let spec = match pairs.len() {
        3 => StateSpec {
            symmetric: Some([pairs[0], pairs[1], pairs[2]]),
            two_qubit: None,
        },
        4 => StateSpec {
            symmetric: None,
            two_qubit: Some([pairs[0], pairs[1], pairs[2], pairs[3]]),
        },
        n => {
            return Some(Err(CliError::input(format!(
                "state: inline form needs 3 (symmetric) or 4 (two-qubit) reals, got {n}"
            ))))
        }
    };
    Some(spec.resolve())
}

fn parse_json(text: &str) -> Result<StateInput> {
    serde_json::from_str::<StateSpec>(text)
        .map_err(|e| CliError::input(format!("state: {e}")))?
        .resolve()
}

/// Inline JSON, inline comma-separated reals, or a path to a JSON file.
pub fn parse_state(arg: &str) -> Result<StateInput> {
    let trimmed = arg.trim();
    if trimmed.starts_with('{') {
        return parse_json(trimmed);
    }
    if let Some(result) = parse_inline(trimmed) {
        return result;
    }
    let path = Path::new(trimmed);
    if !path.is_file() {
        return Err(CliError::input(format!(
            "state: `{trimmed}` is neither inline amplitudes, JSON, nor a readable file"
        )));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read state file {}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

impl StateInput {
    pub fn two_qubit(&self) -> PureState {
        match self {
            StateInput::Symmetric(s) => s.embed(),
            StateInput::TwoQubit(p) => *p,
        }
    }

    /// The qutrit view; a two-qubit input must lie in the symmetric subspace.
    pub fn qutrit(&self) -> Result<QutritPure> {
        match self {
            StateInput::Symmetric(s) => Ok(s.to_qutrit()),
            StateInput::TwoQubit(p) => project_symmetric(p, tolerances::SYMMETRIC_PROJECTION)
                .map(|s| s.to_qutrit())
                .map_err(|e| CliError::input(format!("state field `two_qubit`: {e}"))),
        }
    }
}
