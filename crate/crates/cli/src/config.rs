//! Run configuration: a TOML file with `[optimizer]`, `[sampler]`, `[output]`
//! and `[tolerances]` sections. Every key is optional.

use std::path::{Path, PathBuf};

use chshctx_core::tolerances::Tolerances;
use chshctx_core::OptimizerParams;
use serde::Deserialize;

use crate::error::{CliError, Result};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "CHSHCTX_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerSection {
    pub restarts: usize,
    pub tolerance: f64,
    pub max_evals: usize,
    pub seed: u64,
}

impl Default for OptimizerSection {
    fn default() -> Self {
        let p = OptimizerParams::default();
        Self {
            restarts: p.restarts,
            tolerance: p.tolerance,
            max_evals: p.max_evals,
            seed: p.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplerSection {
    pub shots: u64,
    pub seed: u64,
}

impl Default for SamplerSection {
    fn default() -> Self {
        Self {
            shots: 1_000_000,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub format: Format,
    pub path: Option<PathBuf>,
    /// Significant digits of every printed number.
    pub precision: usize,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            format: Format::Csv,
            path: None,
            precision: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToleranceSection {
    pub smin_grid: f64,
    pub smin_endpoint: f64,
    pub beta_closed: f64,
    pub beta_optimizer: f64,
}

impl Default for ToleranceSection {
    fn default() -> Self {
        let t = Tolerances::default();
        Self {
            smin_grid: t.smin_grid,
            smin_endpoint: t.smin_endpoint,
            beta_closed: t.beta_closed,
            beta_optimizer: t.beta_optimizer,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub optimizer: OptimizerSection,
    pub sampler: SamplerSection,
    pub output: OutputSection,
    pub tolerances: ToleranceSection,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::input(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Explicit path, else the file named by `CHSHCTX_CONFIG`, else defaults.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let path = match path {
            Some(p) => Some(p.to_path_buf()),
            None => std::env::var_os(CONFIG_ENV).map(PathBuf::from),
        };
        match path {
            Some(p) => {
                let text = std::fs::read_to_string(&p)
                    .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", p.display())))?;
                Self::parse(&text)
            }
            None => Ok(Self::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let o = &self.optimizer;
        if !(o.tolerance > 0.0) {
            return Err(CliError::input("config: optimizer.tolerance must be positive"));
        }
        if o.restarts < 1 {
            return Err(CliError::input("config: optimizer.restarts must be at least 1"));
        }
        if o.max_evals < 1 {
            return Err(CliError::input("config: optimizer.max_evals must be at least 1"));
        }
        if self.sampler.shots < 1 {
            return Err(CliError::input("config: sampler.shots must be at least 1"));
        }
        if !(6..=17).contains(&self.output.precision) {
            return Err(CliError::input("config: output.precision must be in [6, 17]"));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("smin_grid", t.smin_grid),
            ("smin_endpoint", t.smin_endpoint),
            ("beta_closed", t.beta_closed),
            ("beta_optimizer", t.beta_optimizer),
        ] {
            if !(v > 0.0) {
                return Err(CliError::input(format!("config: tolerances.{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn optimizer_params(&self) -> OptimizerParams {
        let o = &self.optimizer;
        OptimizerParams {
            restarts: o.restarts,
            tolerance: o.tolerance,
            max_evals: o.max_evals,
            seed: o.seed,
        }
    }

    pub fn tolerances(&self) -> Tolerances {
        let t = &self.tolerances;
        Tolerances {
            smin_grid: t.smin_grid,
            smin_endpoint: t.smin_endpoint,
            beta_closed: t.beta_closed,
            beta_optimizer: t.beta_optimizer,
            ..Tolerances::default()
        }
    }
}
