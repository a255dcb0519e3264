use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use chshctx::commands::{cmd_chsh, cmd_classify, cmd_kcbs, cmd_sample, cmd_scan, ScanArgs, Scenario};
use chshctx::config::CONFIG_ENV;
use chshctx::reproduce::cmd_reproduce;
use chshctx::{parse_state, CliError, Format, RunConfig};
use clap::{Parser, Subcommand};

/// KCBS contextuality and CHSH non-locality of symmetric two-qubit states.
#[derive(Debug, Parser)]
#[command(name = "chshctx", version)]
struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// KCBS pentagram value of a symmetric state.
    Kcbs {
        /// JSON document, path to one, or comma-separated real amplitudes.
        #[arg(long)]
        state: String,
    },
    /// Concurrence and maximal CHSH value of a two-qubit state.
    Chsh {
        #[arg(long)]
        state: String,
    },
    /// Closed-form and optimizer values over a concurrence grid.
    Scan {
        #[arg(long, default_value_t = 0.0)]
        c_min: f64,
        #[arg(long, default_value_t = 1.0)]
        c_max: f64,
        /// Number of grid points, both ends included.
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// Also emit a row at C* = 1/sqrt(5).
        #[arg(long)]
        include_threshold: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Regime of a CHSH value.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
    },
    /// Recompute and check every headline number.
    Reproduce,
    /// Finite-shot estimate of the KCBS or CHSH sum.
    Sample {
        #[arg(long)]
        state: String,
        #[arg(long, value_enum, default_value = "kcbs")]
        scenario: Scenario,
        /// Shots per term.
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = RunConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::Kcbs { state } => cmd_kcbs(&cfg, &parse_state(&state)?, out),
        Command::Chsh { state } => cmd_chsh(&cfg, &parse_state(&state)?, out),
        Command::Scan {
            c_min,
            c_max,
            steps,
            include_threshold,
            out: path,
            format,
        } => {
            let args = ScanArgs {
                c_min,
                c_max,
                steps,
                include_threshold,
            };
            let format = format.unwrap_or(cfg.output.format);
            let path = path.or_else(|| cfg.output.path.clone());
            let points = cmd_scan(&cfg, &args, format, path.as_deref(), out)?;
            for p in points.iter().filter(|p| !p.status.is_ok()) {
                eprintln!("warning: C = {}: oracle {}", p.concurrence, p.status);
            }
            Ok(())
        }
        Command::Classify { beta } => cmd_classify(&cfg, beta, out),
        Command::Reproduce => cmd_reproduce(&cfg, out).map(|_| ()),
        Command::Sample {
            state,
            scenario,
            shots,
            seed,
        } => {
            let state = parse_state(&state)?;
            let shots = shots.unwrap_or(cfg.sampler.shots);
            let seed = seed.unwrap_or(cfg.sampler.seed);
            cmd_sample(&cfg, &state, scenario, shots, seed, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
