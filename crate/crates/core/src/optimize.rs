//! Derivative-free multi-start minimization (Nelder–Mead).
//!
//! Restarts draw their starting points from independent ChaCha8 streams
//! (`stream = restart index`), so results do not depend on execution order.

use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerParams {
    pub restarts: usize,
    /// Function-value spread at which a local search is considered converged.
    pub tolerance: f64,
    /// Evaluation budget per restart.
    pub max_evals: usize,
    pub seed: u64,
}

impl Default for OptimizerParams {
    fn default() -> Self {
        Self {
            restarts: 32,
            tolerance: 1e-10,
            max_evals: 20_000,
            seed: 0x5eed,
        }
    }
}

impl OptimizerParams {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidParams("restarts must be at least 1"));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidParams("tolerance must be positive"));
        }
        if self.max_evals == 0 {
            return Err(Error::InvalidParams("max_evals must be at least 1"));
        }
        Ok(())
    }

    /// Largest improvement the final restart may still make over all earlier
    /// ones before the search is declared unconverged.
    pub fn stall_tolerance(&self) -> f64 {
        self.tolerance.sqrt()
    }
}

/// Deterministic random stream for one restart.
pub fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Nelder–Mead with dimension-adaptive coefficients, followed by simplex
/// re-initialisations around the incumbent until they stop paying off.
pub fn nelder_mead<F>(objective: &mut F, start: &[f64], step: f64, tolerance: f64, max_evals: usize) -> LocalResult
where
    F: FnMut(&[f64]) -> f64,
{
    let mut evals = 0;
    let mut best = LocalResult {
        x: start.to_vec(),
        value: f64::INFINITY,
        evals: 0,
        converged: false,
    };
    let mut scale = step;
    loop {
        let run = nm_pass(objective, &best.x, scale, tolerance, max_evals - evals.min(max_evals));
        evals += run.evals;
        let improvement = best.value - run.value;
        let improved = run.value < best.value;
        if improved {
            best.x = run.x;
            best.value = run.value;
        }
        best.converged |= run.converged;
        if !run.converged || evals >= max_evals || !(improvement > tolerance) {
            break;
        }
        scale = (scale * 0.1).max(1e-4);
    }
    best.evals = evals;
    best
}

fn nm_pass<F>(objective: &mut F, start: &[f64], step: f64, tolerance: f64, budget: usize) -> LocalResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = start.len();
    let nf = n as f64;
    let (alpha, gamma) = (1.0, 1.0 + 2.0 / nf);
    let (rho, sigma) = (0.75 - 0.5 / nf, 1.0 - 1.0 / nf);

    let mut evals = 0;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = objective(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.to_vec());
    for i in 0..n {
        let mut v = start.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = Vec::with_capacity(n + 1);
    for v in &simplex {
        if evals >= budget {
            break;
        }
        values.push(eval(v, &mut evals));
    }
    if values.len() < n + 1 {
        let (i, &v) = values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap_or((0, &f64::INFINITY));
        return LocalResult {
            x: simplex[i].clone(),
            value: v,
            evals,
            converged: false,
        };
    }

    let mut order: Vec<usize> = (0..=n).collect();
    let mut centroid = vec![0.0; n];
    let mut converged = false;
    while evals < budget {
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        let (lo, hi, second) = (order[0], order[n], order[n - 1]);
        if values[hi] - values[lo] <= tolerance {
            converged = true;
            break;
        }

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for &k in &order[..n] {
            for (c, x) in centroid.iter_mut().zip(&simplex[k]) {
                *c += x / nf;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[hi])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(alpha);
        let fr = eval(&reflected, &mut evals);
        if fr < values[lo] {
            let expanded = along(alpha * gamma);
            let fe = eval(&expanded, &mut evals);
            if fe < fr {
                simplex[hi] = expanded;
                values[hi] = fe;
            } else {
                simplex[hi] = reflected;
                values[hi] = fr;
            }
            continue;
        }
        if fr < values[second] {
            simplex[hi] = reflected;
            values[hi] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[hi] {
            let p = along(alpha * rho);
            let f = eval(&p, &mut evals);
            (p, f)
        } else {
            let p = along(-rho);
            let f = eval(&p, &mut evals);
            (p, f)
        };
        if fc < values[hi].min(fr) {
            simplex[hi] = contracted;
            values[hi] = fc;
            continue;
        }
        // shrink toward the best vertex
        let best = simplex[lo].clone();
        for &k in &order[1..] {
            if evals >= budget {
                break;
            }
            for (x, b) in simplex[k].iter_mut().zip(&best) {
                *x = b + sigma * (*x - b);
            }
            values[k] = eval(&simplex[k], &mut evals);
        }
    }

    let lo = (0..=n).min_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap();
    LocalResult {
        x: simplex[lo].clone(),
        value: values[lo],
        evals,
        converged,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiStartOutcome {
    /// Index into `runs` of the first run attaining the minimum.
    pub best: usize,
    pub runs: Vec<LocalResult>,
}

impl MultiStartOutcome {
    pub fn best_run(&self) -> &LocalResult {
        &self.runs[self.best]
    }
}

/// Runs one local search per restart, starting from `start(restart_index, rng)`.
///
/// Fails with `ConvergenceFailure` if no restart converged within its budget,
/// or if the final restart still improved the incumbent by more than
/// [`OptimizerParams::stall_tolerance`].
pub fn multistart<F, S>(mut objective: F, mut start: S, step: f64, params: &OptimizerParams) -> Result<MultiStartOutcome>
where
    F: FnMut(&[f64]) -> f64,
    S: FnMut(usize, &mut ChaCha8Rng) -> Vec<f64>,
{
    params.validate()?;
    let mut runs = Vec::with_capacity(params.restarts);
    for restart in 0..params.restarts {
        let mut rng = restart_rng(params.seed, restart);
        let x0 = start(restart, &mut rng);
        runs.push(nelder_mead(&mut objective, &x0, step, params.tolerance, params.max_evals));
    }
    reduce(runs, params)
}

/// Ordered reduction of restart results (shared by serial and parallel drivers).
pub fn reduce(runs: Vec<LocalResult>, params: &OptimizerParams) -> Result<MultiStartOutcome> {
    let best = (0..runs.len())
        .min_by(|&i, &j| runs[i].value.total_cmp(&runs[j].value).then(i.cmp(&j)))
        .ok_or(Error::InvalidParams("restarts must be at least 1"))?;
    let best_value = runs[best].value;
    if !runs.iter().any(|r| r.converged) {
        return Err(Error::ConvergenceFailure {
            reason: "no restart converged within the evaluation budget",
            best: best_value,
        });
    }
    if runs.len() >= 2 {
        let earlier = runs[..runs.len() - 1]
            .iter()
            .map(|r| r.value)
            .fold(f64::INFINITY, f64::min);
        if earlier - best_value > params.stall_tolerance() {
            return Err(Error::ConvergenceFailure {
                reason: "final restart still improved the best value",
                best: best_value,
            });
        }
    }
    Ok(MultiStartOutcome { best, runs })
}
