//! Finite-shot simulation of the KCBS and CHSH experiments.
//!
//! A term `⟨X Y⟩` of commuting dichotomic observables is estimated by
//! measuring `X` projectively (Born rule over its eigenspaces), collapsing
//! the state onto the observed eigenspace, then measuring `Y` on the
//! collapsed state and recording the product of the two ±1 outcomes.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`), seeded with the master seed;
//! each term of a sum reads its own stream (`stream = term index + 1`).

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chsh::{spin_half, ChshSettings};
use crate::eigen::eigensystem;
use crate::error::{Error, Result};
use crate::kcbs::KcbsObservables;
use crate::linalg::{check_same, commutator_norm, tensor, HermitianObservable, Matrix, PureState, C64, MAX_DIM};
use crate::symmetric::QutritPure;
use crate::tolerances;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShotEstimate {
    pub mean: f64,
    /// Sample standard deviation (Bessel-corrected) over `√shots`; summed
    /// estimates combine their terms in quadrature.
    pub stderr: f64,
    /// Shots per term.
    pub shots: u64,
    pub seed: u64,
    /// Set when some term had a single shot, whose stderr is reported as 0.
    pub variance_undefined: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub term_index: usize,
    pub outcomes: Vec<(i8, i8)>,
}

#[derive(Debug, Clone, PartialEq)]
struct Branch {
    outcome: i8,
    probability: f64,
    /// Probability that repeating the first measurement on the collapsed
    /// state reproduces `outcome`.
    repeat: f64,
    /// Outcomes and conditional probabilities of the second measurement.
    second: Vec<(i8, f64)>,
}

/// Sequential joint-measurement statistics of a commuting dichotomic pair.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    branches: Vec<Branch>,
}

fn dichotomic(value: f64) -> Result<i8> {
    if (value - 1.0).abs() < tolerances::DEGENERACY_GAP {
        Ok(1)
    } else if (value + 1.0).abs() < tolerances::DEGENERACY_GAP {
        Ok(-1)
    } else {
        Err(Error::NotDichotomic { value })
    }
}

fn project(p: &Matrix, psi: &[C64]) -> ([C64; MAX_DIM], f64) {
    let v = p.mul_vec(psi).expect("dimension checked");
    let weight = v[..psi.len()].iter().map(|z| z.norm_sqr()).sum();
    (v, weight)
}

impl JointDistribution {
    pub fn new(state: &PureState, first: &HermitianObservable, second: &HermitianObservable) -> Result<Self> {
        check_same(first.dim(), state.dim())?;
        check_same(second.dim(), state.dim())?;
        let norm = commutator_norm(first, second)?;
        if !(norm < tolerances::COMMUTING) {
            return Err(Error::NotCommuting { norm });
        }
        let n = state.dim();
        let es1 = eigensystem(first)?;
        let es2 = eigensystem(second)?;
        let outcomes2 = es2
            .eigenspaces
            .iter()
            .map(|e| dichotomic(e.value))
            .collect::<Result<Vec<_>>>()?;

        let mut branches = Vec::with_capacity(es1.eigenspaces.len());
        for e in &es1.eigenspaces {
            let outcome = dichotomic(e.value)?;
            let (collapsed, probability) = project(&e.projector, state.amplitudes());
            if probability <= 0.0 {
                continue;
            }
            let scale = 1.0 / probability.sqrt();
            let phi: Vec<C64> = collapsed[..n].iter().map(|z| z * scale).collect();
            let (_, repeat) = project(&e.projector, &phi);
            let second = es2
                .eigenspaces
                .iter()
                .zip(&outcomes2)
                .map(|(f, &o)| (o, project(&f.projector, &phi).1))
                .collect();
            branches.push(Branch {
                outcome,
                probability,
                repeat,
                second,
            });
        }
        Ok(Self { branches })
    }

    /// Probability of the outcome pair `(first, second)`.
    pub fn probability(&self, first: i8, second: i8) -> f64 {
        self.branches
            .iter()
            .filter(|b| b.outcome == first)
            .flat_map(|b| b.second.iter().filter(|s| s.0 == second).map(move |s| b.probability * s.1))
            .sum()
    }

    /// Exact mean of the outcome product.
    pub fn mean(&self) -> f64 {
        self.branches
            .iter()
            .flat_map(|b| b.second.iter().map(move |s| b.probability * s.1 * (b.outcome * s.0) as f64))
            .sum()
    }

    /// `(outcome, probability that an immediate repeat of the first
    /// measurement agrees)` for every reachable first outcome.
    pub fn repeat_probabilities(&self) -> impl Iterator<Item = (i8, f64)> + '_ {
        self.branches.iter().map(|b| (b.outcome, b.repeat))
    }

    fn pick<T: Copy>(items: impl Iterator<Item = (T, f64)>, u: f64, fallback: T) -> T {
        let mut acc = 0.0;
        let mut last = fallback;
        for (item, p) in items {
            if p <= 0.0 {
                continue;
            }
            acc += p;
            last = item;
            if u < acc {
                return item;
            }
        }
        last
    }

    /// One shot: draws the first outcome, then the second on the collapsed state.
    pub fn shot<R: Rng + ?Sized>(&self, rng: &mut R) -> (i8, i8) {
        let u1: f64 = rng.random();
        let u2: f64 = rng.random();
        let branch = Self::pick(self.branches.iter().map(|b| (b, b.probability)), u1, &self.branches[0]);
        let second = Self::pick(branch.second.iter().copied(), u2, branch.second[0].0);
        (branch.outcome, second)
    }
}

fn term_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn estimate_from_counts(plus: u64, shots: u64, seed: u64) -> ShotEstimate {
    let n = shots as f64;
    let mean = (2.0 * plus as f64 - n) / n;
    let (stderr, variance_undefined) = if shots == 1 {
        (0.0, true)
    } else {
        let variance = (n * (1.0 - mean * mean) / (n - 1.0)).max(0.0);
        ((variance / n).sqrt(), false)
    };
    ShotEstimate {
        mean,
        stderr,
        shots,
        seed,
        variance_undefined,
    }
}

fn run_term(dist: &JointDistribution, shots: u64, seed: u64, stream: u64) -> ShotEstimate {
    let mut rng = term_rng(seed, stream);
    let plus = (0..shots)
        .filter(|_| {
            let (x, y) = dist.shot(&mut rng);
            x * y == 1
        })
        .count() as u64;
    estimate_from_counts(plus, shots, seed)
}

/// Estimates `⟨first · second⟩` from `shots` sequential joint measurements.
pub fn sample_pair(
    state: &PureState,
    first: &HermitianObservable,
    second: &HermitianObservable,
    shots: u64,
    seed: u64,
) -> Result<ShotEstimate> {
    if shots == 0 {
        return Err(Error::NoShots);
    }
    let dist = JointDistribution::new(state, first, second)?;
    Ok(run_term(&dist, shots, seed, 0))
}

/// Per-shot outcome pairs for the same process as [`sample_pair`].
pub fn record_pair(
    state: &PureState,
    first: &HermitianObservable,
    second: &HermitianObservable,
    shots: u64,
    seed: u64,
    term_index: usize,
) -> Result<MeasurementRecord> {
    if shots == 0 {
        return Err(Error::NoShots);
    }
    let dist = JointDistribution::new(state, first, second)?;
    let mut rng = term_rng(seed, 0);
    Ok(MeasurementRecord {
        term_index,
        outcomes: (0..shots).map(|_| dist.shot(&mut rng)).collect(),
    })
}

fn combine(terms: &[(f64, ShotEstimate)], shots: u64, seed: u64) -> ShotEstimate {
    ShotEstimate {
        mean: terms.iter().map(|(sign, e)| sign * e.mean).sum(),
        stderr: terms.iter().map(|(_, e)| e.stderr * e.stderr).sum::<f64>().sqrt(),
        shots,
        seed,
        variance_undefined: terms.iter().any(|(_, e)| e.variance_undefined),
    }
}

/// Shot estimate of `Σ_i ⟨A_i A_{i+1}⟩`, measuring `A_i` before `A_{i+1}`.
pub fn estimate_kcbs(state: &QutritPure, obs: &KcbsObservables, shots_per_term: u64, seed: u64) -> Result<ShotEstimate> {
    if shots_per_term == 0 {
        return Err(Error::NoShots);
    }
    let mut terms = [(1.0, estimate_from_counts(0, 1, seed)); 5];
    for (i, term) in terms.iter_mut().enumerate() {
        let dist = JointDistribution::new(state.state(), &obs.a_ops[i], &obs.a_ops[(i + 1) % 5])?;
        term.1 = run_term(&dist, shots_per_term, seed, i as u64 + 1);
    }
    Ok(combine(&terms, shots_per_term, seed))
}

/// Shot estimate of `E(a,b) + E(a,b′) + E(a′,b) − E(a′,b′)`, each correlator
/// from local measurements `(n·σ) ⊗ 1` then `1 ⊗ (m·σ)`.
pub fn estimate_chsh(state: &PureState, s: &ChshSettings, shots_per_term: u64, seed: u64) -> Result<ShotEstimate> {
    check_same(4, state.dim())?;
    if shots_per_term == 0 {
        return Err(Error::NoShots);
    }
    let id = HermitianObservable::identity(2)?;
    let pairs = [(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, -1.0)];
    let mut terms = [(1.0, estimate_from_counts(0, 1, seed)); 4];
    for (k, &(i, j, sign)) in pairs.iter().enumerate() {
        let alice = tensor(&spin_half(&s.alice[i]), &id)?;
        let bob = tensor(&id, &spin_half(&s.bob[j]))?;
        let dist = JointDistribution::new(state, &alice, &bob)?;
        terms[k] = (sign, run_term(&dist, shots_per_term, seed, k as u64 + 1));
    }
    Ok(combine(&terms, shots_per_term, seed))
}
