//! CHSH operator, its direct maximization over measurement settings, the
//! correlation-matrix maximum and the concurrence law `β = 2√(1 + C²)`.

use core::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use rand::Rng;

use crate::direction::Direction3;
use crate::eigen::hermitian_eigen;
use crate::error::{Error, Result};
use crate::kcbs::check_concurrence;
use crate::linalg::{check_same, expectation, pauli_x, pauli_y, pauli_z, tensor, HermitianObservable, Matrix, PureState};
use crate::optimize::{multistart, OptimizerParams};

/// Local-realist bound.
pub const LOCAL_BOUND: f64 = 2.0;
/// Tsirelson bound `2√2`.
pub const TSIRELSON: f64 = 2.0 * SQRT_2;

/// Polar-angle offset keeping random starts away from the coordinate poles.
const POLE_OFFSET: f64 = 0.05;

/// Two Bloch axes per party.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub alice: [Direction3; 2],
    pub bob: [Direction3; 2],
}

impl ChshSettings {
    pub fn new(a: Direction3, a_prime: Direction3, b: Direction3, b_prime: Direction3) -> Self {
        Self {
            alice: [a, a_prime],
            bob: [b, b_prime],
        }
    }

    /// `a = z, a′ = x, b = (z + x)/√2, b′ = (z − x)/√2`: saturates `2√2` on
    /// `(|00⟩ + |11⟩)/√2`.
    pub fn canonical() -> Self {
        let h = FRAC_1_SQRT_2;
        Self::new(
            Direction3::Z,
            Direction3::X,
            Direction3::new(h, 0.0, h).unwrap(),
            Direction3::new(-h, 0.0, h).unwrap(),
        )
    }

    /// Settings from eight spherical angles `(θ, φ)` for `a, a′, b, b′`.
    pub fn from_angles(angles: &[f64]) -> Self {
        let d = |k: usize| Direction3::from_spherical(angles[2 * k], angles[2 * k + 1]);
        Self::new(d(0), d(1), d(2), d(3))
    }

    fn check_units(&self) -> Result<()> {
        for d in self.alice.iter().chain(&self.bob) {
            let norm = d.norm();
            if !((norm - 1.0).abs() <= crate::tolerances::NORM) {
                return Err(Error::NotUnit { norm });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshResult {
    pub beta: f64,
    pub settings: ChshSettings,
}

/// Dichotomic qubit observable `n·σ`.
pub fn spin_half(d: &Direction3) -> HermitianObservable {
    let [x, y, z] = [pauli_x(), pauli_y(), pauli_z()];
    HermitianObservable::new(*x.matrix() * d[0] + *y.matrix() * d[1] + *z.matrix() * d[2]).expect("real combination of Paulis")
}

/// `A ⊗ (B + B′) + A′ ⊗ (B − B′)`.
pub fn chsh_operator(s: &ChshSettings) -> Result<HermitianObservable> {
    s.check_units()?;
    let [a, a2] = s.alice.map(|d| spin_half(&d));
    let [b, b2] = s.bob.map(|d| *spin_half(&d).matrix());
    let sum = HermitianObservable::new(b + b2)?;
    let diff = HermitianObservable::new(b - b2)?;
    let m = *tensor(&a, &sum)?.matrix() + *tensor(&a2, &diff)?.matrix();
    HermitianObservable::new(m)
}

pub fn chsh_value(state: &PureState, s: &ChshSettings) -> Result<f64> {
    check_same(4, state.dim())?;
    expectation(state, &chsh_operator(s)?)
}

/// Maximizes the CHSH value over all four axes by multi-start Nelder–Mead on
/// eight spherical angles.
pub fn chsh_max_direct(state: &PureState, opt: &OptimizerParams) -> Result<ChshResult> {
    check_same(4, state.dim())?;
    opt.validate()?;
    let objective = |angles: &[f64]| -> f64 {
        let s = ChshSettings::from_angles(angles);
        -expectation(state, &chsh_operator(&s).expect("spherical axes are unit")).expect("dimension checked")
    };
    let outcome = multistart(
        objective,
        |_, rng| {
            (0..4)
                .flat_map(|_| [rng.random_range(POLE_OFFSET..PI - POLE_OFFSET), rng.random_range(0.0..2.0 * PI)])
                .collect()
        },
        0.3,
        opt,
    )?;
    let best = outcome.best_run();
    Ok(ChshResult {
        beta: -best.value,
        settings: ChshSettings::from_angles(&best.x),
    })
}

/// `T_ij = ⟨σ_i ⊗ σ_j⟩`.
pub fn correlation_matrix(state: &PureState) -> Result<[[f64; 3]; 3]> {
    check_same(4, state.dim())?;
    let paulis = [pauli_x(), pauli_y(), pauli_z()];
    let mut t = [[0.0; 3]; 3];
    for (i, si) in paulis.iter().enumerate() {
        for (j, sj) in paulis.iter().enumerate() {
            t[i][j] = expectation(state, &tensor(si, sj)?)?;
        }
    }
    Ok(t)
}

/// `2√(t₁ + t₂)` with `t₁ ≥ t₂` the two largest eigenvalues of `TᵀT`.
pub fn chsh_max_correlation(state: &PureState) -> Result<f64> {
    let t = correlation_matrix(state)?;
    let gram = Matrix::from_fn(3, |i, j| {
        let v: f64 = (0..3).map(|k| t[k][i] * t[k][j]).sum();
        v.into()
    })?;
    let (values, _) = hermitian_eigen(&gram)?;
    Ok(2.0 * (values[1] + values[2]).max(0.0).sqrt())
}

/// `2√(1 + C²)`.
pub fn beta_closed_form(c: f64) -> Result<f64> {
    check_concurrence(c)?;
    Ok(2.0 * (1.0 + c * c).sqrt())
}
