//! The symmetric (triplet) subspace of two qubits and its qutrit picture.
//!
//! `a|00⟩ + b/√2 (|01⟩ + |10⟩) + c|11⟩` is identified with the spin-1 state
//! `a|1⟩ + b|0⟩ + c|−1⟩`, basis ordered `m = +1, 0, −1`.

use core::f64::consts::FRAC_1_SQRT_2;


use crate::entanglement::{concurrence_symmetric, Concurrence};
use crate::error::{Error, Result};
use crate::linalg::{check_same, normalize, PureState, C64};

/// Amplitudes `(a, b, c)` of a symmetric two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricTwoQubit {
    a: C64,
    b: C64,
    c: C64,
}

impl SymmetricTwoQubit {
    /// Requires `|a|² + |b|² + |c|² = 1` within 1e-9.
    pub fn new(a: C64, b: C64, c: C64) -> Result<Self> {
        Ok(Self::from_state(&PureState::new(&[a, b, c])?))
    }

    /// Rescales arbitrary nonzero amplitudes.
    pub fn normalized(a: C64, b: C64, c: C64) -> Result<Self> {
        Ok(Self::from_state(&normalize(&[a, b, c])?))
    }

    pub fn from_real(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(C64::new(a, 0.0), C64::new(b, 0.0), C64::new(c, 0.0))
    }

    fn from_state(s: &PureState) -> Self {
        let amps = s.amplitudes();
        Self {
            a: amps[0],
            b: amps[1],
            c: amps[2],
        }
    }

    #[inline]
    pub fn amplitudes(&self) -> [C64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn concurrence(&self) -> Concurrence {
        concurrence_symmetric(self.a, self.b, self.c).expect("normalized by construction")
    }

    /// `(a, b/√2, b/√2, c)` over `|00⟩, |01⟩, |10⟩, |11⟩`.
    pub fn embed(&self) -> PureState {
        let b = self.b * FRAC_1_SQRT_2;
        normalize(&[self.a, b, b, self.c]).expect("unit triple embeds to a unit vector")
    }

    pub fn to_qutrit(&self) -> QutritPure {
        QutritPure(PureState::from_unit(&[self.a, self.b, self.c]))
    }
}

/// Spin-1 pure state over `(|1⟩, |0⟩, |−1⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QutritPure(PureState);

impl QutritPure {
    pub fn new(amplitudes: [C64; 3]) -> Result<Self> {
        Ok(Self(PureState::new(&amplitudes)?))
    }

    pub fn normalized(amplitudes: [C64; 3]) -> Result<Self> {
        Ok(Self(normalize(&amplitudes)?))
    }

    pub fn from_real(a: f64, b: f64, c: f64) -> Result<Self> {
        Ok(Self(PureState::from_real(&[a, b, c])?))
    }

    /// `|m⟩` for `m ∈ {1, 0, −1}`.
    pub fn spin_z(m: i8) -> Self {
        let index = match m {
            1 => 0,
            0 => 1,
            -1 => 2,
            _ => panic!("spin-1 projection {m} is not in {{1, 0, -1}}"),
        };
        Self(PureState::basis(3, index).unwrap())
    }

    pub fn try_from_state(state: PureState) -> Result<Self> {
        check_same(3, state.dim())?;
        Ok(Self(state))
    }

    #[inline]
    pub fn state(&self) -> &PureState {
        &self.0
    }

    pub fn amplitudes(&self) -> [C64; 3] {
        let a = self.0.amplitudes();
        [a[0], a[1], a[2]]
    }

    pub fn to_symmetric(&self) -> SymmetricTwoQubit {
        SymmetricTwoQubit::from_state(&self.0)
    }

    pub fn inner(&self, other: &QutritPure) -> C64 {
        self.0.inner(&other.0).unwrap()
    }
}

/// Recovers `(a, b, c)` from a two-qubit state whose antisymmetric component
/// `|β − γ|/√2` does not exceed `tol`.
pub fn project_symmetric(state: &PureState, tol: f64) -> Result<SymmetricTwoQubit> {
    check_same(4, state.dim())?;
    let amps = state.amplitudes();
    let antisymmetric = (amps[1] - amps[2]).norm() * FRAC_1_SQRT_2;
    if !(antisymmetric <= tol) {
        return Err(Error::NotSymmetric { antisymmetric });
    }
    SymmetricTwoQubit::normalized(amps[0], (amps[1] + amps[2]) * FRAC_1_SQRT_2, amps[3])
}
