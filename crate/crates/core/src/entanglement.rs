//! Concurrence of pure two-qubit states.


use crate::error::{Error, Result};
use crate::linalg::{check_same, PureState, C64};
use crate::tolerances;

/// Entanglement degree `C ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Concurrence(f64);

impl Concurrence {
    /// Clamps round-off within 1e-12 of the interval, rejects anything further out.
    pub fn new(value: f64) -> Result<Self> {
        let slack = tolerances::CONCURRENCE_CLAMP;
        if !(value >= -slack && value <= 1.0 + slack) {
            return Err(Error::InvalidConcurrence(value));
        }
        Ok(Self(value.clamp(0.0, 1.0)))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<Concurrence> for f64 {
    fn from(c: Concurrence) -> f64 {
        c.0
    }
}

/// `2|αδ − βγ|` over the basis `|00⟩, |01⟩, |10⟩, |11⟩`.
pub fn concurrence_pure(state: &PureState) -> Result<Concurrence> {
    check_same(4, state.dim())?;
    let [alpha, beta, gamma, delta] = [0, 1, 2, 3].map(|k| state.amplitudes()[k]);
    Concurrence::new(2.0 * (alpha * delta - beta * gamma).norm())
}

/// `|2ac − b²|` for the symmetric amplitudes `(a, b, c)`.
pub fn concurrence_symmetric(a: C64, b: C64, c: C64) -> Result<Concurrence> {
    let norm = (a.norm_sqr() + b.norm_sqr() + c.norm_sqr()).sqrt();
    let deviation = (norm - 1.0).abs();
    if !(deviation <= tolerances::INPUT_NORM) {
        return Err(Error::NotNormalized { deviation });
    }
    Concurrence::new((a * c * 2.0 - b * b).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn product_and_bell_states() {
        let product = PureState::from_real(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(concurrence_pure(&product).unwrap().value(), 0.0);
        let phi = PureState::from_real(&[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]).unwrap();
        assert!((concurrence_pure(&phi).unwrap().value() - 1.0).abs() < 1e-15);
        let psi = PureState::from_real(&[0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0]).unwrap();
        assert!((concurrence_pure(&psi).unwrap().value() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn symmetric_triples() {
        let r = |x: f64| C64::new(x, 0.0);
        assert_eq!(concurrence_symmetric(r(1.0), r(0.0), r(0.0)).unwrap().value(), 0.0);
        assert_eq!(concurrence_symmetric(r(0.0), r(1.0), r(0.0)).unwrap().value(), 1.0);
        let h = r(FRAC_1_SQRT_2);
        assert!((concurrence_symmetric(h, r(0.0), h).unwrap().value() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_unnormalized_and_wrong_dimension() {
        let r = |x: f64| C64::new(x, 0.0);
        assert!(matches!(
            concurrence_symmetric(r(1.0), r(1.0), r(0.0)),
            Err(Error::NotNormalized { .. })
        ));
        let qutrit = PureState::basis(3, 0).unwrap();
        assert!(matches!(
            concurrence_pure(&qutrit),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn clamping() {
        assert_eq!(Concurrence::new(-5e-13).unwrap().value(), 0.0);
        assert_eq!(Concurrence::new(1.0 + 5e-13).unwrap().value(), 1.0);
        assert!(Concurrence::new(-1e-6).is_err());
        assert!(Concurrence::new(f64::NAN).is_err());
    }
}
