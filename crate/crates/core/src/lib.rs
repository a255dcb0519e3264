//! KCBS and CHSH measurement scenarios for symmetric two-qubit states.
//!
//! Symmetric two-qubit states `a|00⟩ + b/√2 (|01⟩ + |10⟩) + c|11⟩` behave as
//! spin-1 qutrits. This crate evaluates the KCBS pentagram sum on them, the
//! CHSH value on their two-qubit embedding, and ties both to the concurrence:
//!
//! * minimal KCBS value `S_min(C) = (5 − 3√5)C − √5`,
//! * maximal CHSH value `β(C) = 2√(1 + C²)`,
//! * the CHSH non-contextuality threshold `β ≤ √(24/5)` obtained at
//!   `S_min = −3`, i.e. `C = 1/√5`.
//!
//! Both laws are checked against derivative-free optimizers that know nothing
//! about the closed forms. A seeded Monte Carlo sampler simulates the finite-shot
//! experiments.
//!
//! The crate is `no_std` and only needs `alloc`.

// `!(x <= tol)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bridge;
pub mod chsh;
pub mod direction;
pub mod eigen;
pub mod entanglement;
pub mod error;
pub mod kcbs;
pub mod linalg;
pub mod optimize;
pub mod sampler;
pub mod symmetric;
pub mod tolerances;

pub use direction::Direction3;
pub use eigen::{eigensystem, EigenSystem, Eigenspace};
pub use entanglement::{concurrence_pure, concurrence_symmetric, Concurrence};
pub use error::{Error, Result};
pub use linalg::{commutator_norm, expectation, normalize, tensor, HermitianObservable, Matrix, PureState, C64};
pub use optimize::OptimizerParams;
pub use symmetric::{QutritPure, SymmetricTwoQubit};
