mod common;

use std::f64::consts::FRAC_1_SQRT_2;

use chshctx_core::kcbs::{
    kcbs_min_for_concurrence, kcbs_observables, kcbs_value, quantum_minimum, s_min_closed_form, spin1_operator,
    standard_pentagram, PentagramConfig,
};
use chshctx_core::{eigensystem, Direction3, Matrix, OptimizerParams, QutritPure, C64};
use common::*;
use proptest::prelude::*;

/// Spin-1 state with zero spin along `l`, over `(|1⟩, |0⟩, |−1⟩)`.
fn null_vector(l: &Direction3) -> [C64; 3] {
    let i = C64::i();
    [
        (-l[0] + i * l[1]) * FRAC_1_SQRT_2,
        C64::new(l[2], 0.0),
        (l[0] + i * l[1]) * FRAC_1_SQRT_2,
    ]
}

/// `5 − 4 Σ |⟨l_j|ψ⟩|²`, valid because `A = 1 − 2|l⟩⟨l|` and adjacent
/// null vectors are orthogonal.
fn kcbs_oracle(psi: &QutritPure, p: &PentagramConfig) -> f64 {
    let amps = psi.amplitudes();
    let weight: f64 = p
        .directions()
        .iter()
        .map(|l| {
            let v = null_vector(l);
            v.iter().zip(&amps).map(|(x, y)| x.conj() * y).sum::<C64>().norm_sqr()
        })
        .sum();
    5.0 - 4.0 * weight
}

fn rotation(axis: [f64; 3], angle: f64) -> [[f64; 3]; 3] {
    let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let k = axis.map(|x| x / n);
    let (s, c) = angle.sin_cos();
    let t = 1.0 - c;
    [
        [c + t * k[0] * k[0], t * k[0] * k[1] - s * k[2], t * k[0] * k[2] + s * k[1]],
        [t * k[1] * k[0] + s * k[2], c + t * k[1] * k[1], t * k[1] * k[2] - s * k[0]],
        [t * k[2] * k[0] - s * k[1], t * k[2] * k[1] + s * k[0], c + t * k[2] * k[2]],
    ]
}

/// `exp(−iα n·S)` through the spectral decomposition of `n·S`.
fn spin1_rotation(axis: [f64; 3], angle: f64) -> Matrix {
    let n = Direction3::normalized(axis[0], axis[1], axis[2]).unwrap();
    let sys = eigensystem(&spin1_operator(&n).unwrap()).unwrap();
    sys.eigenspaces.iter().fold(Matrix::zeros(3).unwrap(), |acc, e| {
        acc + e.projector.scale(C64::from_polar(1.0, -angle * e.value))
    })
}

#[test]
fn null_vectors_are_annihilated() {
    for l in standard_pentagram().directions() {
        let s = spin1_operator(l).unwrap();
        let v = s.matrix().mul_vec(&null_vector(l)).unwrap();
        assert!(v[..3].iter().all(|z| z.norm() < 1e-15));
    }
}

#[test]
fn kcbs_value_matches_projector_oracle() {
    let p = standard_pentagram();
    let obs = kcbs_observables(&p).unwrap();
    let mut r = rng(21);
    for _ in 0..500 {
        let psi = QutritPure::try_from_state(random_state(&mut r, 3)).unwrap();
        assert!((kcbs_value(&psi, &obs) - kcbs_oracle(&psi, &p)).abs() < 1e-12);
    }
}

#[test]
fn spin_up_state_is_non_contextual() {
    let p = standard_pentagram();
    let obs = kcbs_observables(&p).unwrap();
    let up = QutritPure::spin_z(1);
    let v = kcbs_value(&up, &obs);
    // |⟨l|1⟩|² = sin²θ / 2 for every axis, so the sum is 5 − 10 sin²θ = 2√5 − 5.
    assert!((v - kcbs_oracle(&up, &p)).abs() < 1e-12);
    assert!((v - (2.0 * 5.0_f64.sqrt() - 5.0)).abs() < 1e-12);
    assert!(v >= -3.0);
}

#[test]
fn kcbs_value_is_rotation_covariant() {
    let p = standard_pentagram();
    let obs = kcbs_observables(&p).unwrap();
    let mut r = rng(22);
    let axes = [[0.3, -0.4, 0.8], [1.0, 0.0, 0.0], [0.2, 0.9, -0.1]];
    for (k, axis) in axes.iter().enumerate() {
        let angle = 0.7 + k as f64;
        let rotated = p.rotated(&rotation(*axis, angle)).unwrap();
        let rotated_obs = kcbs_observables(&rotated).unwrap();
        let d = spin1_rotation(*axis, angle);
        for _ in 0..50 {
            let psi = QutritPure::try_from_state(random_state(&mut r, 3)).unwrap();
            let moved = QutritPure::try_from_state(psi.state().evolve(&d).unwrap()).unwrap();
            let before = kcbs_value(&psi, &obs);
            let after = kcbs_value(&moved, &rotated_obs);
            assert!((before - after).abs() < 1e-9, "{before} vs {after}");
        }
    }
}

#[test]
fn closed_form_is_strictly_decreasing() {
    let values: Vec<f64> = (0..=100).map(|k| s_min_closed_form(k as f64 / 100.0).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn oracle_interior_points_and_determinism() {
    let opt = OptimizerParams::default();
    for c in [0.25, 0.75] {
        let m = kcbs_min_for_concurrence(c, &opt).unwrap();
        let closed = s_min_closed_form(c).unwrap();
        assert!((m.value - closed).abs() < 1e-6, "C={c}: oracle {} closed {closed}", m.value);
        assert!(m.constraint_residual <= 1e-10);
        let again = kcbs_min_for_concurrence(c, &opt).unwrap();
        assert_eq!(m, again);
    }
}

proptest! {
    #[test]
    fn quantum_minimum_is_never_beaten(seed in any::<u64>()) {
        let obs = kcbs_observables(&standard_pentagram()).unwrap();
        let mut r = rng(seed);
        let psi = QutritPure::try_from_state(random_state(&mut r, 3)).unwrap();
        let v = kcbs_value(&psi, &obs);
        prop_assert!(v >= quantum_minimum() - 1e-9 && v <= 5.0 + 1e-9);
    }
}
