mod common;

use std::f64::consts::PI;

use chshctx_core::chsh::{
    beta_closed_form, chsh_max_correlation, chsh_max_direct, chsh_operator, chsh_value, ChshSettings, TSIRELSON,
};
use chshctx_core::{concurrence_pure, eigensystem, OptimizerParams, SymmetricTwoQubit};
use common::*;
use rand::Rng;

fn random_settings(r: &mut rand_chacha::ChaCha8Rng) -> ChshSettings {
    let angles: Vec<f64> = (0..4).flat_map(|_| [r.random_range(0.0..PI), r.random_range(0.0..2.0 * PI)]).collect();
    ChshSettings::from_angles(&angles)
}

#[test]
fn operator_spectrum_obeys_tsirelson() {
    let mut r = rng(31);
    for _ in 0..1000 {
        let op = chsh_operator(&random_settings(&mut r)).unwrap();
        let sys = eigensystem(&op).unwrap();
        assert!(sys.max() <= TSIRELSON + 1e-9 && sys.min() >= -TSIRELSON - 1e-9);
        // A⊗(B+B′) + A′⊗(B−B′) is traceless with a spectrum symmetric about 0
        assert!((sys.max() + sys.min()).abs() < 1e-9);
    }
}

#[test]
fn correlation_maximum_follows_concurrence_law_for_all_pure_states() {
    let mut r = rng(32);
    for _ in 0..500 {
        let psi = random_state(&mut r, 4);
        let c = concurrence_pure(&psi).unwrap().value();
        let beta = chsh_max_correlation(&psi).unwrap();
        assert!((beta - beta_closed_form(c).unwrap()).abs() < 1e-9);
        assert!(beta >= 2.0 - 1e-9);
    }
}

#[test]
fn correlation_maximum_is_local_unitary_invariant() {
    let mut r = rng(33);
    for _ in 0..200 {
        let psi = random_state(&mut r, 4);
        let u = random_su2(&mut r).kron(&random_su2(&mut r)).unwrap();
        let moved = psi.evolve(&u).unwrap();
        assert!((chsh_max_correlation(&psi).unwrap() - chsh_max_correlation(&moved).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn values_stay_within_tsirelson() {
    let mut r = rng(34);
    for _ in 0..500 {
        let psi = random_state(&mut r, 4);
        let v = chsh_value(&psi, &random_settings(&mut r)).unwrap();
        assert!(v.abs() <= TSIRELSON + 1e-9);
    }
}

#[test]
fn direct_optimizer_agrees_with_correlation_maximum() {
    let opt = OptimizerParams::default();
    let mut r = rng(35);
    for _ in 0..10 {
        let psi = random_state(&mut r, 4);
        let direct = chsh_max_direct(&psi, &opt).unwrap();
        let fast = chsh_max_correlation(&psi).unwrap();
        assert!((direct.beta - fast).abs() < 1e-6, "{} vs {fast}", direct.beta);
        assert!(direct.beta <= TSIRELSON + 1e-9);
    }
}

#[test]
fn asymmetric_amplitude_example() {
    // a = √0.9, c = √0.1: C = 2√0.09 = 0.6, β = 2√1.36.
    let s = SymmetricTwoQubit::from_real(0.9_f64.sqrt(), 0.0, 0.1_f64.sqrt()).unwrap();
    assert!((s.concurrence().value() - 0.6).abs() < 1e-15);
    let expected = 2.0 * 1.36_f64.sqrt();
    assert!((expected - 2.332_38).abs() < 1e-5);
    let psi = s.embed();
    assert!((chsh_max_correlation(&psi).unwrap() - expected).abs() < 1e-12);
    let direct = chsh_max_direct(&psi, &OptimizerParams::default()).unwrap();
    assert!((direct.beta - expected).abs() < 1e-6);
}
