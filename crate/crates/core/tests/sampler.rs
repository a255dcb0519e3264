mod common;

use std::f64::consts::FRAC_1_SQRT_2;

use chshctx_core::chsh::{chsh_value, ChshSettings, TSIRELSON};
use chshctx_core::kcbs::{kcbs_observables, kcbs_value, quantum_minimum, standard_pentagram};
use chshctx_core::sampler::{estimate_chsh, estimate_kcbs, sample_pair};
use chshctx_core::{expectation, PureState, QutritPure};
use common::*;

#[test]
fn pair_means_converge_to_exact_expectations() {
    let obs = kcbs_observables(&standard_pentagram()).unwrap();
    let mut r = rng(41);
    let psi = random_state(&mut r, 3);
    for i in 0..5 {
        let exact = expectation(&psi, &obs.products[i]).unwrap();
        let hits = (0..100u64)
            .filter(|&seed| {
                let e = sample_pair(&psi, &obs.a_ops[i], &obs.a_ops[(i + 1) % 5], 20_000, seed).unwrap();
                (e.mean - exact).abs() <= 5.0 * e.stderr
            })
            .count();
        assert!(hits >= 99, "term {i}: {hits}/100 within 5σ");
    }
}

#[test]
fn neutral_state_pair_converges() {
    let obs = kcbs_observables(&standard_pentagram()).unwrap();
    let zero = QutritPure::spin_z(0);
    let exact = expectation(zero.state(), &obs.products[0]).unwrap();
    let coarse = sample_pair(zero.state(), &obs.a_ops[0], &obs.a_ops[1], 1_000, 3).unwrap();
    let fine = sample_pair(zero.state(), &obs.a_ops[0], &obs.a_ops[1], 1_000_000, 3).unwrap();
    assert!((fine.mean - exact).abs() <= 5.0 * fine.stderr);
    assert!(fine.stderr < coarse.stderr);
}

#[test]
fn measurement_order_does_not_matter_for_commuting_pairs() {
    let obs = kcbs_observables(&standard_pentagram()).unwrap();
    let mut r = rng(42);
    let psi = random_state(&mut r, 3);
    for i in 0..5 {
        let (a, b) = (&obs.a_ops[i], &obs.a_ops[(i + 1) % 5]);
        let fwd = sample_pair(&psi, a, b, 200_000, 9).unwrap();
        let rev = sample_pair(&psi, b, a, 200_000, 10).unwrap();
        let joint = (fwd.stderr.powi(2) + rev.stderr.powi(2)).sqrt();
        assert!((fwd.mean - rev.mean).abs() <= 5.0 * joint);
    }
}

#[test]
fn kcbs_estimate_at_neutral_state() {
    let obs = kcbs_observables(&standard_pentagram()).unwrap();
    let zero = QutritPure::spin_z(0);
    let e = estimate_kcbs(&zero, &obs, 1_000_000, 42).unwrap();
    assert!((e.mean - quantum_minimum()).abs() <= 5.0 * e.stderr);
    assert!((kcbs_value(&zero, &obs) - quantum_minimum()).abs() < 1e-12);
}

#[test]
fn chsh_estimates() {
    let h = FRAC_1_SQRT_2;
    let bell = PureState::from_real(&[h, 0.0, 0.0, h]).unwrap();
    let s = ChshSettings::canonical();
    let e = estimate_chsh(&bell, &s, 1_000_000, 42).unwrap();
    assert!((e.mean - TSIRELSON).abs() <= 5.0 * e.stderr, "{e:?}");
    assert_eq!(e, estimate_chsh(&bell, &s, 1_000_000, 42).unwrap());

    let product = PureState::basis(4, 0).unwrap();
    let e = estimate_chsh(&product, &s, 100_000, 7).unwrap();
    assert!(e.mean.abs() <= 2.0 + 5.0 * e.stderr);
    assert!((e.mean - chsh_value(&product, &s).unwrap()).abs() <= 5.0 * e.stderr);
}

#[test]
fn stderr_scales_as_inverse_square_root() {
    let h = FRAC_1_SQRT_2;
    let bell = PureState::from_real(&[h, 0.0, 0.0, h]).unwrap();
    let s = ChshSettings::canonical();
    let small = estimate_chsh(&bell, &s, 10_000, 1).unwrap();
    let large = estimate_chsh(&bell, &s, 1_000_000, 1).unwrap();
    let ratio = large.stderr / small.stderr;
    assert!((0.07..=0.14).contains(&ratio), "ratio {ratio}");
}
