mod common;

use chshctx_core::eigen::hermitian_eigen;
use chshctx_core::kcbs::{kcbs_observables, standard_pentagram};
use chshctx_core::linalg::{pauli_x, pauli_y, pauli_z};
use chshctx_core::{eigensystem, expectation, normalize, tensor, HermitianObservable, Matrix, C64};
use common::*;
use proptest::prelude::*;

/// `det(λI − M)` for a 3×3 matrix by cofactor expansion.
fn char_poly_3(m: &Matrix, lambda: f64) -> C64 {
    let a = |i: usize, j: usize| {
        let d = if i == j { C64::new(lambda, 0.0) } else { C64::new(0.0, 0.0) };
        d - m.get(i, j)
    };
    a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
}

#[test]
fn a_operator_spectrum_via_characteristic_polynomial() {
    let obs = kcbs_observables(&standard_pentagram()).unwrap();
    for a in &obs.a_ops {
        // spectrum {−1, 1, 1}: (λ+1)(λ−1)² vanishes at both roots and equals
        // det(−A) = −det(A) = 1 at λ = 0.
        assert!(char_poly_3(a.matrix(), -1.0).norm() < 1e-12);
        assert!(char_poly_3(a.matrix(), 1.0).norm() < 1e-12);
        assert!((char_poly_3(a.matrix(), 0.0) - C64::new(1.0, 0.0)).norm() < 1e-12);
        let sys = eigensystem(a).unwrap();
        for (got, want) in sys.eigenvalues.iter().zip([-1.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-9);
        }
        assert_eq!(sys.eigenspaces.len(), 2);
        assert_eq!(sys.eigenspaces[1].multiplicity, 2);
    }
}

#[test]
fn random_hermitian_eigendecompositions() {
    let mut r = rng(11);
    for dim in 2..=4 {
        for _ in 0..200 {
            let m = random_hermitian(&mut r, dim);
            let obs = HermitianObservable::new(m).unwrap();
            let sys = eigensystem(&obs).unwrap();
            assert!((sys.reconstruct() - m).frobenius_norm() < 1e-9);
            let id = Matrix::identity(dim).unwrap();
            let sum = sys.eigenspaces.iter().fold(Matrix::zeros(dim).unwrap(), |acc, e| acc + e.projector);
            assert!(sum.max_abs_diff(&id) < 1e-10);
            for e in &sys.eigenspaces {
                assert!((e.projector * e.projector).max_abs_diff(&e.projector) < 1e-10);
            }
            if dim == 3 {
                for &l in &sys.eigenvalues {
                    assert!(char_poly_3(&m, l).norm() < 1e-9 * (1.0 + m.frobenius_norm().powi(3)));
                }
            }
            let (values, vectors) = hermitian_eigen(&m).unwrap();
            let back = vectors.adjoint() * m * vectors;
            for (k, v) in values.iter().enumerate().take(dim) {
                assert!((back.get(k, k).re - v).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn frobenius_norm_is_multiplicative_under_tensor() {
    let mut r = rng(5);
    for _ in 0..100 {
        let a = HermitianObservable::new(random_hermitian(&mut r, 2)).unwrap();
        let b = HermitianObservable::new(random_hermitian(&mut r, 2)).unwrap();
        let ab = tensor(&a, &b).unwrap();
        let lhs = ab.matrix().frobenius_norm();
        let rhs = a.matrix().frobenius_norm() * b.matrix().frobenius_norm();
        assert!((lhs - rhs).abs() < 1e-12 * rhs.max(1.0));
        assert!(ab.matrix().hermitian_deviation() < 1e-14);
    }
}

#[test]
fn tensor_is_bilinear() {
    let (x, y, z) = (pauli_x(), pauli_y(), pauli_z());
    let sum = HermitianObservable::new(*x.matrix() * 0.4 + *y.matrix() * 1.5).unwrap();
    let lhs = tensor(&sum, &z).unwrap();
    let rhs = *tensor(&x, &z).unwrap().matrix() * 0.4 + *tensor(&y, &z).unwrap().matrix() * 1.5;
    assert!(lhs.matrix().max_abs_diff(&rhs) < 1e-15);
    let lhs = tensor(&z, &sum).unwrap();
    let rhs = *tensor(&z, &x).unwrap().matrix() * 0.4 + *tensor(&z, &y).unwrap().matrix() * 1.5;
    assert!(lhs.matrix().max_abs_diff(&rhs) < 1e-15);
}

proptest! {
    #[test]
    fn expectation_lies_within_spectrum(seed in any::<u64>(), dim in 2usize..=4) {
        let mut r = rng(seed);
        let obs = HermitianObservable::new(random_hermitian(&mut r, dim)).unwrap();
        let psi = random_state(&mut r, dim);
        let sys = eigensystem(&obs).unwrap();
        let e = expectation(&psi, &obs).unwrap();
        prop_assert!(e >= sys.min() - 1e-10 && e <= sys.max() + 1e-10);
    }

    #[test]
    fn normalize_is_idempotent(re in proptest::collection::vec(-10.0f64..10.0, 3), im in proptest::collection::vec(-10.0f64..10.0, 3)) {
        let v: Vec<C64> = re.iter().zip(&im).map(|(a, b)| C64::new(*a, *b)).collect();
        prop_assume!(v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-6);
        let once = normalize(&v).unwrap();
        let twice = normalize(once.amplitudes()).unwrap();
        for (a, b) in once.amplitudes().iter().zip(twice.amplitudes()) {
            prop_assert!((a - b).norm() <= 1e-15);
        }
        prop_assert!((once.norm() - 1.0).abs() < 1e-12);
    }
}
