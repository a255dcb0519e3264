#![allow(dead_code)]

use chshctx_core::{normalize, Matrix, PureState, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_c64(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state of the given dimension.
pub fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> PureState {
    let v: Vec<C64> = (0..dim).map(|_| gaussian_c64(rng)).collect();
    normalize(&v).unwrap()
}

pub fn random_triple(rng: &mut ChaCha8Rng) -> [C64; 3] {
    let s = random_state(rng, 3);
    let a = s.amplitudes();
    [a[0], a[1], a[2]]
}

/// Random SU(2) matrix from a uniformly random unit quaternion.
pub fn random_su2(rng: &mut ChaCha8Rng) -> Matrix {
    let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|v| v / n);
    let alpha = C64::new(w, z);
    let beta = C64::new(y, x);
    Matrix::from_rows(&[&[alpha, -beta.conj()], &[beta, alpha.conj()]]).unwrap()
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> Matrix {
    let m = Matrix::from_fn(dim, |_, _| gaussian_c64(rng)).unwrap();
    (m + m.adjoint()) * 0.5
}
