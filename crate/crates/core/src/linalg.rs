//! Small fixed-dimension complex linear algebra: states, observables,
//! Kronecker products, expectation values and commutators.
//!
//! Every matrix and state lives in a 4×4 / 4-vector buffer with an active
//! dimension of 2, 3 or 4. Nothing here allocates.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::tolerances;

pub type C64 = Complex<f64>;

/// Largest supported Hilbert-space dimension.
pub const MAX_DIM: usize = 4;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if (2..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

pub(crate) fn check_same(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Dense square complex matrix of dimension 2, 3 or 4.
#[derive(Clone, Copy, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: [[C64; MAX_DIM]; MAX_DIM],
}

impl Matrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: [[ZERO; MAX_DIM]; MAX_DIM],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                m.data[i][j] = f(i, j);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from row slices; every row must have `rows.len()` entries.
    pub fn from_rows(rows: &[&[C64]]) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        for row in rows {
            check_same(dim, row.len())?;
        }
        Self::from_fn(dim, |i, j| rows[i][j])
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        for row in rows {
            check_same(dim, row.len())?;
        }
        Self::from_fn(dim, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                C64::new(values[i], 0.0)
            } else {
                ZERO
            }
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        assert!(row < self.dim && col < self.dim, "index out of range");
        self.data[row][col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        assert!(row < self.dim && col < self.dim, "index out of range");
        self.data[row][col] = value;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.data[i][j] = self.data[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i][i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise distance between the matrix and its adjoint.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.data[i][j] - self.data[j][i].conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise distance between two matrices of equal dimension.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Kronecker product; the result must still fit in dimension 4.
    pub fn kron(&self, other: &Matrix) -> Result<Self> {
        let dim = self.dim * other.dim;
        let n = other.dim;
        Self::from_fn(dim, |row, col| {
            self.data[row / n][col / n] * other.data[row % n][col % n]
        })
    }

    pub fn mul_vec(&self, v: &[C64]) -> Result<[C64; MAX_DIM]> {
        check_same(self.dim, v.len())?;
        let mut out = [ZERO; MAX_DIM];
        for (i, slot) in out.iter_mut().enumerate().take(self.dim) {
            *slot = (0..self.dim).map(|j| self.data[i][j] * v[j]).sum();
        }
        Ok(out)
    }

    pub fn scale(&self, factor: C64) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.data[i][j] *= factor;
            }
        }
        out
    }

    fn entries(&self) -> impl Iterator<Item = C64> + '_ {
        (0..self.dim).flat_map(move |i| (0..self.dim).map(move |j| self.data[i][j]))
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(C64, C64) -> C64) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.data[i][j] = f(self.data[i][j], other.data[i][j]);
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.dim {
            list.entry(&&self.data[i][..self.dim]);
        }
        list.finish()
    }
}

impl Add for Matrix {
    type Output = Matrix;
    fn add(self, rhs: Matrix) -> Matrix {
        self.zip_with(&rhs, |a, b| a + b)
    }
}

impl Sub for Matrix {
    type Output = Matrix;
    fn sub(self, rhs: Matrix) -> Matrix {
        self.zip_with(&rhs, |a, b| a - b)
    }
}

impl Neg for Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(-ONE)
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = self;
        for i in 0..n {
            for j in 0..n {
                out.data[i][j] = (0..n).map(|k| self.data[i][k] * rhs.data[k][j]).sum();
            }
        }
        out
    }
}

impl Mul<f64> for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: f64) -> Matrix {
        self.scale(C64::new(rhs, 0.0))
    }
}

/// Unit-norm pure state of dimension 2, 3 or 4.
#[derive(Clone, Copy, PartialEq)]
pub struct PureState {
    dim: usize,
    amps: [C64; MAX_DIM],
}

impl PureState {
    /// Accepts amplitudes that are already normalized within 1e-9 and removes
    /// the residual norm error.
    pub fn new(amplitudes: &[C64]) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let norm = vector_norm(amplitudes);
        let deviation = (norm - 1.0).abs();
        if !(deviation <= tolerances::INPUT_NORM) {
            return Err(Error::NotNormalized { deviation });
        }
        normalize(amplitudes)
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        let mut buf = [ZERO; MAX_DIM];
        check_dim(amplitudes.len())?;
        for (slot, &a) in buf.iter_mut().zip(amplitudes) {
            *slot = C64::new(a, 0.0);
        }
        Self::new(&buf[..amplitudes.len()])
    }

    /// Wraps amplitudes already known to be unit-norm, bit for bit.
    pub(crate) fn from_unit(amplitudes: &[C64]) -> Self {
        debug_assert!((vector_norm(amplitudes) - 1.0).abs() <= tolerances::NORM);
        let mut amps = [ZERO; MAX_DIM];
        amps[..amplitudes.len()].copy_from_slice(amplitudes);
        Self {
            dim: amplitudes.len(),
            amps,
        }
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        check_dim(dim)?;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index + 1,
            });
        }
        let mut amps = [ZERO; MAX_DIM];
        amps[index] = ONE;
        Ok(Self { dim, amps })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn amplitudes(&self) -> &[C64] {
        &self.amps[..self.dim]
    }

    pub fn norm(&self) -> f64 {
        vector_norm(self.amplitudes())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        check_same(self.dim, other.dim)?;
        Ok(self
            .amplitudes()
            .iter()
            .zip(other.amplitudes())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Applies a (unitary) matrix and renormalizes.
    pub fn evolve(&self, unitary: &Matrix) -> Result<Self> {
        let out = unitary.mul_vec(self.amplitudes())?;
        normalize(&out[..self.dim])
    }

    pub fn scale_phase(&self, phase: f64) -> Self {
        let factor = C64::from_polar(1.0, phase);
        let mut out = *self;
        for a in out.amps.iter_mut().take(self.dim) {
            *a *= factor;
        }
        out
    }
}

impl fmt::Debug for PureState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("PureState").field(&self.amplitudes()).finish()
    }
}

fn vector_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Rescales an amplitude vector to unit norm.
pub fn normalize(amplitudes: &[C64]) -> Result<PureState> {
    check_dim(amplitudes.len())?;
    let norm = vector_norm(amplitudes);
    if !(norm >= tolerances::ZERO_NORM) || !norm.is_finite() {
        return Err(Error::ZeroVector { norm });
    }
    let mut amps = [ZERO; MAX_DIM];
    for (slot, a) in amps.iter_mut().zip(amplitudes) {
        *slot = a / norm;
    }
    Ok(PureState {
        dim: amplitudes.len(),
        amps,
    })
}

/// Hermitian matrix of dimension 2, 3 or 4.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct HermitianObservable(Matrix);

impl HermitianObservable {
    /// Checks Hermiticity within 1e-12 and stores the exactly symmetrized matrix.
    pub fn new(matrix: Matrix) -> Result<Self> {
        let deviation = matrix.hermitian_deviation();
        if !(deviation <= tolerances::HERMITIAN) {
            return Err(Error::NotHermitian { deviation });
        }
        let sym = (matrix + matrix.adjoint()) * 0.5;
        Ok(Self(sym))
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Ok(Self(Matrix::identity(dim)?))
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim
    }
}

pub fn pauli_x() -> HermitianObservable {
    HermitianObservable(Matrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap())
}

pub fn pauli_y() -> HermitianObservable {
    let i = C64::i();
    HermitianObservable(Matrix::from_rows(&[&[ZERO, -i], &[i, ZERO]]).unwrap())
}

pub fn pauli_z() -> HermitianObservable {
    HermitianObservable(Matrix::diagonal(&[1.0, -1.0]).unwrap())
}

/// `⟨ψ|O|ψ⟩`.
pub fn expectation(state: &PureState, obs: &HermitianObservable) -> Result<f64> {
    check_same(obs.dim(), state.dim())?;
    let amps = state.amplitudes();
    let o_psi = obs.matrix().mul_vec(amps)?;
    let value: C64 = amps.iter().zip(o_psi.iter()).map(|(a, b)| a.conj() * b).sum();
    debug_assert!(
        value.im.abs() < tolerances::EXPECTATION_IMAG,
        "imaginary residue {} in expectation value",
        value.im
    );
    Ok(value.re)
}

/// Kronecker product of two observables.
pub fn tensor(a: &HermitianObservable, b: &HermitianObservable) -> Result<HermitianObservable> {
    Ok(HermitianObservable(a.matrix().kron(b.matrix())?))
}

/// Frobenius norm of `AB − BA`.
pub fn commutator_norm(a: &HermitianObservable, b: &HermitianObservable) -> Result<f64> {
    check_same(a.dim(), b.dim())?;
    let (ma, mb) = (*a.matrix(), *b.matrix());
    Ok((ma * mb - mb * ma).frobenius_norm())
}
