//! Cyclic Jacobi eigendecomposition for Hermitian matrices of dimension ≤ 4.

use alloc::vec::Vec;


use crate::error::{Error, Result};
use crate::linalg::{HermitianObservable, Matrix, C64, MAX_DIM};
use crate::tolerances;

/// One eigenvalue cluster and the orthogonal projector onto its eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenspace {
    pub value: f64,
    pub multiplicity: usize,
    pub projector: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    /// Ascending, repeated according to multiplicity.
    pub eigenvalues: Vec<f64>,
    /// Ascending by value; degenerate eigenvalues share one projector.
    pub eigenspaces: Vec<Eigenspace>,
}

impl EigenSystem {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `Σ λ_k P_k`.
    pub fn reconstruct(&self) -> Matrix {
        let dim = self.eigenspaces[0].projector.dim();
        self.eigenspaces
            .iter()
            .fold(Matrix::zeros(dim).unwrap(), |acc, e| acc + e.projector * e.value)
    }
}

/// Eigenvalues (ascending) and matching eigenvector columns of a Hermitian matrix.
pub fn hermitian_eigen(m: &Matrix) -> Result<([f64; MAX_DIM], Matrix)> {
    let deviation = m.hermitian_deviation();
    if !(deviation <= tolerances::HERMITIAN) {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.dim();
    let mut a = *m;
    let mut vectors = Matrix::identity(n)?;
    let threshold = tolerances::JACOBI_OFF_DIAGONAL * m.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == tolerances::JACOBI_MAX_SWEEPS {
            return Err(Error::EigenNoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                // Rotate the phase of column q so the pivot becomes real, then
                // apply the real symmetric Jacobi rotation.
                let phase = (apq / r).conj();
                let alpha = a.get(p, p).re;
                let beta = a.get(q, q).re;
                let theta = 0.5 * (2.0 * r).atan2(alpha - beta);
                let (s, c) = theta.sin_cos();
                let mut w = Matrix::identity(n)?;
                w.set(p, p, C64::new(c, 0.0));
                w.set(p, q, C64::new(-s, 0.0));
                w.set(q, p, phase * s);
                w.set(q, q, phase * c);
                a = w.adjoint() * a * w;
                vectors = vectors * w;
            }
        }
        for i in 0..n {
            let d = a.get(i, i);
            a.set(i, i, C64::new(d.re, 0.0));
        }
    }

    let mut order: [usize; MAX_DIM] = [0, 1, 2, 3];
    order[..n].sort_by(|&i, &j| a.get(i, i).re.total_cmp(&a.get(j, j).re));
    let mut values = [0.0; MAX_DIM];
    let mut sorted = Matrix::zeros(n)?;
    for (k, &src) in order[..n].iter().enumerate() {
        values[k] = a.get(src, src).re;
        for row in 0..n {
            sorted.set(row, k, vectors.get(row, src));
        }
    }
    Ok((values, sorted))
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Spectral decomposition with degenerate eigenvalues (gap < 1e-9) grouped.
pub fn eigensystem(obs: &HermitianObservable) -> Result<EigenSystem> {
    let m = obs.matrix();
    let n = m.dim();
    let (values, vectors) = hermitian_eigen(m)?;

    let mut eigenspaces: Vec<Eigenspace> = Vec::new();
    let mut k = 0;
    while k < n {
        let mut end = k + 1;
        while end < n && values[end] - values[end - 1] < tolerances::DEGENERACY_GAP {
            end += 1;
        }
        let projector = Matrix::from_fn(n, |i, j| {
            (k..end)
                .map(|col| vectors.get(i, col) * vectors.get(j, col).conj())
                .sum()
        })?;
        let value = values[k..end].iter().sum::<f64>() / (end - k) as f64;
        eigenspaces.push(Eigenspace {
            value,
            multiplicity: end - k,
            projector,
        });
        k = end;
    }

    Ok(EigenSystem {
        eigenvalues: values[..n].to_vec(),
        eigenspaces,
    })
}
