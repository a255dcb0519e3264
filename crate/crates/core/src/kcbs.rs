//! The KCBS pentagram scenario on a spin-1 system.
//!
//! Five measurement axes `l_0 … l_4` with `l_j ⟂ l_{j+1}` (indices mod 5),
//! dichotomic observables `A_j = 2 (l_j·S)² − 1`, and the cyclic sum
//! `Σ ⟨A_j A_{j+1}⟩`, which non-contextual models keep at or above −3.

use core::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::Rng;

use crate::direction::Direction3;
use crate::entanglement::concurrence_symmetric;
use crate::error::{Error, Result};
use crate::linalg::{commutator_norm, expectation, HermitianObservable, Matrix, C64};
use crate::optimize::{multistart, OptimizerParams};
use crate::symmetric::QutritPure;
use crate::tolerances;

pub(crate) const SQRT_5: f64 = 2.236_067_977_499_79;

/// Non-contextual lower bound of the KCBS sum.
pub const CLASSICAL_BOUND: f64 = -3.0;

/// Quantum minimum of the KCBS sum, `5 − 4√5`.
pub fn quantum_minimum() -> f64 {
    5.0 - 4.0 * SQRT_5
}

/// Five unit directions with cyclically adjacent pairs orthogonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PentagramConfig {
    directions: [Direction3; 5],
}

impl PentagramConfig {
    pub fn new(directions: [Direction3; 5]) -> Result<Self> {
        for i in 0..5 {
            let j = (i + 1) % 5;
            let dot = directions[i].dot(&directions[j]);
            if !(dot.abs() < tolerances::ORTHOGONALITY) {
                return Err(Error::NotOrthogonal {
                    first: i,
                    second: j,
                    dot,
                });
            }
        }
        Ok(Self { directions })
    }

    #[inline]
    pub fn directions(&self) -> &[Direction3; 5] {
        &self.directions
    }

    /// Applies the same rotation to every direction.
    pub fn rotated(&self, rotation: &[[f64; 3]; 3]) -> Result<Self> {
        Self::new(self.directions.map(|d| d.rotated(rotation)))
    }
}

/// Cone construction around +z with azimuth step 4π/5 and
/// `cos²θ = cos(π/5) / (1 + cos(π/5)) = 1/√5`.
pub fn standard_pentagram() -> PentagramConfig {
    let c = (PI / 5.0).cos();
    let cos_theta = (c / (1.0 + c)).sqrt();
    let theta = cos_theta.acos();
    let directions = core::array::from_fn(|j| Direction3::from_spherical(theta, 4.0 * PI * j as f64 / 5.0));
    PentagramConfig::new(directions).expect("standard pentagram is orthogonal")
}

/// Spin-1 matrices `(S_x, S_y, S_z)` in the `(|1⟩, |0⟩, |−1⟩)` basis.
pub fn spin1_matrices() -> [Matrix; 3] {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let ih = C64::new(0.0, FRAC_1_SQRT_2);
    let z = C64::new(0.0, 0.0);
    let sx = Matrix::from_rows(&[&[z, h, z], &[h, z, h], &[z, h, z]]).unwrap();
    let sy = Matrix::from_rows(&[&[z, -ih, z], &[ih, z, -ih], &[z, ih, z]]).unwrap();
    let sz = Matrix::diagonal(&[1.0, 0.0, -1.0]).unwrap();
    [sx, sy, sz]
}

/// `d·S` for a unit direction.
pub fn spin1_operator(d: &Direction3) -> Result<HermitianObservable> {
    let norm = d.norm();
    if !((norm - 1.0).abs() <= tolerances::NORM) {
        return Err(Error::NotUnit { norm });
    }
    let [sx, sy, sz] = spin1_matrices();
    HermitianObservable::new(sx * d[0] + sy * d[1] + sz * d[2])
}

#[derive(Debug, Clone, PartialEq)]
pub struct KcbsObservables {
    pub a_ops: [HermitianObservable; 5],
    /// `A_i A_{i+1}`.
    pub products: [HermitianObservable; 5],
}

pub fn kcbs_observables(p: &PentagramConfig) -> Result<KcbsObservables> {
    let mut a_ops = [HermitianObservable::identity(3)?; 5];
    for (a, d) in a_ops.iter_mut().zip(p.directions()) {
        let s = *spin1_operator(d)?.matrix();
        *a = HermitianObservable::new(s * s * 2.0 - Matrix::identity(3)?)?;
    }
    let mut products = a_ops;
    for i in 0..5 {
        let j = (i + 1) % 5;
        let norm = commutator_norm(&a_ops[i], &a_ops[j])?;
        if !(norm < tolerances::ORTHOGONALITY) {
            return Err(Error::NotCommuting { norm });
        }
        products[i] = HermitianObservable::new(*a_ops[i].matrix() * *a_ops[j].matrix())?;
    }
    Ok(KcbsObservables { a_ops, products })
}

/// `Σ_i ⟨ψ| A_i A_{i+1} |ψ⟩`.
pub fn kcbs_value(state: &QutritPure, obs: &KcbsObservables) -> f64 {
    obs.products
        .iter()
        .map(|p| expectation(state.state(), p).expect("3×3 observables"))
        .sum()
}

/// `(5 − 3√5)·C − √5`.
pub fn s_min_closed_form(c: f64) -> Result<f64> {
    check_concurrence(c)?;
    Ok((5.0 - 3.0 * SQRT_5) * c - SQRT_5)
}

pub(crate) fn check_concurrence(c: f64) -> Result<()> {
    if (0.0..=1.0).contains(&c) {
        Ok(())
    } else {
        Err(Error::InvalidConcurrence(c))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KcbsMinimum {
    pub value: f64,
    pub argmin: QutritPure,
    /// `|C(argmin) − C|`.
    pub constraint_residual: f64,
    pub evaluations: usize,
}

/// Minimizes the KCBS sum (standard pentagram) over qutrit states of fixed
/// concurrence.
///
/// The search runs on the constraint manifold itself: in the Cartesian
/// spin-1 basis (`|x⟩, |y⟩, |z⟩`, each annihilated by its own spin component)
/// a state is a complex unit vector `v`, and `2ac − b² = −v·v`. Every such
/// vector with `|v·v| = C` equals, up to a global phase,
/// `cos η · u + i sin η · w` with `cos 2η = C` and `(u, w)` the first two
/// columns of a rotation. The optimizer therefore walks over rotation vectors.
pub fn kcbs_min_for_concurrence(c: f64, opt: &OptimizerParams) -> Result<KcbsMinimum> {
    check_concurrence(c)?;
    opt.validate()?;
    let obs = kcbs_observables(&standard_pentagram())?;
    let objective = |r: &[f64]| kcbs_value(&qutrit_on_concurrence_shell(c, [r[0], r[1], r[2]]), &obs);
    let outcome = multistart(
        objective,
        |_, rng| (0..3).map(|_| rng.random_range(-PI..PI)).collect(),
        0.5,
        opt,
    )?;

    let best = outcome.best_run().value;
    let tie = opt.tolerance.max(1e-9);
    let magnitudes = |s: &QutritPure| s.amplitudes().map(|z| z.norm());
    let (value, argmin) = outcome
        .runs
        .iter()
        .filter(|run| run.value - best <= tie)
        .map(|run| {
            let state = qutrit_on_concurrence_shell(c, [run.x[0], run.x[1], run.x[2]]);
            (run.value, state)
        })
        .min_by(|(_, s), (_, t)| {
            let (ms, mt) = (magnitudes(s), magnitudes(t));
            ms[0]
                .total_cmp(&mt[0])
                .then(ms[1].total_cmp(&mt[1]))
                .then(ms[2].total_cmp(&mt[2]))
        })
        .expect("best run passes its own filter");

    let [a, b, cc] = argmin.amplitudes();
    let constraint_residual = (concurrence_symmetric(a, b, cc)?.value() - c).abs();
    if !(constraint_residual <= tolerances::CONCURRENCE_CONSTRAINT) {
        return Err(Error::ConvergenceFailure {
            reason: "argmin violates the concurrence constraint",
            best: value,
        });
    }
    Ok(KcbsMinimum {
        value,
        argmin,
        constraint_residual,
        evaluations: outcome.runs.iter().map(|r| r.evals).sum(),
    })
}

/// Rotation matrix `exp([r]×)` (Rodrigues).
pub(crate) fn rotation_from_vector(r: [f64; 3]) -> [[f64; 3]; 3] {
    let angle = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if angle < 1e-300 {
        return [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    }
    let k = r.map(|x| x / angle);
    let (s, c) = angle.sin_cos();
    let t = 1.0 - c;
    [
        [c + t * k[0] * k[0], t * k[0] * k[1] - s * k[2], t * k[0] * k[2] + s * k[1]],
        [t * k[1] * k[0] + s * k[2], c + t * k[1] * k[1], t * k[1] * k[2] - s * k[0]],
        [t * k[2] * k[0] - s * k[1], t * k[2] * k[1] + s * k[0], c + t * k[2] * k[2]],
    ]
}

/// Maps Cartesian spin-1 components to `(a, b, c)` over `(|1⟩, |0⟩, |−1⟩)`.
pub(crate) fn cartesian_to_spherical(v: [C64; 3]) -> [C64; 3] {
    let i = C64::i();
    [
        (-v[0] + i * v[1]) * FRAC_1_SQRT_2,
        v[2],
        (v[0] + i * v[1]) * FRAC_1_SQRT_2,
    ]
}

fn qutrit_on_concurrence_shell(c: f64, rotation: [f64; 3]) -> QutritPure {
    let r = rotation_from_vector(rotation);
    let cos_eta = ((1.0 + c) / 2.0).sqrt();
    let sin_eta = ((1.0 - c) / 2.0).max(0.0).sqrt();
    let v: [C64; 3] = core::array::from_fn(|k| C64::new(cos_eta * r[k][0], sin_eta * r[k][1]));
    QutritPure::normalized(cartesian_to_spherical(v)).expect("unit vector")
}
