use core::ops::Index;


use crate::error::{Error, Result};
use crate::tolerances;

/// Unit vector in real 3-space: a spin-1 measurement axis or a Bloch axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction3 {
    x: f64,
    y: f64,
    z: f64,
}

impl Direction3 {
    pub const X: Direction3 = Direction3 { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: Direction3 = Direction3 { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: Direction3 = Direction3 { x: 0.0, y: 0.0, z: 1.0 };

    /// Requires unit norm within 1e-12.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !((norm - 1.0).abs() <= tolerances::NORM) {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self { x, y, z })
    }

    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !(norm >= tolerances::ZERO_NORM) || !norm.is_finite() {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    /// Polar angle `theta` from +z, azimuth `phi` from +x.
    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self {
            x: st * cp,
            y: st * sp,
            z: ct,
        }
    }

    #[inline]
    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Direction3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Applies a rotation matrix (row-major) and renormalizes away round-off.
    pub fn rotated(&self, rotation: &[[f64; 3]; 3]) -> Self {
        let v = self.components();
        let r: [f64; 3] = core::array::from_fn(|i| (0..3).map(|j| rotation[i][j] * v[j]).sum());
        Self::normalized(r[0], r[1], r[2]).expect("rotation of a unit vector")
    }
}

impl Index<usize> for Direction3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Direction3 index {i} out of range"),
        }
    }
}
