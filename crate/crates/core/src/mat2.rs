//! Dense 2×2 complex matrices for single-qubit gates and generators.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Row-major 2×2 complex matrix.
///
/// Serialized as four `[re, im]` pairs in row-major order so JSON checkpoints
/// keep full double precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[[f64; 2]; 4]", into = "[[f64; 2]; 4]")]
pub struct Mat2 {
    pub m: [[Complex64; 2]; 2],
}

impl From<[[f64; 2]; 4]> for Mat2 {
    fn from(e: [[f64; 2]; 4]) -> Self {
        let c = |k: usize| Complex64::new(e[k][0], e[k][1]);
        Mat2::new(c(0), c(1), c(2), c(3))
    }
}

impl From<Mat2> for [[f64; 2]; 4] {
    fn from(u: Mat2) -> Self {
        let f = |z: Complex64| [z.re, z.im];
        [f(u.m[0][0]), f(u.m[0][1]), f(u.m[1][0]), f(u.m[1][1])]
    }
}

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub const fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn pauli_x() -> Self {
        Mat2::new(ZERO, ONE, ONE, ZERO)
    }

    pub const fn pauli_y() -> Self {
        Mat2::new(ZERO, Complex64::new(0.0, -1.0), I, ZERO)
    }

    pub const fn pauli_z() -> Self {
        Mat2::new(ONE, ZERO, ZERO, Complex64::new(-1.0, 0.0))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.m;
        Mat2::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Mat2::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Largest absolute entry-wise difference.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.m[r][c] - other.m[r][c]).norm());
            }
        }
        worst
    }

    /// Deviation of `U†U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Mat2::identity())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// Hermitian involution check: `H = H†` and `H² = I`.
    pub fn is_hermitian_involution(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
            && (*self * *self).max_abs_diff(&Mat2::identity()) <= tol
    }

    pub(crate) fn ensure_unitary(&self, tol: f64) -> Result<()> {
        let defect = self.unitarity_defect();
        if defect > tol {
            return Err(Error::Invariant(alloc::format!(
                "gate is not unitary (|U†U - I| = {defect:e})"
            )));
        }
        Ok(())
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let a = &self.m;
        let b = &o.m;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let a = &self.m;
        let b = &o.m;
        Mat2::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + (-o)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}
