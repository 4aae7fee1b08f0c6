//! Single-qubit gate parameterizations and conversions between them.
//!
//! Four forms are supported:
//!
//! * a rotation angle about a fixed Pauli generator, `cos(θ/2) I − i sin(θ/2) P`;
//! * a rotation angle about a Haar-conjugated generator `V Z V†`;
//! * a π-rotation about a free unit axis, `−i (n·σ)`;
//! * a unit quaternion `q₀ I − i (q₁ X + q₂ Y + q₃ Z)`.
//!
//! All four land in SU(2). [`decompose_unitary`] goes back from an SU(2) matrix
//! to the conjugated-generator form, which is what lets the hybrid schedules
//! move a slot between the angle and quaternion representations without
//! changing the circuit.

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::Float;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::mat2::Mat2;
use crate::{Error, Result};

const UNIT_TOL: f64 = 1e-10;

/// Unit quaternion `(q₀, q₁, q₂, q₃)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quaternion(pub [f64; 4]);

impl Quaternion {
    pub const IDENTITY: Quaternion = Quaternion([1.0, 0.0, 0.0, 0.0]);

    /// Validates unit norm.
    pub fn new(q: [f64; 4]) -> Result<Self> {
        let q = Quaternion(q);
        q.check_unit()?;
        Ok(q)
    }

    /// Scales an arbitrary nonzero 4-vector onto the unit sphere.
    pub fn normalized(q: [f64; 4]) -> Result<Self> {
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Invariant("cannot normalize a zero quaternion".into()));
        }
        Ok(Quaternion([q[0] / n, q[1] / n, q[2] / n, q[3] / n]))
    }

    pub fn basis(mu: usize) -> Quaternion {
        let mut q = [0.0; 4];
        q[mu] = 1.0;
        Quaternion(q)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    fn check_unit(&self) -> Result<()> {
        let n = self.norm_sqr();
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(Error::Invariant(alloc::format!(
                "quaternion has squared norm {n}"
            )));
        }
        Ok(())
    }
}

/// Unit rotation axis `(n_x, n_y, n_z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis3(pub [f64; 3]);

impl Axis3 {
    pub fn new(n: [f64; 3]) -> Result<Self> {
        let a = Axis3(n);
        let sq = a.norm_sqr();
        if (sq - 1.0).abs() > UNIT_TOL {
            return Err(Error::Invariant(alloc::format!("axis has squared norm {sq}")));
        }
        Ok(a)
    }

    pub fn normalized(n: [f64; 3]) -> Result<Self> {
        let len = n.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(len.is_finite() && len > 0.0) {
            return Err(Error::Invariant("cannot normalize a zero axis".into()));
        }
        Ok(Axis3([n[0] / len, n[1] / len, n[2] / len]))
    }

    pub fn basis(k: usize) -> Axis3 {
        let mut n = [0.0; 3];
        n[k] = 1.0;
        Axis3(n)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    /// Uniform direction on the sphere (normalized Gaussian triple).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Axis3 {
        loop {
            let v: [f64; 3] = [
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            ];
            if let Ok(a) = Axis3::normalized(v) {
                return a;
            }
        }
    }

    /// `n·σ`.
    pub fn pauli_dot(&self) -> Mat2 {
        let [x, y, z] = self.0;
        Mat2::pauli_x().scale(Complex64::new(x, 0.0))
            + Mat2::pauli_y().scale(Complex64::new(y, 0.0))
            + Mat2::pauli_z().scale(Complex64::new(z, 0.0))
    }
}

/// `(cos θ, sin θ cos φ, sin θ sin φ)`; zenith angle measured from the x axis.
pub fn axis_from_spherical(theta: f64, phi: f64) -> Axis3 {
    Axis3([theta.cos(), theta.sin() * phi.cos(), theta.sin() * phi.sin()])
}

/// Quaternion of the rotation by `psi` about `axis_from_spherical(theta, phi)`.
pub fn angles_to_quaternion(psi: f64, theta: f64, phi: f64) -> Quaternion {
    let (s, c) = (psi / 2.0).sin_cos();
    Quaternion([c, s * theta.cos(), s * theta.sin() * phi.cos(), s * theta.sin() * phi.sin()])
}

/// `[[q₀ − i q₃, −q₂ − i q₁], [q₂ − i q₁, q₀ + i q₃]]`.
pub fn quaternion_to_matrix(q: &Quaternion) -> Result<Mat2> {
    q.check_unit()?;
    Ok(quaternion_matrix_unchecked(q))
}

pub(crate) fn quaternion_matrix_unchecked(q: &Quaternion) -> Mat2 {
    let [q0, q1, q2, q3] = q.0;
    Mat2::new(
        Complex64::new(q0, -q3),
        Complex64::new(-q2, -q1),
        Complex64::new(q2, -q1),
        Complex64::new(q0, q3),
    )
}

/// Reads the quaternion back out of an SU(2) matrix (inverse of
/// [`quaternion_to_matrix`]), renormalizing away rounding drift.
pub fn matrix_to_quaternion(u: &Mat2) -> Result<Quaternion> {
    check_special_unitary(u)?;
    let q0 = u.m[0][0].re;
    let q3 = -u.m[0][0].im;
    let q2 = u.m[1][0].re;
    let q1 = -u.m[1][0].im;
    Quaternion::normalized([q0, q1, q2, q3])
}

fn check_special_unitary(u: &Mat2) -> Result<()> {
    u.ensure_unitary(1e-8)?;
    let det = u.det();
    if (det - Complex64::new(1.0, 0.0)).norm() > 1e-8 {
        return Err(Error::Precondition(alloc::format!(
            "matrix is not special unitary (det = {} {:+}i)",
            det.re,
            det.im
        )));
    }
    Ok(())
}

/// Haar-random element of U(2).
///
/// A complex Ginibre matrix is orthonormalized column by column (Gram–Schmidt,
/// i.e. a QR factorization); each column is then multiplied by the phase of the
/// matching diagonal entry of R. Gram–Schmidt already leaves that diagonal real
/// and positive, so the fix is the identity here, but it keeps the construction
/// valid for any QR convention.
pub fn haar_random_u2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    loop {
        let mut g = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        let c0 = [g(), g()];
        let c1 = [g(), g()];

        let r00 = (c0[0].norm_sqr() + c0[1].norm_sqr()).sqrt();
        if r00 < 1e-12 {
            continue;
        }
        let q0 = [c0[0] / r00, c0[1] / r00];
        let r01 = q0[0].conj() * c1[0] + q0[1].conj() * c1[1];
        let w = [c1[0] - r01 * q0[0], c1[1] - r01 * q0[1]];
        let r11 = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
        if r11 < 1e-12 {
            continue;
        }
        let q1 = [w[0] / r11, w[1] / r11];

        let d0 = Complex64::new(r00, 0.0) / r00;
        let d1 = Complex64::new(r11, 0.0) / r11;
        return Mat2::new(q0[0] * d0, q1[0] * d1, q0[1] * d0, q1[1] * d1);
    }
}

/// `G = V Z V†`: Hermitian, unitary and traceless for unitary `V`.
pub fn conjugated_generator(v: &Mat2) -> Result<Mat2> {
    v.ensure_unitary(UNIT_TOL)?;
    Ok(*v * Mat2::pauli_z() * v.adjoint())
}

/// Fixed rotation generators for plain Rotosolve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    X,
    Y,
    Z,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::X, Generator::Y, Generator::Z];

    pub fn matrix(self) -> Mat2 {
        match self {
            Generator::X => Mat2::pauli_x(),
            Generator::Y => Mat2::pauli_y(),
            Generator::Z => Mat2::pauli_z(),
        }
    }
}

/// Rotation angle about a Haar-conjugated generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HaarAngleGate {
    pub theta: f64,
    pub conjugator: Mat2,
}

impl HaarAngleGate {
    pub fn new(theta: f64, conjugator: Mat2) -> Result<Self> {
        conjugator.ensure_unitary(UNIT_TOL)?;
        Ok(HaarAngleGate { theta, conjugator })
    }

    pub fn generator(&self) -> Mat2 {
        self.conjugator * Mat2::pauli_z() * self.conjugator.adjoint()
    }
}

/// One optimizable single-qubit gate slot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GateParam {
    FixedAngle { theta: f64, generator: Generator },
    HaarAngle(HaarAngleGate),
    /// π-rotation about the axis.
    Axis(Axis3),
    Quat(Quaternion),
}

impl GateParam {
    pub fn kind(&self) -> &'static str {
        match self {
            GateParam::FixedAngle { .. } => "fixed-angle",
            GateParam::HaarAngle(_) => "haar-angle",
            GateParam::Axis(_) => "axis",
            GateParam::Quat(_) => "quaternion",
        }
    }

    /// Unitary realized by this parameter.
    pub fn matrix(&self) -> Mat2 {
        match self {
            GateParam::FixedAngle { theta, generator } => angle_gate(*theta, &generator.matrix()),
            GateParam::HaarAngle(g) => angle_gate(g.theta, &g.generator()),
            GateParam::Axis(n) => n.pauli_dot().scale(Complex64::new(0.0, -1.0)),
            GateParam::Quat(q) => quaternion_matrix_unchecked(q),
        }
    }

    /// Checks the variant invariants.
    pub fn validate(&self) -> Result<()> {
        match self {
            GateParam::FixedAngle { theta, .. } => finite(*theta),
            GateParam::HaarAngle(g) => {
                finite(g.theta)?;
                g.conjugator.ensure_unitary(UNIT_TOL)
            }
            GateParam::Axis(n) => Axis3::new(n.0).map(|_| ()),
            GateParam::Quat(q) => q.check_unit(),
        }
    }

    /// The angle about the generator, for the two angle variants.
    pub fn angle(&self) -> Option<f64> {
        match self {
            GateParam::FixedAngle { theta, .. } => Some(*theta),
            GateParam::HaarAngle(g) => Some(g.theta),
            _ => None,
        }
    }

    /// Same generator, different angle. `None` for the axis and quaternion forms.
    pub fn with_angle(&self, theta: f64) -> Option<GateParam> {
        match *self {
            GateParam::FixedAngle { generator, .. } => Some(GateParam::FixedAngle { theta, generator }),
            GateParam::HaarAngle(g) => Some(GateParam::HaarAngle(HaarAngleGate {
                theta,
                conjugator: g.conjugator,
            })),
            _ => None,
        }
    }

    /// Quaternion form of the same unitary.
    pub fn to_quaternion(&self) -> Result<Quaternion> {
        match self {
            GateParam::Quat(q) => Ok(*q),
            other => matrix_to_quaternion(&other.matrix()),
        }
    }

    /// Conjugated-generator form of the same unitary.
    pub fn to_haar_angle(&self) -> Result<HaarAngleGate> {
        match self {
            GateParam::HaarAngle(g) => Ok(*g),
            other => {
                let (theta, conjugator) = decompose_unitary(&other.matrix())?;
                Ok(HaarAngleGate { theta, conjugator })
            }
        }
    }
}

fn finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Invariant("non-finite gate angle".into()))
    }
}

/// `cos(θ/2) I − i sin(θ/2) G`.
pub fn angle_gate(theta: f64, generator: &Mat2) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    Mat2::identity().scale(Complex64::new(c, 0.0)) + generator.scale(Complex64::new(0.0, -s))
}

/// Writes an SU(2) matrix as `exp(−i θ/2 · V Z V†)`.
///
/// The first column of `V` is the eigenvector of `U` for the eigenvalue
/// `e^{−iθ/2}`, which pairs it with the +1 eigenvector of `Z`. The angle is
/// taken in `[0, 2π]`: an SU(2) element with negative trace cannot be reached
/// from `θ ∈ (−π, π]` without a global sign. `U = ±I` returns `V = I` with
/// `θ = 0` or `θ = 2π`.
pub fn decompose_unitary(u: &Mat2) -> Result<(f64, Mat2)> {
    let q = matrix_to_quaternion(u)?;
    let [q0, q1, q2, q3] = q.0;
    let s = (q1 * q1 + q2 * q2 + q3 * q3).sqrt();
    let theta = 2.0 * s.atan2(q0);
    if s < 1e-15 {
        return Ok((if q0 > 0.0 { 0.0 } else { 2.0 * PI }, Mat2::identity()));
    }
    let g = [q1 / s, q2 / s, q3 / s];
    Ok((theta, eigenbasis_of_axis(g)))
}

/// Unitary whose first column is the +1 eigenvector of `g·σ` and second the −1
/// eigenvector, so that `V Z V† = g·σ`.
fn eigenbasis_of_axis(g: [f64; 3]) -> Mat2 {
    let [gx, gy, gz] = g;
    let plus = if gz >= 0.0 {
        [Complex64::new(1.0 + gz, 0.0), Complex64::new(gx, gy)]
    } else {
        [Complex64::new(gx, -gy), Complex64::new(1.0 - gz, 0.0)]
    };
    let n = (plus[0].norm_sqr() + plus[1].norm_sqr()).sqrt();
    let a = plus[0] / n;
    let b = plus[1] / n;
    // second column orthogonal to the first; det V = 1
    Mat2::new(a, -b.conj(), b, a.conj())
}

/// Uniform angle in `(−π, π]`.
pub fn random_angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    PI - 2.0 * PI * rng.random::<f64>()
}

/// Maps any angle into `(−π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta % two_pi;
    if t <= -PI {
        t += two_pi;
    } else if t > PI {
        t -= two_pi;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quaternion_matrix_examples() {
        let id = quaternion_to_matrix(&Quaternion::IDENTITY).unwrap();
        assert!(id.max_abs_diff(&Mat2::identity()) < 1e-15);
        let z = quaternion_to_matrix(&Quaternion([0.0, 0.0, 0.0, 1.0])).unwrap();
        assert!(z.max_abs_diff(&Mat2::new(c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0))) < 1e-15);
        assert!(quaternion_to_matrix(&Quaternion([1.0, 1.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn angle_examples() {
        assert_eq!(angles_to_quaternion(0.0, 0.3, 0.2).0, [1.0, 0.0, 0.0, 0.0]);
        let q = angles_to_quaternion(PI, 0.0, 0.0).0;
        assert!((q[0]).abs() < 1e-15 && (q[1] - 1.0).abs() < 1e-15);
        assert_eq!(axis_from_spherical(0.0, 1.0).0, [1.0, 0.0, 0.0]);
        let a = axis_from_spherical(PI / 2.0, 0.0).0;
        assert!((a[0]).abs() < 1e-15 && (a[1] - 1.0).abs() < 1e-15 && a[2] == 0.0);
    }

    #[test]
    fn generator_examples() {
        let g = conjugated_generator(&Mat2::identity()).unwrap();
        assert!(g.max_abs_diff(&Mat2::pauli_z()) < 1e-15);
        let h = 1.0 / 2.0f64.sqrt();
        let hadamard = Mat2::new(c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0));
        let g = conjugated_generator(&hadamard).unwrap();
        assert!(g.max_abs_diff(&Mat2::pauli_x()) < 1e-12);
        let bad = Mat2::identity().scale(c(2.0, 0.0));
        assert!(conjugated_generator(&bad).is_err());
    }

    #[test]
    fn gate_matrix_examples() {
        let p = GateParam::FixedAngle {
            theta: 0.0,
            generator: Generator::Z,
        };
        assert!(p.matrix().max_abs_diff(&Mat2::identity()) < 1e-15);
        let p = GateParam::Axis(Axis3([0.0, 0.0, 1.0]));
        assert!(p.matrix().max_abs_diff(&Mat2::pauli_z().scale(c(0.0, -1.0))) < 1e-15);
    }

    #[test]
    fn decompose_examples() {
        let (theta, v) = decompose_unitary(&Mat2::identity()).unwrap();
        assert_eq!(theta, 0.0);
        assert_eq!(v, Mat2::identity());

        let u = Mat2::pauli_x().scale(c(0.0, -1.0));
        let (theta, v) = decompose_unitary(&u).unwrap();
        assert!((theta - PI).abs() < 1e-12);
        let back = angle_gate(theta, &conjugated_generator(&v).unwrap());
        assert!(back.max_abs_diff(&u) < 1e-10);

        let minus = -Mat2::identity();
        let (theta, v) = decompose_unitary(&minus).unwrap();
        assert!(angle_gate(theta, &conjugated_generator(&v).unwrap()).max_abs_diff(&minus) < 1e-12);
    }

    #[test]
    fn decompose_rejects_non_special() {
        let u = Mat2::pauli_x(); // det = -1
        assert!(matches!(decompose_unitary(&u), Err(Error::Precondition(_))));
    }

    #[test]
    fn haar_is_seeded_and_unitary() {
        let a = haar_random_u2(&mut ChaCha8Rng::seed_from_u64(8));
        let b = haar_random_u2(&mut ChaCha8Rng::seed_from_u64(8));
        assert_eq!(a, b);
        assert!(a.is_unitary(1e-12));
    }

    #[test]
    fn wrap() {
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(0.5) - 0.5).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let t = random_angle(&mut rng);
            assert!(t > -PI && t <= PI);
        }
    }

    #[test]
    fn gate_param_json() {
        let p = GateParam::Quat(Quaternion([0.1f64.sqrt(), 0.0, 0.9f64.sqrt(), 0.0]));
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with("{\"Quat\""));
        let back: GateParam = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
