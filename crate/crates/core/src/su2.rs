//! Pauli-basis su(2) algebra and SU(2) group primitives.
//!
//! The identification between R^3 and su(2) is fixed here, once, for the
//! whole crate: a vector `v = (x, y, z)` corresponds to the algebra element
//!
//! ```text
//! M(v) = i (x * sigma_x + y * sigma_y + z * sigma_z)
//! ```
//!
//! with the Pauli matrices
//!
//! ```text
//! sigma_x = [[0, 1], [1, 0]]
//! sigma_y = [[0, -i], [i, 0]]
//! sigma_z = [[1, 0], [0, -1]]
//! ```
//!
//! Every other module inherits this convention; any sign discrepancy between
//! the SU(2) and SO(3) pictures traces back to this file.

use nalgebra::{Complex, Matrix2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// 2x2 complex matrix, the raw storage behind group and algebra elements.
pub type CMatrix2 = Matrix2<Complex<f64>>;

/// Absolute gate on the skewness and trace residuals of su(2) members.
pub const ALGEBRA_TOL: f64 = 1e-10;

/// Gate on the unitarity and determinant residuals of SU(2) members.
/// Loose on purpose: targets and conjugators may come from user files.
pub const UNITARY_TOL: f64 = 1e-8;

/// Below this radius `sin(r)/r` switches to its two-term series.
const SINC_SERIES_RADIUS: f64 = 1e-8;

#[inline]
fn c64(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

/// Real 3-vector of Pauli coefficients: the R^3 coordinates of an su(2)
/// element under the crate convention.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl std::ops::Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl std::ops::Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl std::ops::Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl std::ops::Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, rhs: f64) -> Vec3 {
        Vec3::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

impl std::ops::Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, rhs: Vec3) -> Vec3 {
        rhs * self
    }
}

impl std::fmt::Display for Vec3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:.12}, {:.12}, {:.12})", self.x, self.y, self.z)
    }
}

/// A validated su(2) element: 2x2 skew-Hermitian with zero trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewMatrix(CMatrix2);

impl SkewMatrix {
    /// Admits `m` if both membership residuals pass [`ALGEBRA_TOL`].
    pub fn new(m: CMatrix2) -> Result<Self> {
        let skew = (m + m.adjoint()).norm();
        let trace = m.trace().norm();
        if skew > ALGEBRA_TOL || trace > ALGEBRA_TOL {
            return Err(Error::NotInAlgebra {
                skew,
                trace,
                tolerance: ALGEBRA_TOL,
            });
        }
        Ok(SkewMatrix(m))
    }

    pub fn matrix(&self) -> &CMatrix2 {
        &self.0
    }
}

/// A validated SU(2) element: 2x2 unitary with determinant one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryGate(CMatrix2);

impl UnitaryGate {
    pub fn identity() -> Self {
        UnitaryGate(CMatrix2::identity())
    }

    /// Admits `m` if both membership residuals pass [`UNITARY_TOL`].
    pub fn from_matrix(m: CMatrix2) -> Result<Self> {
        let unitarity = (m * m.adjoint() - CMatrix2::identity()).norm();
        let determinant = (m.determinant() - c64(1.0, 0.0)).norm();
        if unitarity > UNITARY_TOL || determinant > UNITARY_TOL {
            return Err(Error::NotUnitary {
                unitarity,
                determinant,
                tolerance: UNITARY_TOL,
            });
        }
        Ok(UnitaryGate(m))
    }

    /// Builds `w*I + M(v)` after normalizing `(w, v)` to a unit quaternion.
    pub fn from_quaternion(w: f64, v: Vec3) -> Self {
        let n = (w * w + v.norm_squared()).sqrt();
        let (w, v) = (w / n, v * (1.0 / n));
        UnitaryGate(CMatrix2::new(
            c64(w, v.z),
            c64(v.y, v.x),
            c64(-v.y, v.x),
            c64(w, -v.z),
        ))
    }

    pub fn matrix(&self) -> &CMatrix2 {
        &self.0
    }

    /// Conjugate transpose, which is also the inverse.
    pub fn dagger(&self) -> Self {
        UnitaryGate(self.0.adjoint())
    }

    pub fn det(&self) -> Complex<f64> {
        self.0.determinant()
    }

    pub fn trace(&self) -> Complex<f64> {
        self.0.trace()
    }

    /// `v * self * v^dagger`.
    pub fn conjugate_by(&self, v: &UnitaryGate) -> Self {
        UnitaryGate(v.0 * self.0 * v.0.adjoint())
    }

    /// Frobenius norm of `U U^dagger - I`.
    pub fn unitarity_residual(&self) -> f64 {
        (self.0 * self.0.adjoint() - CMatrix2::identity()).norm()
    }

    /// `|det U - 1|`.
    pub fn det_residual(&self) -> f64 {
        (self.0.determinant() - c64(1.0, 0.0)).norm()
    }
}

impl std::ops::Mul for UnitaryGate {
    type Output = UnitaryGate;
    fn mul(self, rhs: UnitaryGate) -> UnitaryGate {
        UnitaryGate(self.0 * rhs.0)
    }
}

impl std::ops::Mul for &UnitaryGate {
    type Output = UnitaryGate;
    fn mul(self, rhs: &UnitaryGate) -> UnitaryGate {
        UnitaryGate(self.0 * rhs.0)
    }
}

impl std::ops::Neg for UnitaryGate {
    type Output = UnitaryGate;
    fn neg(self) -> UnitaryGate {
        UnitaryGate(-self.0)
    }
}

/// The identification map: `v -> M(v)`.
pub fn vec_to_matrix(v: Vec3) -> SkewMatrix {
    SkewMatrix(CMatrix2::new(
        c64(0.0, v.z),
        c64(v.y, v.x),
        c64(-v.y, v.x),
        c64(0.0, -v.z),
    ))
}

/// Inverse identification on a validated element.
///
/// Round-trips exactly with [`vec_to_matrix`]; the membership gate (and its
/// `NotInAlgebra` error) lives in [`SkewMatrix::new`].
pub fn matrix_to_vec(m: &SkewMatrix) -> Vec3 {
    pauli_components(&m.0)
}

/// Component extraction without the membership gate, for matrices that are
/// in su(2) by construction. Symmetrized so small Hermitian noise cancels.
pub(crate) fn pauli_components(m: &CMatrix2) -> Vec3 {
    Vec3::new(
        (m[(0, 1)].im + m[(1, 0)].im) / 2.0,
        (m[(0, 1)].re - m[(1, 0)].re) / 2.0,
        (m[(0, 0)].im - m[(1, 1)].im) / 2.0,
    )
}

/// Closed-form exponential `exp(M(v)) = cos(r) I + sin(r)/r * M(v)`, `r = |v|`.
///
/// 2-pi periodic along any fixed direction; returns the identity at `v = 0`.
pub fn expm_su2(v: Vec3) -> UnitaryGate {
    let r = v.norm();
    let sinc = if r < SINC_SERIES_RADIUS {
        1.0 - r * r / 6.0
    } else {
        r.sin() / r
    };
    let m = CMatrix2::identity() * c64(r.cos(), 0.0) + vec_to_matrix(v).0 * c64(sinc, 0.0);
    UnitaryGate(m)
}

/// Trace inner product `Tr(A B^dagger)`.
///
/// Under the R^3 identification this equals `2 * (v_a . v_b)`, so orthogonal
/// vectors correspond to trace-orthogonal algebra elements.
pub fn trace_inner(a: &SkewMatrix, b: &SkewMatrix) -> f64 {
    (a.0 * b.0.adjoint()).trace().re
}

/// Frobenius distance `||U - W||_F`.
pub fn frobenius_distance(u: &UnitaryGate, w: &UnitaryGate) -> f64 {
    (u.0 - w.0).norm()
}

/// Haar-distributed SU(2) element, deterministic for a fixed seed.
pub fn haar_random(seed: u64) -> UnitaryGate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_random_with(&mut rng)
}

/// Haar sampling from a caller-owned RNG: a 4-component standard Gaussian
/// normalized to a unit quaternion is rotation invariant.
pub fn haar_random_with<R: Rng + ?Sized>(rng: &mut R) -> UnitaryGate {
    loop {
        let w: f64 = rng.sample(StandardNormal);
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        let n2 = w * w + x * x + y * y + z * z;
        if n2 > 1e-24 {
            return UnitaryGate::from_quaternion(w, Vec3::new(x, y, z));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn assert_mat_eq(m: &CMatrix2, expected: &CMatrix2, tol: f64) {
        assert!(
            (m - expected).norm() <= tol,
            "matrices differ by {:.3e}:\n{m}\nvs\n{expected}",
            (m - expected).norm()
        );
    }

    #[test]
    fn vec_to_matrix_zero_is_zero() {
        let m = vec_to_matrix(Vec3::ZERO);
        assert_eq!(m.matrix().norm(), 0.0);
    }

    #[test]
    fn vec_to_matrix_matches_convention() {
        // (1,0,0) -> i sigma_x
        let sx = vec_to_matrix(Vec3::X);
        let expected = CMatrix2::new(c64(0.0, 0.0), c64(0.0, 1.0), c64(0.0, 1.0), c64(0.0, 0.0));
        assert_mat_eq(sx.matrix(), &expected, 0.0);

        // (0,0,1) -> i sigma_z
        let sz = vec_to_matrix(Vec3::Z);
        let expected = CMatrix2::new(c64(0.0, 1.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, -1.0));
        assert_mat_eq(sz.matrix(), &expected, 0.0);
    }

    #[test]
    fn matrix_to_vec_recovers_sigma_y() {
        // i sigma_y = [[0, 1], [-1, 0]]
        let m = CMatrix2::new(c64(0.0, 0.0), c64(1.0, 0.0), c64(-1.0, 0.0), c64(0.0, 0.0));
        let v = matrix_to_vec(&SkewMatrix::new(m).unwrap());
        assert_eq!(v, Vec3::Y);
    }

    #[test]
    fn matrix_to_vec_zero() {
        let v = matrix_to_vec(&SkewMatrix::new(CMatrix2::zeros()).unwrap());
        assert_eq!(v, Vec3::ZERO);
    }

    #[test]
    fn identity_is_not_in_algebra() {
        let err = SkewMatrix::new(CMatrix2::identity()).unwrap_err();
        assert!(matches!(err, Error::NotInAlgebra { .. }));
    }

    #[test]
    fn round_trip_is_exact() {
        let v = Vec3::new(0.3, -1.7, 2.9);
        let back = matrix_to_vec(&vec_to_matrix(v));
        assert_eq!(v, back);
    }

    #[test]
    fn expm_zero_is_identity() {
        let u = expm_su2(Vec3::ZERO);
        assert_mat_eq(u.matrix(), &CMatrix2::identity(), 0.0);
    }

    #[test]
    fn expm_pi_is_minus_identity() {
        let u = expm_su2(Vec3::new(PI, 0.0, 0.0));
        assert_mat_eq(u.matrix(), &(-CMatrix2::identity()), 1e-15);
    }

    #[test]
    fn expm_half_pi_is_i_sigma_x() {
        let u = expm_su2(Vec3::new(FRAC_PI_2, 0.0, 0.0));
        assert_mat_eq(u.matrix(), vec_to_matrix(Vec3::X).matrix(), 1e-15);
    }

    #[test]
    fn expm_small_angle_branch_is_unitary() {
        let u = expm_su2(Vec3::new(1e-9, -2e-9, 0.5e-9));
        assert!(u.unitarity_residual() < 1e-15);
        assert!(u.det_residual() < 1e-15);
        assert!(frobenius_distance(&u, &UnitaryGate::identity()) < 1e-8);
    }

    #[test]
    fn trace_inner_pauli_values() {
        let sx = vec_to_matrix(Vec3::X);
        let sy = vec_to_matrix(Vec3::Y);
        assert!((trace_inner(&sx, &sx) - 2.0).abs() < 1e-15);
        assert!(trace_inner(&sx, &sy).abs() < 1e-15);

        let m = vec_to_matrix(Vec3::new(1.0, 2.0, 3.0));
        assert!((trace_inner(&m, &m) - 28.0).abs() < 1e-12);
    }

    #[test]
    fn frobenius_distance_values() {
        let id = UnitaryGate::identity();
        assert_eq!(frobenius_distance(&id, &id), 0.0);

        // I vs -I: two diagonal entries differ by 2 each.
        let d = frobenius_distance(&id, &-id);
        assert!((d - 2.0 * 2.0_f64.sqrt()).abs() < 1e-15);

        // I vs i sigma_x: all four entry differences have unit modulus,
        // so the squared norm is 4 and the distance 2.
        let isx = expm_su2(Vec3::new(FRAC_PI_2, 0.0, 0.0));
        assert!((frobenius_distance(&id, &isx) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn haar_random_is_deterministic() {
        let a = haar_random(42);
        let b = haar_random(42);
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn haar_random_satisfies_gate_invariants() {
        for seed in 0..32 {
            let u = haar_random(seed);
            assert!(u.det_residual() < 1e-12, "seed {seed}");
            assert!(u.unitarity_residual() < 1e-12, "seed {seed}");
            for col in 0..2 {
                let n: f64 = (0..2).map(|row| u.matrix()[(row, col)].norm_sqr()).sum();
                assert!((n.sqrt() - 1.0).abs() < 1e-12, "seed {seed} column {col}");
            }
        }
    }

    #[test]
    fn from_matrix_rejects_non_unitary() {
        let m = CMatrix2::new(c64(1.0, 0.0), c64(0.5, 0.0), c64(0.0, 0.0), c64(1.0, 0.0));
        assert!(matches!(
            UnitaryGate::from_matrix(m),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn expm_periodicity_single_direction() {
        let v = Vec3::new(0.4, -0.8, 1.1);
        let shifted = v * (1.0 + 2.0 * PI / v.norm());
        assert!(frobenius_distance(&expm_su2(v), &expm_su2(shifted)) < 1e-12);
    }
}
