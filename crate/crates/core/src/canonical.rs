//! Conjugation of a generator pair into the `i sigma_x` / `i sigma_y` plane.
//!
//! The adjoint action `A -> V A V^dagger` of `V` in SU(2) rotates the Pauli
//! coefficient vector of `A`; `V` and `-V` induce the same rotation. Given two
//! linearly independent generators this module builds, from two coordinate
//! Givens rotations, the rotation that sends their common normal to `e_z` --
//! which simultaneously nulls the `i sigma_z` component of both generators --
//! and lifts it back to SU(2). No orthogonality between the generators is
//! needed anywhere.

use nalgebra::{Matrix2, Matrix3};

use crate::error::{Error, Result};
use crate::su2::{expm_su2, pauli_components, vec_to_matrix, UnitaryGate, Vec3};

/// Gate on the orthogonality and determinant residuals of user rotations.
pub const ROTATION_TOL: f64 = 1e-8;

/// Relative gate on `|alpha x beta|` below which a pair counts as dependent.
pub const INDEPENDENCE_TOL: f64 = 1e-10;

/// A validated SO(3) element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3(Matrix3<f64>);

impl Rotation3 {
    pub fn identity() -> Self {
        Rotation3(Matrix3::identity())
    }

    /// Admits `m` if both membership residuals pass [`ROTATION_TOL`].
    pub fn new(m: Matrix3<f64>) -> Result<Self> {
        let orthogonality = (m * m.transpose() - Matrix3::identity()).norm();
        let determinant = (m.determinant() - 1.0).abs();
        if orthogonality > ROTATION_TOL || determinant > ROTATION_TOL {
            return Err(Error::NotARotation {
                orthogonality,
                determinant,
                tolerance: ROTATION_TOL,
            });
        }
        Ok(Rotation3(m))
    }

    pub(crate) fn new_unchecked(m: Matrix3<f64>) -> Self {
        Rotation3(m)
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let w = self.0 * nalgebra::Vector3::new(v.x, v.y, v.z);
        Vec3::new(w[0], w[1], w[2])
    }

    pub fn orthogonality_residual(&self) -> f64 {
        (self.0 * self.0.transpose() - Matrix3::identity()).norm()
    }

    pub fn det_residual(&self) -> f64 {
        (self.0.determinant() - 1.0).abs()
    }
}

impl std::ops::Mul for &Rotation3 {
    type Output = Rotation3;
    fn mul(self, rhs: &Rotation3) -> Rotation3 {
        Rotation3(self.0 * rhs.0)
    }
}

/// Two linearly independent su(2) generators, in vector coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorPair {
    alpha: Vec3,
    beta: Vec3,
}

impl GeneratorPair {
    /// Rejects pairs with `|alpha x beta| <= INDEPENDENCE_TOL * |alpha||beta|`.
    /// Non-finite components fail the same gate.
    pub fn new(alpha: Vec3, beta: Vec3) -> Result<Self> {
        let cross_norm = alpha.cross(&beta).norm();
        // NaN components fail the gate too.
        let independent = cross_norm > INDEPENDENCE_TOL * alpha.norm() * beta.norm();
        if !independent || !cross_norm.is_finite() {
            return Err(Error::DependentGenerators { cross_norm });
        }
        Ok(GeneratorPair { alpha, beta })
    }

    pub fn alpha(&self) -> Vec3 {
        self.alpha
    }

    pub fn beta(&self) -> Vec3 {
        self.beta
    }

    /// `|alpha x beta|`; rotations preserve it, so it reappears as the
    /// determinant of the canonical mixing matrix.
    pub fn cross_norm(&self) -> f64 {
        self.alpha.cross(&self.beta).norm()
    }
}

/// A generator pair conjugated into the xy-plane.
///
/// `rotation` is the adjoint of `conjugator`; `alpha_c`/`beta_c` are the
/// rotated generators; `mix` holds their in-plane coordinates column-wise:
///
/// ```text
/// mix = [[a, c],    alpha_c = a*e_x + b*e_y
///        [b, d]]    beta_c  = c*e_x + d*e_y
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalFrame {
    pub conjugator: UnitaryGate,
    pub rotation: Rotation3,
    pub alpha_c: Vec3,
    pub beta_c: Vec3,
    pub mix: Matrix2<f64>,
}

/// The SO(3) image of `V` under the adjoint action: column `j` holds the
/// Pauli coordinates of `V M(e_j) V^dagger`.
///
/// A group homomorphism, and two-to-one: `V` and `-V` map to the same
/// rotation.
pub fn adjoint_rotation(v: &UnitaryGate) -> Rotation3 {
    let mut m = Matrix3::zeros();
    for (j, axis) in [Vec3::X, Vec3::Y, Vec3::Z].into_iter().enumerate() {
        let conj = v.matrix() * vec_to_matrix(axis).matrix() * v.matrix().adjoint();
        let col = pauli_components(&conj);
        m[(0, j)] = col.x;
        m[(1, j)] = col.y;
        m[(2, j)] = col.z;
    }
    Rotation3::new_unchecked(m)
}

/// One of the two SU(2) elements whose adjoint is `r`; the other is its
/// negation.
///
/// Uses maximum-diagonal quaternion extraction for stability, then fixes the
/// sign by making the first nonzero quaternion component positive.
pub fn lift_rotation(r: &Rotation3) -> UnitaryGate {
    let m = r.matrix();
    let tr = m[(0, 0)] + m[(1, 1)] + m[(2, 2)];
    // Candidates are 4*q_i^2; pick the largest to avoid a small divisor.
    let cand = [
        1.0 + tr,
        1.0 + m[(0, 0)] - m[(1, 1)] - m[(2, 2)],
        1.0 - m[(0, 0)] + m[(1, 1)] - m[(2, 2)],
        1.0 - m[(0, 0)] - m[(1, 1)] + m[(2, 2)],
    ];
    let best = (0..4).max_by(|&i, &j| cand[i].total_cmp(&cand[j])).unwrap();

    // Antisymmetric parts carry q0*q_k, symmetric parts q_i*q_j. The signs
    // follow the crate convention exp(t*M(n)) ~ rotation by -2t about n.
    let (w, x, y, z) = match best {
        0 => {
            let w = 0.5 * cand[0].max(0.0).sqrt();
            let d = 4.0 * w;
            (
                w,
                (m[(1, 2)] - m[(2, 1)]) / d,
                (m[(2, 0)] - m[(0, 2)]) / d,
                (m[(0, 1)] - m[(1, 0)]) / d,
            )
        }
        1 => {
            let x = 0.5 * cand[1].max(0.0).sqrt();
            let d = 4.0 * x;
            (
                (m[(1, 2)] - m[(2, 1)]) / d,
                x,
                (m[(0, 1)] + m[(1, 0)]) / d,
                (m[(0, 2)] + m[(2, 0)]) / d,
            )
        }
        2 => {
            let y = 0.5 * cand[2].max(0.0).sqrt();
            let d = 4.0 * y;
            (
                (m[(2, 0)] - m[(0, 2)]) / d,
                (m[(0, 1)] + m[(1, 0)]) / d,
                y,
                (m[(1, 2)] + m[(2, 1)]) / d,
            )
        }
        _ => {
            let z = 0.5 * cand[3].max(0.0).sqrt();
            let d = 4.0 * z;
            (
                (m[(0, 1)] - m[(1, 0)]) / d,
                (m[(0, 2)] + m[(2, 0)]) / d,
                (m[(1, 2)] + m[(2, 1)]) / d,
                z,
            )
        }
    };

    let mut q = [w, x, y, z];
    for component in q {
        if component.abs() > 1e-12 {
            if component < 0.0 {
                q = [-q[0], -q[1], -q[2], -q[3]];
            }
            break;
        }
    }
    UnitaryGate::from_quaternion(q[0], Vec3::new(q[1], q[2], q[3]))
}

/// Givens angles that carry the pair's unit normal to `e_z`: first a z-axis
/// rotation nulling the normal's y-component, then a y-axis rotation closing
/// the remaining polar angle.
fn givens_angles(pair: &GeneratorPair) -> (f64, f64) {
    let n = pair.alpha().cross(&pair.beta());
    let n = n * (1.0 / n.norm());
    let rho = n.x.hypot(n.y);
    let phi = if rho > 0.0 { n.y.atan2(n.x) } else { 0.0 };
    let theta = rho.atan2(n.z);
    (phi, theta)
}

fn z_givens(phi: f64) -> Matrix3<f64> {
    let (s, c) = phi.sin_cos();
    Matrix3::new(c, s, 0.0, -s, c, 0.0, 0.0, 0.0, 1.0)
}

fn y_givens(theta: f64) -> Matrix3<f64> {
    let (s, c) = theta.sin_cos();
    Matrix3::new(c, 0.0, -s, 0.0, 1.0, 0.0, s, 0.0, c)
}

/// Product of the two coordinate Givens rotations that zero the z-components
/// of both generators at once (their normal goes to `e_z`).
pub fn nulling_rotation(pair: &GeneratorPair) -> Rotation3 {
    let (phi, theta) = givens_angles(pair);
    Rotation3::new_unchecked(y_givens(theta) * z_givens(phi))
}

/// Builds the canonical frame of a pair: the nulling rotation, its SU(2)
/// lift, the rotated generators, and their in-plane mixing matrix.
///
/// The conjugator is composed directly from the two Givens half-angle
/// exponentials, so no general rotation-to-quaternion extraction runs on
/// this path; `adjoint_rotation(conjugator)` equals `rotation` regardless.
pub fn canonicalize(pair: &GeneratorPair) -> CanonicalFrame {
    let (phi, theta) = givens_angles(pair);
    let rotation = Rotation3::new_unchecked(y_givens(theta) * z_givens(phi));
    let conjugator = expm_su2(Vec3::new(0.0, theta / 2.0, 0.0))
        * expm_su2(Vec3::new(0.0, 0.0, phi / 2.0));
    let alpha_c = rotation.apply(pair.alpha());
    let beta_c = rotation.apply(pair.beta());
    let mix = Matrix2::new(alpha_c.x, beta_c.x, alpha_c.y, beta_c.y);
    CanonicalFrame {
        conjugator,
        rotation,
        alpha_c,
        beta_c,
        mix,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::{frobenius_distance, haar_random, matrix_to_vec, SkewMatrix};
    use std::f64::consts::FRAC_PI_4;

    fn rot_distance(a: &Rotation3, b: &Rotation3) -> f64 {
        (a.matrix() - b.matrix()).norm()
    }

    #[test]
    fn adjoint_of_identity_is_identity() {
        let r = adjoint_rotation(&UnitaryGate::identity());
        assert!(rot_distance(&r, &Rotation3::identity()) < 1e-15);
    }

    #[test]
    fn adjoint_of_minus_identity_is_identity() {
        let r = adjoint_rotation(&-UnitaryGate::identity());
        assert!(rot_distance(&r, &Rotation3::identity()) < 1e-15);
    }

    #[test]
    fn adjoint_of_quarter_z_turn() {
        // exp(M(0,0,pi/4)) rotates by -pi/2 about z: e_x -> -e_y, e_y -> e_x.
        let v = expm_su2(Vec3::new(0.0, 0.0, FRAC_PI_4));
        let r = adjoint_rotation(&v);
        let expected =
            Matrix3::new(0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 1.0);
        assert!((r.matrix() - expected).norm() < 1e-15);

        let image = r.apply(Vec3::X);
        assert!((image - -Vec3::Y).norm() < 1e-15);
    }

    #[test]
    fn adjoint_lands_in_so3() {
        for seed in 0..32 {
            let r = adjoint_rotation(&haar_random(seed));
            assert!(r.orthogonality_residual() < 1e-12, "seed {seed}");
            assert!(r.det_residual() < 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn lift_of_identity_is_plus_or_minus_identity() {
        let v = lift_rotation(&Rotation3::identity());
        let id = UnitaryGate::identity();
        let d = frobenius_distance(&v, &id).min(frobenius_distance(&v, &-id));
        assert!(d < 1e-15);
    }

    #[test]
    fn lift_round_trips_through_adjoint() {
        let w = expm_su2(Vec3::new(0.0, 0.0, FRAC_PI_4));
        let r = adjoint_rotation(&w);
        let v = lift_rotation(&r);
        let d = frobenius_distance(&v, &w).min(frobenius_distance(&v, &-w));
        assert!(d < 1e-12, "lift missed both covers by {d:.3e}");
        assert!(rot_distance(&adjoint_rotation(&v), &r) < 1e-12);
    }

    #[test]
    fn lift_rejects_reflections() {
        let m = Matrix3::new(1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0);
        assert!(matches!(
            Rotation3::new(m),
            Err(Error::NotARotation { .. })
        ));
    }

    #[test]
    fn dependent_pair_is_rejected() {
        let err = GeneratorPair::new(Vec3::new(2.0, 0.0, 0.0), Vec3::new(4.0, 0.0, 0.0));
        assert!(matches!(err, Err(Error::DependentGenerators { .. })));
    }

    #[test]
    fn nulling_is_identity_when_normal_is_already_e_z() {
        let pair = GeneratorPair::new(Vec3::X, Vec3::Y).unwrap();
        let r = nulling_rotation(&pair);
        assert!(rot_distance(&r, &Rotation3::identity()) < 1e-15);
    }

    #[test]
    fn nulling_for_normal_e_x() {
        // alpha = e_y, beta = e_z: normal is e_x; the two-Givens construction
        // leaves alpha fixed and sends beta to -e_x.
        let pair = GeneratorPair::new(Vec3::Y, Vec3::Z).unwrap();
        let r = nulling_rotation(&pair);
        assert!((r.apply(Vec3::Y) - Vec3::Y).norm() < 1e-15);
        assert!((r.apply(Vec3::Z) - -Vec3::X).norm() < 1e-15);
        assert!(r.apply(pair.alpha()).z.abs() < 1e-15);
        assert!(r.apply(pair.beta()).z.abs() < 1e-15);
    }

    #[test]
    fn nulling_handles_downward_normal() {
        // alpha = e_y, beta = e_x gives normal -e_z; a half-turn about y fixes it.
        let pair = GeneratorPair::new(Vec3::Y, Vec3::X).unwrap();
        let r = nulling_rotation(&pair);
        assert!(r.apply(pair.alpha()).z.abs() < 1e-15);
        assert!(r.apply(pair.beta()).z.abs() < 1e-15);
        assert!(r.orthogonality_residual() < 1e-15);
    }

    #[test]
    fn canonicalize_orthonormal_pair() {
        let pair = GeneratorPair::new(Vec3::X, Vec3::Y).unwrap();
        let frame = canonicalize(&pair);
        let id = UnitaryGate::identity();
        let d = frobenius_distance(&frame.conjugator, &id)
            .min(frobenius_distance(&frame.conjugator, &-id));
        assert!(d < 1e-15);
        assert!((frame.mix - Matrix2::identity()).norm() < 1e-15);
    }

    #[test]
    fn canonicalize_yz_pair_mixing() {
        let pair = GeneratorPair::new(Vec3::Y, Vec3::Z).unwrap();
        let frame = canonicalize(&pair);
        let expected = Matrix2::new(0.0, -1.0, 1.0, 0.0);
        assert!((frame.mix - expected).norm() < 1e-15);
    }

    #[test]
    fn canonicalize_tilted_pair_invariants() {
        let pair = GeneratorPair::new(Vec3::new(1.0, 0.0, 1.0), Vec3::new(0.0, 1.0, 0.0)).unwrap();
        let frame = canonicalize(&pair);
        assert!(frame.alpha_c.z.abs() <= 1e-12 * pair.alpha().norm());
        assert!(frame.beta_c.z.abs() <= 1e-12 * pair.beta().norm());
        let det = frame.mix.determinant();
        assert!((det.abs() - 2.0_f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn matrix_and_vector_pictures_agree() {
        let pair = GeneratorPair::new(Vec3::new(0.3, -0.4, 0.9), Vec3::new(-1.1, 0.2, 0.5)).unwrap();
        let frame = canonicalize(&pair);
        let conj = frame.conjugator.matrix() * vec_to_matrix(pair.alpha()).matrix()
            * frame.conjugator.matrix().adjoint();
        let from_matrices = matrix_to_vec(&SkewMatrix::new(conj).unwrap());
        assert!((from_matrices - frame.alpha_c).norm() < 1e-10);
    }
}
