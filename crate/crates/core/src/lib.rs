//! Factorization of SU(2) matrices into bounded two-generator pulse products.
//!
//! Given any target `S` in SU(2) and any two *linearly independent* elements
//! `A`, `B` of su(2) -- no orthogonality required -- this crate produces a
//! finite sequence of coefficient pairs `(a_k, b_k)` with
//!
//! ```text
//! S = prod_{k=1}^{Q} exp(a_k A + b_k B)
//! ```
//!
//! subject to two per-factor conditions: every `a_k` is strictly positive,
//! and every `|b_k|` stays within a caller-prescribed bound `C`. Read as
//! control pulses, the first coefficients are positive areas and the second
//! stay inside an a-priori amplitude budget.
//!
//! The route runs through a canonical frame: a constructively built
//! conjugator rotates both generators into the span of `i sigma_x` and
//! `i sigma_y` (their common normal goes to `e_z` under the adjoint action,
//! via two coordinate Givens rotations), the conjugated target is
//! Euler-decomposed along a well-conditioned in-plane axis pair, and the
//! resulting coefficients transfer back unchanged because the conjugations
//! telescope.
//!
//! Modules:
//!
//! * [`su2`] -- the R^3 <-> su(2) identification, closed-form exponentials,
//!   metrics, Haar sampling. Fixes the Pauli conventions for everything else.
//! * [`canonical`] -- adjoint rotations, SU(2) lifts, the Givens-built
//!   nulling rotation, and the canonical frame.
//! * [`factor`] -- the factorization pipeline and its verifier.
//! * [`selftest`] -- deterministic property suites behind the CLI
//!   `selftest` subcommand.

pub mod canonical;
pub mod error;
pub mod factor;
pub mod selftest;
pub mod su2;

pub use canonical::{
    adjoint_rotation, canonicalize, lift_rotation, nulling_rotation, CanonicalFrame,
    GeneratorPair, Rotation3, INDEPENDENCE_TOL, ROTATION_TOL,
};
pub use error::{Error, Result};
pub use factor::{
    choose_frame_angle, enforce_positivity, euler_inplane, factorize, merge_adjacent,
    solve_coefficients, split_for_bound, verify, DecompositionReport, Factor, FactorSequence,
};
pub use su2::{
    expm_su2, frobenius_distance, haar_random, haar_random_with, matrix_to_vec, trace_inner,
    vec_to_matrix, CMatrix2, SkewMatrix, UnitaryGate, Vec3, ALGEBRA_TOL, UNITARY_TOL,
};

pub use nalgebra::{Complex, Matrix2, Matrix3};
