//! Problem-file parsing and validation.
//!
//! A problem is a JSON object with a `target` SU(2) matrix (complex entries
//! as `[re, im]` pairs), two generators (each either a 3-vector or a 2x2
//! su(2) matrix, told apart by shape), the coefficient bound `bound_c`, and
//! an optional `tolerance` (default 1e-9). `target` and `bound_c` may be
//! omitted for commands that only need the generator pair.

use std::path::Path;

use serde::Deserialize;
use su2_factor::{matrix_to_vec, CMatrix2, Complex, GeneratorPair, SkewMatrix, UnitaryGate, Vec3};

use crate::exit::Failure;

/// 2x2 complex matrix as nested `[re, im]` pairs, row-major.
pub type MatrixRepr = [[[f64; 2]; 2]; 2];

pub fn matrix_from_repr(repr: &MatrixRepr) -> CMatrix2 {
    CMatrix2::new(
        Complex::new(repr[0][0][0], repr[0][0][1]),
        Complex::new(repr[0][1][0], repr[0][1][1]),
        Complex::new(repr[1][0][0], repr[1][0][1]),
        Complex::new(repr[1][1][0], repr[1][1][1]),
    )
}

pub fn repr_from_matrix(m: &CMatrix2) -> MatrixRepr {
    [
        [[m[(0, 0)].re, m[(0, 0)].im], [m[(0, 1)].re, m[(0, 1)].im]],
        [[m[(1, 0)].re, m[(1, 0)].im], [m[(1, 1)].re, m[(1, 1)].im]],
    ]
}

/// A generator is written either as Pauli coordinates or as a matrix.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GeneratorRepr {
    Vector([f64; 3]),
    Matrix(MatrixRepr),
}

impl GeneratorRepr {
    fn to_vec3(&self, label: &str) -> Result<Vec3, Failure> {
        match self {
            GeneratorRepr::Vector([x, y, z]) => {
                let v = Vec3::new(*x, *y, *z);
                if !v.is_finite() {
                    return Err(Failure::usage(format!("{label}: components must be finite")));
                }
                Ok(v)
            }
            GeneratorRepr::Matrix(repr) => {
                let skew = SkewMatrix::new(matrix_from_repr(repr))
                    .map_err(|e| Failure::usage(format!("{label}: {e}")))?;
                Ok(matrix_to_vec(&skew))
            }
        }
    }
}

fn default_tolerance() -> f64 {
    1e-9
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub target: Option<MatrixRepr>,
    pub generator_a: GeneratorRepr,
    pub generator_b: GeneratorRepr,
    #[serde(default)]
    pub bound_c: Option<f64>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let problem: ProblemFile = serde_json::from_str(&text)
            .map_err(|e| Failure::usage(format!("cannot parse {}: {e}", path.display())))?;
        let tolerance_valid = problem.tolerance > 0.0; // NaN fails
        if !tolerance_valid {
            return Err(Failure::usage(format!(
                "tolerance must be positive, got {}",
                problem.tolerance
            )));
        }
        Ok(problem)
    }

    /// The generator pair; linear dependence is its own exit code.
    pub fn generator_pair(&self) -> Result<GeneratorPair, Failure> {
        let alpha = self.generator_a.to_vec3("generator_a")?;
        let beta = self.generator_b.to_vec3("generator_b")?;
        GeneratorPair::new(alpha, beta).map_err(Failure::from_library)
    }

    /// The target gate; required and validated at the SU(2) gate.
    pub fn target_gate(&self) -> Result<UnitaryGate, Failure> {
        let repr = self
            .target
            .as_ref()
            .ok_or_else(|| Failure::usage("problem file has no target matrix".to_string()))?;
        UnitaryGate::from_matrix(matrix_from_repr(repr))
            .map_err(|e| Failure::usage(format!("target: {e}")))
    }

    /// The bound; required and positive.
    pub fn bound(&self) -> Result<f64, Failure> {
        let c = self
            .bound_c
            .ok_or_else(|| Failure::usage("problem file has no bound_c".to_string()))?;
        let positive = c > 0.0; // NaN fails
        if !positive {
            return Err(Failure::usage(format!("bound_c must be positive, got {c}")));
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_vector_and_matrix_generators() {
        let text = r#"{
            "target": [[[1,0],[0,0]],[[0,0],[1,0]]],
            "generator_a": [1, 0, 0],
            "generator_b": [[[0,0],[1,0]],[[-1,0],[0,0]]],
            "bound_c": 0.5
        }"#;
        let problem: ProblemFile = serde_json::from_str(text).unwrap();
        let pair = problem.generator_pair().unwrap();
        assert_eq!(pair.alpha(), Vec3::X);
        assert_eq!(pair.beta(), Vec3::Y);
        assert_eq!(problem.tolerance, 1e-9);
        assert_eq!(problem.bound().unwrap(), 0.5);
        problem.target_gate().unwrap();
    }

    #[test]
    fn rejects_non_unitary_target() {
        let text = r#"{
            "target": [[[2,0],[0,0]],[[0,0],[2,0]]],
            "generator_a": [1, 0, 0],
            "generator_b": [0, 1, 0],
            "bound_c": 0.5
        }"#;
        let problem: ProblemFile = serde_json::from_str(text).unwrap();
        let failure = problem.target_gate().unwrap_err();
        assert_eq!(failure.code, 2);
    }

    #[test]
    fn dependent_generators_use_their_own_code() {
        let text = r#"{
            "generator_a": [1, 0, 0],
            "generator_b": [2, 0, 0]
        }"#;
        let problem: ProblemFile = serde_json::from_str(text).unwrap();
        let failure = problem.generator_pair().unwrap_err();
        assert_eq!(failure.code, 3);
    }
}
