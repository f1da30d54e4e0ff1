//! Exit-code taxonomy, fixed so scripts can tell user error from
//! mathematical failure:
//!
//! * 0 -- success
//! * 1 -- selftest property failure
//! * 2 -- parse or validation failure (including I/O)
//! * 3 -- linearly dependent generators
//! * 4 -- mathematical failure: residual over tolerance, violated factor
//!   conditions, or an unreachable frame

use su2_factor::Error;

pub const EXIT_PROPERTY_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DEPENDENT: u8 = 3;
pub const EXIT_MATH: u8 = 4;

/// A command failure carrying its exit code and a one-line reason.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: String) -> Self {
        Failure {
            code: EXIT_USAGE,
            message,
        }
    }

    pub fn math(message: String) -> Self {
        Failure {
            code: EXIT_MATH,
            message,
        }
    }

    pub fn from_library(err: Error) -> Self {
        let code = match err {
            Error::DependentGenerators { .. } => EXIT_DEPENDENT,
            Error::NotInAlgebra { .. } | Error::NotUnitary { .. } | Error::InvalidBound { .. } => {
                EXIT_USAGE
            }
            Error::NotARotation { .. }
            | Error::SingularMixing { .. }
            | Error::DegenerateDirection { .. }
            | Error::NoViableFrame
            | Error::VerificationFailed { .. } => EXIT_MATH,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}
