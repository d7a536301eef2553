//! Exact quadratic-field arithmetic, continued fractions of quadratic
//! irrationals, and the matrix data attached to an expansion period.

mod cf;
mod gamma;
mod mulind;
mod quad;

pub use cf::{parse_cf, CfExpansion, ConvergentIter};
pub use gamma::{ostrowski_int_value, pumping_constant, pumping_ratio, GammaData, PumpingData, ShiftConstants};
pub use mulind::{mult_independent_quadratic, same_field, MultIndependence};
pub use quad::{parse_quad, quad, QuadExt};

use alloc::string::String;
use core::fmt;

/// Errors from quadratic-field arithmetic and continued-fraction expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadError {
    /// Operands from Q(√d₁) and Q(√d₂) with d₁ ≠ d₂.
    FieldMismatch(u64, u64),
    DivisionByZero,
    /// Radicand not reducible to a squarefree integer ≥ 2.
    BadRadicand(u64),
    /// Continued-fraction expansion requested for a rational.
    RationalInput,
    /// Expansion or representation requested for a negative value.
    NegativeInput,
    /// A partial quotient exceeded the machine range.
    QuotientTooLarge,
    /// Text input rejected at the given byte offset.
    Parse(usize, String),
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::FieldMismatch(d1, d2) => {
                write!(f, "elements of Q(√{d1}) and Q(√{d2}) cannot be combined")
            }
            QuadError::DivisionByZero => write!(f, "division by zero"),
            QuadError::BadRadicand(d) => write!(f, "radicand {d} has no squarefree part ≥ 2"),
            QuadError::RationalInput => write!(f, "value is rational; expansion is finite"),
            QuadError::NegativeInput => write!(f, "value must be nonnegative"),
            QuadError::QuotientTooLarge => write!(f, "partial quotient exceeds machine range"),
            QuadError::Parse(pos, msg) => write!(f, "parse error at byte {pos}: {msg}"),
        }
    }
}

impl core::error::Error for QuadError {}
