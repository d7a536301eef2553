//! Extended ω-words, numeration systems over them, and conversion between
//! the Ostrowski system of a quadratic irrational and the power systems of
//! the units of its field.

mod convert;
mod system;
mod word;

pub use convert::{convert_phi, regroup_group, regroup_spread};
pub use system::{NumSystem, OstrowskiSystem, PowerSystem};
pub use word::{parse_word, EpWord};

pub(crate) use word::cmp_streams;

use alloc::string::String;
use core::fmt;

use crate::quadfield::QuadError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EpError {
    /// Remainder orbit exceeded the configured cap.
    OrbitCap(usize),
    NegativeValue,
    /// Power systems require a Pisot base.
    NotPisot,
    DigitBoundTooLarge,
    /// Operation requires normalized input words.
    NotNormalized,
    /// Conversion target is not a unit > 1 of the field.
    NotAUnit,
    /// No exponent relation γ^k = Λ^ℓ found within the cap.
    UnitMatchCap(u32),
    Quad(QuadError),
    Parse(usize, String),
}

impl fmt::Display for EpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpError::OrbitCap(cap) => write!(f, "remainder orbit exceeded the cap of {cap}"),
            EpError::NegativeValue => write!(f, "representations are defined for x ≥ 0"),
            EpError::NotPisot => write!(f, "power numeration systems require a Pisot base > 1"),
            EpError::DigitBoundTooLarge => write!(f, "digit bound exceeds machine range"),
            EpError::NotNormalized => write!(f, "input word is not normalized for this system"),
            EpError::NotAUnit => write!(f, "base must be a unit > 1 of the field"),
            EpError::UnitMatchCap(cap) => {
                write!(f, "no unit-group exponent relation found with exponents ≤ {cap}")
            }
            EpError::Quad(e) => write!(f, "{e}"),
            EpError::Parse(pos, msg) => write!(f, "parse error at byte {pos}: {msg}"),
        }
    }
}

impl core::error::Error for EpError {}

impl From<QuadError> for EpError {
    fn from(e: QuadError) -> Self {
        EpError::Quad(e)
    }
}
