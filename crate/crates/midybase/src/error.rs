use thiserror::Error;

/// Library-wide error type.
///
/// Violated theorem-level invariants are not representable here: those
/// indicate implementation bugs and abort via `panic!` instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// The inputs are valid but outside the supported computational range.
    #[error("out of supported range: {0}")]
    OutOfRange(String),
    /// An expansion would need more digits than the configured cap.
    #[error("expansion needs {needed} digits, more than the cap of {cap}")]
    PeriodTooLong { needed: u64, cap: u64 },
    /// Malformed textual input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
