use thiserror::Error;

/// Errors surfaced by the library API.
///
/// Contract violations that indicate a caller bug (mismatched variable
/// counts in ring operations, out-of-range wedge indices) panic instead;
/// everything a CLI user or verifier can trigger goes through this enum.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid semigroup: gcd(m0, d) = {gcd} != 1 for m0 = {m0}, d = {d}")]
    InvalidSemigroup { m0: i64, d: i64, gcd: i64 },

    #[error("out of hypothesis: {0}")]
    OutOfHypothesis(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("zero polynomial has no weighted degree")]
    ZeroPolynomialDegree,

    #[error("polynomial is not weighted-homogeneous: term degrees {0} and {1} differ")]
    NonHomogeneous(i64, i64),

    #[error("invalid prime {0}: need an odd prime > 2")]
    InvalidPrime(u64),

    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },

    #[error("construction bug at position {s}, basis element {basis}: {msg}")]
    ConstructionBug { s: usize, basis: String, msg: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
