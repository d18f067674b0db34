use thiserror::Error;

/// Errors produced by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {text:?} as an exact rational: {reason}")]
    ParseRational { text: String, reason: String },

    #[error("coupling index {x} lies outside the table domain [{lo}, {hi}]")]
    CouplingOutOfRange { x: i64, lo: i64, hi: i64 },

    #[error("profile value list must not be empty")]
    EmptyProfile,

    #[error("invalid interval [{m}, {n}]: n >= m-1 required")]
    InvalidInterval { m: i64, n: i64 },

    #[error("interval [{m}, {n}] is not of the symmetric form [-n, n]")]
    AsymmetricInterval { m: i64, n: i64 },

    #[error("spin count {got} does not match interval length {expected}")]
    SpinCountMismatch { expected: usize, got: usize },

    #[error("site {x} is outside the configuration interval [{m}, {n}]")]
    SiteOutOfRange { x: i64, m: i64, n: i64 },

    #[error("profile violates the mirror symmetry I_n = I_(-n+1) at n = {n}")]
    AsymmetricProfile { n: i64 },

    #[error("enumeration over {sites} sites exceeds the cap of {cap}")]
    EnumerationCapExceeded { sites: usize, cap: usize },

    #[error("count r = {r} exceeds the window length {len}")]
    CountOutOfRange { r: usize, len: usize },

    #[error("index out of range: {0}")]
    IndexRange(String),

    #[error("inverse temperature must be positive")]
    NonPositiveBeta,

    #[error("tau must be positive")]
    NonPositiveTau,

    #[error("exact evaluation at tau requires integer energies; found {energy}")]
    NonIntegerEnergy { energy: String },

    #[error("crystal table inconsistency at (len {len}, r {r}): {detail}")]
    InconsistentTable { len: usize, r: usize, detail: String },

    #[error("division by s leaves a nonzero remainder: {remainder}")]
    InexactDivision { remainder: String },

    #[error("window is empty: {0}")]
    EmptyWindow(String),
}
