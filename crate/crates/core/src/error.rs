use thiserror::Error;

/// Errors raised when an operation's precondition is violated.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("slope {p}/{q} is not primitive: gcd(|p|, |q|) must be 1 and (p, q) != (0, 0)")]
    NonPrimitive { p: String, q: String },

    #[error("cusp shape is degenerate: translations are linearly dependent over R (area {area:e})")]
    DegenerateCusp { area: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("{name} = {value} is outside its domain: {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("n = {n} is outside the supported range: {expected}")]
    IndexRange { n: u64, expected: &'static str },

    #[error("cannot parse slope {0:?}: expected \"p/q\"")]
    SlopeSyntax(String),

    #[error("invalid cusp shape: {0}")]
    ShapeFormat(String),

    #[error("unknown built-in cusp shape {0:?}")]
    UnknownShape(String),

    #[error("cannot write output: {0}")]
    Output(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        expected,
    }
}
