use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Vertex counts are limited to `1..=MAX_VERTICES`.
    VertexCount(usize),
    VertexOutOfRange {
        vertex: usize,
        n: usize,
    },
    /// Two operands were required to live on the same vertex set.
    VertexCountMismatch {
        left: usize,
        right: usize,
    },
    InvalidWheel(&'static str),
    /// Only primes `2 <= q <= 13` are supported.
    UnsupportedModulus(u32),
    ModulusMismatch {
        expected: u8,
        found: u8,
    },
    /// The operation is only defined over F_2.
    RequiresBinaryField(u8),
    WeightingLength {
        expected: usize,
        found: usize,
    },
    Parse {
        position: usize,
        message: String,
    },
    MalformedCotree(&'static str),
    /// A switching set may not contain the distinguished vertex `n + 1`.
    SwitchContainsBase(usize),
    /// A switching-class representative must leave its last vertex isolated.
    BaseVertexNotIsolated,
    Budget {
        points: u128,
        limit: u128,
    },
    Overflow,
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VertexCount(n) => write!(
                f,
                "vertex count {n} outside supported range 1..={}",
                crate::graphs::MAX_VERTICES
            ),
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} is not in 1..={n}")
            }
            Error::VertexCountMismatch { left, right } => {
                write!(
                    f,
                    "graphs on {left} and {right} vertices cannot be combined"
                )
            }
            Error::InvalidWheel(why) => write!(f, "invalid wheel: {why}"),
            Error::UnsupportedModulus(q) => {
                write!(f, "modulus {q} is not a prime in 2..=13")
            }
            Error::ModulusMismatch { expected, found } => {
                write!(f, "expected elements of F_{expected}, found F_{found}")
            }
            Error::RequiresBinaryField(q) => {
                write!(f, "operation is only defined over F_2, got F_{q}")
            }
            Error::WeightingLength { expected, found } => {
                write!(f, "expected {expected} edge values, found {found}")
            }
            Error::Parse { position, message } => {
                write!(f, "parse error at position {position}: {message}")
            }
            Error::MalformedCotree(why) => write!(f, "malformed cotree: {why}"),
            Error::SwitchContainsBase(v) => {
                write!(f, "switching set contains the distinguished vertex {v}")
            }
            Error::BaseVertexNotIsolated => {
                f.write_str("class representative must have its last vertex isolated")
            }
            Error::Budget { points, limit } => {
                write!(f, "{points} points exceeds the budget of {limit} points")
            }
            Error::Overflow => f.write_str("arithmetic overflow"),
        }
    }
}

impl core::error::Error for Error {}
