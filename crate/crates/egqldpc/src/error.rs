//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field order {order} exceeds the table cap of {cap}")]
    FieldTooLarge { order: u64, cap: u64 },

    #[error("modulus is not a monic degree-{expected} polynomial")]
    BadModulus { expected: u32 },

    #[error("modulus is not primitive: x does not generate the multiplicative group")]
    NotPrimitive,

    #[error("no primitive polynomial found for p={p}, t={t}")]
    NoPrimitivePolynomial { p: u64, t: u32 },

    #[error("element rep {rep} out of range for field of order {order}")]
    ElementOutOfRange { rep: u64, order: u64 },

    #[error("operands belong to different field tables")]
    MixedFields,

    #[error("cannot invert zero")]
    ZeroInverse,

    #[error("cannot take the discrete log of zero")]
    LogOfZero,

    #[error("{q} is not a subfield order of the field of order {order}")]
    NotSubfieldOrder { q: u64, order: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("the two points coincide; a line needs two distinct points")]
    CoincidentPoints,

    #[error("line passes through the origin and has no incidence vector")]
    LineThroughOrigin,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("class index {ell} out of range; geometry has {available} cyclic classes")]
    ClassOutOfRange { ell: usize, available: usize },

    #[error("row weights are not uniform: row {row} has weight {weight}, expected {expected}")]
    NonUniformRows {
        row: usize,
        weight: usize,
        expected: usize,
    },

    #[error("matrix is not self-orthogonal: rows {0} and {1} have odd overlap")]
    NotSelfOrthogonal(usize, usize),

    #[error("channel probability {p} out of range for {kind} (must be in [0, {max}))")]
    ChannelOutOfRange { p: f64, kind: String, max: f64 },

    #[error("alist parse error at line {line}: {msg}")]
    AlistParse { line: usize, msg: String },

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
