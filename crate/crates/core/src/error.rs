//! Error type shared by every module in the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid is not critically sampled: T*delta_f = {product}, expected 1")]
    NonCriticalSampling { product: f64 },
    #[error("grid dimensions must be >= 1 (got n={n}, m={m})")]
    InvalidDimension { n: usize, m: usize },
    #[error("non-finite value cannot be quantized")]
    NonFinite,
    #[error("LFSR register is all-zero (absorbing state)")]
    AllZeroState,
    #[error("unsupported modulation order {0} (expected 4, 8, 16 or 32)")]
    UnsupportedOrder(usize),
    #[error("input is empty")]
    EmptyInput,
    #[error("lag {lag} out of range for sequence of length {len}")]
    LagOutOfRange { lag: usize, len: usize },
    #[error("length mismatch: got {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("dimension mismatch: got {got_rows}x{got_cols}, expected {rows}x{cols}")]
    DimensionMismatch {
        got_rows: usize,
        got_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("unsupported transform length {0} (power of two required)")]
    UnsupportedLength(usize),
    #[error("frame is in the {got:?} domain, expected {expected:?}")]
    DomainMismatch {
        got: crate::grid::Domain,
        expected: crate::grid::Domain,
    },
    #[error("window has a zero element at ({row},{col}); cannot invert")]
    WindowSingular { row: usize, col: usize },
    #[error("channel tap delay {delay} out of range for frame of {frame_len} samples")]
    DelayOutOfRange { delay: usize, frame_len: usize },
    #[error("signal is empty")]
    EmptySignal,
    #[error("latency must be positive (got {0} s)")]
    NonPositiveLatency(f64),
    #[error("fractional bit count {0} out of range [0, 15]")]
    InvalidFracBits(u32),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
