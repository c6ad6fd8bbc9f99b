//! 16-bit Fibonacci LFSR bit source.
//!
//! Feedback polynomial x^16 + x^14 + x^13 + x^11 + 1 (taps 16, 14, 13, 11),
//! a maximal-length set: the state sequence from any nonzero seed walks all
//! 65535 nonzero states before repeating. The output bit is the bit shifted
//! out of the register.

use crate::error::{Error, Result};
use crate::Scalar;

/// Number of QAM symbols per frame the bit budgets are sized for.
pub const SYMBOLS_PER_FRAME: usize = 4096;

pub const LFSR_PERIOD: usize = 65535;

/// 16-bit LFSR state. The all-zero register is rejected at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LfsrState {
    register: u16,
}

impl LfsrState {
    pub fn new(register: u16) -> Result<Self> {
        if register == 0 {
            return Err(Error::AllZeroState);
        }
        Ok(LfsrState { register })
    }

    /// Paper default: register initialized to all ones.
    pub fn all_ones() -> Self {
        LfsrState { register: 0xFFFF }
    }

    pub fn register(&self) -> u16 {
        self.register
    }
}

/// One LFSR step: returns the output bit and the successor state.
///
/// Taps {16, 14, 13, 11} counted 1-indexed from the output end; the
/// feedback bit enters at the far end as the register shifts by one.
pub fn lfsr_next(state: LfsrState) -> (u8, LfsrState) {
    let reg = state.register;
    let out = (reg & 1) as u8;
    let feedback = (reg ^ (reg >> 2) ^ (reg >> 3) ^ (reg >> 5)) & 1;
    let next = (reg >> 1) | (feedback << 15);
    (out, LfsrState { register: next })
}

/// Ordered bit sequence with its generation provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitStream {
    pub bits: Vec<u8>,
    pub seed: Option<u16>,
}

impl BitStream {
    pub fn from_bits(bits: Vec<u8>) -> Self {
        BitStream { bits, seed: None }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// Bit budget for one frame: `4096 * log2(order)`.
pub fn bit_budget(order: usize) -> Result<usize> {
    let k = bits_per_symbol(order)?;
    Ok(SYMBOLS_PER_FRAME * k)
}

pub fn bits_per_symbol(order: usize) -> Result<usize> {
    match order {
        4 => Ok(2),
        8 => Ok(3),
        16 => Ok(4),
        32 => Ok(5),
        other => Err(Error::UnsupportedOrder(other)),
    }
}

/// Generate the per-order bit budget from a nonzero 16-bit seed.
pub fn generate_bits(order: usize, seed: u16) -> Result<BitStream> {
    let count = bit_budget(order)?;
    let mut state = LfsrState::new(seed)?;
    let mut bits = Vec::with_capacity(count);
    for _ in 0..count {
        let (bit, next) = lfsr_next(state);
        bits.push(bit);
        state = next;
    }
    Ok(BitStream {
        bits,
        seed: Some(seed),
    })
}

/// Circular normalized autocorrelation of a bit sequence mapped to +/-1.
///
/// Returns `rho[k]` for `k = 0..=max_lag`. The correlation sums are exact
/// integers; only the final normalization divides.
pub fn autocorrelation<T: Scalar>(bits: &BitStream, max_lag: usize) -> Result<Vec<T>> {
    let len = bits.len();
    if len == 0 {
        return Err(Error::EmptyInput);
    }
    if max_lag + 1 > len {
        return Err(Error::LagOutOfRange { lag: max_lag, len });
    }
    (0..=max_lag)
        .map(|k| autocorrelation_at(bits, k))
        .collect()
}

/// Single-lag circular autocorrelation (same normalization as above).
pub fn autocorrelation_at<T: Scalar>(bits: &BitStream, lag: usize) -> Result<T> {
    let len = bits.len();
    if len == 0 {
        return Err(Error::EmptyInput);
    }
    if lag >= len {
        return Err(Error::LagOutOfRange { lag, len });
    }
    let mut sum: i64 = 0;
    for i in 0..len {
        let a = bits.bits[i] as i64 * 2 - 1;
        let b = bits.bits[(i + lag) % len] as i64 * 2 - 1;
        sum += a * b;
    }
    Ok(T::from(sum).unwrap() / T::from(len).unwrap())
}
