//! Fixed-point sample formats.
//!
//! The constellation path uses 12-bit 2's-complement Q2.10 (value =
//! raw / 2^10). Transform stage boundaries use 16-bit words with a
//! configurable binary point, modeling the word slices taken from the
//! hardware FFT output bus.

use crate::error::{Error, Result};
use crate::Scalar;
use num_complex::Complex;

pub const Q2_10_FRAC_BITS: u32 = 10;
pub const Q2_10_MIN: i16 = -2048;
pub const Q2_10_MAX: i16 = 2047;

/// 12-bit Q2.10 complex sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedSample {
    pub re_raw: i16,
    pub im_raw: i16,
}

impl FixedSample {
    pub fn dequantize<T: Scalar>(&self) -> Complex<T> {
        let scale = T::from(1 << Q2_10_FRAC_BITS).unwrap();
        Complex::new(
            T::from(self.re_raw).unwrap() / scale,
            T::from(self.im_raw).unwrap() / scale,
        )
    }
}

/// 16-bit stage-boundary word with `frac_bits` fractional bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StageWord {
    pub re_raw: i16,
    pub im_raw: i16,
    pub frac_bits: u32,
}

impl StageWord {
    pub fn dequantize<T: Scalar>(&self) -> Complex<T> {
        let scale = T::from(1u32 << self.frac_bits).unwrap();
        Complex::new(
            T::from(self.re_raw).unwrap() / scale,
            T::from(self.im_raw).unwrap() / scale,
        )
    }
}

fn round_saturate<T: Scalar>(v: T, frac_bits: u32, min: i32, max: i32) -> Result<i16> {
    if !v.is_finite() {
        return Err(Error::NonFinite);
    }
    let scaled = v * T::from(1u32 << frac_bits).unwrap();
    // Float::round is round-half-away-from-zero
    let rounded = scaled.round();
    let raw = match rounded.to_i64() {
        Some(r) => r.clamp(min as i64, max as i64),
        None => {
            if v > T::zero() {
                max as i64
            } else {
                min as i64
            }
        }
    };
    Ok(raw as i16)
}

/// Quantize one real value to a Q2.10 raw code. Saturates, never wraps.
pub fn quantize_q2_10<T: Scalar>(v: T) -> Result<i16> {
    round_saturate(v, Q2_10_FRAC_BITS, Q2_10_MIN as i32, Q2_10_MAX as i32)
}

/// Raw Q2.10 code back to a real value.
pub fn dequantize_q2_10<T: Scalar>(raw: i16) -> T {
    T::from(raw).unwrap() / T::from(1 << Q2_10_FRAC_BITS).unwrap()
}

/// Quantize a complex value componentwise to Q2.10.
pub fn quantize_complex_q2_10<T: Scalar>(v: Complex<T>) -> Result<FixedSample> {
    Ok(FixedSample {
        re_raw: quantize_q2_10(v.re)?,
        im_raw: quantize_q2_10(v.im)?,
    })
}

/// Quantize one complex value to a 16-bit stage word.
pub fn quantize_stage_word<T: Scalar>(v: Complex<T>, frac_bits: u32) -> Result<StageWord> {
    if frac_bits > 15 {
        return Err(Error::InvalidFracBits(frac_bits));
    }
    Ok(StageWord {
        re_raw: round_saturate(v.re, frac_bits, i16::MIN as i32, i16::MAX as i32)?,
        im_raw: round_saturate(v.im, frac_bits, i16::MIN as i32, i16::MAX as i32)?,
        frac_bits,
    })
}
