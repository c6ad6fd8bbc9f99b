//! Software model of an OTFS baseband transceiver.
//!
//! The signal chain is PRBS source -> QAM mapper -> ISFFT -> Heisenberg
//! transform -> (channel) -> Wigner transform -> SFFT -> QAM demapper, with
//! a floating-point reference path and a quantized fixed-point path that
//! mirrors the hardware dataflow (stage-boundary word slicing, BRAM-style
//! streaming transpose, column-serial FFT feeding).
//!
//! All DSP math is generic over the scalar type through [`Scalar`]; the
//! `*64` aliases at the crate root pin the default `f64` instantiations.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

pub mod channel;
pub mod error;
pub mod fixed;
pub mod grid;
pub mod io;
pub mod modem;
pub mod prbs;
pub mod qam;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};

/// Scalar type the DSP chain is generic over. Implemented for `f32` and `f64`.
pub trait Scalar:
    Float + FloatConst + NumAssign + FromPrimitive + ToPrimitive + std::fmt::Debug + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + NumAssign
        + FromPrimitive
        + ToPrimitive
        + std::fmt::Debug
        + Send
        + Sync
        + 'static
{
}

pub type C32 = Complex<f32>;
pub type C64 = Complex<f64>;

pub type Frame64 = grid::Frame<f64>;
pub type Window64 = modem::Window<f64>;
pub type TimeSignal64 = modem::TimeSignal<f64>;
pub type Constellation64 = qam::Constellation<f64>;
pub type ChannelTap64 = channel::ChannelTap<f64>;
