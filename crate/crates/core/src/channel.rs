//! Test-bench channel impairments: AWGN and a sparse delay-Doppler
//! multipath channel with on-grid taps. Delay is circular within one
//! frame; Doppler is an integer number of cycles per frame.

use crate::error::{Error, Result};
use crate::modem::TimeSignal;
use crate::Scalar;
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// One on-grid channel path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelTap<T: Scalar> {
    pub delay_samples: usize,
    /// Doppler shift in integer cycles per frame; may be negative.
    pub doppler_index: i64,
    pub gain: Complex<T>,
}

/// JSON shape for tap profiles: `{delay, doppler, gain_re, gain_im}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TapSpec {
    pub delay: usize,
    pub doppler: i64,
    pub gain_re: f64,
    pub gain_im: f64,
}

impl<T: Scalar> ChannelTap<T> {
    pub fn from_spec(spec: &TapSpec) -> Self {
        ChannelTap {
            delay_samples: spec.delay,
            doppler_index: spec.doppler,
            gain: Complex::new(
                T::from(spec.gain_re).unwrap(),
                T::from(spec.gain_im).unwrap(),
            ),
        }
    }
}

/// Add circularly-symmetric complex Gaussian noise at the requested SNR.
/// `snr_db = f64::INFINITY` returns the input unchanged. Deterministic
/// for a fixed seed.
pub fn awgn<T: Scalar>(s: &TimeSignal<T>, snr_db: f64, seed: u64) -> Result<TimeSignal<T>> {
    if s.is_empty() {
        return Err(Error::EmptySignal);
    }
    if snr_db == f64::INFINITY {
        return Ok(s.clone());
    }
    let signal_power = s.energy().to_f64().unwrap() / s.len() as f64;
    let noise_var = signal_power / 10f64.powf(snr_db / 10.0);
    let sigma = (noise_var / 2.0).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = s
        .samples
        .iter()
        .map(|&v| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            v + Complex::new(T::from(re * sigma).unwrap(), T::from(im * sigma).unwrap())
        })
        .collect();
    Ok(TimeSignal {
        samples,
        sample_rate: s.sample_rate,
    })
}

/// Sparse delay-Doppler channel:
/// r[k] = sum_taps gain * exp(j 2 pi doppler k / L) * s[(k - delay) mod L]
pub fn dd_channel<T: Scalar>(s: &TimeSignal<T>, taps: &[ChannelTap<T>]) -> Result<TimeSignal<T>> {
    if s.is_empty() {
        return Err(Error::EmptySignal);
    }
    if taps.is_empty() {
        return Err(Error::EmptyInput);
    }
    let len = s.len();
    for tap in taps {
        if tap.delay_samples >= len {
            return Err(Error::DelayOutOfRange {
                delay: tap.delay_samples,
                frame_len: len,
            });
        }
    }
    let two_pi = T::PI() + T::PI();
    let mut out = vec![Complex::new(T::zero(), T::zero()); len];
    for tap in taps {
        let rate = two_pi * T::from(tap.doppler_index).unwrap() / T::from(len).unwrap();
        for (k, o) in out.iter_mut().enumerate() {
            let phase = rate * T::from(k).unwrap();
            let rotation = Complex::new(phase.cos(), phase.sin());
            let src = s.samples[(k + len - tap.delay_samples) % len];
            *o += tap.gain * rotation * src;
        }
    }
    Ok(TimeSignal {
        samples: out,
        sample_rate: s.sample_rate,
    })
}
