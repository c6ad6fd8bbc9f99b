//! Frame geometry and domain-tagged frames.
//!
//! A frame is an `N x M` matrix of complex samples. Rows index Doppler
//! (DD domain) or symbol time (TF domain); columns index delay or
//! subcarrier frequency. Storage is row-major so that per-column access
//! is strided, the same access pattern the hardware transpose performs.

use crate::error::{Error, Result};
use crate::Scalar;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

/// Which 2-D grid a frame's samples live on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    DelayDoppler,
    TimeFrequency,
}

/// Frame geometry: N Doppler (time) bins by M delay (frequency) bins.
///
/// The Doppler and delay resolutions are always derived from `(N, T)` and
/// `(M, delta_f)`; they are never stored independently.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    #[serde(rename = "n")]
    pub n_doppler: usize,
    #[serde(rename = "m")]
    pub m_delay: usize,
    #[serde(rename = "delta_f_hz")]
    pub subcarrier_spacing: f64,
    #[serde(rename = "t_s")]
    pub symbol_duration: f64,
}

impl GridParams {
    /// Doppler resolution in Hz: `1 / (N*T)`.
    pub fn doppler_resolution(&self) -> f64 {
        1.0 / (self.n_doppler as f64 * self.symbol_duration)
    }

    /// Delay resolution in seconds: `1 / (M*delta_f)`.
    pub fn delay_resolution(&self) -> f64 {
        1.0 / (self.m_delay as f64 * self.subcarrier_spacing)
    }

    /// Samples per frame.
    pub fn frame_len(&self) -> usize {
        self.n_doppler * self.m_delay
    }

    /// Time-signal sample rate `M * delta_f` (critical sampling).
    pub fn sample_rate(&self) -> f64 {
        self.m_delay as f64 * self.subcarrier_spacing
    }
}

/// Build a critically-sampled grid. Rejects `T*delta_f != 1`.
pub fn make_grid(n: usize, m: usize, delta_f: f64, t: f64) -> Result<GridParams> {
    if n < 1 || m < 1 {
        return Err(Error::InvalidDimension { n, m });
    }
    let product = t * delta_f;
    if !(product.is_finite() && (product - 1.0).abs() < 1e-12) {
        return Err(Error::NonCriticalSampling { product });
    }
    Ok(GridParams {
        n_doppler: n,
        m_delay: m,
        subcarrier_spacing: delta_f,
        symbol_duration: t,
    })
}

/// Domain-tagged `N x M` complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame<T: Scalar> {
    domain: Domain,
    n: usize,
    m: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> Frame<T> {
    pub fn zeros(domain: Domain, n: usize, m: usize) -> Self {
        Frame {
            domain,
            n,
            m,
            data: vec![Complex::new(T::zero(), T::zero()); n * m],
        }
    }

    /// Wrap row-major data as a frame. Length must be `n*m`.
    pub fn from_data(domain: Domain, n: usize, m: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != n * m {
            return Err(Error::LengthMismatch {
                got: data.len(),
                expected: n * m,
            });
        }
        Ok(Frame { domain, n, m, data })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.m + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Complex<T>) {
        self.data[row * self.m + col] = v;
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    /// Column `col` as an owned vector (strided read of the row-major store).
    pub fn column(&self, col: usize) -> Vec<Complex<T>> {
        (0..self.n).map(|r| self.data[r * self.m + col]).collect()
    }

    pub fn row(&self, row: usize) -> &[Complex<T>] {
        &self.data[row * self.m..(row + 1) * self.m]
    }

    /// All M columns in order, each of length N.
    pub fn columns(&self) -> Vec<Vec<Complex<T>>> {
        (0..self.m).map(|c| self.column(c)).collect()
    }

    /// Rebuild a frame from column vectors (inverse of [`Frame::columns`]).
    pub fn from_columns(domain: Domain, cols: &[Vec<Complex<T>>]) -> Result<Self> {
        if cols.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = cols[0].len();
        let m = cols.len();
        let mut frame = Frame::zeros(domain, n, m);
        for (c, col) in cols.iter().enumerate() {
            if col.len() != n {
                return Err(Error::DimensionMismatch {
                    got_rows: col.len(),
                    got_cols: m,
                    rows: n,
                    cols: m,
                });
            }
            for (r, &v) in col.iter().enumerate() {
                frame.set(r, c, v);
            }
        }
        Ok(frame)
    }

    /// Sum of squared magnitudes.
    pub fn energy(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }
}
