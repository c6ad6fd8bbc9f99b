//! OTFS transforms and the composed transmitter/receiver.
//!
//! The ISFFT exists twice: `isfft_direct` evaluates the defining double
//! sum literally and serves as the oracle; `isfft_pipeline` mirrors the
//! hardware dataflow (per-column IFFT, BRAM transpose, per-column FFT,
//! column-serial feeding) and optionally quantizes each stage boundary
//! to 16-bit words. With the transpose stage disabled the pipeline
//! degenerates to the classic OFDM chain.

use crate::error::{Error, Result};
use crate::grid::{Domain, Frame, GridParams};
use crate::prbs::{bits_per_symbol, BitStream};
use crate::qam::{demodulate, modulate, quantize_symbols};
use crate::spectral::{bram_transpose, fft_n, requantize_stage};
use crate::Scalar;
use num_complex::Complex;

/// Default stage-boundary word format: Q3.12 in 16 bits.
pub const DEFAULT_STAGE_FRAC_BITS: u32 = 12;

/// Float reference path or the quantized fixed-point path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arithmetic {
    Float,
    Fixed { frac_bits: u32 },
}

impl Arithmetic {
    pub fn fixed_default() -> Self {
        Arithmetic::Fixed {
            frac_bits: DEFAULT_STAGE_FRAC_BITS,
        }
    }
}

/// Pipeline settings shared by the TX and RX chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineConfig {
    pub arithmetic: Arithmetic,
    /// Skip the transpose + delay-axis transform (OFDM degenerate mode).
    pub ofdm_mode: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            arithmetic: Arithmetic::Float,
            ofdm_mode: false,
        }
    }
}

/// Critically-sampled discrete transmit signal, N blocks of M samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSignal<T: Scalar> {
    pub samples: Vec<Complex<T>>,
    pub sample_rate: f64,
}

impl<T: Scalar> TimeSignal<T> {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn energy(&self) -> T {
        self.samples
            .iter()
            .fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }
}

/// N x M transmit window weights. Default is all ones.
#[derive(Debug, Clone, PartialEq)]
pub struct Window<T: Scalar> {
    n: usize,
    m: usize,
    values: Vec<Complex<T>>,
}

impl<T: Scalar> Window<T> {
    pub fn ones(n: usize, m: usize) -> Self {
        Window {
            n,
            m,
            values: vec![Complex::new(T::one(), T::zero()); n * m],
        }
    }

    pub fn from_values(n: usize, m: usize, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != n * m {
            return Err(Error::LengthMismatch {
                got: values.len(),
                expected: n * m,
            });
        }
        Ok(Window { n, m, values })
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.values[row * self.m + col]
    }
}

fn expect_domain<T: Scalar>(frame: &Frame<T>, expected: Domain) -> Result<()> {
    if frame.domain() != expected {
        return Err(Error::DomainMismatch {
            got: frame.domain(),
            expected,
        });
    }
    Ok(())
}

/// ISFFT by literal evaluation of the defining double sum, O(N^2 M^2).
///
/// X[n,m] = (1/sqrt(NM)) * sum_p sum_q x[p,q] exp(j 2 pi (np/N - mq/M))
pub fn isfft_direct<T: Scalar>(x: &Frame<T>) -> Result<Frame<T>> {
    expect_domain(x, Domain::DelayDoppler)?;
    let n = x.rows();
    let m = x.cols();
    let two_pi = T::PI() + T::PI();
    let norm = T::one() / T::from(n * m).unwrap().sqrt();
    let mut out = Frame::zeros(Domain::TimeFrequency, n, m);
    for row_n in 0..n {
        for col_m in 0..m {
            let mut acc = Complex::new(T::zero(), T::zero());
            for p in 0..n {
                for q in 0..m {
                    let phase = two_pi
                        * (T::from(row_n * p).unwrap() / T::from(n).unwrap()
                            - T::from(col_m * q).unwrap() / T::from(m).unwrap());
                    acc += x.get(p, q) * Complex::new(phase.cos(), phase.sin());
                }
            }
            out.set(row_n, col_m, acc * norm);
        }
    }
    Ok(out)
}

fn maybe_quantize<T: Scalar>(cols: Vec<Vec<Complex<T>>>, arith: Arithmetic) -> Result<Vec<Vec<Complex<T>>>> {
    match arith {
        Arithmetic::Float => Ok(cols),
        Arithmetic::Fixed { frac_bits } => cols
            .iter()
            .map(|c| requantize_stage(c, frac_bits))
            .collect(),
    }
}

/// Hardware-dataflow ISFFT: per-column Doppler-axis IFFT, streaming
/// transpose, per-column delay-axis FFT. Columns are fed one at a time.
pub fn isfft_pipeline<T: Scalar>(x: &Frame<T>, cfg: &PipelineConfig) -> Result<Frame<T>> {
    expect_domain(x, Domain::DelayDoppler)?;
    // stage 1: N-point inverse transform down each delay column
    let mut cols = Vec::with_capacity(x.cols());
    for q in 0..x.cols() {
        cols.push(fft_n(&x.column(q), true)?);
    }
    let cols = maybe_quantize(cols, cfg.arithmetic)?;
    if cfg.ofdm_mode {
        return Frame::from_columns(Domain::TimeFrequency, &cols);
    }
    // stage 2: transpose, then M-point forward transform per column
    let transposed = bram_transpose(&cols)?;
    let mut out_cols = Vec::with_capacity(transposed.len());
    for col in &transposed {
        out_cols.push(fft_n(col, false)?);
    }
    let out_cols = maybe_quantize(out_cols, cfg.arithmetic)?;
    // back to (n, m) orientation
    let restored = bram_transpose(&out_cols)?;
    Frame::from_columns(Domain::TimeFrequency, &restored)
}

/// Elementwise transmit windowing.
pub fn apply_window<T: Scalar>(x: &Frame<T>, w: &Window<T>) -> Result<Frame<T>> {
    expect_domain(x, Domain::TimeFrequency)?;
    if x.rows() != w.n || x.cols() != w.m {
        return Err(Error::DimensionMismatch {
            got_rows: w.n,
            got_cols: w.m,
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    let data = x
        .data()
        .iter()
        .zip(&w.values)
        .map(|(&a, &b)| a * b)
        .collect();
    Frame::from_data(Domain::TimeFrequency, x.rows(), x.cols(), data)
}

/// Undo the transmit window. Fails on any zero weight.
pub fn invert_window<T: Scalar>(x: &Frame<T>, w: &Window<T>) -> Result<Frame<T>> {
    expect_domain(x, Domain::TimeFrequency)?;
    if x.rows() != w.n || x.cols() != w.m {
        return Err(Error::DimensionMismatch {
            got_rows: w.n,
            got_cols: w.m,
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    let mut out = x.clone();
    for row in 0..x.rows() {
        for col in 0..x.cols() {
            let wv = w.get(row, col);
            if wv.norm_sqr() == T::zero() {
                return Err(Error::WindowSingular { row, col });
            }
            out.set(row, col, x.get(row, col) / wv);
        }
    }
    Ok(out)
}

/// Heisenberg transform, rectangular pulse, critically sampled:
/// block n is the orthonormal M-point IDFT of TF row n.
pub fn heisenberg<T: Scalar>(x: &Frame<T>, grid: &GridParams) -> Result<TimeSignal<T>> {
    expect_domain(x, Domain::TimeFrequency)?;
    let mut samples = Vec::with_capacity(x.rows() * x.cols());
    for n in 0..x.rows() {
        samples.extend(fft_n(x.row(n), true)?);
    }
    Ok(TimeSignal {
        samples,
        sample_rate: grid.sample_rate(),
    })
}

/// Wigner transform: reshape into N blocks of M samples and take the
/// orthonormal forward M-point DFT of each block.
pub fn wigner<T: Scalar>(s: &TimeSignal<T>, grid: &GridParams) -> Result<Frame<T>> {
    let n = grid.n_doppler;
    let m = grid.m_delay;
    if s.len() != n * m {
        return Err(Error::LengthMismatch {
            got: s.len(),
            expected: n * m,
        });
    }
    let mut out = Frame::zeros(Domain::TimeFrequency, n, m);
    for block in 0..n {
        let spectrum = fft_n(&s.samples[block * m..(block + 1) * m], false)?;
        for (col, v) in spectrum.into_iter().enumerate() {
            out.set(block, col, v);
        }
    }
    Ok(out)
}

/// SFFT, the exact inverse of the ISFFT: transpose, per-column inverse
/// transform along delay, transpose, per-column forward transform along
/// Doppler. Mirrors the transmit pipeline in reverse.
pub fn sfft_pipeline<T: Scalar>(y: &Frame<T>, cfg: &PipelineConfig) -> Result<Frame<T>> {
    expect_domain(y, Domain::TimeFrequency)?;
    if cfg.ofdm_mode {
        // inverse of the degenerate chain: forward transform down each column
        let mut cols = Vec::with_capacity(y.cols());
        for q in 0..y.cols() {
            cols.push(fft_n(&y.column(q), false)?);
        }
        let cols = maybe_quantize(cols, cfg.arithmetic)?;
        return Frame::from_columns(Domain::DelayDoppler, &cols);
    }
    let transposed = bram_transpose(&y.columns())?;
    let mut mid = Vec::with_capacity(transposed.len());
    for col in &transposed {
        mid.push(fft_n(col, true)?);
    }
    let mid = maybe_quantize(mid, cfg.arithmetic)?;
    let restored = bram_transpose(&mid)?;
    let mut out_cols = Vec::with_capacity(restored.len());
    for col in &restored {
        out_cols.push(fft_n(col, false)?);
    }
    let out_cols = maybe_quantize(out_cols, cfg.arithmetic)?;
    Frame::from_columns(Domain::DelayDoppler, &out_cols)
}

/// Float-path SFFT.
pub fn sfft<T: Scalar>(y: &Frame<T>) -> Result<Frame<T>> {
    sfft_pipeline(y, &PipelineConfig::default())
}

/// Column-major DD-frame fill: symbol i lands at (i mod N, i div N).
pub fn symbols_to_frame<T: Scalar>(
    symbols: &[Complex<T>],
    grid: &GridParams,
) -> Result<Frame<T>> {
    let n = grid.n_doppler;
    let m = grid.m_delay;
    if symbols.len() != n * m {
        return Err(Error::LengthMismatch {
            got: symbols.len(),
            expected: n * m,
        });
    }
    let mut frame = Frame::zeros(Domain::DelayDoppler, n, m);
    for (i, &s) in symbols.iter().enumerate() {
        frame.set(i % n, i / n, s);
    }
    Ok(frame)
}

/// Inverse of [`symbols_to_frame`].
pub fn frame_to_symbols<T: Scalar>(frame: &Frame<T>) -> Vec<Complex<T>> {
    let n = frame.rows();
    let m = frame.cols();
    (0..n * m).map(|i| frame.get(i % n, i / n)).collect()
}

/// Full transmit chain: modulate, DD frame, ISFFT pipeline, window,
/// Heisenberg. Fixed arithmetic quantizes the QAM output to Q2.10 and
/// every later stage boundary to 16-bit words.
pub fn transmit<T: Scalar>(
    bits: &BitStream,
    order: usize,
    grid: &GridParams,
    window: &Window<T>,
    cfg: &PipelineConfig,
) -> Result<TimeSignal<T>> {
    let k = bits_per_symbol(order)?;
    let expected = grid.frame_len() * k;
    if bits.len() != expected {
        return Err(Error::LengthMismatch {
            got: bits.len(),
            expected,
        });
    }
    let mut symbols = modulate::<T>(bits, order)?;
    if let Arithmetic::Fixed { .. } = cfg.arithmetic {
        symbols = quantize_symbols(&symbols)?
            .iter()
            .map(|q| q.dequantize())
            .collect();
    }
    let dd = symbols_to_frame(&symbols, grid)?;
    let tf = isfft_pipeline(&dd, cfg)?;
    let windowed = apply_window(&tf, window)?;
    let mut signal = heisenberg(&windowed, grid)?;
    if let Arithmetic::Fixed { frac_bits } = cfg.arithmetic {
        signal.samples = requantize_stage(&signal.samples, frac_bits)?;
    }
    Ok(signal)
}

/// Full receive chain: Wigner, window inversion, SFFT, demap.
pub fn receive<T: Scalar>(
    s: &TimeSignal<T>,
    order: usize,
    grid: &GridParams,
    window: &Window<T>,
    cfg: &PipelineConfig,
) -> Result<BitStream> {
    if s.len() != grid.frame_len() {
        return Err(Error::LengthMismatch {
            got: s.len(),
            expected: grid.frame_len(),
        });
    }
    let mut signal = s.clone();
    if let Arithmetic::Fixed { frac_bits } = cfg.arithmetic {
        signal.samples = requantize_stage(&signal.samples, frac_bits)?;
    }
    let mut tf = wigner(&signal, grid)?;
    if let Arithmetic::Fixed { frac_bits } = cfg.arithmetic {
        let cols = maybe_quantize(tf.columns(), Arithmetic::Fixed { frac_bits })?;
        tf = Frame::from_columns(Domain::TimeFrequency, &cols)?;
    }
    let unwindowed = invert_window(&tf, window)?;
    let dd = sfft_pipeline(&unwindowed, cfg)?;
    let symbols = frame_to_symbols(&dd);
    demodulate(&symbols, order)
}
