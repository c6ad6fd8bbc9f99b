//! Measurement harness: BER, error statistics, throughput accounting and
//! the Monte-Carlo BER sweep driver.

use crate::channel::{awgn, dd_channel, ChannelTap};
use crate::error::{Error, Result};
use crate::grid::GridParams;
use crate::modem::{receive, transmit, PipelineConfig, Window};
use crate::prbs::{bits_per_symbol, generate_bits, BitStream};
use crate::Scalar;
use num_complex::Complex;

/// Bit error rate: Hamming distance over length.
pub fn ber(tx: &BitStream, rx: &BitStream) -> Result<f64> {
    if tx.is_empty() {
        return Err(Error::EmptyInput);
    }
    if tx.len() != rx.len() {
        return Err(Error::LengthMismatch {
            got: rx.len(),
            expected: tx.len(),
        });
    }
    let errors = tx
        .bits
        .iter()
        .zip(&rx.bits)
        .filter(|(a, b)| a != b)
        .count();
    Ok(errors as f64 / tx.len() as f64)
}

/// Per-sample |a - b| statistics between two complex sequences.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub max_abs_error: f64,
    pub mean_abs_error: f64,
    pub rms_error: f64,
    pub per_sample: Option<Vec<f64>>,
}

pub fn error_report<T: Scalar>(
    a: &[Complex<T>],
    b: &[Complex<T>],
    keep_per_sample: bool,
) -> Result<ErrorReport> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            got: b.len(),
            expected: a.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    let errs: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(x, y)| (*x - *y).norm().to_f64().unwrap())
        .collect();
    let max = errs.iter().cloned().fold(0.0, f64::max);
    let mean = errs.iter().sum::<f64>() / errs.len() as f64;
    let rms = (errs.iter().map(|e| e * e).sum::<f64>() / errs.len() as f64).sqrt();
    Ok(ErrorReport {
        max_abs_error: max,
        mean_abs_error: mean,
        rms_error: rms,
        per_sample: keep_per_sample.then_some(errs),
    })
}

/// Throughput accounting. Latency is a user input echoed through the
/// arithmetic; software timing cannot stand in for hardware timing.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetReport {
    pub total_bits: u64,
    pub latency_s: f64,
    pub effective_rate_bps: f64,
    pub power_w: Option<f64>,
    pub efficiency_bps_per_w: Option<f64>,
}

pub fn budget_report(total_bits: u64, latency_s: f64, power_w: Option<f64>) -> Result<BudgetReport> {
    if latency_s.is_nan() || latency_s <= 0.0 {
        return Err(Error::NonPositiveLatency(latency_s));
    }
    if total_bits == 0 {
        return Err(Error::EmptyInput);
    }
    let rate = total_bits as f64 / latency_s;
    Ok(BudgetReport {
        total_bits,
        latency_s,
        effective_rate_bps: rate,
        power_w,
        efficiency_bps_per_w: power_w.map(|p| rate / p),
    })
}

/// One row of a BER sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub snr_db: f64,
    pub ber: f64,
    pub bit_count: u64,
}

/// Monte-Carlo sweep settings.
#[derive(Debug, Clone)]
pub struct SweepConfig<T: Scalar> {
    pub order: usize,
    pub grid: GridParams,
    pub snr_db_list: Vec<f64>,
    pub taps: Vec<ChannelTap<T>>,
    pub frames_per_point: usize,
    pub seed: u64,
    pub pipeline: PipelineConfig,
}

/// Run transmit -> channel -> awgn -> receive over `frames_per_point`
/// frames per SNR and report the aggregate BER. Per-frame seeds derive
/// as `seed + frame_index`, so the result is reproducible and frames are
/// independent.
pub fn ber_sweep<T: Scalar>(cfg: &SweepConfig<T>) -> Result<Vec<SweepPoint>> {
    if cfg.frames_per_point < 1 {
        return Err(Error::EmptyInput);
    }
    bits_per_symbol(cfg.order)?;
    let window = Window::ones(cfg.grid.n_doppler, cfg.grid.m_delay);
    let mut points = Vec::with_capacity(cfg.snr_db_list.len());
    for (snr_idx, &snr_db) in cfg.snr_db_list.iter().enumerate() {
        let mut errors: u64 = 0;
        let mut total: u64 = 0;
        for frame in 0..cfg.frames_per_point {
            let frame_seed = cfg.seed + frame as u64;
            let prbs_seed = (frame_seed % 65535) as u16 + 1;
            let bits = generate_bits(cfg.order, prbs_seed)?;
            let tx_bits = if bits.len() == cfg.grid.frame_len() * bits_per_symbol(cfg.order)? {
                bits
            } else {
                return Err(Error::LengthMismatch {
                    got: bits.len(),
                    expected: cfg.grid.frame_len() * bits_per_symbol(cfg.order)?,
                });
            };
            let mut signal = transmit::<T>(&tx_bits, cfg.order, &cfg.grid, &window, &cfg.pipeline)?;
            if !cfg.taps.is_empty() {
                signal = dd_channel(&signal, &cfg.taps)?;
            }
            let noise_seed = frame_seed
                .wrapping_mul(0x9E3779B97F4A7C15)
                .wrapping_add(snr_idx as u64);
            let noisy = awgn(&signal, snr_db, noise_seed)?;
            let rx_bits = receive::<T>(&noisy, cfg.order, &cfg.grid, &window, &cfg.pipeline)?;
            errors += tx_bits
                .bits
                .iter()
                .zip(&rx_bits.bits)
                .filter(|(a, b)| a != b)
                .count() as u64;
            total += tx_bits.len() as u64;
        }
        points.push(SweepPoint {
            snr_db,
            ber: errors as f64 / total as f64,
            bit_count: total,
        });
    }
    Ok(points)
}
