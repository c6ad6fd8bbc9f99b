//! Flat-file interchange: CSV for data streams, JSON for configuration.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! file read back yields the exact same f64 values and identical runs
//! yield byte-identical files.

use crate::channel::TapSpec;
use crate::error::{Error, Result};
use crate::fixed::quantize_complex_q2_10;
use crate::grid::{Domain, Frame, GridParams};
use crate::modem::TimeSignal;
use crate::prbs::BitStream;
use crate::qam::Constellation;
use crate::report::{BudgetReport, ErrorReport, SweepPoint};
use crate::Scalar;
use num_complex::Complex;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

fn to_f64<T: Scalar>(v: T) -> f64 {
    v.to_f64().unwrap()
}

pub fn write_signal_csv<T: Scalar>(path: &Path, s: &TimeSignal<T>) -> Result<()> {
    let mut out = String::from("idx,re,im\n");
    for (i, v) in s.samples.iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", i, to_f64(v.re), to_f64(v.im)));
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn read_signal_csv(path: &Path) -> Result<Vec<Complex<f64>>> {
    let file = std::fs::File::open(path)?;
    let mut samples = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if lineno == 0 || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 3 {
            return Err(Error::Parse(format!("line {}: expected idx,re,im", lineno + 1)));
        }
        let re: f64 = fields[1]
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {}", lineno + 1, e)))?;
        let im: f64 = fields[2]
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {}", lineno + 1, e)))?;
        samples.push(Complex::new(re, im));
    }
    Ok(samples)
}

pub fn write_frame_csv<T: Scalar>(path: &Path, frame: &Frame<T>) -> Result<()> {
    let mut out = String::from("row,col,re,im\n");
    for row in 0..frame.rows() {
        for col in 0..frame.cols() {
            let v = frame.get(row, col);
            out.push_str(&format!("{},{},{},{}\n", row, col, to_f64(v.re), to_f64(v.im)));
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn read_frame_csv(path: &Path, domain: Domain, n: usize, m: usize) -> Result<Frame<f64>> {
    let file = std::fs::File::open(path)?;
    let mut frame = Frame::zeros(domain, n, m);
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if lineno == 0 || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 4 {
            return Err(Error::Parse(format!(
                "line {}: expected row,col,re,im",
                lineno + 1
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.trim()
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {}", lineno + 1, e)))
        };
        let row = parse(fields[0])? as usize;
        let col = parse(fields[1])? as usize;
        frame.set(row, col, Complex::new(parse(fields[2])?, parse(fields[3])?));
    }
    Ok(frame)
}

pub fn write_grid_json(path: &Path, grid: &GridParams) -> Result<()> {
    let json = serde_json::to_string_pretty(grid).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(path, json + "\n")?;
    Ok(())
}

pub fn read_grid_json(path: &Path) -> Result<GridParams> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}

/// One ASCII `0`/`1` per line.
pub fn write_bits_ascii(path: &Path, bits: &BitStream) -> Result<()> {
    let mut out = String::with_capacity(bits.len() * 2);
    for &b in &bits.bits {
        out.push(if b == 0 { '0' } else { '1' });
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Packed binary, MSB-first per byte; a final partial byte is zero-padded.
pub fn write_bits_packed(path: &Path, bits: &BitStream) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    let mut bytes = Vec::with_capacity(bits.len().div_ceil(8));
    for chunk in bits.bits.chunks(8) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            byte |= b << (7 - i);
        }
        bytes.push(byte);
    }
    file.write_all(&bytes)?;
    Ok(())
}

pub fn read_bits_ascii(path: &Path) -> Result<BitStream> {
    let text = std::fs::read_to_string(path)?;
    let mut bits = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        match line.trim() {
            "" => continue,
            "0" => bits.push(0),
            "1" => bits.push(1),
            other => {
                return Err(Error::Parse(format!(
                    "line {}: expected 0 or 1, got {:?}",
                    lineno + 1,
                    other
                )))
            }
        }
    }
    Ok(BitStream::from_bits(bits))
}

pub fn write_autocorr_csv<T: Scalar>(path: &Path, rho: &[T]) -> Result<()> {
    let mut out = String::from("lag,rho\n");
    for (lag, &r) in rho.iter().enumerate() {
        out.push_str(&format!("{},{}\n", lag, to_f64(r)));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Constellation dump: `label_bits,re,im,re_raw,im_raw`.
pub fn write_constellation_csv<T: Scalar>(path: &Path, c: &Constellation<T>) -> Result<()> {
    let k = c.bits_per_symbol();
    let mut out = String::from("label_bits,re,im,re_raw,im_raw\n");
    for label in 0..c.order() {
        let s = c.symbol(label);
        let fixed = quantize_complex_q2_10(s)?;
        out.push_str(&format!(
            "{:0width$b},{},{},{},{}\n",
            label,
            to_f64(s.re),
            to_f64(s.im),
            fixed.re_raw,
            fixed.im_raw,
            width = k
        ));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Tap profile: JSON array of `{delay, doppler, gain_re, gain_im}`.
pub fn read_taps_json(path: &Path) -> Result<Vec<TapSpec>> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_taps_json(text: &str) -> Result<Vec<TapSpec>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn write_sweep_csv(path: &Path, points: &[SweepPoint]) -> Result<()> {
    let mut out = String::from("snr_db,ber,bit_count\n");
    for p in points {
        out.push_str(&format!("{},{},{}\n", p.snr_db, p.ber, p.bit_count));
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn write_error_report_csv(path: &Path, report: &ErrorReport) -> Result<()> {
    let mut out = String::from("max_abs_error,mean_abs_error,rms_error\n");
    out.push_str(&format!(
        "{},{},{}\n",
        report.max_abs_error, report.mean_abs_error, report.rms_error
    ));
    std::fs::write(path, out)?;
    Ok(())
}

/// Budget CSV. The `comment` column flags that the effective rate is the
/// plain bits/latency ratio, which does not reproduce published hardware
/// throughput figures derived by other accounting.
pub fn write_budget_csv(path: &Path, report: &BudgetReport) -> Result<()> {
    let mut out =
        String::from("total_bits,latency_s,effective_rate_bps,power_w,efficiency_bps_per_w,comment\n");
    out.push_str(&format!(
        "{},{},{},{},{},{}\n",
        report.total_bits,
        report.latency_s,
        report.effective_rate_bps,
        report.power_w.map_or(String::new(), |p| p.to_string()),
        report
            .efficiency_bps_per_w
            .map_or(String::new(), |e| e.to_string()),
        "rate=bits/latency"
    ));
    std::fs::write(path, out)?;
    Ok(())
}
