//! Experiment runner for the OTFS baseband model.
//!
//! Subcommands: `prbs`, `modulate`, `txrx`, `ber-sweep`, `error-report`,
//! `budget`. All outputs are CSV or JSON flat files; identical flags and
//! seeds produce byte-identical output.

use clap::{Parser, Subcommand, ValueEnum};
use otfs_core::channel::{awgn, dd_channel, ChannelTap};
use otfs_core::grid::make_grid;
use otfs_core::io;
use otfs_core::modem::{
    receive, transmit, Arithmetic, PipelineConfig, TimeSignal, Window, DEFAULT_STAGE_FRAC_BITS,
};
use otfs_core::prbs::{autocorrelation, generate_bits};
use otfs_core::qam::{build_constellation, modulate};
use otfs_core::report::{ber, ber_sweep, budget_report, error_report, SweepConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "otfs", about = "OTFS baseband transceiver model", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Arith {
    Float,
    Fixed,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a PRBS bit stream and optionally its autocorrelation.
    Prbs {
        /// Modulation order the bit budget is sized for (4, 8, 16, 32)
        #[arg(long, default_value_t = 32)]
        order: usize,
        /// Nonzero 16-bit LFSR seed
        #[arg(long, default_value_t = 0xFFFF)]
        seed: u16,
        /// Output file for the bits
        #[arg(long)]
        out: PathBuf,
        /// Write packed binary (MSB-first per byte) instead of ASCII lines
        #[arg(long)]
        packed: bool,
        /// Also write `<out>.autocorr.csv` with lags 0..=max_lag
        #[arg(long)]
        autocorr_max_lag: Option<usize>,
    },
    /// Map a bit stream (or a fresh PRBS) to QAM symbols.
    Modulate {
        #[arg(long, default_value_t = 32)]
        order: usize,
        /// Read bits from this ASCII file; otherwise generate from --seed
        #[arg(long)]
        bits: Option<PathBuf>,
        #[arg(long, default_value_t = 0xFFFF)]
        seed: u16,
        /// Output symbol CSV (idx,re,im)
        #[arg(long)]
        out: PathBuf,
        /// Also dump the constellation LUT to this CSV
        #[arg(long)]
        dump_constellation: Option<PathBuf>,
    },
    /// Full transmit/receive loopback with optional channel impairments.
    Txrx {
        #[arg(long, default_value_t = 32)]
        order: usize,
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        m: usize,
        /// Subcarrier spacing in Hz (T is derived as 1/delta_f)
        #[arg(long, default_value_t = 15000.0)]
        delta_f: f64,
        #[arg(long, value_enum, default_value_t = Arith::Float)]
        arith: Arith,
        #[arg(long, default_value_t = DEFAULT_STAGE_FRAC_BITS)]
        frac_bits: u32,
        /// Skip the transpose stage (classic OFDM chain)
        #[arg(long)]
        ofdm_mode: bool,
        /// AWGN SNR in dB; omit for a noiseless run
        #[arg(long)]
        snr_db: Option<f64>,
        /// Channel tap profile: JSON array of {delay, doppler, gain_re, gain_im}
        #[arg(long)]
        taps: Option<PathBuf>,
        #[arg(long, default_value_t = 0xFFFF)]
        seed: u16,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Monte-Carlo BER sweep over a list of SNR points.
    BerSweep {
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        m: usize,
        #[arg(long, default_value_t = 15000.0)]
        delta_f: f64,
        /// Comma-separated SNR list in dB, e.g. 0,2,4,6,8,10
        #[arg(long, value_delimiter = ',', required = true)]
        snr_db: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        frames_per_point: usize,
        #[arg(long)]
        taps: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Arith::Float)]
        arith: Arith,
        #[arg(long, default_value_t = DEFAULT_STAGE_FRAC_BITS)]
        frac_bits: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Per-sample error statistics between two signal CSV files.
    ErrorReport {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Write the stats CSV here; otherwise print to stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Throughput accounting from a bit count and a latency.
    Budget {
        #[arg(long)]
        bits: u64,
        #[arg(long)]
        latency_us: f64,
        #[arg(long)]
        power_w: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn pipeline(arith: Arith, frac_bits: u32, ofdm_mode: bool) -> PipelineConfig {
    PipelineConfig {
        arithmetic: match arith {
            Arith::Float => Arithmetic::Float,
            Arith::Fixed => Arithmetic::Fixed { frac_bits },
        },
        ofdm_mode,
    }
}

fn load_taps(path: &Option<PathBuf>) -> otfs_core::Result<Vec<ChannelTap<f64>>> {
    match path {
        None => Ok(vec![]),
        Some(p) => Ok(io::read_taps_json(p)?
            .iter()
            .map(ChannelTap::from_spec)
            .collect()),
    }
}

fn run(cli: Cli) -> otfs_core::Result<()> {
    match cli.command {
        Command::Prbs {
            order,
            seed,
            out,
            packed,
            autocorr_max_lag,
        } => {
            let bits = generate_bits(order, seed)?;
            if packed {
                io::write_bits_packed(&out, &bits)?;
            } else {
                io::write_bits_ascii(&out, &bits)?;
            }
            println!("wrote {} bits to {}", bits.len(), out.display());
            if let Some(max_lag) = autocorr_max_lag {
                let rho: Vec<f64> = autocorrelation(&bits, max_lag)?;
                let path = out.with_extension("autocorr.csv");
                io::write_autocorr_csv(&path, &rho)?;
                println!("wrote autocorrelation to {}", path.display());
            }
        }
        Command::Modulate {
            order,
            bits,
            seed,
            out,
            dump_constellation,
        } => {
            let bits = match bits {
                Some(path) => io::read_bits_ascii(&path)?,
                None => generate_bits(order, seed)?,
            };
            let symbols = modulate::<f64>(&bits, order)?;
            let signal = TimeSignal {
                samples: symbols,
                sample_rate: 0.0,
            };
            io::write_signal_csv(&out, &signal)?;
            println!("wrote {} symbols to {}", signal.len(), out.display());
            if let Some(path) = dump_constellation {
                io::write_constellation_csv(&path, &build_constellation::<f64>(order)?)?;
                println!("wrote constellation to {}", path.display());
            }
        }
        Command::Txrx {
            order,
            n,
            m,
            delta_f,
            arith,
            frac_bits,
            ofdm_mode,
            snr_db,
            taps,
            seed,
            out_dir,
        } => {
            let grid = make_grid(n, m, delta_f, 1.0 / delta_f)?;
            let window = Window::ones(n, m);
            let cfg = pipeline(arith, frac_bits, ofdm_mode);
            let bits = generate_bits(order, seed)?;
            let tx_signal = transmit::<f64>(&bits, order, &grid, &window, &cfg)?;
            let mut channel_signal = tx_signal.clone();
            let taps = load_taps(&taps)?;
            if !taps.is_empty() {
                channel_signal = dd_channel(&channel_signal, &taps)?;
            }
            if let Some(snr) = snr_db {
                channel_signal = awgn(&channel_signal, snr, seed as u64)?;
            }
            let rx_bits = receive::<f64>(&channel_signal, order, &grid, &window, &cfg)?;
            let rate = ber(&bits, &rx_bits)?;

            std::fs::create_dir_all(&out_dir)?;
            io::write_grid_json(&out_dir.join("grid.json"), &grid)?;
            io::write_bits_ascii(&out_dir.join("tx_bits.txt"), &bits)?;
            io::write_signal_csv(&out_dir.join("tx_signal.csv"), &tx_signal)?;
            io::write_signal_csv(&out_dir.join("rx_signal.csv"), &channel_signal)?;
            io::write_bits_ascii(&out_dir.join("rx_bits.txt"), &rx_bits)?;
            let report = error_report(&tx_signal.samples, &channel_signal.samples, false)?;
            io::write_error_report_csv(&out_dir.join("signal_error.csv"), &report)?;
            std::fs::write(out_dir.join("ber.csv"), format!("ber\n{}\n", rate))?;
            println!("ber {}", rate);
        }
        Command::BerSweep {
            order,
            n,
            m,
            delta_f,
            snr_db,
            frames_per_point,
            taps,
            seed,
            arith,
            frac_bits,
            out,
        } => {
            let cfg = SweepConfig::<f64> {
                order,
                grid: make_grid(n, m, delta_f, 1.0 / delta_f)?,
                snr_db_list: snr_db,
                taps: load_taps(&taps)?,
                frames_per_point,
                seed,
                pipeline: pipeline(arith, frac_bits, false),
            };
            let points = ber_sweep(&cfg)?;
            io::write_sweep_csv(&out, &points)?;
            for p in &points {
                println!("snr {} dB: ber {} over {} bits", p.snr_db, p.ber, p.bit_count);
            }
        }
        Command::ErrorReport { a, b, out } => {
            let sa = io::read_signal_csv(&a)?;
            let sb = io::read_signal_csv(&b)?;
            let report = error_report(&sa, &sb, false)?;
            match out {
                Some(path) => io::write_error_report_csv(&path, &report)?,
                None => println!(
                    "max_abs {} mean_abs {} rms {}",
                    report.max_abs_error, report.mean_abs_error, report.rms_error
                ),
            }
        }
        Command::Budget {
            bits,
            latency_us,
            power_w,
            out,
        } => {
            let report = budget_report(bits, latency_us * 1e-6, power_w)?;
            match out {
                Some(path) => io::write_budget_csv(&path, &report)?,
                None => println!(
                    "effective rate {} bit/s{}",
                    report.effective_rate_bps,
                    report
                        .efficiency_bps_per_w
                        .map_or(String::new(), |e| format!(", efficiency {} bit/s/W", e))
                ),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
