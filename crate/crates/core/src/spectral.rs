//! Transform kernels and the streaming BRAM transpose.
//!
//! `fft_n` is an orthonormal radix-2 DFT/IDFT (1/sqrt(n) on both
//! directions), the building block both pipeline directions feed.
//! `BramModel` reproduces the hardware transpose: columns are written
//! consecutively into flat storage and read back with stride N.

use crate::error::{Error, Result};
use crate::fixed::{quantize_stage_word, StageWord};
use crate::Scalar;
use num_complex::Complex;

/// Orthonormal DFT (`inverse = false`) or IDFT (`inverse = true`).
///
/// X[k] = (1/sqrt(n)) * sum_l x[l] * exp(-+ j 2 pi k l / n)
pub fn fft_n<T: Scalar>(x: &[Complex<T>], inverse: bool) -> Result<Vec<Complex<T>>> {
    let n = x.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::UnsupportedLength(n));
    }
    let mut data = x.to_vec();
    if n > 1 {
        bit_reverse_permute(&mut data);
        let sign = if inverse { T::one() } else { -T::one() };
        let mut len = 2;
        while len <= n {
            let ang = sign * (T::PI() + T::PI()) / T::from(len).unwrap();
            let w_len = Complex::new(ang.cos(), ang.sin());
            for chunk in data.chunks_mut(len) {
                let mut w = Complex::new(T::one(), T::zero());
                let half = len / 2;
                for i in 0..half {
                    let u = chunk[i];
                    let v = chunk[i + half] * w;
                    chunk[i] = u + v;
                    chunk[i + half] = u - v;
                    w *= w_len;
                }
            }
            len *= 2;
        }
    }
    let norm = T::one() / T::from(n).unwrap().sqrt();
    for v in &mut data {
        *v *= norm;
    }
    Ok(data)
}

fn bit_reverse_permute<T>(data: &mut [T]) {
    let n = data.len();
    let shift = n.leading_zeros() + 1;
    for i in 0..n {
        let j = i.reverse_bits() >> shift;
        if i < j {
            data.swap(i, j);
        }
    }
}

/// Flat storage with the hardware write/read addressing: columns of the
/// N x M input land at consecutive addresses; the transposed read of
/// output column `c` visits addresses `c, c+N, ..., c+(M-1)*N`.
#[derive(Debug, Clone)]
pub struct BramModel<T: Scalar> {
    storage: Vec<Complex<T>>,
    n: usize,
    m: usize,
    write_cursor: usize,
}

impl<T: Scalar> BramModel<T> {
    pub fn new(n: usize, m: usize) -> Self {
        BramModel {
            storage: vec![Complex::new(T::zero(), T::zero()); n * m],
            n,
            m,
            write_cursor: 0,
        }
    }

    /// Write one length-N column at the next N consecutive addresses.
    pub fn write_column(&mut self, column: &[Complex<T>]) -> Result<()> {
        if column.len() != self.n || self.write_cursor + self.n > self.storage.len() {
            return Err(Error::DimensionMismatch {
                got_rows: column.len(),
                got_cols: self.write_cursor / self.n + 1,
                rows: self.n,
                cols: self.m,
            });
        }
        self.storage[self.write_cursor..self.write_cursor + self.n].copy_from_slice(column);
        self.write_cursor += self.n;
        Ok(())
    }

    /// Strided read of transposed column `c` (length M).
    pub fn read_transposed_column(&self, c: usize) -> Vec<Complex<T>> {
        (0..self.m).map(|r| self.storage[c + r * self.n]).collect()
    }
}

/// Streaming transpose: M columns of length N in, N columns of length M out.
/// Pure data movement; the result equals the mathematical matrix transpose.
pub fn bram_transpose<T: Scalar>(columns: &[Vec<Complex<T>>]) -> Result<Vec<Vec<Complex<T>>>> {
    if columns.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = columns[0].len();
    let m = columns.len();
    let mut bram = BramModel::new(n, m);
    for col in columns {
        bram.write_column(col)?;
    }
    Ok((0..n).map(|c| bram.read_transposed_column(c)).collect())
}

/// Slice a transform output to 16-bit stage words.
pub fn quantize_stage<T: Scalar>(x: &[Complex<T>], frac_bits: u32) -> Result<Vec<StageWord>> {
    x.iter()
        .map(|&v| quantize_stage_word(v, frac_bits))
        .collect()
}

/// Quantize to stage words and dequantize back, as a stage boundary does.
pub fn requantize_stage<T: Scalar>(x: &[Complex<T>], frac_bits: u32) -> Result<Vec<Complex<T>>> {
    Ok(quantize_stage(x, frac_bits)?
        .iter()
        .map(|w| w.dequantize())
        .collect())
}
