//! Gray-coded QAM mapping and hard-decision demapping for orders 4/8/16/32.
//!
//! Constellations live on the odd-integer grid, scaled to unit average
//! power: square for 4 and 16, rectangular 4x2 for 8, and the 32-point
//! cross (6x6 grid minus corners). Orders 4 and 16 are Gray coded per
//! axis; the cross constellation uses its LUT enumeration order as the
//! label, frozen in the golden constellation files.

use crate::error::{Error, Result};
use crate::fixed::{quantize_complex_q2_10, FixedSample};
use crate::prbs::{bits_per_symbol, BitStream};
use crate::Scalar;
use num_complex::Complex;

/// QAM look-up table: `points[label]` is the symbol for that bit label.
#[derive(Debug, Clone)]
pub struct Constellation<T: Scalar> {
    order: usize,
    points: Vec<Complex<T>>,
    scale: T,
}

impl<T: Scalar> Constellation<T> {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.order.trailing_zeros() as usize
    }

    pub fn points(&self) -> &[Complex<T>] {
        &self.points
    }

    /// Normalization applied to the odd-integer grid.
    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn symbol(&self, label: usize) -> Complex<T> {
        self.points[label]
    }

    /// Label of the nearest constellation point; ties go to the lowest
    /// LUT index.
    pub fn nearest(&self, v: Complex<T>) -> Result<usize> {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFinite);
        }
        let mut best = 0usize;
        let mut best_d = (v - self.points[0]).norm_sqr();
        for (i, p) in self.points.iter().enumerate().skip(1) {
            let d = (v - *p).norm_sqr();
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        Ok(best)
    }

    /// Minimum distance between distinct points.
    pub fn min_distance(&self) -> T {
        let mut best = T::infinity();
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                let d = (self.points[i] - self.points[j]).norm();
                if d < best {
                    best = d;
                }
            }
        }
        best
    }
}

/// Binary-reflected Gray decode: position of gray code `g` in the level order.
fn gray_decode(mut g: usize) -> usize {
    let mut b = 0;
    while g != 0 {
        b ^= g;
        g >>= 1;
    }
    b
}

/// Amplitude for a `k`-bit Gray-coded axis label: odd integers
/// -(2^k - 1) ..= 2^k - 1, ordered so adjacent levels differ in one bit.
fn gray_level(bits: usize, k: usize) -> i32 {
    let pos = gray_decode(bits) as i32;
    2 * pos - ((1 << k) - 1)
}

/// Unnormalized integer-grid points, indexed by label.
fn integer_points(order: usize) -> Result<Vec<(i32, i32)>> {
    match order {
        4 => Ok((0..4)
            .map(|label| (gray_level(label >> 1, 1), gray_level(label & 1, 1)))
            .collect()),
        8 => Ok((0..8)
            .map(|label| (gray_level(label >> 1, 2), gray_level(label & 1, 1)))
            .collect()),
        16 => Ok((0..16)
            .map(|label| (gray_level(label >> 2, 2), gray_level(label & 3, 2)))
            .collect()),
        32 => {
            // 6x6 odd grid minus the four corners, enumerated top row
            // first, left to right.
            let mut pts = Vec::with_capacity(32);
            for q in (-5i32..=5).rev().step_by(2) {
                for i in (-5i32..=5).step_by(2) {
                    if i.abs() == 5 && q.abs() == 5 {
                        continue;
                    }
                    pts.push((i, q));
                }
            }
            Ok(pts)
        }
        other => Err(Error::UnsupportedOrder(other)),
    }
}

/// Build the unit-average-power constellation for one of the supported orders.
pub fn build_constellation<T: Scalar>(order: usize) -> Result<Constellation<T>> {
    let grid = integer_points(order)?;
    let mean_power: f64 =
        grid.iter().map(|&(i, q)| (i * i + q * q) as f64).sum::<f64>() / order as f64;
    let scale = T::from(1.0 / mean_power.sqrt()).unwrap();
    let points = grid
        .iter()
        .map(|&(i, q)| Complex::new(T::from(i).unwrap() * scale, T::from(q).unwrap() * scale))
        .collect();
    Ok(Constellation {
        order,
        points,
        scale,
    })
}

/// Map a bit stream to symbols, MSB-first per log2(order)-bit group.
pub fn modulate<T: Scalar>(bits: &BitStream, order: usize) -> Result<Vec<Complex<T>>> {
    let k = bits_per_symbol(order)?;
    if !bits.len().is_multiple_of(k) {
        return Err(Error::LengthMismatch {
            got: bits.len(),
            expected: (bits.len() / k) * k,
        });
    }
    let lut = build_constellation::<T>(order)?;
    Ok(bits
        .bits
        .chunks(k)
        .map(|group| {
            let label = group.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
            lut.symbol(label)
        })
        .collect())
}

/// Componentwise Q2.10 quantization of a symbol stream.
pub fn quantize_symbols<T: Scalar>(symbols: &[Complex<T>]) -> Result<Vec<FixedSample>> {
    symbols.iter().map(|&s| quantize_complex_q2_10(s)).collect()
}

/// Hard-decision demapping: nearest constellation point, MSB-first labels.
pub fn demodulate<T: Scalar>(symbols: &[Complex<T>], order: usize) -> Result<BitStream> {
    let k = bits_per_symbol(order)?;
    let lut = build_constellation::<T>(order)?;
    let mut bits = Vec::with_capacity(symbols.len() * k);
    for &s in symbols {
        let label = lut.nearest(s)?;
        for shift in (0..k).rev() {
            bits.push(((label >> shift) & 1) as u8);
        }
    }
    Ok(BitStream::from_bits(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prbs::generate_bits;
    use proptest::prelude::*;

    fn unit_power_ok(order: usize) {
        let c = build_constellation::<f64>(order).unwrap();
        let mean: f64 = c.points().iter().map(|p| p.norm_sqr()).sum::<f64>() / order as f64;
        assert!((mean - 1.0).abs() < 1e-12, "order {order}: mean {mean}");
    }

    #[test]
    fn unit_average_power_all_orders() {
        for order in [4, 8, 16, 32] {
            unit_power_ok(order);
        }
    }

    #[test]
    fn scales_match_enumeration() {
        assert!((build_constellation::<f64>(4).unwrap().scale() - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((build_constellation::<f64>(8).unwrap().scale() - 1.0 / 6f64.sqrt()).abs() < 1e-15);
        assert!((build_constellation::<f64>(16).unwrap().scale() - 1.0 / 10f64.sqrt()).abs() < 1e-15);
        assert!((build_constellation::<f64>(32).unwrap().scale() - 1.0 / 20f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn qpsk_points() {
        let c = build_constellation::<f64>(4).unwrap();
        let s = 1.0 / 2f64.sqrt();
        for p in c.points() {
            assert!((p.re.abs() - s).abs() < 1e-15);
            assert!((p.im.abs() - s).abs() < 1e-15);
        }
    }

    #[test]
    fn unsupported_order() {
        assert_eq!(
            build_constellation::<f64>(64).unwrap_err(),
            Error::UnsupportedOrder(64)
        );
    }

    /// Horizontal/vertical nearest neighbors differ in exactly one bit.
    fn check_gray_adjacency(order: usize) {
        let c = build_constellation::<f64>(order).unwrap();
        let step = 2.0 * c.scale();
        let eps = 1e-9;
        for i in 0..order {
            for j in (i + 1)..order {
                let diff = c.symbol(i) - c.symbol(j);
                let horizontal = (diff.re.abs() - step).abs() < eps && diff.im.abs() < eps;
                let vertical = (diff.im.abs() - step).abs() < eps && diff.re.abs() < eps;
                if horizontal || vertical {
                    assert_eq!(
                        (i ^ j).count_ones(),
                        1,
                        "order {order}: labels {i:b} and {j:b} are neighbors"
                    );
                }
            }
        }
    }

    #[test]
    fn gray_adjacency_rectangular_orders() {
        check_gray_adjacency(4);
        check_gray_adjacency(16);
    }

    #[test]
    fn modulate_counts() {
        let bits = generate_bits(4, 0xFFFF).unwrap();
        assert_eq!(modulate::<f64>(&bits, 4).unwrap().len(), 4096);
        let bits = generate_bits(32, 0xFFFF).unwrap();
        assert_eq!(modulate::<f64>(&bits, 32).unwrap().len(), 4096);
    }

    #[test]
    fn modulate_rejects_ragged_input() {
        let bits = BitStream::from_bits(vec![1, 0, 1]);
        assert!(matches!(
            modulate::<f64>(&bits, 4).unwrap_err(),
            Error::LengthMismatch { .. }
        ));
    }

    #[test]
    fn quantize_symbol_examples() {
        let s = 1.0 / 2f64.sqrt();
        let q = quantize_symbols(&[Complex::new(s, s), Complex::new(0.0, 0.0)]).unwrap();
        assert_eq!((q[0].re_raw, q[0].im_raw), (724, 724));
        assert_eq!((q[1].re_raw, q[1].im_raw), (0, 0));
        let outer = 3.0 / 10f64.sqrt();
        let q = quantize_symbols(&[Complex::new(outer, outer)]).unwrap();
        assert_eq!((q[0].re_raw, q[0].im_raw), (971, 971));
    }

    #[test]
    fn perturbation_below_half_dmin_keeps_label() {
        for order in [4usize, 8, 16, 32] {
            let c = build_constellation::<f64>(order).unwrap();
            let eps = c.min_distance() * 0.49;
            for label in 0..order {
                let s = c.symbol(label) + Complex::new(eps / 2f64.sqrt(), -eps / 2f64.sqrt());
                assert_eq!(c.nearest(s).unwrap(), label, "order {order}");
            }
        }
    }

    #[test]
    fn tie_break_lowest_lut_index() {
        // the origin is equidistant from all four QPSK points
        let c = build_constellation::<f64>(4).unwrap();
        assert_eq!(c.nearest(Complex::new(0.0, 0.0)).unwrap(), 0);
    }

    #[test]
    fn demodulate_rejects_non_finite() {
        let r = demodulate(&[Complex::new(f64::NAN, 0.0)], 4);
        assert_eq!(r.unwrap_err(), Error::NonFinite);
    }

    proptest! {
        #[test]
        fn roundtrip_all_orders(seed in 1u16..=u16::MAX, order_idx in 0usize..4) {
            let order = [4, 8, 16, 32][order_idx];
            let bits = generate_bits(order, seed).unwrap();
            let symbols = modulate::<f64>(&bits, order).unwrap();
            prop_assert_eq!(demodulate(&symbols, order).unwrap().bits, bits.bits);
        }

        #[test]
        fn roundtrip_survives_q2_10(seed in 1u16..=u16::MAX, order_idx in 0usize..4) {
            let order = [4, 8, 16, 32][order_idx];
            let bits = generate_bits(order, seed).unwrap();
            let symbols = modulate::<f64>(&bits, order).unwrap();
            let deq: Vec<_> = quantize_symbols(&symbols)
                .unwrap()
                .iter()
                .map(|q| q.dequantize::<f64>())
                .collect();
            prop_assert_eq!(demodulate(&deq, order).unwrap().bits, bits.bits);
        }
    }
}
