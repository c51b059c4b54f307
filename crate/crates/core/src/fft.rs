//! Power-of-two complex FFT and the centered variant used by all grids.
//!
//! Grids in this crate are symmetric about the origin with even size m, points
//! `(j - m/2) * step`. The matching transform is the centered DFT
//!
//! ```text
//! X_l = sum_j x_j exp(-+ 2 pi i (j - m/2)(l - m/2) / m)
//! ```
//!
//! which reduces to a plain DFT conjugated by `(-1)^j` sign flips plus a
//! global `(-1)^(m/2)` factor, all exact.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

/// In-place iterative radix-2 FFT. `sign = -1.0` gives the forward kernel
/// `exp(-2 pi i jk/m)`, `sign = +1.0` the inverse kernel (unnormalized).
/// Panics if the length is not a power of two.
pub fn fft_pow2(buf: &mut [Complex64], sign: f64) {
    let n = buf.len();
    assert!(n.is_power_of_two(), "FFT length must be a power of two");
    if n <= 1 {
        return;
    }
    // bit-reversal permutation
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = (i.reverse_bits() >> (usize::BITS - bits)) as usize;
        if j > i {
            buf.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let ang = sign * 2.0 * core::f64::consts::PI / len as f64;
        let wlen = Complex64::new(Float::cos(ang), Float::sin(ang));
        let mut start = 0;
        while start < n {
            let mut w = Complex64::new(1.0, 0.0);
            for k in 0..len / 2 {
                let u = buf[start + k];
                let v = buf[start + k + len / 2] * w;
                buf[start + k] = u + v;
                buf[start + k + len / 2] = u - v;
                w *= wlen;
            }
            start += len;
        }
        len <<= 1;
    }
}

/// In-place centered DFT on a symmetric grid of even power-of-two size.
/// `sign = -1.0` applies `exp(-i<g, nu>)`-type phases, `sign = +1.0` the
/// conjugate. Unnormalized; a centered forward/backward pair scales by m.
pub fn centered_dft(buf: &mut [Complex64], sign: f64) {
    let m = buf.len();
    assert!(m >= 2 && m % 2 == 0, "centered DFT needs even size");
    for (j, v) in buf.iter_mut().enumerate() {
        if j % 2 == 1 {
            *v = -*v;
        }
    }
    fft_pow2(buf, sign);
    let global = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
    for (l, v) in buf.iter_mut().enumerate() {
        let s = if l % 2 == 1 { -global } else { global };
        *v *= s;
    }
}

/// Frequencies dual to a centered grid: spacing `2 pi / (m * step)`, points
/// `(l - m/2) * spacing`.
pub fn dual_step(m: usize, step: f64) -> f64 {
    2.0 * core::f64::consts::PI / (m as f64 * step)
}

/// The centered coordinate array `(j - m/2) * step`.
pub fn centered_coords(m: usize, step: f64) -> Vec<f64> {
    (0..m).map(|j| (j as f64 - m as f64 / 2.0) * step).collect()
}
