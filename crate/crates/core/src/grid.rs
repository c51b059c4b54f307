//! Grid-sampled kernels on H^1 and their Fourier transforms.
//!
//! Grids are uniform, symmetric about the origin and power-of-two sized, so
//! the centered FFT of [`crate::fft`] applies axis by axis. The Fourier
//! convention is symmetric with the minus sign forward:
//!
//! ```text
//! k^(nu) = (2 pi)^(-3/2) integral exp(-i<g, nu>) k(g) dg
//! ```
//!
//! Values are stored t-innermost (`[x][y][t]` order) because the group
//! convolution correlates along the central axis.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fft::{centered_coords, centered_dft, dual_step};
use crate::symbol::SymbolFunction;

/// Geometry of one axis: `size` points at `(i - size/2) * step`,
/// `step = 2 * extent / size`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub size: usize,
    pub extent: f64,
}

impl AxisSpec {
    pub fn step(&self) -> f64 {
        2.0 * self.extent / self.size as f64
    }

    pub fn coords(&self) -> Vec<f64> {
        centered_coords(self.size, self.step())
    }

    /// The FFT-dual axis: same size, extent `pi / step`.
    pub fn dual(&self) -> AxisSpec {
        AxisSpec { size: self.size, extent: self.size as f64 * dual_step(self.size, self.step()) / 2.0 }
    }
}

/// Grid geometry on H^1 = R^3 in `(t, x, y)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub t: AxisSpec,
    pub x: AxisSpec,
    pub y: AxisSpec,
}

impl GridSpec {
    /// Cubic grid: the desk-scale default.
    pub fn cubic(size: usize, extent: f64) -> Result<GridSpec> {
        if !size.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(size));
        }
        let ax = AxisSpec { size, extent };
        Ok(GridSpec { t: ax, x: ax, y: ax })
    }

    pub fn len(&self) -> usize {
        self.t.size * self.x.size * self.y.size
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> f64 {
        self.t.step() * self.x.step() * self.y.step()
    }

    pub fn dual(&self) -> GridSpec {
        GridSpec { t: self.t.dual(), x: self.x.dual(), y: self.y.dual() }
    }

    fn check_pow2(&self) -> Result<()> {
        for ax in [self.t, self.x, self.y] {
            if !ax.size.is_power_of_two() {
                return Err(Error::NotPowerOfTwo(ax.size));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn index(&self, it: usize, ix: usize, iy: usize) -> usize {
        (ix * self.y.size + iy) * self.t.size + it
    }
}

/// A complex function on H^1 sampled on a [`GridSpec`]; also used for
/// elements of L^2(H^1).
#[derive(Debug, Clone, PartialEq)]
pub struct GridKernel {
    pub spec: GridSpec,
    pub values: Vec<Complex64>,
}

impl GridKernel {
    pub fn zeros(spec: GridSpec) -> GridKernel {
        GridKernel { spec, values: vec![Complex64::new(0.0, 0.0); spec.len()] }
    }

    /// Samples a pointwise function of `(t, x, y)`.
    pub fn from_fn<F>(spec: GridSpec, f: F) -> GridKernel
    where
        F: Fn(f64, f64, f64) -> Complex64,
    {
        let (ts, xs, ys) = (spec.t.coords(), spec.x.coords(), spec.y.coords());
        let mut values = Vec::with_capacity(spec.len());
        for &x in &xs {
            for &y in &ys {
                for &t in &ts {
                    values.push(f(t, x, y));
                }
            }
        }
        GridKernel { spec, values }
    }

    #[inline]
    pub fn get(&self, it: usize, ix: usize, iy: usize) -> Complex64 {
        self.values[self.spec.index(it, ix, iy)]
    }

    /// Trilinear interpolation at an arbitrary point. Corners outside the
    /// grid read as zero, so points just past the boundary fade out rather
    /// than cut off.
    pub fn value_at(&self, t: f64, x: f64, y: f64) -> Complex64 {
        let (it0, wt) = axis_locate(&self.spec.t, t);
        let (ix0, wx) = axis_locate(&self.spec.x, x);
        let (iy0, wy) = axis_locate(&self.spec.y, y);
        let mut acc = Complex64::new(0.0, 0.0);
        for (di, wa) in [(0isize, 1.0 - wt), (1, wt)] {
            if wa == 0.0 {
                continue;
            }
            for (dj, wb) in [(0isize, 1.0 - wx), (1, wx)] {
                if wb == 0.0 {
                    continue;
                }
                for (dk, wc) in [(0isize, 1.0 - wy), (1, wy)] {
                    if wc == 0.0 {
                        continue;
                    }
                    let (i, j, k) = (it0 + di, ix0 + dj, iy0 + dk);
                    if i >= 0
                        && (i as usize) < self.spec.t.size
                        && j >= 0
                        && (j as usize) < self.spec.x.size
                        && k >= 0
                        && (k as usize) < self.spec.y.size
                    {
                        acc += self.get(i as usize, j as usize, k as usize) * (wa * wb * wc);
                    }
                }
            }
        }
        acc
    }

    /// Discrete L^1 mass `sum |k| * cell volume`.
    pub fn l1_mass(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum::<f64>() * self.spec.cell_volume()
    }

    /// Discrete L^2 norm squared `sum |k|^2 * cell volume`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.spec.cell_volume()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &GridKernel) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn add(&self, other: &GridKernel) -> Result<GridKernel> {
        if self.spec != other.spec {
            return Err(Error::GridMismatch);
        }
        Ok(GridKernel {
            spec: self.spec,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &GridKernel) -> Result<GridKernel> {
        if self.spec != other.spec {
            return Err(Error::GridMismatch);
        }
        Ok(GridKernel {
            spec: self.spec,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: Complex64) -> GridKernel {
        GridKernel { spec: self.spec, values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Symmetric-convention Fourier transform onto the dual grid.
    pub fn fourier(&self) -> Result<GridKernel> {
        self.transform(-1.0, self.spec.cell_volume(), self.spec.dual())
    }

    /// Inverse transform; `inverse_fourier(fourier(k)) = k` to round-off.
    pub fn inverse_fourier(&self) -> Result<GridKernel> {
        self.transform(1.0, self.spec.cell_volume(), self.spec.dual())
    }

    fn transform(&self, sign: f64, cell: f64, out_spec: GridSpec) -> Result<GridKernel> {
        self.spec.check_pow2()?;
        let scale = Float::powf(2.0 * core::f64::consts::PI, -1.5) * cell;
        let (st, sx, sy) = (self.spec.t.size, self.spec.x.size, self.spec.y.size);
        let mut values = self.values.clone();
        // t axis: contiguous runs
        for chunk in values.chunks_mut(st) {
            centered_dft(chunk, sign);
        }
        // y axis
        let mut buf = vec![Complex64::new(0.0, 0.0); sy];
        for ix in 0..sx {
            for it in 0..st {
                for iy in 0..sy {
                    buf[iy] = values[self.spec.index(it, ix, iy)];
                }
                centered_dft(&mut buf, sign);
                for iy in 0..sy {
                    values[self.spec.index(it, ix, iy)] = buf[iy];
                }
            }
        }
        // x axis
        let mut bufx = vec![Complex64::new(0.0, 0.0); sx];
        for iy in 0..sy {
            for it in 0..st {
                for ix in 0..sx {
                    bufx[ix] = values[self.spec.index(it, ix, iy)];
                }
                centered_dft(&mut bufx, sign);
                for ix in 0..sx {
                    values[self.spec.index(it, ix, iy)] = bufx[ix];
                }
            }
        }
        for v in &mut values {
            *v *= scale;
        }
        Ok(GridKernel { spec: out_spec, values })
    }

    /// Group convolution `(k1 * k2)(h) = (2 pi)^(-3/2) sum_g k1(g) k2(g^-1 h) dg`
    /// by direct summation with the group law. The x/y offsets land on the
    /// grid exactly; the central coordinate picks up the twist
    /// `2(y_h x_g - x_h y_g)` and is linearly interpolated when it falls
    /// between t-planes (with equal axis steps and `2*step` integral it is
    /// exact). Reads outside the grid are zero. Not commutative.
    pub fn group_convolve(&self, other: &GridKernel) -> Result<GridKernel> {
        if self.spec != other.spec {
            return Err(Error::GridMismatch);
        }
        let spec = self.spec;
        let (st, sx, sy) = (spec.t.size, spec.x.size, spec.y.size);
        let (dt, dx, dy) = (spec.t.step(), spec.x.step(), spec.y.step());
        let norm = Float::powf(2.0 * core::f64::consts::PI, -1.5) * spec.cell_volume();
        let mut out = vec![Complex64::new(0.0, 0.0); spec.len()];

        let half_t = (st / 2) as isize;
        for ihx in 0..sx {
            let xh = (ihx as f64 - sx as f64 / 2.0) * dx;
            for ihy in 0..sy {
                let yh = (ihy as f64 - sy as f64 / 2.0) * dy;
                for igx in 0..sx {
                    let jx = ihx as isize - igx as isize + (sx / 2) as isize;
                    if jx < 0 || jx >= sx as isize {
                        continue;
                    }
                    let xg = (igx as f64 - sx as f64 / 2.0) * dx;
                    for igy in 0..sy {
                        let jy = ihy as isize - igy as isize + (sy / 2) as isize;
                        if jy < 0 || jy >= sy as isize {
                            continue;
                        }
                        let yg = (igy as f64 - sy as f64 / 2.0) * dy;
                        // central offset of g^-1 * h in t-steps
                        let twist = 2.0 * (yh * xg - xh * yg) / dt;
                        let base = Float::floor(twist);
                        let frac = twist - base;
                        let base = base as isize;
                        let k1_row = &self.values[spec.index(0, igx, igy)..spec.index(0, igx, igy) + st];
                        let k2_row =
                            &other.values[spec.index(0, jx as usize, jy as usize)..spec.index(0, jx as usize, jy as usize) + st];
                        let out_row = &mut out[spec.index(0, ihx, ihy)..spec.index(0, ihx, ihy) + st];
                        for iht in 0..st {
                            let mut acc = Complex64::new(0.0, 0.0);
                            // j_t = (ih_t - ig_t) + half + base (+1 for the
                            // interpolation partner)
                            for igt in 0..st {
                                let jt = iht as isize - igt as isize + half_t + base;
                                let k1v = k1_row[igt];
                                if frac == 0.0 {
                                    if jt >= 0 && jt < st as isize {
                                        acc += k1v * k2_row[jt as usize];
                                    }
                                } else {
                                    let mut k2v = Complex64::new(0.0, 0.0);
                                    if jt >= 0 && jt < st as isize {
                                        k2v += k2_row[jt as usize] * (1.0 - frac);
                                    }
                                    if jt + 1 >= 0 && jt + 1 < st as isize {
                                        k2v += k2_row[(jt + 1) as usize] * frac;
                                    }
                                    acc += k1v * k2v;
                                }
                            }
                            out_row[iht] += acc;
                        }
                    }
                }
            }
        }
        for v in &mut out {
            *v *= norm;
        }
        Ok(GridKernel { spec, values: out })
    }
}

/// Locates `v` on an axis: the lower bracketing index (may be out of range)
/// and the weight of the upper one.
fn axis_locate(ax: &AxisSpec, v: f64) -> (isize, f64) {
    let step = ax.step();
    let pos = v / step + ax.size as f64 / 2.0;
    let i0 = Float::floor(pos);
    (i0 as isize, pos - i0)
}

/// Samples an analytic symbol on a (dual-side) grid; exact pointwise
/// evaluation, no quadrature.
pub fn sample_symbol(s: &SymbolFunction, spec: GridSpec) -> GridKernel {
    assert_eq!(s.n(), 1, "grid sampling is desk-scale (H^1) only");
    GridKernel::from_fn(spec, |t, x, y| s.eval3(t, x, y))
}

/// The trigonometric interpolant of `fourier(kernel)`: evaluates
/// `(2 pi)^(-3/2) sum_j k(g_j) exp(-i<g_j, nu>) dvol` at arbitrary
/// frequencies. At dual-grid points this coincides with
/// [`GridKernel::fourier`] exactly.
pub struct FourierInterpolant<'a> {
    kernel: &'a GridKernel,
}

impl<'a> FourierInterpolant<'a> {
    pub fn new(kernel: &'a GridKernel) -> Self {
        FourierInterpolant { kernel }
    }

    /// Geometry of the backing group grid. The interpolant is periodic with
    /// period `2 pi / step` per axis; outside that fundamental domain it
    /// shows periodic images, not the (decayed) true transform.
    pub fn spec(&self) -> &GridSpec {
        &self.kernel.spec
    }

    pub fn eval(&self, nu_t: f64, nu_x: f64, nu_y: f64) -> Complex64 {
        self.eval_grid(nu_t, &[nu_x], &[nu_y])[0]
    }

    /// Evaluates on the product set `{nu_t} x nu_xs x nu_ys`, returned
    /// row-major over `(x index, y index)`. Contracting one axis at a time
    /// keeps the cost at `O(m^3 + m^2 |xs| + m |xs| |ys|)`.
    pub fn eval_grid(&self, nu_t: f64, nu_xs: &[f64], nu_ys: &[f64]) -> Vec<Complex64> {
        let spec = &self.kernel.spec;
        let (st, sx, sy) = (spec.t.size, spec.x.size, spec.y.size);
        let norm = Float::powf(2.0 * core::f64::consts::PI, -1.5) * spec.cell_volume();
        let ts = spec.t.coords();
        let xs = spec.x.coords();
        let ys = spec.y.coords();

        // stage 1: contract t
        let phase_t: Vec<Complex64> = ts
            .iter()
            .map(|&t| Complex64::new(Float::cos(t * nu_t), -Float::sin(t * nu_t)))
            .collect();
        let mut a = vec![Complex64::new(0.0, 0.0); sx * sy];
        for ix in 0..sx {
            for iy in 0..sy {
                let row = &self.kernel.values[spec.index(0, ix, iy)..spec.index(0, ix, iy) + st];
                let mut acc = Complex64::new(0.0, 0.0);
                for (v, p) in row.iter().zip(&phase_t) {
                    acc += v * p;
                }
                a[ix * sy + iy] = acc;
            }
        }
        // stage 2: contract x against nu_xs
        let mut b = vec![Complex64::new(0.0, 0.0); nu_xs.len() * sy];
        for (im, &nx) in nu_xs.iter().enumerate() {
            for (ix, &x) in xs.iter().enumerate() {
                let p = Complex64::new(Float::cos(x * nx), -Float::sin(x * nx));
                let arow = &a[ix * sy..(ix + 1) * sy];
                let brow = &mut b[im * sy..(im + 1) * sy];
                for (bv, av) in brow.iter_mut().zip(arow) {
                    *bv += av * p;
                }
            }
        }
        // stage 3: contract y against nu_ys
        let mut out = vec![Complex64::new(0.0, 0.0); nu_xs.len() * nu_ys.len()];
        for (ic, &ny) in nu_ys.iter().enumerate() {
            let phase_y: Vec<Complex64> = ys
                .iter()
                .map(|&y| Complex64::new(Float::cos(y * ny), -Float::sin(y * ny)))
                .collect();
            for im in 0..nu_xs.len() {
                let brow = &b[im * sy..(im + 1) * sy];
                let mut acc = Complex64::new(0.0, 0.0);
                for (bv, p) in brow.iter().zip(&phase_y) {
                    acc += bv * p;
                }
                out[im * nu_ys.len() + ic] = acc * norm;
            }
        }
        out
    }
}
