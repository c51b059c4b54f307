//! Discretized pseudodifferential operators.
//!
//! Two constructions live here. The wave-grid one quantizes bivariate
//! symbols `a(x, xi)` into dense matrices acting on a 1-D grid,
//!
//! ```text
//! (A u)(h) = (2 pi)^(-1) double-integral exp(i(h-g) nu) a(tau h + (1-tau) g, nu) u(g) dg dnu,
//! ```
//!
//! with `tau = 1/2` the Weyl rule. Matrices carry the grid quadrature
//! weight, so operator composition is plain matrix multiplication.
//!
//! The group-grid one builds the same double integral over H^1 = R^3 for a
//! symbol produced from one Fourier-side kernel through the slot map
//! `a(h, nu) = k((tL_h^-1) nu)`; the inner integral is evaluated in the
//! substituted variable, so the quantization-parameter independence of the
//! convolution symbol is exercised directly (the parameter enters only
//! through `L_{tau h + (1-tau) g}(h - g)`).

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fft::dual_step;
use crate::grid::{GridKernel, GridSpec};
use crate::heisenberg::{l_matrix, GroupPoint};

/// Symmetric 1-D grid for discretized wavefunctions, with its FFT-dual
/// momentum grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveGrid {
    pub count: usize,
    pub halfwidth: f64,
}

impl WaveGrid {
    pub fn new(count: usize, halfwidth: f64) -> Result<WaveGrid> {
        if !count.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(count));
        }
        Ok(WaveGrid { count, halfwidth })
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.halfwidth / self.count as f64
    }

    pub fn dkappa(&self) -> f64 {
        dual_step(self.count, self.dx())
    }

    /// Position samples `(j - M/2) dx`.
    pub fn points(&self) -> Vec<f64> {
        crate::fft::centered_coords(self.count, self.dx())
    }

    /// Momentum samples dual to [`WaveGrid::points`].
    pub fn dual_points(&self) -> Vec<f64> {
        crate::fft::centered_coords(self.count, self.dkappa())
    }

    /// Indices with `|x_j| <= fraction * halfwidth`, used to exclude
    /// boundary rows from tolerance checks.
    pub fn interior(&self, fraction: f64) -> Vec<usize> {
        self.points()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v.abs() <= fraction * self.halfwidth)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Dense operator on a [`WaveGrid`]; entries include the cell quadrature
/// weight so that composition is the matrix product.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub grid: WaveGrid,
    pub entries: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn zeros(grid: WaveGrid) -> Self {
        let m = grid.count;
        OperatorMatrix { grid, entries: DMatrix::zeros(m, m) }
    }

    pub fn identity(grid: WaveGrid) -> Self {
        let m = grid.count;
        OperatorMatrix { grid, entries: DMatrix::identity(m, m) }
    }

    /// Multiplication by the coordinate.
    pub fn position(grid: WaveGrid) -> Self {
        let mut out = Self::zeros(grid);
        for (j, v) in grid.points().iter().enumerate() {
            out.entries[(j, j)] = Complex64::new(*v, 0.0);
        }
        out
    }

    /// The operator `(1/i) d/dx`, built spectrally (equals the Weyl
    /// quantization of `xi`).
    pub fn derivative(grid: WaveGrid) -> Self {
        quantize_tau(|_, xi| Complex64::new(xi, 0.0), 0.5, grid)
    }

    pub fn mul(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(OperatorMatrix { grid: self.grid, entries: &self.entries * &other.entries })
    }

    pub fn add(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(OperatorMatrix { grid: self.grid, entries: &self.entries + &other.entries })
    }

    pub fn sub(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(OperatorMatrix { grid: self.grid, entries: &self.entries - &other.entries })
    }

    pub fn scale(&self, c: Complex64) -> OperatorMatrix {
        OperatorMatrix { grid: self.grid, entries: self.entries.map(|v| v * c) }
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix { grid: self.grid, entries: self.entries.adjoint() }
    }

    /// `max |A - A^*|` entrywise.
    pub fn hermitian_deviation(&self) -> f64 {
        let adj = self.entries.adjoint();
        self.entries
            .iter()
            .zip(adj.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        Float::sqrt(self.entries.iter().map(|v| v.norm_sqr()).sum::<f64>())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.grid.count).map(|i| self.entries[(i, i)]).sum()
    }

    pub fn apply(&self, u: &DVector<Complex64>) -> DVector<Complex64> {
        &self.entries * u
    }

    /// Eigendecomposition for Hermitian operators: ascending real
    /// eigenvalues and the matching unitary column basis.
    pub fn eigensystem_hermitian(&self, tol: f64) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
        let dev = self.hermitian_deviation();
        if dev > tol {
            return Err(Error::NonHermitian { deviation: dev });
        }
        let sym = nalgebra::linalg::SymmetricEigen::new(self.entries.clone());
        let mut order: Vec<usize> = (0..sym.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| sym.eigenvalues[a].partial_cmp(&sym.eigenvalues[b]).unwrap());
        let vals: Vec<f64> = order.iter().map(|&i| sym.eigenvalues[i]).collect();
        let m = self.grid.count;
        let mut vecs = DMatrix::zeros(m, m);
        for (col, &i) in order.iter().enumerate() {
            vecs.set_column(col, &sym.eigenvectors.column(i));
        }
        Ok((vals, vecs))
    }
}

/// `AB - BA`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Quantizes a bivariate symbol with slot parameter `tau` in `[0, 1]`
/// (`1/2` = Weyl). Direct evaluation of the double integral: exact for the
/// identity and for symbols polynomial in each slot, band-limited accurate
/// otherwise.
pub fn quantize_tau<F>(a: F, tau: f64, grid: WaveGrid) -> OperatorMatrix
where
    F: Fn(f64, f64) -> Complex64,
{
    let m = grid.count;
    let xs = grid.points();
    let ks = grid.dual_points();
    let weight = grid.dx() * grid.dkappa() / (2.0 * core::f64::consts::PI);
    // phase[d + m - 1][mm] = exp(i d dx kappa_mm)
    let phases = phase_table(&ks, grid.dx());
    let mut entries = DMatrix::zeros(m, m);
    for j in 0..m {
        for k in 0..m {
            let c = tau * xs[j] + (1.0 - tau) * xs[k];
            let row = &phases[(j as isize - k as isize + m as isize - 1) as usize];
            let mut acc = Complex64::new(0.0, 0.0);
            for (mm, &kap) in ks.iter().enumerate() {
                acc += a(c, kap) * row[mm];
            }
            entries[(j, k)] = acc * weight;
        }
    }
    OperatorMatrix { grid, entries }
}

/// Weyl quantization from a pre-sampled symbol table: `table[u * M + mm]`
/// holds `a(c_u, kappa_mm)` on the midpoint grid `c_u = (u - M) dx / 2`,
/// `u = 0..2M-2`. This is the fast path used by the representation layer.
pub fn quantize_weyl_sampled(table: &[Complex64], grid: WaveGrid) -> OperatorMatrix {
    let m = grid.count;
    assert_eq!(table.len(), (2 * m - 1) * m, "midpoint table size mismatch");
    let ks = grid.dual_points();
    let weight = grid.dx() * grid.dkappa() / (2.0 * core::f64::consts::PI);
    let phases = phase_table(&ks, grid.dx());
    let mut entries = DMatrix::zeros(m, m);
    for j in 0..m {
        for k in 0..m {
            let u = j + k; // midpoint index
            let row = &phases[(j as isize - k as isize + m as isize - 1) as usize];
            let tbl = &table[u * m..(u + 1) * m];
            let mut acc = Complex64::new(0.0, 0.0);
            for (t, p) in tbl.iter().zip(row) {
                acc += t * p;
            }
            entries[(j, k)] = acc * weight;
        }
    }
    OperatorMatrix { grid, entries }
}

/// Midpoint coordinates `c_u = (u - M) dx / 2` matching
/// [`quantize_weyl_sampled`].
pub fn weyl_midpoints(grid: WaveGrid) -> Vec<f64> {
    let m = grid.count;
    (0..2 * m - 1).map(|u| (u as f64 - m as f64) * grid.dx() / 2.0).collect()
}

fn phase_table(ks: &[f64], dx: f64) -> Vec<Vec<Complex64>> {
    let m = ks.len();
    (0..2 * m - 1)
        .map(|di| {
            let d = di as isize - (m as isize - 1);
            ks.iter()
                .map(|&kap| {
                    let ang = d as f64 * dx * kap;
                    Complex64::new(Float::cos(ang), Float::sin(ang))
                })
                .collect()
        })
        .collect()
}

/// A bivariate symbol sampled on the wave grid and its dual.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylSymbolGrid {
    pub grid: WaveGrid,
    /// Row-major over `(position index, momentum index)`.
    pub values: Vec<Complex64>,
}

impl WeylSymbolGrid {
    pub fn get(&self, r: usize, mm: usize) -> Complex64 {
        self.values[r * self.grid.count + mm]
    }
}

/// Wigner-type extraction of the Weyl symbol of a matrix:
///
/// ```text
/// a(x_r, xi) = sum_s exp(-i xi s) K(x_r + s/2, x_r - s/2) ds
/// ```
///
/// realized over one difference period with odd offsets split between the
/// two neighboring midpoints. Left-inverse of the `tau = 1/2` quantization:
/// exact on quantized symbols `{1, x, xi, x^2, xi^2, x xi}` at interior
/// rows, band-limited accurate in general.
pub fn weyl_symbol_of(a: &OperatorMatrix) -> WeylSymbolGrid {
    let m = a.grid.count;
    let ks = a.grid.dual_points();
    let dx = a.grid.dx();
    let mut values = vec![Complex64::new(0.0, 0.0); m * m];
    let half = m as isize / 2;
    for r in 0..m as isize {
        for (sum, w) in [(2 * r, 1.0), (2 * r - 1, 0.5), (2 * r + 1, 0.5)] {
            // pairs (j, k) with j + k = sum and one period of differences
            let j_lo = core::cmp::max(0, sum - (m as isize - 1));
            let j_hi = core::cmp::min(m as isize - 1, sum);
            for j in j_lo..=j_hi {
                let k = sum - j;
                let d = j - k;
                if d < -half || d >= half {
                    continue;
                }
                let entry = a.entries[(j as usize, k as usize)] * w;
                let row = &mut values[(r as usize) * m..(r as usize + 1) * m];
                for (mm, &kap) in ks.iter().enumerate() {
                    let ang = -(d as f64) * dx * kap;
                    row[mm] += entry * Complex64::new(Float::cos(ang), Float::sin(ang));
                }
            }
        }
    }
    WeylSymbolGrid { grid: a.grid, values }
}

/// A bivariate symbol sampled on the double-density midpoint grid
/// `c_u = (u - M) dx / 2` and the dual momentum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MidpointSymbolGrid {
    pub grid: WaveGrid,
    /// Row-major over `(midpoint index u = 0..2M-2, momentum index)`.
    pub values: Vec<Complex64>,
}

impl MidpointSymbolGrid {
    pub fn get(&self, u: usize, mm: usize) -> Complex64 {
        self.values[u * self.grid.count + mm]
    }

    /// Midpoint coordinates of the rows.
    pub fn midpoints(&self) -> Vec<f64> {
        weyl_midpoints(self.grid)
    }
}

/// Weyl symbol on the midpoint grid: row `u` sums only differences of its
/// own parity, which reads the symbol at `c_u` with no midpoint bias. The
/// price is an alias image at `xi +- pi/dx`; use this extraction for
/// Gaussian-class symbols that vanish there, and [`weyl_symbol_of`] for
/// polynomial ones.
pub fn weyl_symbol_midpoints(a: &OperatorMatrix) -> MidpointSymbolGrid {
    let m = a.grid.count;
    let ks = a.grid.dual_points();
    let dx = a.grid.dx();
    let quarter = m as isize / 4;
    let mut values = vec![Complex64::new(0.0, 0.0); (2 * m - 1) * m];
    for u in 0..(2 * m - 1) as isize {
        let parity = (u % 2) as isize;
        let row = &mut values[(u as usize) * m..(u as usize + 1) * m];
        for l in -quarter..quarter {
            let d = 2 * l + parity;
            let j = (u + d) / 2;
            let k = (u - d) / 2;
            if j < 0 || j >= m as isize || k < 0 || k >= m as isize {
                continue;
            }
            let entry = a.entries[(j as usize, k as usize)] * 2.0;
            for (mm, &kap) in ks.iter().enumerate() {
                let ang = -(d as f64) * dx * kap;
                row[mm] += entry * Complex64::new(Float::cos(ang), Float::sin(ang));
            }
        }
    }
    MidpointSymbolGrid { grid: a.grid, values }
}

/// Relative mass of the outer eighth of a sampled profile; the bandwidth
/// diagnostic for Gaussian-class symbols.
pub fn fourier_tail_mass(samples: &[Complex64]) -> f64 {
    let n = samples.len();
    let band = n / 8;
    let total: f64 = samples.iter().map(|v| v.norm()).sum();
    if total == 0.0 {
        return 0.0;
    }
    let tail: f64 = samples[..band]
        .iter()
        .chain(&samples[n - band..])
        .map(|v| v.norm())
        .sum();
    tail / total
}

/// The group-grid quantization at slot parameter `tau`: a dense matrix over
/// the flattened H^1 grid with entries
///
/// ```text
/// E[h][g] = (2 pi)^-3 dvol sum_nu k(nu) exp(i < L_c (h - g), nu >) dnu,
/// c = tau h + (1 - tau) g,
/// ```
///
/// the inner integral already written in the substituted variable (the form
/// the segment identity produces). In the continuum this is the left
/// convolution by the reflected kernel `g -> k(g^-1)`; the reflection is the
/// `-I` inside `L`.
pub fn tau_pdo_group<F>(khat: F, tau: f64, spec: &GridSpec) -> DMatrix<Complex64>
where
    F: Fn(f64, f64, f64) -> Complex64,
{
    let dual = spec.dual();
    let table = GridKernel::from_fn(dual, &khat);
    let (st, sx, sy) = (dual.t.size, dual.x.size, dual.y.size);
    let (ts, xs, ys) = (dual.t.coords(), dual.x.coords(), dual.y.coords());
    let l = spec.len();
    let scale = Float::powf(2.0 * core::f64::consts::PI, -3.0)
        * spec.cell_volume()
        * dual.t.step()
        * dual.x.step()
        * dual.y.step();

    // flattened group points in spec.index order
    let mut points = Vec::with_capacity(l);
    for ix in 0..spec.x.size {
        for iy in 0..spec.y.size {
            for it in 0..spec.t.size {
                let g = GroupPoint::h1(
                    spec.t.coords()[it],
                    spec.x.coords()[ix],
                    spec.y.coords()[iy],
                );
                points.push(g);
            }
        }
    }

    let mut entries = DMatrix::zeros(l, l);
    let mut pt = vec![Complex64::new(0.0, 0.0); st];
    let mut px = vec![Complex64::new(0.0, 0.0); sx];
    let mut py = vec![Complex64::new(0.0, 0.0); sy];
    for (row, h) in points.iter().enumerate() {
        for (col, g) in points.iter().enumerate() {
            let c = GroupPoint::h1(
                tau * h.t + (1.0 - tau) * g.t,
                tau * h.x[0] + (1.0 - tau) * g.x[0],
                tau * h.y[0] + (1.0 - tau) * g.y[0],
            );
            let s = [h.t - g.t, h.x[0] - g.x[0], h.y[0] - g.y[0]];
            let w = l_matrix(&c).apply(&s);
            for (i, &t) in ts.iter().enumerate() {
                let ang = w[0] * t;
                pt[i] = Complex64::new(Float::cos(ang), Float::sin(ang));
            }
            for (i, &x) in xs.iter().enumerate() {
                let ang = w[1] * x;
                px[i] = Complex64::new(Float::cos(ang), Float::sin(ang));
            }
            for (i, &y) in ys.iter().enumerate() {
                let ang = w[2] * y;
                py[i] = Complex64::new(Float::cos(ang), Float::sin(ang));
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for ix in 0..sx {
                for iy in 0..sy {
                    let krow = &table.values[dual.index(0, ix, iy)..dual.index(0, ix, iy) + st];
                    let mut inner = Complex64::new(0.0, 0.0);
                    for (kv, p) in krow.iter().zip(&pt) {
                        inner += kv * p;
                    }
                    acc += inner * px[ix] * py[iy];
                }
            }
            entries[(row, col)] = acc * scale;
        }
    }
    entries
}

/// Relative Frobenius distance between two dense matrices.
pub fn rel_frobenius(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let diff = Float::sqrt((a - b).iter().map(|v| v.norm_sqr()).sum::<f64>());
    let base = Float::sqrt(b.iter().map(|v| v.norm_sqr()).sum::<f64>());
    diff / base
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn grid128() -> WaveGrid {
        WaveGrid::new(128, 10.0).unwrap()
    }

    #[test]
    fn wave_grid_rejects_non_power_of_two() {
        assert_eq!(WaveGrid::new(100, 10.0).unwrap_err(), Error::NotPowerOfTwo(100));
    }

    #[test]
    fn constant_symbol_is_identity() {
        let g = grid128();
        let a = quantize_tau(|_, _| c(1.0), 0.25, g);
        let dev = a.sub(&OperatorMatrix::identity(g)).unwrap().max_abs();
        assert!(dev <= 1e-8, "off-identity mass {dev}");
    }

    #[test]
    fn xi_symbol_differentiates_gaussians() {
        let g = grid128();
        let d = quantize_tau(|_, xi| c(xi), 0.5, g);
        let xs = g.points();
        let u = DVector::from_iterator(
            g.count,
            xs.iter().map(|&x| c((-x * x / 2.0).exp())),
        );
        let du = d.apply(&u);
        // (1/i) d/dx exp(-x^2/2) = i x exp(-x^2/2)
        for &j in g.interior(0.6).iter() {
            let expect = Complex64::new(0.0, xs[j]) * (-xs[j] * xs[j] / 2.0).exp();
            assert!((du[j] - expect).norm() <= 1e-6);
        }
    }

    fn gaussian_state(g: WaveGrid, x0: f64, k0: f64) -> DVector<Complex64> {
        DVector::from_iterator(
            g.count,
            g.points().iter().map(|&x| {
                Complex64::new(0.0, k0 * x).exp() * (-(x - x0) * (x - x0) / 2.0).exp()
            }),
        )
    }

    #[test]
    fn tau_extremes_order_the_product() {
        let g = grid128();
        let xd = quantize_tau(|x, xi| c(x * xi), 1.0, g);
        let dx_op = quantize_tau(|x, xi| c(x * xi), 0.0, g);
        let x_op = OperatorMatrix::position(g);
        let d_op = OperatorMatrix::derivative(g);
        // tau = 1 puts the coordinate on the output slot, tau = 0 on the
        // input slot; both are exact matrix identities
        let xd_expect = x_op.mul(&d_op).unwrap();
        let dx_expect = d_op.mul(&x_op).unwrap();
        assert!(xd.sub(&xd_expect).unwrap().max_abs() <= 1e-9 * xd_expect.max_abs());
        assert!(dx_op.sub(&dx_expect).unwrap().max_abs() <= 1e-9 * dx_expect.max_abs());
        // D X - X D acts as -i on band-limited states
        let diff = dx_expect.sub(&xd_expect).unwrap();
        let u = gaussian_state(g, 0.5, 1.0);
        let v = diff.apply(&u);
        for &j in g.interior(0.6).iter() {
            let expect = Complex64::new(0.0, -1.0) * u[j];
            assert!((v[j] - expect).norm() <= 1e-6);
        }
    }

    #[test]
    fn weyl_quantization_of_real_symbols_is_hermitian() {
        let g = grid128();
        let a = quantize_tau(|x, xi| c(x * x + xi * xi), 0.5, g);
        assert!(a.hermitian_deviation() <= 1e-10);
    }

    #[test]
    fn commutator_of_position_and_derivative() {
        let g = grid128();
        let x = OperatorMatrix::position(g);
        let d = OperatorMatrix::derivative(g);
        let comm = commutator(&x, &d).unwrap();
        // [X, D] = i on band-limited states (the matrix itself carries the
        // usual spectral-derivative ringing off the band)
        let u = gaussian_state(g, -0.3, 0.7);
        let v = comm.apply(&u);
        for &j in g.interior(0.6).iter() {
            let expect = Complex64::new(0.0, 1.0) * u[j];
            assert!((v[j] - expect).norm() <= 1e-6);
        }
        // antisymmetry is exact
        let neg = commutator(&d, &x).unwrap();
        let s = comm.add(&neg).unwrap().max_abs();
        assert!(s == 0.0);
        // self-commutator vanishes
        assert!(commutator(&x, &x).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn weyl_symbol_of_identity_is_one() {
        let g = grid128();
        let sym = weyl_symbol_of(&OperatorMatrix::identity(g));
        // rows within M/4 of the edge lack the full difference window
        let interior = g.interior(0.45);
        for &r in &interior {
            for mm in 0..g.count {
                assert!((sym.get(r, mm) - c(1.0)).norm() <= 1e-6);
            }
        }
    }

    #[test]
    fn weyl_symbol_roundtrip_on_quadratics() {
        let g = grid128();
        let a = quantize_tau(|x, xi| c(x * x + xi * xi), 0.5, g);
        let sym = weyl_symbol_of(&a);
        let xs = g.points();
        let ks = g.dual_points();
        let interior = g.interior(0.45);
        for &r in &interior {
            for (mm, &kap) in ks.iter().enumerate() {
                if kap.abs() > 0.5 * ks.last().unwrap().abs() {
                    continue;
                }
                let expect = xs[r] * xs[r] + kap * kap;
                let got = sym.get(r, mm);
                assert!(
                    (got - c(expect)).norm() <= 1e-6 * (1.0 + expect.abs()),
                    "at ({r},{mm}): {got} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn weyl_symbol_of_symmetrized_product_is_x_xi() {
        let g = grid128();
        let x = OperatorMatrix::position(g);
        let d = OperatorMatrix::derivative(g);
        let sym_op = x.mul(&d).unwrap().add(&d.mul(&x).unwrap()).unwrap().scale(c(0.5));
        let sym = weyl_symbol_of(&sym_op);
        let xs = g.points();
        let ks = g.dual_points();
        for &r in g.interior(0.45).iter() {
            for (mm, &kap) in ks.iter().enumerate() {
                if kap.abs() > 0.5 * ks.last().unwrap().abs() {
                    continue;
                }
                let expect = xs[r] * kap;
                assert!((sym.get(r, mm) - c(expect)).norm() <= 1e-6 * (1.0 + expect.abs()));
            }
        }
    }

    #[test]
    fn quantize_extract_roundtrip_on_band_limited_symbol() {
        let g = grid128();
        let a = |x: f64, xi: f64| c((-(x * x + xi * xi) / 2.0).exp());
        let op = quantize_tau(a, 0.5, g);
        let sym = weyl_symbol_midpoints(&op);
        let cs = sym.midpoints();
        let ks = g.dual_points();
        let m = g.count;
        for u in (m / 2)..(3 * m / 2) {
            for (mm, &kap) in ks.iter().enumerate() {
                if kap.abs() > 0.5 * ks.last().unwrap().abs() {
                    continue;
                }
                let expect = a(cs[u], kap);
                assert!(
                    (sym.get(u, mm) - expect).norm() <= 1e-6,
                    "at u={u}, mm={mm}: {} vs {expect}",
                    sym.get(u, mm)
                );
            }
        }
        // the integer-row extraction carries a second-order midpoint bias on
        // curved symbols; it stays below a grid-step-squared budget
        let coarse = weyl_symbol_of(&op);
        let dx2 = g.dx() * g.dx();
        for &r in g.interior(0.45).iter() {
            let got = coarse.get(r, m / 2);
            let expect = a(g.points()[r], 0.0);
            assert!((got - expect).norm() <= 0.5 * dx2);
        }
    }

    #[test]
    fn hermitian_eigensystem_of_oscillator() {
        let g = grid128();
        let h = quantize_tau(|x, xi| c((x * x + xi * xi) / 2.0), 0.5, g);
        let (vals, vecs) = h.eigensystem_hermitian(1e-10).unwrap();
        // low levels of the discretized oscillator are n + 1/2
        for n in 0..10 {
            assert!(
                (vals[n] - (n as f64 + 0.5)).abs() <= 1e-8,
                "level {n}: {}",
                vals[n]
            );
        }
        // columns are orthonormal
        let gram = vecs.adjoint() * &vecs;
        let dev = (0..g.count)
            .flat_map(|i| (0..g.count).map(move |j| (i, j)))
            .map(|(i, j)| {
                let expect = if i == j { c(1.0) } else { c(0.0) };
                (gram[(i, j)] - expect).norm()
            })
            .fold(0.0, f64::max);
        assert!(dev <= 1e-10);
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let g = WaveGrid::new(8, 4.0).unwrap();
        let mut a = OperatorMatrix::identity(g);
        a.entries[(0, 1)] = Complex64::new(0.0, 0.5);
        assert!(matches!(
            a.eigensystem_hermitian(1e-10),
            Err(Error::NonHermitian { .. })
        ));
    }

    #[test]
    fn tail_mass_flags_under_resolved_profiles() {
        // an impulse spreads over all of the dual side; a smooth Gaussian
        // concentrates in the center
        let n = 64;
        let smooth: Vec<Complex64> = (0..n)
            .map(|i| {
                let x = (i as f64 - 32.0) / 4.0;
                c((-x * x / 2.0).exp())
            })
            .collect();
        assert!(fourier_tail_mass(&smooth) <= 1e-6);
        let flat: Vec<Complex64> = (0..n).map(|_| c(1.0)).collect();
        assert!(fourier_tail_mass(&flat) > 1e-2);
    }

    fn gaussian_hat(w: f64) -> impl Fn(f64, f64, f64) -> Complex64 {
        move |t, x, y| c((-(t * t + x * x + y * y) / (2.0 * w * w)).exp())
    }

    #[test]
    fn group_pdo_is_independent_of_the_slot_parameter() {
        let spec = GridSpec::cubic(8, 6.0).unwrap();
        let khat = gaussian_hat(0.5);
        let base = tau_pdo_group(&khat, 0.5, &spec);
        for &tau in &[0.0, 0.25, 0.75, 1.0] {
            let other = tau_pdo_group(&khat, tau, &spec);
            let rel = rel_frobenius(&other, &base);
            assert!(rel <= 1e-8, "tau {tau} deviates by {rel}");
        }
    }

    #[test]
    fn group_pdo_matches_reflected_convolution_kernel() {
        // In the continuum the entries are (2 pi)^(-3/2) k(g * h^-1) dvol
        // with k the position-side kernel; for a Gaussian symbol k is again
        // an explicit Gaussian. The dual-box quadrature sees k periodized
        // with period 2 * extent per axis (the twist can run many periods),
        // so the oracle sums the periodic images.
        let spec = GridSpec::cubic(8, 6.0).unwrap();
        let w = 0.5;
        let e = tau_pdo_group(gaussian_hat(w), 0.5, &spec);
        let n = (2.0 * core::f64::consts::PI).powf(-1.5);
        let period = 2.0 * spec.t.extent;
        let k_per = |t: f64, x: f64, y: f64| {
            let mut acc = 0.0;
            // x, y need only the nearest images; t needs all images the
            // twist can reach
            let images = (2.0 * (spec.x.extent * spec.y.extent) * 2.0 / period).ceil() as i64 + 2;
            for jx in -1i64..=1 {
                let xj = x + period * jx as f64;
                for jy in -1i64..=1 {
                    let yj = y + period * jy as f64;
                    for j in -images..=images {
                        let tj = t + period * j as f64;
                        acc += w.powi(3) * (-w * w * (tj * tj + xj * xj + yj * yj) / 2.0).exp();
                    }
                }
            }
            acc
        };
        let mut points = alloc::vec::Vec::new();
        for ix in 0..spec.x.size {
            for iy in 0..spec.y.size {
                for it in 0..spec.t.size {
                    points.push(GroupPoint::h1(
                        spec.t.coords()[it],
                        spec.x.coords()[ix],
                        spec.y.coords()[iy],
                    ));
                }
            }
        }
        let mut expect = DMatrix::zeros(points.len(), points.len());
        for (row, h) in points.iter().enumerate() {
            for (col, g) in points.iter().enumerate() {
                let gh = g.multiply(&h.inverse());
                expect[(row, col)] = c(n * k_per(gh.t, gh.x[0], gh.y[0]) * spec.cell_volume());
            }
        }
        let rel = rel_frobenius(&e, &expect);
        assert!(rel <= 1e-2, "group PDO vs reflected convolution kernel: {rel}");
    }
}
