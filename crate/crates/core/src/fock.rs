//! Anti-Wick (Berezin) quantization on a truncated Fock space.
//!
//! The Fock space is spanned by `e_k(z) = z^k / sqrt(k!)`, orthonormal for
//! the Gaussian measure `pi^-1 exp(-z conj(z)) dA`. Inner products are
//! computed on a polar quadrature: Gauss-Laguerre in the squared radius
//! (exact for polynomial integrands) times a uniform angular rule. A symbol
//! `k(z, conj z)` becomes the Toeplitz operator `T_k = P k P` with entries
//! `<k e_j, e_i>`.
//!
//! The comparison with the Weyl side uses the anti-Wick-to-Weyl bridge in
//! the `z = q + ip` convention: substitute `(q, p) = (v, xi)/sqrt(2)` and
//! heat-smooth with per-coordinate variance 1/2, which reproduces the
//! Toeplitz operator exactly on polynomial symbols (the oscillator
//! spectrum `k + 1` calibrates it).

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::pdo::{quantize_tau, OperatorMatrix, WaveGrid};
use crate::symbol::{Axis, SymbolFunction};

/// Gauss-Laguerre nodes and weights for `integral_0^inf f(u) e^-u du`.
/// Newton iteration on the Laguerre recurrence; exact for polynomials of
/// degree `2n - 1`.
pub fn gauss_laguerre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2);
    let mut out = Vec::with_capacity(n);
    let mut z = 0.0f64;
    for i in 1..=n {
        if i == 1 {
            z = 3.0 / (1.0 + 2.4 * n as f64);
        } else if i == 2 {
            z += 15.0 / (1.0 + 2.5 * n as f64);
        } else {
            let ai = (i - 2) as f64;
            let prev: (f64, f64) = out[i - 3];
            z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - prev.0);
        }
        let mut pp = 0.0;
        let mut p2 = 0.0;
        for _ in 0..64 {
            let mut p1 = 1.0f64;
            p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                p1 = (((2 * j - 1) as f64 - z) * p2 - (j - 1) as f64 * p3) / j as f64;
            }
            pp = (n as f64 * p1 - n as f64 * p2) / z;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-14 * (1.0 + z.abs()) {
                break;
            }
        }
        let w = -1.0 / (pp * n as f64 * p2);
        out.push((z, w));
    }
    out
}

/// Truncated Fock basis with its polar quadrature.
#[derive(Debug, Clone)]
pub struct FockBasis {
    pub n_max: usize,
    radial: Vec<(f64, f64)>,
    angular: usize,
}

impl FockBasis {
    /// Builds the basis `e_0 .. e_n_max` with quadrature sized for symbol
    /// degrees up to about `n_max`.
    pub fn new(n_max: usize) -> FockBasis {
        assert!(n_max >= 4, "truncation must keep a few levels");
        FockBasis {
            n_max,
            radial: gauss_laguerre(2 * n_max + 8),
            angular: 4 * n_max + 16,
        }
    }

    /// The quadrature points `z` and their measure weights for
    /// `pi^-1 exp(-|z|^2) dA`.
    fn points(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        let a = self.angular;
        self.radial.iter().flat_map(move |&(u, w)| {
            let r = Float::sqrt(u);
            (0..a).map(move |ia| {
                let th = 2.0 * core::f64::consts::PI * ia as f64 / a as f64;
                (Complex64::new(r * Float::cos(th), r * Float::sin(th)), w / a as f64)
            })
        })
    }

    fn basis_value(&self, k: usize, z: Complex64) -> Complex64 {
        let mut v = Complex64::new(1.0, 0.0);
        for j in 1..=k {
            v = v * z / Float::sqrt(j as f64);
        }
        v
    }

    /// `<f, g>` under the Gaussian measure.
    pub fn inner<F, G>(&self, f: F, g: G) -> Complex64
    where
        F: Fn(Complex64) -> Complex64,
        G: Fn(Complex64) -> Complex64,
    {
        let mut acc = Complex64::new(0.0, 0.0);
        for (z, w) in self.points() {
            acc += f(z) * g(z).conj() * w;
        }
        acc
    }

    /// Deviation of the basis Gram matrix from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..=self.n_max {
            for j in 0..=self.n_max {
                let g = self.inner(|z| self.basis_value(i, z), |z| self.basis_value(j, z));
                let expect = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
                dev = dev.max((g - expect).norm());
            }
        }
        dev
    }
}

/// Coefficients of the orthogonal projection onto the truncated Fock
/// space, `c_k = <f, e_k>`. Errors out when refining the radial rule moves
/// any coefficient by more than the convergence bound.
pub fn bargmann_project<F>(basis: &FockBasis, f: F) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Complex64,
{
    let coeffs = project_with(basis, &f);
    let finer = FockBasis {
        n_max: basis.n_max,
        radial: gauss_laguerre(basis.radial.len() + 8),
        angular: basis.angular + 8,
    };
    let check = project_with(&finer, &f);
    let tail = coeffs
        .iter()
        .zip(&check)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    if tail > 1e-8 {
        return Err(Error::QuadratureNonconvergence { tail });
    }
    Ok(coeffs)
}

fn project_with<F>(basis: &FockBasis, f: &F) -> Vec<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    (0..=basis.n_max)
        .map(|k| basis.inner(f, |z| basis.basis_value(k, z)))
        .collect()
}

/// A dense operator on the truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    pub entries: DMatrix<Complex64>,
}

impl FockOperator {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let adj = self.entries.adjoint();
        self.entries
            .iter()
            .zip(adj.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Ascending eigenvalues (the operator must be Hermitian).
    pub fn eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        let dev = self.hermitian_deviation();
        if dev > tol {
            return Err(Error::NonHermitian { deviation: dev });
        }
        let eig = nalgebra::linalg::SymmetricEigen::new(self.entries.clone());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(vals)
    }
}

/// The Toeplitz operator `T_k = P k P` of a pointwise symbol on C.
pub fn toeplitz<F>(basis: &FockBasis, k: F) -> FockOperator
where
    F: Fn(Complex64) -> Complex64,
{
    let n = basis.n_max + 1;
    let mut entries = DMatrix::zeros(n, n);
    for (z, w) in basis.points() {
        let kv = k(z) * w;
        // rank-one accumulation: k(z) e_j(z) conj(e_i(z))
        let mut es = Vec::with_capacity(n);
        let mut v = Complex64::new(1.0, 0.0);
        es.push(v);
        for j in 1..n {
            v = v * z / Float::sqrt(j as f64);
            es.push(v);
        }
        for i in 0..n {
            for j in 0..n {
                entries[(i, j)] += kv * es[j] * es[i].conj();
            }
        }
    }
    FockOperator { entries }
}

/// Spectra gathered by [`compare_weyl_berezin`].
#[derive(Debug, Clone)]
pub struct WeylBerezinReport {
    /// Eigenvalues of the Toeplitz operator on the truncated space.
    pub toeplitz_spectrum: Vec<f64>,
    /// Eigenvalues of the Weyl quantization of the raw symbol.
    pub weyl_raw_spectrum: Vec<f64>,
    /// Eigenvalues of the Weyl quantization of the heat-smoothed symbol;
    /// this is the side the identification compares against the Toeplitz
    /// spectrum.
    pub weyl_smoothed_spectrum: Vec<f64>,
    /// Coordinate scale of the `z = q + ip` convention: the Weyl-side
    /// variables are `(q, p) = (v, xi) / sqrt(2)`.
    pub coordinate_scale: f64,
    /// Per-coordinate variance of the smoothing.
    pub smoothing_variance: f64,
}

/// Heat-smooths a polynomial symbol: `exp((s/2)(d_qq + d_pp)) k`, exact on
/// the finite polynomial expansion.
pub fn heat_smooth(k: &SymbolFunction, variance: f64) -> Result<SymbolFunction> {
    let mut total = k.clone();
    let mut term = k.clone();
    let mut factorial = 1.0;
    for m in 1..=((k.max_degree() / 2) as usize + 1) {
        let lap = term
            .derivative(Axis::X(0))?
            .derivative(Axis::X(0))?
            .add(&term.derivative(Axis::Y(0))?.derivative(Axis::Y(0))?);
        factorial *= m as f64;
        term = lap;
        let coeff = Float::powi(variance / 2.0, m as i32) / factorial;
        total = total.add(&term.scale(Complex64::new(coeff, 0.0)));
        if term.terms.is_empty() {
            break;
        }
    }
    Ok(total)
}

/// Builds the Toeplitz and Weyl spectra of a polynomial phase-space symbol
/// (degree at most 4) and reports them side by side. The acceptance
/// comparison is Toeplitz against the smoothed Weyl side.
pub fn compare_weyl_berezin(
    k: &SymbolFunction,
    basis: &FockBasis,
    grid: WaveGrid,
) -> Result<WeylBerezinReport> {
    if k.max_degree() > 4 {
        return Err(Error::DegreeTooHigh { degree: k.max_degree(), max: 4 });
    }
    let scale = 1.0 / Float::sqrt(2.0);
    // variance 1/2 per coordinate in the wave variables; in the (q, p)
    // variables that is 1/4 (the oscillator calibration fixes this)
    let variance = 0.5 * scale * scale;

    let t_op = toeplitz(basis, |z| k.eval3(0.0, z.re, z.im));
    let toeplitz_spectrum = t_op.eigenvalues(1e-8)?;

    let raw = quantize_tau(|v, xi| k.eval3(0.0, scale * v, scale * xi), 0.5, grid);
    let weyl_raw_spectrum = raw_spectrum(&raw)?;

    let smoothed = heat_smooth(k, variance)?;
    let sm_op = quantize_tau(|v, xi| smoothed.eval3(0.0, scale * v, scale * xi), 0.5, grid);
    let weyl_smoothed_spectrum = raw_spectrum(&sm_op)?;

    Ok(WeylBerezinReport {
        toeplitz_spectrum,
        weyl_raw_spectrum,
        weyl_smoothed_spectrum,
        coordinate_scale: scale,
        smoothing_variance: variance,
    })
}

fn raw_spectrum(op: &OperatorMatrix) -> Result<Vec<f64>> {
    let (vals, _) = op.eigensystem_hermitian(1e-8)?;
    Ok(vals)
}
