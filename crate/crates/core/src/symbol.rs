//! Analytic symbols: Gaussian-polynomial families on the Fourier side.
//!
//! A [`SymbolFunction`] stores the Euclidean Fourier transform of an algebra
//! element as a finite sum of terms `c * nu^alpha * G(nu)`, where the
//! Gaussian factor has one of three modes: a fixed width, none at all (pure
//! polynomial, standing in for distribution-type kernels), or the
//! dilation-invariant mode `exp(-(|x|^2+|y|^2)/(2|t|))` used for the
//! degree-0 homogeneous catalog entry. The class is closed under addition,
//! scalar multiplication, products and (except for the dilation-invariant
//! mode) partial differentiation, which is what the Poisson bracket and the
//! classical dynamics run on.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::heisenberg::{l_transpose_inverse, GroupPoint};

/// Gaussian factor of a symbol term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GaussianWidth {
    /// `exp(-|nu|^2 / (2 w^2))` with fixed `w > 0`.
    Finite(f64),
    /// No damping; a pure polynomial term.
    Infinite,
    /// `exp(-(|x|^2 + |y|^2) / (2 scale |t|))`: invariant under the dual
    /// dilations `(t, x, y) -> (tau^2 t, tau x, tau y)` for any fixed
    /// `scale > 0`. Zero on the `t = 0` slice away from the origin
    /// (pointwise limit); defined as zero there.
    CentralScaled { scale: f64 },
}

/// One term `coeff * t^tp * prod x_j^xp_j * prod y_j^yp_j * gaussian`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolTerm {
    pub coeff: Complex64,
    pub t_pow: u32,
    pub x_pows: Vec<u32>,
    pub y_pows: Vec<u32>,
    pub width: GaussianWidth,
}

impl SymbolTerm {
    fn eval(&self, nu_t: f64, nu_x: &[f64], nu_y: &[f64]) -> Complex64 {
        let mut mono = Float::powi(nu_t, self.t_pow as i32);
        for (v, &p) in nu_x.iter().zip(&self.x_pows) {
            mono *= Float::powi(*v, p as i32);
        }
        for (v, &p) in nu_y.iter().zip(&self.y_pows) {
            mono *= Float::powi(*v, p as i32);
        }
        let damp = match self.width {
            GaussianWidth::Finite(w) => {
                let r2 = nu_t * nu_t
                    + nu_x.iter().map(|v| v * v).sum::<f64>()
                    + nu_y.iter().map(|v| v * v).sum::<f64>();
                Float::exp(-r2 / (2.0 * w * w))
            }
            GaussianWidth::Infinite => 1.0,
            GaussianWidth::CentralScaled { scale } => {
                let r2 = nu_x.iter().map(|v| v * v).sum::<f64>()
                    + nu_y.iter().map(|v| v * v).sum::<f64>();
                if nu_t == 0.0 {
                    if r2 == 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    Float::exp(-r2 / (2.0 * scale * nu_t.abs()))
                }
            }
        };
        self.coeff * mono * damp
    }

    fn degree(&self) -> u32 {
        self.t_pow + self.x_pows.iter().sum::<u32>() + self.y_pows.iter().sum::<u32>()
    }
}

/// A finite Gaussian-polynomial sum, evaluable anywhere on R^(2n+1).
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolFunction {
    n: usize,
    pub terms: Vec<SymbolTerm>,
    /// When set, `k(-nu) = conj(k(nu))` is claimed (kernel is real).
    pub real_kernel: bool,
    /// When set, the symbol claims invariance under the dual dilations.
    pub degree_zero_homogeneous: bool,
}

impl SymbolFunction {
    pub fn new(n: usize, terms: Vec<SymbolTerm>) -> Self {
        assert!(n >= 1);
        for t in &terms {
            assert_eq!(t.x_pows.len(), n);
            assert_eq!(t.y_pows.len(), n);
            if let GaussianWidth::Finite(w) = t.width {
                assert!(w > 0.0, "Gaussian width must be positive");
            }
        }
        SymbolFunction { n, terms, real_kernel: false, degree_zero_homogeneous: false }
    }

    pub fn zero(n: usize) -> Self {
        SymbolFunction::new(n, vec![])
    }

    pub fn constant(n: usize, c: Complex64) -> Self {
        SymbolFunction::new(
            n,
            vec![SymbolTerm {
                coeff: c,
                t_pow: 0,
                x_pows: vec![0; n],
                y_pows: vec![0; n],
                width: GaussianWidth::Infinite,
            }],
        )
    }

    /// `coeff * t^tp * x^xp * y^yp` (pure polynomial).
    pub fn monomial(n: usize, coeff: Complex64, t_pow: u32, x_pows: Vec<u32>, y_pows: Vec<u32>) -> Self {
        SymbolFunction::new(
            n,
            vec![SymbolTerm { coeff, t_pow, x_pows, y_pows, width: GaussianWidth::Infinite }],
        )
    }

    /// Centered Gaussian `coeff * exp(-|nu|^2/(2 w^2))`.
    pub fn gaussian(n: usize, coeff: Complex64, w: f64) -> Self {
        let mut s = SymbolFunction::new(
            n,
            vec![SymbolTerm {
                coeff,
                t_pow: 0,
                x_pows: vec![0; n],
                y_pows: vec![0; n],
                width: GaussianWidth::Finite(w),
            }],
        );
        s.real_kernel = coeff.im == 0.0;
        s
    }

    /// Monomial times centered Gaussian.
    pub fn gaussian_monomial(
        n: usize,
        coeff: Complex64,
        t_pow: u32,
        x_pows: Vec<u32>,
        y_pows: Vec<u32>,
        w: f64,
    ) -> Self {
        SymbolFunction::new(
            n,
            vec![SymbolTerm { coeff, t_pow, x_pows, y_pows, width: GaussianWidth::Finite(w) }],
        )
    }

    /// The dilation-invariant entry
    /// `coeff * exp(-(|x|^2+|y|^2)/(2 scale |t|))`.
    pub fn central_homogeneous(n: usize, coeff: Complex64, scale: f64) -> Self {
        assert!(scale > 0.0);
        let mut s = SymbolFunction::new(
            n,
            vec![SymbolTerm {
                coeff,
                t_pow: 0,
                x_pows: vec![0; n],
                y_pows: vec![0; n],
                width: GaussianWidth::CentralScaled { scale },
            }],
        );
        s.degree_zero_homogeneous = true;
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest total monomial degree over the terms.
    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(SymbolTerm::degree).max().unwrap_or(0)
    }

    /// Whether every term carries Gaussian damping.
    pub fn is_gaussian_damped(&self) -> bool {
        self.terms.iter().all(|t| !matches!(t.width, GaussianWidth::Infinite))
    }

    pub fn eval(&self, nu_t: f64, nu_x: &[f64], nu_y: &[f64]) -> Complex64 {
        assert_eq!(nu_x.len(), self.n);
        assert_eq!(nu_y.len(), self.n);
        self.terms.iter().map(|t| t.eval(nu_t, nu_x, nu_y)).sum()
    }

    /// Evaluation on a flat `(t, x.., y..)` vector.
    pub fn eval_vec(&self, nu: &[f64]) -> Complex64 {
        assert_eq!(nu.len(), 2 * self.n + 1);
        self.eval(nu[0], &nu[1..=self.n], &nu[self.n + 1..])
    }

    /// Evaluation in H^1 coordinates.
    pub fn eval3(&self, nu_t: f64, nu_x: f64, nu_y: f64) -> Complex64 {
        debug_assert_eq!(self.n, 1);
        self.eval(nu_t, &[nu_x], &[nu_y])
    }

    pub fn add(&self, other: &SymbolFunction) -> SymbolFunction {
        assert_eq!(self.n, other.n);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        let mut out = SymbolFunction::new(self.n, terms);
        out.consolidate();
        out
    }

    pub fn scale(&self, c: Complex64) -> SymbolFunction {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff *= c;
        }
        out
    }

    /// Pointwise product. Gaussian widths combine through
    /// `1/w^2 = 1/w1^2 + 1/w2^2`; the dilation-invariant mode is not closed
    /// under products and is rejected.
    pub fn mul(&self, other: &SymbolFunction) -> Result<SymbolFunction> {
        assert_eq!(self.n, other.n);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let width = match (a.width, b.width) {
                    (GaussianWidth::Infinite, w) | (w, GaussianWidth::Infinite) => w,
                    (GaussianWidth::Finite(w1), GaussianWidth::Finite(w2)) => {
                        GaussianWidth::Finite(1.0 / Float::sqrt(1.0 / (w1 * w1) + 1.0 / (w2 * w2)))
                    }
                    _ => return Err(Error::UnsupportedSymbolClass),
                };
                terms.push(SymbolTerm {
                    coeff: a.coeff * b.coeff,
                    t_pow: a.t_pow + b.t_pow,
                    x_pows: a.x_pows.iter().zip(&b.x_pows).map(|(u, v)| u + v).collect(),
                    y_pows: a.y_pows.iter().zip(&b.y_pows).map(|(u, v)| u + v).collect(),
                    width,
                });
            }
        }
        let mut out = SymbolFunction::new(self.n, terms);
        out.consolidate();
        Ok(out)
    }

    /// Analytic partial derivative along one frequency axis.
    pub fn derivative(&self, axis: Axis) -> Result<SymbolFunction> {
        let mut terms = Vec::new();
        for term in &self.terms {
            match term.width {
                GaussianWidth::CentralScaled { .. } => return Err(Error::UnsupportedSymbolClass),
                GaussianWidth::Infinite => {
                    if let Some(t) = lower_power(term, axis, self.n) {
                        terms.push(t);
                    }
                }
                GaussianWidth::Finite(w) => {
                    if let Some(t) = lower_power(term, axis, self.n) {
                        terms.push(t);
                    }
                    // chain rule on the Gaussian: -nu_axis / w^2
                    let mut t = term.clone();
                    t.coeff *= Complex64::new(-1.0 / (w * w), 0.0);
                    raise_power(&mut t, axis);
                    terms.push(t);
                }
            }
        }
        let mut out = SymbolFunction::new(self.n, terms);
        out.consolidate();
        Ok(out)
    }

    /// Merges terms with identical powers and width; drops exact zeros.
    fn consolidate(&mut self) {
        let mut merged: Vec<SymbolTerm> = Vec::new();
        for t in self.terms.drain(..) {
            if let Some(m) = merged.iter_mut().find(|m| {
                m.t_pow == t.t_pow
                    && m.x_pows == t.x_pows
                    && m.y_pows == t.y_pows
                    && same_width(m.width, t.width)
            }) {
                m.coeff += t.coeff;
            } else {
                merged.push(t);
            }
        }
        merged.retain(|t| t.coeff.norm_sqr() != 0.0);
        self.terms = merged;
    }

    /// Verifies `k(-nu) = conj(k(nu))` at the given sample points.
    pub fn check_real_kernel_symmetry(&self, samples: &[Vec<f64>], tol: f64) -> bool {
        samples.iter().all(|nu| {
            let neg: Vec<f64> = nu.iter().map(|v| -v).collect();
            (self.eval_vec(&neg) - self.eval_vec(nu).conj()).norm() <= tol
        })
    }

    /// Verifies `k(tau^2 t, tau x, tau y) = k(t, x, y)` at sample points for
    /// the given dilation factors.
    pub fn check_degree_zero_homogeneous(&self, samples: &[Vec<f64>], taus: &[f64], tol: f64) -> bool {
        samples.iter().all(|nu| {
            let base = self.eval_vec(nu);
            taus.iter().all(|&tau| {
                let scaled: Vec<f64> = nu
                    .iter()
                    .enumerate()
                    .map(|(i, v)| if i == 0 { tau * tau * v } else { tau * v })
                    .collect();
                (self.eval_vec(&scaled) - base).norm() <= tol * (1.0 + base.norm())
            })
        })
    }
}

/// Frequency axis selector for [`SymbolFunction::derivative`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    T,
    X(usize),
    Y(usize),
}

fn same_width(a: GaussianWidth, b: GaussianWidth) -> bool {
    match (a, b) {
        (GaussianWidth::Finite(x), GaussianWidth::Finite(y)) => x == y,
        (GaussianWidth::Infinite, GaussianWidth::Infinite) => true,
        (GaussianWidth::CentralScaled { scale: x }, GaussianWidth::CentralScaled { scale: y }) => {
            x == y
        }
        _ => false,
    }
}

fn lower_power(term: &SymbolTerm, axis: Axis, _n: usize) -> Option<SymbolTerm> {
    let mut t = term.clone();
    let p = match axis {
        Axis::T => &mut t.t_pow,
        Axis::X(j) => &mut t.x_pows[j],
        Axis::Y(j) => &mut t.y_pows[j],
    };
    if *p == 0 {
        return None;
    }
    let old = *p;
    *p -= 1;
    t.coeff *= Complex64::new(old as f64, 0.0);
    Some(t)
}

fn raise_power(term: &mut SymbolTerm, axis: Axis) {
    match axis {
        Axis::T => term.t_pow += 1,
        Axis::X(j) => term.x_pows[j] += 1,
        Axis::Y(j) => term.y_pows[j] += 1,
    }
}

/// A classical phase-space point `(q, p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpacePoint {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
}

impl PhaseSpacePoint {
    pub fn new(q: Vec<f64>, p: Vec<f64>) -> Self {
        assert_eq!(q.len(), p.len());
        assert!(q.iter().chain(&p).all(|v| v.is_finite()));
        PhaseSpacePoint { q, p }
    }

    pub fn p1(q: f64, p: f64) -> Self {
        PhaseSpacePoint::new(vec![q], vec![p])
    }
}

/// The symbol at a fixed τ-slot point: `k((tL_h^-1)(nu))`. By the
/// segment identity `L_h(h-g) = L_{th+(1-t)g}(h-g)` this single value serves
/// every quantization parameter.
pub fn tau_symbol(k: &SymbolFunction, h: &GroupPoint, nu: &[f64]) -> Complex64 {
    k.eval_vec(&l_transpose_inverse(h).apply(nu))
}

/// Evaluates the classical fiber `k(0, q, p)`.
pub fn classical_symbol(k: &SymbolFunction, at: &PhaseSpacePoint) -> Complex64 {
    k.eval(0.0, &at.q, &at.p)
}

/// The Poisson bracket `{f, g} = sum_j df/dq_j dg/dp_j - df/dp_j dg/dq_j`
/// as a symbol (q ~ x-slot, p ~ y-slot on the classical fiber).
pub fn poisson_bracket_symbol(f: &SymbolFunction, g: &SymbolFunction) -> Result<SymbolFunction> {
    assert_eq!(f.n(), g.n());
    let mut acc = SymbolFunction::zero(f.n());
    for j in 0..f.n() {
        let fq = f.derivative(Axis::X(j))?;
        let fp = f.derivative(Axis::Y(j))?;
        let gq = g.derivative(Axis::X(j))?;
        let gp = g.derivative(Axis::Y(j))?;
        acc = acc.add(&fq.mul(&gp)?);
        acc = acc.add(&fp.mul(&gq)?.scale(Complex64::new(-1.0, 0.0)));
    }
    Ok(acc)
}

/// The Poisson bracket evaluated at a phase-space point.
pub fn poisson_bracket(
    f: &SymbolFunction,
    g: &SymbolFunction,
    at: &PhaseSpacePoint,
) -> Result<Complex64> {
    Ok(classical_symbol(&poisson_bracket_symbol(f, g)?, at))
}
