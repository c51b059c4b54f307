//! The irreducible representations of H^1 and the fiberwise view of an
//! algebra element.
//!
//! For a nonzero Planck parameter `lambda` the group acts on the wave grid
//! by
//!
//! ```text
//! pi_lambda(t, x, y) = exp(i(-lambda t I / 4
//!                            + sign(lambda) |lambda|^(1/2) y M
//!                            + |lambda|^(1/2) x D)),
//! ```
//!
//! with `M` multiplication by the coordinate and `D = (1/i) d/dv`. Two
//! points of this normalization are forced rather than chosen. First, the
//! group-element coupling: `x` rides the translation generator `D` and `y`
//! the modulation `M`, so in the induced map on kernels the second Fourier
//! slot lands on the momentum variable. Second, the central weight: the
//! canonical-commutation phase of translations and modulations composes as
//! `exp(i(x1 y2 - x2 y1) lambda / 2)`, while the group law twists the
//! center by `2(x2 y1 - x1 y2)`, so only the relative weight `-1/4` between
//! the central character and the product `(translation) x (modulation)`
//! weights makes the family a representation; with it, `(i/lambda)[A, B]`
//! converges to the `+{.,.}` Poisson bracket.
//!
//! The induced map `pi_lambda[k] = (2 pi)^(-3/2) integral k(g)
//! pi_lambda(g) dg` is then the Weyl quantization of
//!
//! ```text
//! s(v, xi) = k(lambda/4, -|lambda|^(1/2) xi, -sign(lambda) |lambda|^(1/2) v)
//! ```
//!
//! where `k(nu)` is the minus-convention Fourier transform of the kernel
//! (the quadrature oracle test below pins the whole map). The
//! one-dimensional representations give the classical fiber `k(0, q, p)`,
//! and the matching rescale map sends the symbol grid point `(v, xi)` to
//! `q = -|lambda|^(1/2) xi`, `p = -sign(lambda) |lambda|^(1/2) v`, under
//! which quantum Weyl symbols converge to the classical fiber.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::FourierInterpolant;
use crate::pdo::{
    fourier_tail_mass, quantize_weyl_sampled, weyl_midpoints, weyl_symbol_midpoints,
    weyl_symbol_of, OperatorMatrix, WaveGrid,
};
use crate::symbol::{poisson_bracket_symbol, PhaseSpacePoint, SymbolFunction};
use crate::heisenberg::GroupPoint;

/// A finite sample of the set of Planck constants (nonzero reals of either
/// sign), ordered by decreasing magnitude for limit sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanckSet {
    lambdas: Vec<f64>,
}

impl PlanckSet {
    pub fn new(mut lambdas: Vec<f64>) -> Result<PlanckSet> {
        if lambdas.iter().any(|&l| l == 0.0 || !l.is_finite()) {
            return Err(Error::ZeroPlanck);
        }
        lambdas.sort_by(|a, b| b.abs().partial_cmp(&a.abs()).unwrap());
        Ok(PlanckSet { lambdas })
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }
}

/// Uniform phase-space window `[-extent, extent]^2` sampled inclusively
/// with `count` points per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGrid {
    pub extent: f64,
    pub count: usize,
}

impl PhaseGrid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![0.0];
        }
        (0..self.count)
            .map(|i| -self.extent + 2.0 * self.extent * i as f64 / (self.count - 1) as f64)
            .collect()
    }
}

/// A complex function on a [`PhaseGrid`], `values[iq * count + ip]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMap {
    pub grid: PhaseGrid,
    pub values: Vec<Complex64>,
}

impl PhaseMap {
    pub fn get(&self, iq: usize, ip: usize) -> Complex64 {
        self.values[iq * self.grid.count + ip]
    }

    pub fn max_abs_diff(&self, other: &PhaseMap) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// The group element representation at Planck parameter `lambda`, in the
/// symmetric form `exp(i c t) D_{beta/2} T_alpha D_{beta/2}` (central phase
/// times half-modulations around a band-limited translation). This matrix
/// is exactly the sampled Weyl quantization of the exponential symbol
/// `exp(i(c t + beta v + alpha xi))`, so integrating kernels against it and
/// quantizing the integrated symbol commute to round-off; it is also
/// exactly unitary. On band-limited states it acts as the textbook
/// modulation-after-translation with the cross phase `alpha beta / 2`.
pub fn pi_point(lambda: f64, g: &GroupPoint, grid: WaveGrid) -> Result<OperatorMatrix> {
    if lambda == 0.0 {
        return Err(Error::ZeroPlanck);
    }
    assert_eq!(g.n(), 1, "wave grids are desk-scale (H^1) only");
    let s = if lambda > 0.0 { 1.0 } else { -1.0 };
    let r = Float::sqrt(lambda.abs());
    let alpha = r * g.x[0]; // translation amount
    let beta = s * r * g.y[0]; // modulation frequency
    let phase = -lambda * g.t / 4.0;

    let m = grid.count;
    let ks = grid.dual_points();
    let xs = grid.points();
    // Toeplitz band-limited translation: T[j][k] = (1/M) sum_m exp(i kappa_m (v_j - v_k + alpha))
    let mut tvals = vec![Complex64::new(0.0, 0.0); 2 * m - 1];
    for (di, tv) in tvals.iter_mut().enumerate() {
        let d = di as isize - (m as isize - 1);
        let shift = d as f64 * grid.dx() + alpha;
        let mut acc = Complex64::new(0.0, 0.0);
        for &kap in &ks {
            let ang = kap * shift;
            acc += Complex64::new(Float::cos(ang), Float::sin(ang));
        }
        *tv = acc / m as f64;
    }
    let mut entries = DMatrix::zeros(m, m);
    let global = Complex64::new(Float::cos(phase), Float::sin(phase));
    for j in 0..m {
        for k in 0..m {
            let t = tvals[(j as isize - k as isize + m as isize - 1) as usize];
            let mid = beta * (xs[j] + xs[k]) / 2.0;
            entries[(j, k)] = global * Complex64::new(Float::cos(mid), Float::sin(mid)) * t;
        }
    }
    Ok(OperatorMatrix { grid, entries })
}

/// The symbol of the `lambda`-fiber at a phase point of the wave grid.
pub fn fiber_symbol_value(k: &SymbolFunction, lambda: f64, v: f64, xi: f64) -> Complex64 {
    let s = if lambda > 0.0 { 1.0 } else { -1.0 };
    let r = Float::sqrt(lambda.abs());
    k.eval3(lambda / 4.0, -r * xi, -s * r * v)
}

fn fiber_table_analytic(k: &SymbolFunction, lambda: f64, grid: WaveGrid) -> Vec<Complex64> {
    let m = grid.count;
    let cs = weyl_midpoints(grid);
    let ks = grid.dual_points();
    let mut table = Vec::with_capacity((2 * m - 1) * m);
    for &c in &cs {
        for &kap in &ks {
            table.push(fiber_symbol_value(k, lambda, c, kap));
        }
    }
    table
}

fn fiber_table_interp(interp: &FourierInterpolant<'_>, lambda: f64, grid: WaveGrid) -> Vec<Complex64> {
    let s = if lambda > 0.0 { 1.0 } else { -1.0 };
    let r = Float::sqrt(lambda.abs());
    let m = grid.count;
    let cs = weyl_midpoints(grid);
    let ks = grid.dual_points();
    // the interpolant is periodic; beyond its fundamental domain the true
    // transform of the decayed kernel is zero, so mask instead of sampling
    // the periodic images
    let dual = interp.spec().dual();
    let mut table = vec![Complex64::new(0.0, 0.0); (2 * m - 1) * m];
    if (lambda / 4.0).abs() > dual.t.extent {
        return table;
    }
    // cosine roll-off over the outer 15% of the domain keeps the cut from
    // ringing into diagnostics (the true transform is already tiny there)
    let taper = |nu: f64, ext: f64| -> f64 {
        let a = nu.abs();
        if a > ext {
            0.0
        } else if a <= 0.85 * ext {
            1.0
        } else {
            let t = (a - 0.85 * ext) / (0.15 * ext);
            let cph = Float::cos(core::f64::consts::PI * t / 2.0);
            cph * cph
        }
    };
    let (mut mm_keep, mut nu_xs) = (Vec::new(), Vec::new());
    for (mm, &kap) in ks.iter().enumerate() {
        let nu = -r * kap;
        if nu.abs() <= dual.x.extent {
            mm_keep.push(mm);
            nu_xs.push(nu);
        }
    }
    let (mut u_keep, mut nu_ys) = (Vec::new(), Vec::new());
    for (u, &c) in cs.iter().enumerate() {
        let nu = -s * r * c;
        if nu.abs() <= dual.y.extent {
            u_keep.push(u);
            nu_ys.push(nu);
        }
    }
    let flat = interp.eval_grid(lambda / 4.0, &nu_xs, &nu_ys);
    for (ix, &mm) in mm_keep.iter().enumerate() {
        let wx = taper(nu_xs[ix], dual.x.extent);
        for (iy, &u) in u_keep.iter().enumerate() {
            let wy = taper(nu_ys[iy], dual.y.extent);
            table[u * m + mm] = flat[ix * nu_ys.len() + iy] * (wx * wy);
        }
    }
    table
}

fn bandwidth_check(table: &[Complex64], grid: WaveGrid) -> Result<()> {
    let m = grid.count;
    // momentum profile through the central midpoint row, Hann-windowed so
    // benign band-edge truncation does not ring into the tail measure
    let mut profile: Vec<Complex64> = table[m * m..(m + 1) * m].to_vec();
    for (j, v) in profile.iter_mut().enumerate() {
        let w = 0.5 * (1.0 - Float::cos(2.0 * core::f64::consts::PI * j as f64 / m as f64));
        *v *= w;
    }
    crate::fft::centered_dft(&mut profile, -1.0);
    let tail = fourier_tail_mass(&profile);
    if tail > 1e-6 {
        return Err(Error::BandwidthExceeded { tail_mass: tail });
    }
    Ok(())
}

const MAX_POLY_DEGREE: u32 = 4;

/// The quantum fiber of an analytic symbol: Weyl quantization of the
/// rescaled-slot symbol. Gaussian-class symbols are bandwidth-checked;
/// polynomial ones are held to the supported degree.
pub fn pi_lambda(k: &SymbolFunction, lambda: f64, grid: WaveGrid) -> Result<OperatorMatrix> {
    if lambda == 0.0 {
        return Err(Error::ZeroPlanck);
    }
    let table = fiber_table_analytic(k, lambda, grid);
    if k.is_gaussian_damped() {
        bandwidth_check(&table, grid)?;
    } else if k.max_degree() > MAX_POLY_DEGREE {
        return Err(Error::DegreeTooHigh { degree: k.max_degree(), max: MAX_POLY_DEGREE });
    }
    Ok(quantize_weyl_sampled(&table, grid))
}

/// The quantum fiber of a grid-backed kernel, through the trigonometric
/// interpolant of its Fourier transform. The group grid already
/// band-limits the symbol, so the applicable constraint is geometric: the
/// translations `|lambda|^(1/2) x` reached by the kernel support must fit
/// the wave grid.
pub fn pi_lambda_interp(
    interp: &FourierInterpolant<'_>,
    lambda: f64,
    grid: WaveGrid,
) -> Result<OperatorMatrix> {
    if lambda == 0.0 {
        return Err(Error::ZeroPlanck);
    }
    let r = Float::sqrt(lambda.abs());
    let reach = r * interp.spec().x.extent.max(interp.spec().y.extent);
    if reach > grid.halfwidth {
        return Err(Error::OutOfBand { required: reach, available: grid.halfwidth });
    }
    let table = fiber_table_interp(interp, lambda, grid);
    Ok(quantize_weyl_sampled(&table, grid))
}

/// The classical fiber: `k(0, q, p)` sampled on a phase grid. A family of
/// one-dimensional representations, multiplicative under the group
/// convolution.
pub fn pi_classical(k: &SymbolFunction, phase: PhaseGrid) -> PhaseMap {
    let pts = phase.points();
    let mut values = Vec::with_capacity(pts.len() * pts.len());
    for &q in &pts {
        for &p in &pts {
            values.push(k.eval3(0.0, q, p));
        }
    }
    PhaseMap { grid: phase, values }
}

/// Classical fiber of a grid-backed kernel.
pub fn pi_classical_interp(interp: &FourierInterpolant<'_>, phase: PhaseGrid) -> PhaseMap {
    let pts = phase.points();
    let flat = interp.eval_grid(0.0, &pts, &pts);
    PhaseMap { grid: phase, values: flat }
}

/// One row of a limit-sweep table.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub lambda: f64,
    pub statistic: f64,
    pub floor: f64,
    pub grid_count: usize,
}

/// Phase-space evaluation points of the `lambda`-fiber symbol grid inside a
/// window: `(row, col, q, p)` with rows indexing the extraction grid.
fn fiber_points(
    lambda: f64,
    grid: WaveGrid,
    window: f64,
    midpoint_mode: bool,
) -> Vec<(usize, usize, f64, f64)> {
    let s = if lambda > 0.0 { 1.0 } else { -1.0 };
    let r = Float::sqrt(lambda.abs());
    let m = grid.count;
    let ks = grid.dual_points();
    let kap_half = 0.5 * ks[m - 1].abs();
    let mut out = Vec::new();
    if midpoint_mode {
        let cs = weyl_midpoints(grid);
        for u in m / 2..=3 * m / 2 {
            let p = -s * r * cs[u];
            if p.abs() > window {
                continue;
            }
            for (mm, &kap) in ks.iter().enumerate() {
                if kap.abs() > kap_half {
                    continue;
                }
                let q = -r * kap;
                if q.abs() <= window {
                    out.push((u, mm, q, p));
                }
            }
        }
    } else {
        let xs = grid.points();
        for rr in m / 4..3 * m / 4 {
            let p = -s * r * xs[rr];
            if p.abs() > window {
                continue;
            }
            for (mm, &kap) in ks.iter().enumerate() {
                if kap.abs() > kap_half {
                    continue;
                }
                let q = -r * kap;
                if q.abs() <= window {
                    out.push((rr, mm, q, p));
                }
            }
        }
    }
    out
}

/// Distance of the rescaled quantum Weyl symbol from the classical fiber,
/// per Planck parameter, ordered by decreasing magnitude. The `floor`
/// column reports the quantize-extract roundtrip error at the same points.
pub fn classical_limit_sweep(
    k: &SymbolFunction,
    planck: &PlanckSet,
    window: f64,
    grid: WaveGrid,
) -> Result<Vec<SweepRow>> {
    let midpoint_mode = k.is_gaussian_damped();
    let mut rows = Vec::new();
    for &lambda in planck.lambdas() {
        let op = pi_lambda(k, lambda, grid)?;
        let (stat, floor, count) = sweep_statistic(k, &op, lambda, window, midpoint_mode, |q, p| {
            k.eval3(0.0, q, p)
        });
        rows.push(SweepRow { lambda, statistic: stat, floor, grid_count: count });
    }
    Ok(rows)
}

/// Largest distance between the rescaled Weyl symbol of an operator and a
/// reference phase-space function, over the window; also the point count.
/// Used by the limit sweeps and the fiberwise dynamics checks.
pub fn rescaled_symbol_distance<F>(
    op: &OperatorMatrix,
    lambda: f64,
    window: f64,
    midpoint_mode: bool,
    reference: F,
) -> (f64, usize)
where
    F: Fn(f64, f64) -> Complex64,
{
    let grid = op.grid;
    let pts = fiber_points(lambda, grid, window, midpoint_mode);
    let mut stat: f64 = 0.0;
    if midpoint_mode {
        let sym = weyl_symbol_midpoints(op);
        for &(u, mm, q, p) in &pts {
            stat = stat.max((sym.get(u, mm) - reference(q, p)).norm());
        }
    } else {
        let sym = weyl_symbol_of(op);
        for &(rr, mm, q, p) in &pts {
            stat = stat.max((sym.get(rr, mm) - reference(q, p)).norm());
        }
    }
    (stat, pts.len())
}

fn sweep_statistic<F>(
    k: &SymbolFunction,
    op: &OperatorMatrix,
    lambda: f64,
    window: f64,
    midpoint_mode: bool,
    reference: F,
) -> (f64, f64, usize)
where
    F: Fn(f64, f64) -> Complex64,
{
    let grid = op.grid;
    let pts = fiber_points(lambda, grid, window, midpoint_mode);
    let ks = grid.dual_points();
    let mut stat: f64 = 0.0;
    let mut floor: f64 = 0.0;
    if midpoint_mode {
        let sym = weyl_symbol_midpoints(op);
        let cs = weyl_midpoints(grid);
        for &(u, mm, q, p) in &pts {
            stat = stat.max((sym.get(u, mm) - reference(q, p)).norm());
            let direct = fiber_symbol_value(k, lambda, cs[u], ks[mm]);
            floor = floor.max((sym.get(u, mm) - direct).norm());
        }
    } else {
        let sym = weyl_symbol_of(op);
        let xs = grid.points();
        for &(rr, mm, q, p) in &pts {
            stat = stat.max((sym.get(rr, mm) - reference(q, p)).norm());
            let direct = fiber_symbol_value(k, lambda, xs[rr], ks[mm]);
            floor = floor.max((sym.get(rr, mm) - direct).norm());
        }
    }
    (stat, floor, pts.len())
}

/// Distance of `(i/lambda)` times the commutator's Weyl symbol from the
/// Poisson bracket of the classical fibers. Errors out when the rescale map
/// cannot reach the requested window from inside the momentum band.
pub fn commutator_limit(
    k1: &SymbolFunction,
    k2: &SymbolFunction,
    planck: &PlanckSet,
    window: f64,
    grid: WaveGrid,
) -> Result<Vec<SweepRow>> {
    let bracket = poisson_bracket_symbol(k1, k2)?;
    let midpoint_mode = k1.is_gaussian_damped() && k2.is_gaussian_damped();
    let kap_half = 0.5 * grid.dual_points()[grid.count - 1].abs();
    let mut rows = Vec::new();
    for &lambda in planck.lambdas() {
        let reach = Float::sqrt(lambda.abs()) * kap_half;
        if reach < window {
            return Err(Error::OutOfBand { required: window, available: reach });
        }
        let a = pi_lambda(k1, lambda, grid)?;
        let b = pi_lambda(k2, lambda, grid)?;
        let comm = crate::pdo::commutator(&a, &b)?;
        let scale = Complex64::new(0.0, 1.0 / lambda);
        let mut stat: f64 = 0.0;
        let count;
        if midpoint_mode {
            let pts = fiber_points(lambda, grid, window, true);
            count = pts.len();
            let sym = weyl_symbol_midpoints(&comm);
            for &(u, mm, q, p) in &pts {
                let field = sym.get(u, mm) * scale;
                let refv = bracket.eval3(0.0, q, p);
                stat = stat.max((field - refv).norm());
            }
        } else {
            // unbounded-symbol operators: read the field through coherent
            // states, which agrees with the Weyl field for the constant and
            // linear fields such pairs produce
            let pts = coherent_field(&comm, lambda, window, grid)?;
            count = pts.len();
            for (q, p, field) in pts {
                let refv = bracket.eval3(0.0, q, p);
                stat = stat.max((field - refv).norm());
            }
        }
        // indicative extraction floor from the first factor
        let (_, f1, _) = sweep_statistic(k1, &a, lambda, window, midpoint_mode, |q, p| {
            k1.eval3(0.0, q, p)
        });
        rows.push(SweepRow { lambda, statistic: stat, floor: f1 / lambda.abs(), grid_count: count });
    }
    Ok(rows)
}

/// The quantum bracket field `(i/lambda) [pi(k1), pi(k2)]` read through
/// coherent-state expectations at rescaled phase points. The coherent
/// read-out is the heat-smoothed Weyl symbol, hence equal to it for fields
/// constant or linear in phase space; it is immune to the off-band ringing
/// that pollutes the entrywise Weyl transform of products of unbounded
/// (polynomial-symbol) operators.
pub fn commutator_bracket_field(
    k1: &SymbolFunction,
    k2: &SymbolFunction,
    lambda: f64,
    window: f64,
    grid: WaveGrid,
) -> Result<Vec<(f64, f64, Complex64)>> {
    let a = pi_lambda(k1, lambda, grid)?;
    let b = pi_lambda(k2, lambda, grid)?;
    let comm = crate::pdo::commutator(&a, &b)?;
    coherent_field(&comm, lambda, window, grid)
}

/// Coherent-state expectations of `(i/lambda) C` over a phase window:
/// `(q, p, <psi_{v,xi}, (i/lambda) C psi_{v,xi}> / <psi, psi>)` with
/// `(v, xi)` the rescale preimage of `(q, p)`.
pub fn coherent_field(
    c_op: &OperatorMatrix,
    lambda: f64,
    window: f64,
    grid: WaveGrid,
) -> Result<Vec<(f64, f64, Complex64)>> {
    if lambda == 0.0 {
        return Err(Error::ZeroPlanck);
    }
    let s = if lambda > 0.0 { 1.0 } else { -1.0 };
    let r = Float::sqrt(lambda.abs());
    let scale = Complex64::new(0.0, 1.0 / lambda);
    let n = 5;
    let mut out = Vec::new();
    for iq in 0..n {
        let q = -window + 2.0 * window * iq as f64 / (n - 1) as f64;
        for ip in 0..n {
            let p = -window + 2.0 * window * ip as f64 / (n - 1) as f64;
            let v = -s * p / r;
            let xi = -q / r;
            let psi = coherent_packet(grid, v, xi);
            let cpsi = c_op.apply(&psi);
            let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
            let mut exp = Complex64::new(0.0, 0.0);
            for j in 0..grid.count {
                exp += psi[j].conj() * cpsi[j];
            }
            out.push((q, p, exp * scale / norm));
        }
    }
    Ok(out)
}

fn coherent_packet(grid: WaveGrid, v: f64, xi: f64) -> DVector<Complex64> {
    DVector::from_iterator(
        grid.count,
        grid.points().iter().map(|&x| {
            Complex64::new(0.0, xi * x).exp()
                * Complex64::new((-(x - v) * (x - v) / 2.0).exp(), 0.0)
        }),
    )
}

/// An algebra element materialized fiberwise: quantum operators over a
/// Planck set plus the classical phase-space fiber, all derived from one
/// symbol.
#[derive(Debug, Clone)]
pub struct SpectrumField {
    pub source: SymbolFunction,
    pub planck: PlanckSet,
    pub wave_grid: WaveGrid,
    pub phase_grid: PhaseGrid,
    pub quantum: Vec<OperatorMatrix>,
    pub classical: PhaseMap,
}

/// Assembles every fiber of a symbol.
pub fn build_spectrum_field(
    k: &SymbolFunction,
    planck: &PlanckSet,
    wave_grid: WaveGrid,
    phase_grid: PhaseGrid,
) -> Result<SpectrumField> {
    let quantum = planck
        .lambdas()
        .iter()
        .map(|&l| pi_lambda(k, l, wave_grid))
        .collect::<Result<Vec<_>>>()?;
    let classical = pi_classical(k, phase_grid);
    Ok(SpectrumField {
        source: k.clone(),
        planck: planck.clone(),
        wave_grid,
        phase_grid,
        quantum,
        classical,
    })
}

impl SpectrumField {
    /// Re-derives every fiber from the source and reports the largest
    /// deviation from the stored ones (coherence of the field).
    pub fn verify_coherence(&self) -> Result<f64> {
        let rebuilt = build_spectrum_field(&self.source, &self.planck, self.wave_grid, self.phase_grid)?;
        let mut dev: f64 = 0.0;
        for (a, b) in self.quantum.iter().zip(&rebuilt.quantum) {
            dev = dev.max(a.sub(b)?.max_abs());
        }
        dev = dev.max(self.classical.max_abs_diff(&rebuilt.classical));
        Ok(dev)
    }
}

/// A Gaussian wavepacket on the wave grid, used as a band-limited test
/// state by the validation suites.
pub fn coherent_state(grid: WaveGrid, x0: f64, k0: f64) -> DVector<Complex64> {
    DVector::from_iterator(
        grid.count,
        grid.points().iter().map(|&x| {
            Complex64::new(0.0, k0 * x).exp() * Complex64::new((-(x - x0) * (x - x0) / 2.0).exp(), 0.0)
        }),
    )
}

/// The Poisson bracket of two classical fibers evaluated at one point; a
/// convenience wrapper around the analytic bracket.
pub fn classical_bracket_at(
    k1: &SymbolFunction,
    k2: &SymbolFunction,
    q: f64,
    p: f64,
) -> Result<Complex64> {
    crate::symbol::poisson_bracket(k1, k2, &PhaseSpacePoint::p1(q, p))
}
