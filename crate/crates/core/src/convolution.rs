//! The regular representation on L^2(H^1): shift operators and the
//! convolution operators built from them.
//!
//! Left and right convolutions are quadratures of shifts against a kernel,
//!
//! ```text
//! K_l f = (2 pi)^(-3/2) sum_g k(g) f(g^-1 h) dg,
//! K_r f = (2 pi)^(-3/2) sum_g k(g) f(h g) dg,
//! ```
//!
//! and a separable two-sided kernel acts as a sum of left-after-right
//! applications. Composition of left convolutions corresponds to the group
//! convolution of kernels, which is what the commutator kernel below feeds
//! on.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::GridKernel;
use crate::heisenberg::GroupPoint;

/// A function on the group grid (an element of L^2(H^1)); shares the
/// kernel layout.
pub type GroupFunctionGrid = GridKernel;

/// Left shift `(pi_l(g) f)(h) = f(g^-1 h)`, trilinear off the grid, zero
/// outside it.
pub fn shift_left(g: &GroupPoint, f: &GroupFunctionGrid) -> GroupFunctionGrid {
    assert_eq!(g.n(), 1, "grid shifts are desk-scale (H^1) only");
    let gi = g.inverse();
    GridKernel::from_fn(f.spec, |t, x, y| {
        let h = GroupPoint::h1(t, x, y);
        let arg = gi.multiply(&h);
        f.value_at(arg.t, arg.x[0], arg.y[0])
    })
}

/// Right shift `(pi_r(g) f)(h) = f(h g)`.
pub fn shift_right(g: &GroupPoint, f: &GroupFunctionGrid) -> GroupFunctionGrid {
    assert_eq!(g.n(), 1, "grid shifts are desk-scale (H^1) only");
    GridKernel::from_fn(f.spec, |t, x, y| {
        let h = GroupPoint::h1(t, x, y);
        let arg = h.multiply(g);
        f.value_at(arg.t, arg.x[0], arg.y[0])
    })
}

/// Left convolution: the quadrature of left shifts weighted by `k`. Equals
/// the group convolution `k * f`.
pub fn convolve_left(k: &GridKernel, f: &GroupFunctionGrid) -> Result<GroupFunctionGrid> {
    k.group_convolve(f)
}

/// Right convolution: the quadrature of right shifts weighted by `k`.
pub fn convolve_right(k: &GridKernel, f: &GroupFunctionGrid) -> Result<GroupFunctionGrid> {
    if k.spec != f.spec {
        return Err(Error::GridMismatch);
    }
    let spec = k.spec;
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
                // x-component of h * g
                let jx = ihx as isize + igx as isize - (sx / 2) as isize;
                if jx < 0 || jx >= sx as isize {
                    continue;
                }
                let xg = (igx as f64 - sx as f64 / 2.0) * dx;
                for igy in 0..sy {
                    let jy = ihy as isize + igy as isize - (sy / 2) as isize;
                    if jy < 0 || jy >= sy as isize {
                        continue;
                    }
                    let yg = (igy as f64 - sy as f64 / 2.0) * dy;
                    // central offset of h * g in t-steps
                    let twist = 2.0 * (xg * yh - yg * xh) / dt;
                    let base = Float::floor(twist);
                    let frac = twist - base;
                    let base = base as isize;
                    let k_row = &k.values[spec.index(0, igx, igy)..spec.index(0, igx, igy) + st];
                    let f_row = &f.values
                        [spec.index(0, jx as usize, jy as usize)..spec.index(0, jx as usize, jy as usize) + st];
                    let out_row = &mut out[spec.index(0, ihx, ihy)..spec.index(0, ihx, ihy) + st];
                    for iht in 0..st {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for igt in 0..st {
                            // t-index of h * g: (ih + ig - half) + twist
                            let jt = iht as isize + igt as isize - half_t + base;
                            let kv = k_row[igt];
                            if frac == 0.0 {
                                if jt >= 0 && jt < st as isize {
                                    acc += kv * f_row[jt as usize];
                                }
                            } else {
                                let mut fv = Complex64::new(0.0, 0.0);
                                if jt >= 0 && jt < st as isize {
                                    fv += f_row[jt as usize] * (1.0 - frac);
                                }
                                if jt + 1 >= 0 && jt + 1 < st as isize {
                                    fv += f_row[(jt + 1) as usize] * frac;
                                }
                                acc += kv * fv;
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

/// Separable two-sided convolution: each term `(a, b)` applies `a` on the
/// left and `b` on the right (the actions commute, so the order is a
/// convention). An empty term list is the zero operator.
pub fn convolve_two_sided(
    terms: &[(GridKernel, GridKernel)],
    f: &GroupFunctionGrid,
) -> Result<GroupFunctionGrid> {
    let mut out = GridKernel::zeros(f.spec);
    for (a, b) in terms {
        let right = convolve_right(b, f)?;
        let left = convolve_left(a, &right)?;
        out = out.add(&left)?;
    }
    Ok(out)
}

/// The commutator kernel `c = j * k - k * j`: the convolution operator with
/// this kernel is the operator commutator of the convolutions with `j` and
/// `k` (checked against the representations elsewhere).
pub fn kernel_commutator(j: &GridKernel, k: &GridKernel) -> Result<GridKernel> {
    j.group_convolve(k)?.sub(&k.group_convolve(j)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{AxisSpec, GridSpec};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn gaussian(spec: GridSpec, center: (f64, f64, f64), sigma: f64) -> GridKernel {
        GridKernel::from_fn(spec, |t, x, y| {
            let r2 = (t - center.0).powi(2) + (x - center.1).powi(2) + (y - center.2).powi(2);
            c((-r2 / (2.0 * sigma * sigma)).exp())
        })
    }

    /// Gaussian hard-cut to a coordinate box, so that convolutions stay
    /// strictly inside the grid and no truncation loss occurs.
    fn cut_gaussian(spec: GridSpec, center: (f64, f64, f64), sigma: f64, cut: f64) -> GridKernel {
        GridKernel::from_fn(spec, |t, x, y| {
            let (a, b, d) = (t - center.0, x - center.1, y - center.2);
            if a.abs() > cut || b.abs() > cut || d.abs() > cut {
                return c(0.0);
            }
            c((-(a * a + b * b + d * d) / (2.0 * sigma * sigma)).exp())
        })
    }

    fn headroom_spec() -> GridSpec {
        // wide central axis with the twist on-grid: 2*dx*dy/dt = 1
        GridSpec {
            t: AxisSpec { size: 32, extent: 18.0 },
            x: AxisSpec { size: 16, extent: 6.0 },
            y: AxisSpec { size: 16, extent: 6.0 },
        }
    }

    #[test]
    fn shift_by_identity_is_exact() {
        let spec = GridSpec::cubic(8, 4.0).unwrap();
        let f = gaussian(spec, (0.2, 0.4, -0.3), 1.0);
        let e = GroupPoint::identity(1);
        assert_eq!(shift_left(&e, &f), f);
        assert_eq!(shift_right(&e, &f), f);
    }

    #[test]
    fn left_shift_moves_a_bump_to_the_product_point() {
        let spec = GridSpec::cubic(16, 8.0).unwrap();
        let h0 = (0.0, 1.0, 0.0);
        let f = gaussian(spec, h0, 0.7);
        let g = GroupPoint::h1(0.5, -1.0, 1.0);
        let shifted = shift_left(&g, &f);
        // the peak should sit at g * h0
        let expect = g.multiply(&GroupPoint::h1(h0.0, h0.1, h0.2));
        let mut best = (0usize, 0usize, 0usize, 0.0f64);
        for ix in 0..16 {
            for iy in 0..16 {
                for it in 0..16 {
                    let v = shifted.get(it, ix, iy).norm();
                    if v > best.3 {
                        best = (it, ix, iy, v);
                    }
                }
            }
        }
        let (ts, xs, ys) = (spec.t.coords(), spec.x.coords(), spec.y.coords());
        let step = spec.t.step();
        assert!((ts[best.0] - expect.t).abs() <= step);
        assert!((xs[best.1] - expect.x[0]).abs() <= step);
        assert!((ys[best.2] - expect.y[0]).abs() <= step);
    }

    #[test]
    fn left_and_right_shifts_commute() {
        // needs central-axis headroom: the intermediate shift may park mass
        // at large t before the second shift brings it back
        let spec = headroom_spec();
        let f = gaussian(spec, (0.0, 0.0, 0.0), 0.8);
        // on-grid shifts (x, y steps of 0.75; t steps of 1.125)
        let g1 = GroupPoint::h1(1.125, 0.75, 0.0);
        let g2 = GroupPoint::h1(0.0, -0.75, 0.75);
        let lr = shift_right(&g2, &shift_left(&g1, &f));
        let rl = shift_left(&g1, &shift_right(&g2, &f));
        assert!(lr.max_abs_diff(&rl) <= 1e-8 * f.max_abs());
    }

    #[test]
    fn left_convolution_with_delta_approximation() {
        let spec = GridSpec::cubic(16, 6.0).unwrap();
        let f = gaussian(spec, (0.0, 0.5, 0.0), 1.2);
        let norm = (2.0 * core::f64::consts::PI).powf(-1.5);
        let mut errs = alloc::vec::Vec::new();
        for &sigma in &[1.5, 1.0] {
            let mass = (2.0 * core::f64::consts::PI * sigma * sigma).powf(1.5);
            let delta = gaussian(spec, (0.0, 0.0, 0.0), sigma).scale(c(1.0 / mass));
            let conv = convolve_left(&delta, &f).unwrap();
            errs.push(conv.max_abs_diff(&f.scale(c(norm))) / (norm * f.max_abs()));
        }
        assert!(errs[1] < errs[0], "delta error must shrink with width: {errs:?}");
    }

    #[test]
    fn composition_of_left_convolutions_is_the_kernel_convolution() {
        // with kernels cut well inside the box nothing escapes and the two
        // routes agree to round-off; this pins the order convention
        let spec = headroom_spec();
        let k1 = cut_gaussian(spec, (0.0, 0.75, 0.0), 0.5, 1.0);
        let k2 = cut_gaussian(spec, (0.0, 0.0, 0.75), 0.5, 1.0);
        let f = cut_gaussian(spec, (0.0, 0.0, 0.0), 0.5, 1.0);
        let nested = convolve_left(&k1, &convolve_left(&k2, &f).unwrap()).unwrap();
        let composed = convolve_left(&k1.group_convolve(&k2).unwrap(), &f).unwrap();
        let rel = nested.max_abs_diff(&composed) / nested.max_abs();
        assert!(rel <= 1e-10, "composition defect {rel}");
    }

    #[test]
    fn convolution_is_linear_in_the_function() {
        let spec = GridSpec::cubic(8, 4.0).unwrap();
        let k = gaussian(spec, (0.0, 0.5, 0.0), 0.8);
        let f = gaussian(spec, (0.0, 0.0, 0.5), 0.7);
        let g = gaussian(spec, (0.3, 0.0, 0.0), 0.9);
        let (a, b) = (c(1.7), Complex64::new(-0.4, 0.9));
        let lhs = convolve_left(&k, &f.scale(a).add(&g.scale(b)).unwrap()).unwrap();
        let rhs = convolve_left(&k, &f)
            .unwrap()
            .scale(a)
            .add(&convolve_left(&k, &g).unwrap().scale(b))
            .unwrap();
        assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * lhs.max_abs());
    }

    #[test]
    fn two_sided_identity_limit() {
        let spec = GridSpec::cubic(16, 6.0).unwrap();
        let f = gaussian(spec, (0.0, 0.5, 0.0), 1.2);
        let n2 = (2.0 * core::f64::consts::PI).powi(-3);
        let norm = (2.0 * core::f64::consts::PI).powf(-1.5);
        let k = gaussian(spec, (0.0, 0.5, 0.5), 1.0);
        let mut dd_errs = alloc::vec::Vec::new();
        let mut collapsed_errs = alloc::vec::Vec::new();
        for &sigma in &[1.5, 1.0] {
            let mass = (2.0 * core::f64::consts::PI * sigma * sigma).powf(1.5);
            let delta = gaussian(spec, (0.0, 0.0, 0.0), sigma).scale(c(1.0 / mass));
            let got = convolve_two_sided(&[(delta.clone(), delta.clone())], &f).unwrap();
            dd_errs.push(got.max_abs_diff(&f.scale(c(n2))) / (n2 * f.max_abs()));
            // one delta factor collapses to a left convolution
            let two = convolve_two_sided(&[(k.clone(), delta)], &f).unwrap();
            let one = convolve_left(&k, &f).unwrap().scale(c(norm));
            collapsed_errs.push(two.max_abs_diff(&one) / one.max_abs());
        }
        assert!(dd_errs[1] < dd_errs[0], "delta-delta error must shrink: {dd_errs:?}");
        assert!(
            collapsed_errs[1] < collapsed_errs[0],
            "collapsed error must shrink: {collapsed_errs:?}"
        );
        assert!(dd_errs[1] <= 1.0 && collapsed_errs[1] <= 1.0);
    }

    #[test]
    fn two_sided_factor_order_is_irrelevant() {
        let spec = headroom_spec();
        let a = cut_gaussian(spec, (0.0, 0.75, 0.0), 0.5, 1.0);
        let b = cut_gaussian(spec, (0.0, 0.0, 0.75), 0.5, 1.0);
        let f = cut_gaussian(spec, (0.0, 0.0, 0.0), 0.5, 1.0);
        let lr = convolve_left(&a, &convolve_right(&b, &f).unwrap()).unwrap();
        let rl = convolve_right(&b, &convolve_left(&a, &f).unwrap()).unwrap();
        assert!(lr.max_abs_diff(&rl) <= 1e-8 * lr.max_abs());
    }

    #[test]
    fn empty_two_sided_kernel_is_the_zero_operator() {
        let spec = GridSpec::cubic(8, 4.0).unwrap();
        let f = gaussian(spec, (0.0, 0.0, 0.0), 1.0);
        let out = convolve_two_sided(&[], &f).unwrap();
        assert!(out.max_abs() == 0.0);
    }

    #[test]
    fn self_commutator_vanishes() {
        let spec = GridSpec::cubic(8, 4.0).unwrap();
        let j = gaussian(spec, (0.0, 0.5, 0.0), 0.8);
        let com = kernel_commutator(&j, &j).unwrap();
        assert!(com.max_abs() == 0.0);
    }

    #[test]
    fn central_kernels_nearly_commute() {
        let spec = GridSpec::cubic(16, 6.0).unwrap();
        let k = gaussian(spec, (0.0, 1.0, 0.0), 1.0);
        let mut norms = alloc::vec::Vec::new();
        for &sxy in &[2.0, 1.2] {
            // t-profile times a narrowing factor in (x, y): approaches a
            // central element as the factor sharpens
            let j = GridKernel::from_fn(spec, |t, x, y| {
                c((-t * t / 2.0).exp() * (-(x * x + y * y) / (2.0 * sxy * sxy)).exp()
                    / (2.0 * core::f64::consts::PI * sxy * sxy))
            });
            let com = kernel_commutator(&j, &k).unwrap();
            let scale = j.group_convolve(&k).unwrap().max_abs();
            norms.push(com.max_abs() / scale);
        }
        assert!(norms[1] < norms[0], "central commutator should shrink: {norms:?}");
        assert!(norms[1] <= 0.5, "central commutator too large: {norms:?}");
    }

    #[test]
    fn commutator_matches_direct_integral_oracle() {
        // c(h) = (2 pi)^(-3/2) sum_u [j(h u^-1) k(u) - k(h u^-1) j(u)] du
        // is the substitution image of the star difference; on an on-grid
        // twist geometry the two evaluation patterns agree to round-off.
        let spec = GridSpec::cubic(8, 4.0).unwrap();
        let j = gaussian(spec, (0.0, 1.0, 0.0), 0.8);
        let k = gaussian(spec, (0.0, 0.0, 1.0), 0.8);
        let com = kernel_commutator(&j, &k).unwrap();
        let norm = (2.0 * core::f64::consts::PI).powf(-1.5) * spec.cell_volume();
        let (ts, xs, ys) = (spec.t.coords(), spec.x.coords(), spec.y.coords());
        let scale = com.max_abs();
        for &(it, ix, iy) in &[(4usize, 4usize, 4usize), (2, 5, 3), (6, 3, 5)] {
            let h = GroupPoint::h1(ts[it], xs[ix], ys[iy]);
            let mut acc = Complex64::new(0.0, 0.0);
            for &xu in &xs {
                for &yu in &ys {
                    for &tu in &ts {
                        let u = GroupPoint::h1(tu, xu, yu);
                        let hui = h.multiply(&u.inverse());
                        let jv = j.value_at(hui.t, hui.x[0], hui.y[0]);
                        let kv = k.value_at(hui.t, hui.x[0], hui.y[0]);
                        acc += jv * k.value_at(tu, xu, yu) - kv * j.value_at(tu, xu, yu);
                    }
                }
            }
            acc *= norm;
            assert!(
                (com.get(it, ix, iy) - acc).norm() <= 1e-10 * scale,
                "direct-integral oracle deviates at ({it},{ix},{iy})"
            );
        }
    }
}
