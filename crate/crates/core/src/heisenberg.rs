//! Exact Heisenberg-group and Lie-algebra arithmetic.
//!
//! A point of the group is `(t, x, y)` with `t` real and `x`, `y` real
//! n-vectors; the complex form is `v = x + iy`. The group law is
//!
//! ```text
//! (t, x, y) * (t', x', y') = (t + t' + 2(x'·y - y'·x), x + x', y + y')
//! ```
//!
//! which is the coordinate form of `(u,v)*(u',v') = (u + u' - 2 Im Σ v'_k
//! conj(v_k), v + v')`. Exponential coordinates are used throughout, so the
//! same triple doubles as a Lie-algebra vector and the bracket follows from
//! the degree-2 Baker-Campbell-Hausdorff identity `h*g = h + g + [h,g]/2`:
//!
//! ```text
//! [h, g] = (4(y_h·x_g - x_h·y_g), 0, 0)
//! ```

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

/// A point of the Heisenberg group H^n (equivalently a Lie-algebra vector).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPoint {
    /// Central coordinate.
    pub t: f64,
    /// First half of the complex coordinate, length n.
    pub x: Vec<f64>,
    /// Second half of the complex coordinate, length n.
    pub y: Vec<f64>,
}

impl GroupPoint {
    /// Builds a point, checking that `x` and `y` share a length n >= 1.
    pub fn new(t: f64, x: Vec<f64>, y: Vec<f64>) -> Self {
        assert!(!x.is_empty(), "Heisenberg group needs n >= 1");
        assert_eq!(x.len(), y.len(), "x and y must have the same length");
        GroupPoint { t, x, y }
    }

    /// Convenience constructor for H^1.
    pub fn h1(t: f64, x: f64, y: f64) -> Self {
        GroupPoint::new(t, vec![x], vec![y])
    }

    /// The group identity in H^n.
    pub fn identity(n: usize) -> Self {
        GroupPoint::new(0.0, vec![0.0; n], vec![0.0; n])
    }

    /// Builds a point from the central coordinate and the complex form
    /// `v = x + iy`.
    pub fn from_complex(t: f64, v: &[Complex64]) -> Self {
        GroupPoint::new(t, v.iter().map(|z| z.re).collect(), v.iter().map(|z| z.im).collect())
    }

    /// The complex form `v = x + iy`.
    pub fn to_complex(&self) -> Vec<Complex64> {
        self.x.iter().zip(&self.y).map(|(&a, &b)| Complex64::new(a, b)).collect()
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Group multiplication. Panics on dimension mismatch.
    pub fn multiply(&self, other: &GroupPoint) -> GroupPoint {
        assert_eq!(self.n(), other.n(), "dimension mismatch");
        let twist: f64 = other
            .x
            .iter()
            .zip(&self.y)
            .map(|(&xo, &ys)| xo * ys)
            .sum::<f64>()
            - other.y.iter().zip(&self.x).map(|(&yo, &xs)| yo * xs).sum::<f64>();
        GroupPoint::new(
            self.t + other.t + 2.0 * twist,
            self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect(),
        )
    }

    /// Group inverse, `(-t, -x, -y)`.
    pub fn inverse(&self) -> GroupPoint {
        GroupPoint::new(-self.t, self.x.iter().map(|v| -v).collect(), self.y.iter().map(|v| -v).collect())
    }

    /// Nonisotropic dilation `(t, x, y) -> (tau^2 t, tau x, tau y)`.
    /// Panics unless `tau > 0`.
    pub fn dilate(&self, tau: f64) -> GroupPoint {
        assert!(tau > 0.0, "dilation factor must be positive");
        GroupPoint::new(
            tau * tau * self.t,
            self.x.iter().map(|v| tau * v).collect(),
            self.y.iter().map(|v| tau * v).collect(),
        )
    }

    /// The quantity `t^4 + |v|^2` whose level-1 set is the nonisotropic unit
    /// sphere as printed. Note this combination is not homogeneous under
    /// [`GroupPoint::dilate`]; see [`GroupPoint::dilation_compatible_norm`]
    /// for the homogeneous alternative.
    pub fn nonisotropic_norm(&self) -> f64 {
        Float::powi(self.t, 4) + self.v_norm_sq()
    }

    /// The dilation-homogeneous gauge `(t^2 + |v|^4)^(1/4)`, degree 1 under
    /// [`GroupPoint::dilate`].
    pub fn dilation_compatible_norm(&self) -> f64 {
        Float::powf(self.t * self.t + self.v_norm_sq() * self.v_norm_sq(), 0.25)
    }

    /// Whether the point lies on the unit sphere `t^4 + |v|^2 = 1`.
    pub fn on_sphere(&self) -> bool {
        (self.nonisotropic_norm() - 1.0).abs() <= 1e-12
    }

    fn v_norm_sq(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum::<f64>() + self.y.iter().map(|v| v * v).sum::<f64>()
    }

    /// The point as a flat Lie-algebra vector `(t, x_1..x_n, y_1..y_n)`.
    pub fn as_vector(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(1 + 2 * self.n());
        out.push(self.t);
        out.extend_from_slice(&self.x);
        out.extend_from_slice(&self.y);
        out
    }

    /// Inverse of [`GroupPoint::as_vector`].
    pub fn from_vector(v: &[f64]) -> Self {
        assert!(v.len() >= 3 && v.len() % 2 == 1, "vector length must be 2n+1");
        let n = (v.len() - 1) / 2;
        GroupPoint::new(v[0], v[1..=n].to_vec(), v[n + 1..].to_vec())
    }
}

/// Lie bracket `[h, g]` in exponential coordinates, fixed by the group law
/// through `h*g = h + g + [h,g]/2`. Central-valued, bilinear, antisymmetric.
pub fn ad_bracket(h: &GroupPoint, g: &GroupPoint) -> GroupPoint {
    assert_eq!(h.n(), g.n(), "dimension mismatch");
    let t: f64 = h
        .y
        .iter()
        .zip(&g.x)
        .map(|(&yh, &xg)| yh * xg)
        .sum::<f64>()
        - h.x.iter().zip(&g.y).map(|(&xh, &yg)| xh * yg).sum::<f64>();
    GroupPoint::new(4.0 * t, vec![0.0; h.n()], vec![0.0; h.n()])
}

/// Dense real linear map on Lie-algebra coordinates `(t, x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieMap {
    /// Side length, `2n + 1`.
    pub dim: usize,
    /// Row-major entries.
    pub data: Vec<f64>,
}

impl LieMap {
    pub fn zeros(dim: usize) -> Self {
        LieMap { dim, data: vec![0.0; dim * dim] }
    }

    /// `c * I`.
    pub fn scaled_identity(dim: usize, c: f64) -> Self {
        let mut m = LieMap::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = c;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn compose(&self, other: &LieMap) -> LieMap {
        assert_eq!(self.dim, other.dim);
        let mut out = LieMap::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut s = 0.0;
                for k in 0..self.dim {
                    s += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, s);
            }
        }
        out
    }

    pub fn transpose(&self) -> LieMap {
        let mut out = LieMap::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn add(&self, other: &LieMap) -> LieMap {
        assert_eq!(self.dim, other.dim);
        LieMap {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> LieMap {
        LieMap { dim: self.dim, data: self.data.iter().map(|v| c * v).collect() }
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a[r * n + col].abs() > a[piv * n + col].abs() {
                    piv = r;
                }
            }
            if a[piv * n + col] == 0.0 {
                return 0.0;
            }
            if piv != col {
                for j in 0..n {
                    a.swap(col * n + j, piv * n + j);
                }
                det = -det;
            }
            det *= a[col * n + col];
            for r in col + 1..n {
                let f = a[r * n + col] / a[col * n + col];
                for j in col..n {
                    a[r * n + j] -= f * a[col * n + j];
                }
            }
        }
        det
    }

    pub fn max_abs_diff(&self, other: &LieMap) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Matrix of `ad h = [h, ·]` on `(t, x, y)` coordinates. Only the central
/// row is nonzero, so `(ad h)^2 = 0` exactly.
pub fn ad_matrix(h: &GroupPoint) -> LieMap {
    let n = h.n();
    let mut m = LieMap::zeros(2 * n + 1);
    for k in 0..n {
        // [h, g]_t = 4 (y_h·x_g - x_h·y_g)
        m.set(0, 1 + k, 4.0 * h.y[k]);
        m.set(0, 1 + n + k, -4.0 * h.x[k]);
    }
    m
}

/// Matrix of `L_h = -I - [h, ·]/2`.
pub fn l_matrix(h: &GroupPoint) -> LieMap {
    let dim = 2 * h.n() + 1;
    LieMap::scaled_identity(dim, -1.0).add(&ad_matrix(h).scale(-0.5))
}

/// Matrix of `t(L_h^-1)`, the transpose of the inverse of [`l_matrix`].
/// Since `(ad h)^2 = 0`, the inverse is `-I + (ad h)/2` exactly.
pub fn l_transpose_inverse(h: &GroupPoint) -> LieMap {
    let dim = 2 * h.n() + 1;
    LieMap::scaled_identity(dim, -1.0)
        .add(&ad_matrix(h).scale(0.5))
        .transpose()
}

/// Checks `f(delta_tau g) = tau^k f(g)` on every sample/dilation pair, with
/// tolerance `1e-10 * (1 + |f(g)|)`.
pub fn is_homogeneous<F>(f: F, k: i32, samples: &[GroupPoint], taus: &[f64]) -> bool
where
    F: Fn(&GroupPoint) -> f64,
{
    assert!(!samples.is_empty(), "need at least one sample point");
    for g in samples {
        let fg = f(g);
        for &tau in taus {
            let lhs = f(&g.dilate(tau));
            let rhs = Float::powi(tau, k) * fg;
            if (lhs - rhs).abs() > 1e-10 * (1.0 + fg.abs()) {
                return false;
            }
        }
    }
    true
}
