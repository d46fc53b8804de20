//! Dense matrices and a real nonsymmetric eigenvalue solver.
//!
//! Eigenvalues are computed by Householder reduction to upper Hessenberg
//! form followed by the implicitly shifted Francis double-step QR iteration.
//! Only eigenvalues are produced; no Schur vectors are accumulated.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
use num_traits::Zero;

use crate::{Error, Result};

/// Iterations allowed per deflated eigenvalue before giving up.
const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Copy + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major storage.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix<f64> {
    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

impl Matrix<Complex64> {
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Reduces a square matrix to upper Hessenberg form in place by
/// Householder similarity transforms. Entries below the first subdiagonal
/// are set to zero.
pub fn hessenberg_in_place(a: &mut Matrix<f64>) {
    assert!(a.is_square(), "Hessenberg reduction needs a square matrix");
    let n = a.rows;
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    for k in 0..n - 2 {
        let scale: f64 = (k + 1..n).map(|i| a[(i, k)].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut h = 0.0;
        for i in k + 1..n {
            v[i] = a[(i, k)] / scale;
            h += v[i] * v[i];
        }
        let g = if v[k + 1] >= 0.0 { -h.sqrt() } else { h.sqrt() };
        h -= v[k + 1] * g;
        v[k + 1] -= g;
        if h == 0.0 {
            continue;
        }

        // A ← (I − v vᵀ/h) A
        for j in k..n {
            let f = (k + 1..n).map(|i| v[i] * a[(i, j)]).sum::<f64>() / h;
            for i in k + 1..n {
                a[(i, j)] -= f * v[i];
            }
        }
        // A ← A (I − v vᵀ/h)
        for i in 0..n {
            let f = (k + 1..n).map(|j| v[j] * a[(i, j)]).sum::<f64>() / h;
            for j in k + 1..n {
                a[(i, j)] -= f * v[j];
            }
        }

        a[(k + 1, k)] = scale * g;
        for i in k + 2..n {
            a[(i, k)] = 0.0;
        }
    }
}

/// Eigenvalues of a real square matrix. Complex eigenvalues come out in
/// exact conjugate pairs.
pub fn real_eigenvalues(mut a: Matrix<f64>) -> Result<Vec<Complex64>> {
    assert!(a.is_square(), "eigenvalues need a square matrix");
    hessenberg_in_place(&mut a);
    hessenberg_eigenvalues(&mut a)
}

/// Francis double-shift QR on an upper Hessenberg matrix (destroyed).
pub fn hessenberg_eigenvalues(h: &mut Matrix<f64>) -> Result<Vec<Complex64>> {
    let n = h.rows;
    let mut eig = vec![Complex64::zero(); n];
    if n == 0 {
        return Ok(eig);
    }
    let anorm: f64 = (0..n)
        .flat_map(|i| (i.saturating_sub(1)..n).map(move |j| (i, j)))
        .map(|ij| h[ij].abs())
        .sum();

    let mut hi = n as isize - 1;
    let mut its = 0usize;
    while hi >= 0 {
        let hu = hi as usize;
        let lo = find_split(h, hu, anorm);

        if lo == hu {
            eig[hu] = Complex64::new(h[(hu, hu)], 0.0);
            hi -= 1;
            its = 0;
            continue;
        }
        if lo + 1 == hu {
            let (l1, l2) = eig2x2(h[(lo, lo)], h[(lo, hu)], h[(hu, lo)], h[(hu, hu)]);
            eig[lo] = l1;
            eig[hu] = l2;
            hi -= 2;
            its = 0;
            continue;
        }

        its += 1;
        if its > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(Error::EigenFailure { dim: n, row: hu });
        }

        let (shift_sum, shift_prod) = if its % 10 == 0 {
            // exceptional shift to break cycles
            let s = h[(hu, hu - 1)].abs() + h[(hu - 1, hu - 2)].abs();
            let d = h[(hu, hu)];
            (2.0 * d + 1.5 * s, d * d + 1.5 * s * d + s * s)
        } else {
            let (a, b, c, d) = (h[(hu - 1, hu - 1)], h[(hu - 1, hu)], h[(hu, hu - 1)], h[(hu, hu)]);
            (a + d, a * d - b * c)
        };
        francis_step(h, lo, hu, shift_sum, shift_prod);
    }
    Ok(eig)
}

/// Largest `l ≤ hi` such that `h[l][l-1]` is negligible (0 if none).
fn find_split(h: &mut Matrix<f64>, hi: usize, anorm: f64) -> usize {
    let mut l = hi;
    while l > 0 {
        let mut s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
        if s == 0.0 {
            s = anorm;
        }
        if h[(l, l - 1)].abs() <= f64::EPSILON * s {
            h[(l, l - 1)] = 0.0;
            break;
        }
        l -= 1;
    }
    l
}

fn eig2x2(a: f64, b: f64, c: f64, d: f64) -> (Complex64, Complex64) {
    let p = 0.5 * (a - d);
    let bc = b * c;
    let disc = p * p + bc;
    if disc >= 0.0 {
        let z = p + disc.sqrt().copysign(p);
        let l1 = d + z;
        let l2 = if z != 0.0 { d - bc / z } else { d };
        (Complex64::new(l1, 0.0), Complex64::new(l2, 0.0))
    } else {
        let re = d + p;
        let im = (-disc).sqrt();
        (Complex64::new(re, im), Complex64::new(re, -im))
    }
}

/// One implicit double-shift sweep on the active block `lo..=hi`.
fn francis_step(h: &mut Matrix<f64>, lo: usize, hi: usize, s: f64, t: f64) {
    let mut x = h[(lo, lo)] * h[(lo, lo)] + h[(lo, lo + 1)] * h[(lo + 1, lo)] - s * h[(lo, lo)] + t;
    let mut y = h[(lo + 1, lo)] * (h[(lo, lo)] + h[(lo + 1, lo + 1)] - s);
    let mut z = h[(lo + 1, lo)] * h[(lo + 2, lo + 1)];

    for k in lo..hi - 1 {
        let (v, beta) = householder3(x, y, z);
        if beta != 0.0 {
            let col0 = if k > lo { k - 1 } else { lo };
            for j in col0..=hi {
                let f = beta * (v[0] * h[(k, j)] + v[1] * h[(k + 1, j)] + v[2] * h[(k + 2, j)]);
                h[(k, j)] -= f * v[0];
                h[(k + 1, j)] -= f * v[1];
                h[(k + 2, j)] -= f * v[2];
            }
            let row1 = (k + 3).min(hi);
            for i in lo..=row1 {
                let f = beta * (v[0] * h[(i, k)] + v[1] * h[(i, k + 1)] + v[2] * h[(i, k + 2)]);
                h[(i, k)] -= f * v[0];
                h[(i, k + 1)] -= f * v[1];
                h[(i, k + 2)] -= f * v[2];
            }
        }
        if k > lo {
            // the reflector annihilates the bulge below the subdiagonal exactly
            h[(k + 1, k - 1)] = 0.0;
            h[(k + 2, k - 1)] = 0.0;
        }
        x = h[(k + 1, k)];
        y = h[(k + 2, k)];
        if k + 3 <= hi {
            z = h[(k + 3, k)];
        }
    }

    let k = hi - 1;
    let (v, beta) = householder2(x, y);
    if beta != 0.0 {
        for j in (k - 1)..=hi {
            let f = beta * (v[0] * h[(k, j)] + v[1] * h[(k + 1, j)]);
            h[(k, j)] -= f * v[0];
            h[(k + 1, j)] -= f * v[1];
        }
        for i in lo..=hi {
            let f = beta * (v[0] * h[(i, k)] + v[1] * h[(i, k + 1)]);
            h[(i, k)] -= f * v[0];
            h[(i, k + 1)] -= f * v[1];
        }
    }
    if k > lo {
        h[(k + 1, k - 1)] = 0.0;
    }
}

/// Householder vector `v` (with `v[0] = 1`) and `β` such that
/// `(I − β v vᵀ)(x, y, z)ᵀ = (∓‖·‖, 0, 0)ᵀ`.
fn householder3(x: f64, y: f64, z: f64) -> ([f64; 3], f64) {
    let scale = x.abs() + y.abs() + z.abs();
    if scale == 0.0 {
        return ([1.0, 0.0, 0.0], 0.0);
    }
    let (x, y, z) = (x / scale, y / scale, z / scale);
    let tail = y * y + z * z;
    if tail == 0.0 {
        return ([1.0, 0.0, 0.0], 0.0);
    }
    let alpha = (x * x + tail).sqrt().copysign(x);
    let v0 = x + alpha;
    let v = [1.0, y / v0, z / v0];
    let beta = 2.0 / (1.0 + v[1] * v[1] + v[2] * v[2]);
    (v, beta)
}

fn householder2(x: f64, y: f64) -> ([f64; 2], f64) {
    let scale = x.abs() + y.abs();
    if scale == 0.0 || y == 0.0 {
        return ([1.0, 0.0], 0.0);
    }
    let (x, y) = (x / scale, y / scale);
    let alpha = (x * x + y * y).sqrt().copysign(x);
    let v0 = x + alpha;
    let v = [1.0, y / v0];
    (v, 2.0 / (1.0 + v[1] * v[1]))
}
