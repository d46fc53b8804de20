//! Real polynomials: evaluation and root extraction through the companion matrix.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{real_eigenvalues, Matrix};
use crate::Result;

/// Roots whose imaginary part is below this are accepted as real.
pub const REAL_ROOT_IMAG_TOL: f64 = 1e-8;

const NEWTON_POLISH_STEPS: usize = 2;

/// Evaluates `Σ coeffs[i] x^(d−i)` (highest degree first) and its derivative.
pub fn eval_with_derivative(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    eval_with_derivative(coeffs, x).0
}

/// All complex roots of a polynomial given highest degree first.
///
/// Leading zeros are stripped; a constant polynomial has no roots.
pub fn roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let start = coeffs.iter().position(|&c| c != 0.0).unwrap_or(coeffs.len());
    let coeffs = &coeffs[start..];
    if coeffs.len() <= 1 {
        return Ok(Vec::new());
    }
    let degree = coeffs.len() - 1;
    let lead = coeffs[0];
    let companion = Matrix::from_fn(degree, degree, |i, j| {
        if i == 0 {
            -coeffs[j + 1] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    real_eigenvalues(companion)
}

/// Real roots, sorted ascending: companion eigenvalues with
/// `|Im| < REAL_ROOT_IMAG_TOL`, each polished by two Newton steps.
pub fn real_roots(coeffs: &[f64]) -> Result<Vec<f64>> {
    let mut out: Vec<f64> = roots(coeffs)?
        .into_iter()
        .filter(|z| z.im.abs() < REAL_ROOT_IMAG_TOL)
        .map(|z| newton_polish(coeffs, z.re))
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    Ok(out)
}

fn newton_polish(coeffs: &[f64], mut x: f64) -> f64 {
    for _ in 0..NEWTON_POLISH_STEPS {
        let (p, dp) = eval_with_derivative(coeffs, x);
        if dp == 0.0 || !dp.is_finite() {
            break;
        }
        let next = x - p / dp;
        if !next.is_finite() {
            break;
        }
        x = next;
    }
    x
}

/// Discriminant of `a x⁴ + b x³ + c x² + d x + e`.
pub fn quartic_discriminant(a: f64, b: f64, c: f64, d: f64, e: f64) -> f64 {
    256.0 * a.powi(3) * e.powi(3) - 192.0 * a * a * b * d * e * e - 128.0 * a * a * c * c * e * e
        + 144.0 * a * a * c * d * d * e
        - 27.0 * a * a * d.powi(4)
        + 144.0 * a * b * b * c * e * e
        - 6.0 * a * b * b * d * d * e
        - 80.0 * a * b * c * c * d * e
        + 18.0 * a * b * c * d.powi(3)
        + 16.0 * a * c.powi(4) * e
        - 4.0 * a * c.powi(3) * d * d
        - 27.0 * b.powi(4) * e * e
        + 18.0 * b.powi(3) * c * d * e
        - 4.0 * b.powi(3) * d.powi(3)
        - 4.0 * b * b * c.powi(3) * e
        + b * b * c * c * d * d
}
