//! Floquet–Fourier–Hill spectrum of the linearization about the Stokes wave.
//!
//! Perturbations `e^{λt} e^{iμx} w(x)` of the traveling wave satisfy
//! `λw = (iμ + ∂x)[(c + 2σu)w + (iμ + ∂x)²w + β(iμ + ∂x)⁴w]`. On the Fourier
//! modes `j = −N..N` this is the matrix
//!
//! ```text
//! A_jl = −iΩ_c(μ+j) δ_jl + 2iσ(μ+j) û_{j−l},   Ω_c(k) = −c(ε)k + k³ − βk⁵
//! ```
//!
//! `A = iH` with `H` real, so the eigenvalues are computed as `i·eig(H)` with
//! a real eigensolver. Eigenvalues of `H` that are real stay exactly real,
//! which keeps the imaginary axis free of round-off growth rates.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use crate::dispersion::{omega_with_speed, PhysicalParams};
use crate::linalg::{real_eigenvalues, Matrix};
use crate::stokes::{stokes_expansion, StokesExpansion};
use crate::{Error, Result};

pub const DEFAULT_MODES: usize = 32;
pub const MIN_MODES: usize = 8;
pub const DEFAULT_GROWTH_FLOOR: f64 = 1e-10;
pub const BISECTION_TOL: f64 = 1e-10;

/// Eigenvalues at one Floquet exponent, sorted by imaginary then real part.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSlice {
    pub mu: f64,
    pub eigenvalues: Vec<Complex64>,
    /// Truncation `N`; modes `−N..=N`.
    pub modes: usize,
    pub eps: f64,
}

/// Region of the complex plane searched for one isola.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolaWindow {
    pub center: Complex64,
    pub radius: f64,
    pub growth_floor: f64,
}

impl IsolaWindow {
    /// Window of radius `10·semi_axis + ε` around `center`.
    pub fn around(center: Complex64, semi_axis: f64, eps: f64) -> Self {
        Self { center, radius: 10.0 * semi_axis + eps, growth_floor: DEFAULT_GROWTH_FLOOR }
    }

    pub fn with_growth_floor(mut self, floor: f64) -> Self {
        self.growth_floor = floor;
        self
    }

    pub fn selects(&self, lambda: Complex64) -> bool {
        lambda.re > self.growth_floor && (lambda - self.center).norm() < self.radius
    }

    /// Selected eigenvalue with the largest real part.
    pub fn most_unstable(&self, slice: &SpectrumSlice) -> Option<Complex64> {
        slice
            .eigenvalues
            .iter()
            .copied()
            .filter(|&l| self.selects(l))
            .max_by(|a, b| a.re.total_cmp(&b.re))
    }
}

/// Isola statistics measured from a μ-sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolaNumerics {
    pub mu_lo: f64,
    pub mu_hi: f64,
    pub mu_star: f64,
    pub lambda_star: Complex64,
    /// Every selected eigenvalue on the grid.
    pub points: Vec<(f64, Complex64)>,
    /// Whether the unstable band reaches the first or last grid point.
    pub touches_grid_edge: bool,
}

/// Hill matrix problem for a fixed wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HillProblem {
    pub params: PhysicalParams,
    pub stokes: StokesExpansion,
    pub eps: f64,
    pub modes: usize,
}

impl HillProblem {
    pub fn new(params: PhysicalParams, eps: f64, modes: usize) -> Result<Self> {
        let stokes = stokes_expansion(&params)?;
        Self::with_stokes(params, stokes, eps, modes)
    }

    pub fn with_stokes(params: PhysicalParams, stokes: StokesExpansion, eps: f64, modes: usize) -> Result<Self> {
        if modes < MIN_MODES {
            return Err(Error::InvalidParameter("truncation must keep at least 8 modes"));
        }
        if !(eps.is_finite() && eps >= 0.0) {
            return Err(Error::InvalidParameter("eps must be finite and nonnegative"));
        }
        Ok(Self { params, stokes, eps, modes })
    }

    pub fn dim(&self) -> usize {
        2 * self.modes + 1
    }

    /// Real matrix `H` with `A = iH`.
    pub fn real_matrix(&self, mu: f64) -> Matrix<f64> {
        let n = self.modes as i64;
        let c = self.stokes.speed(self.eps);
        let two_sigma = 2.0 * self.params.sigma;
        Matrix::from_fn(self.dim(), self.dim(), |r, s| {
            let j = r as i64 - n;
            let l = s as i64 - n;
            let k = mu + j as f64;
            let coupling = two_sigma * k * self.stokes.fourier_coefficient(j - l, self.eps);
            if j == l {
                coupling - omega_with_speed(k, c, self.params.beta)
            } else {
                coupling
            }
        })
    }

    /// The Hill matrix `A` itself.
    pub fn matrix(&self, mu: f64) -> Matrix<Complex64> {
        let h = self.real_matrix(mu);
        Matrix::from_fn(self.dim(), self.dim(), |r, s| Complex64::new(0.0, h[(r, s)]))
    }

    pub fn spectrum(&self, mu: f64) -> Result<SpectrumSlice> {
        let mut eigenvalues: Vec<Complex64> = real_eigenvalues(self.real_matrix(mu))?
            .into_iter()
            .map(|h| Complex64::new(-h.im, h.re))
            .collect();
        eigenvalues.sort_by(|a, b| match a.im.total_cmp(&b.im) {
            Ordering::Equal => a.re.total_cmp(&b.re),
            other => other,
        });
        Ok(SpectrumSlice { mu, eigenvalues, modes: self.modes, eps: self.eps })
    }

    /// Slices in grid order.
    pub fn sweep(&self, grid: &[f64]) -> Result<Vec<SpectrumSlice>> {
        grid.iter()
            .enumerate()
            .map(|(index, &mu)| self.spectrum(mu).map_err(|e| at_index(e, index, mu)))
            .collect()
    }

    fn growth(&self, mu: f64, window: &IsolaWindow) -> Result<Option<Complex64>> {
        Ok(window.most_unstable(&self.spectrum(mu)?))
    }

    /// Bisects between a stable and an unstable exponent to `BISECTION_TOL`.
    fn refine_boundary(&self, mut stable: f64, mut unstable: f64, window: &IsolaWindow) -> Result<f64> {
        while (unstable - stable).abs() > BISECTION_TOL {
            let mid = 0.5 * (stable + unstable);
            if self.growth(mid, window)?.is_some() {
                unstable = mid;
            } else {
                stable = mid;
            }
        }
        Ok(0.5 * (stable + unstable))
    }

    /// Measures the isola inside `window` from `slices` (ascending μ).
    /// `None` means no eigenvalue grew above the floor.
    pub fn extract_isola(&self, slices: &[SpectrumSlice], window: &IsolaWindow) -> Result<Option<IsolaNumerics>> {
        let best: Vec<Option<Complex64>> = slices.iter().map(|s| window.most_unstable(s)).collect();
        let Some(first) = best.iter().position(Option::is_some) else {
            return Ok(None);
        };
        let last = best.iter().rposition(Option::is_some).unwrap_or(first);

        let mut touches_grid_edge = false;
        let mu_lo = if first == 0 {
            touches_grid_edge = true;
            slices[0].mu
        } else {
            self.refine_boundary(slices[first - 1].mu, slices[first].mu, window)?
        };
        let mu_hi = if last + 1 == slices.len() {
            touches_grid_edge = true;
            slices[last].mu
        } else {
            self.refine_boundary(slices[last + 1].mu, slices[last].mu, window)?
        };

        let (peak, peak_lambda) = best
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.map(|l| (i, l)))
            .max_by(|a, b| a.1.re.total_cmp(&b.1.re))
            .unwrap_or((first, Complex64::new(0.0, 0.0)));
        let (mu_star, lambda_star) = interpolate_peak(slices, &best, peak)
            .unwrap_or((slices[peak].mu, peak_lambda));

        let points = slices
            .iter()
            .flat_map(|s| {
                s.eigenvalues
                    .iter()
                    .filter(|&&l| window.selects(l))
                    .map(move |&l| (s.mu, l))
            })
            .collect();

        Ok(Some(IsolaNumerics {
            mu_lo,
            mu_hi,
            mu_star: mu_star.clamp(mu_lo, mu_hi),
            lambda_star,
            points,
            touches_grid_edge,
        }))
    }
}

/// Vertex of the parabola through the peak and its neighbours; the
/// imaginary part is read off the parabola through the same three slices.
fn interpolate_peak(slices: &[SpectrumSlice], best: &[Option<Complex64>], peak: usize) -> Option<(f64, Complex64)> {
    if peak == 0 || peak + 1 >= slices.len() {
        return None;
    }
    let (l0, l1, l2) = (best[peak - 1]?, best[peak]?, best[peak + 1]?);
    let (x0, x1, x2) = (slices[peak - 1].mu, slices[peak].mu, slices[peak + 1].mu);
    let re = Parabola::through([x0, x1, x2], [l0.re, l1.re, l2.re])?;
    let im = Parabola::through([x0, x1, x2], [l0.im, l1.im, l2.im])?;
    if re.a >= 0.0 {
        return None;
    }
    let vertex = (-re.b / (2.0 * re.a)).clamp(x0, x2);
    Some((vertex, Complex64::new(re.eval(vertex), im.eval(vertex))))
}

struct Parabola {
    a: f64,
    b: f64,
    c: f64,
}

impl Parabola {
    fn through(x: [f64; 3], y: [f64; 3]) -> Option<Self> {
        let d01 = (y[1] - y[0]) / (x[1] - x[0]);
        let d12 = (y[2] - y[1]) / (x[2] - x[1]);
        let a = (d12 - d01) / (x[2] - x[0]);
        let b = d01 - a * (x[0] + x[1]);
        let c = y[0] - a * x[0] * x[0] - b * x[0];
        [a, b, c].iter().all(|v| v.is_finite()).then_some(Self { a, b, c })
    }

    fn eval(&self, x: f64) -> f64 {
        (self.a * x + self.b) * x + self.c
    }
}

fn at_index(error: Error, index: usize, mu: f64) -> Error {
    match error {
        Error::EigenFailure { dim, row } => Error::SliceFailure { index, mu, dim, row },
        other => other,
    }
}

pub fn hill_matrix(params: &PhysicalParams, stokes: &StokesExpansion, eps: f64, mu: f64, modes: usize) -> Result<Matrix<Complex64>> {
    Ok(HillProblem::with_stokes(*params, *stokes, eps, modes)?.matrix(mu))
}

pub fn spectrum_slice(params: &PhysicalParams, stokes: &StokesExpansion, eps: f64, mu: f64, modes: usize) -> Result<SpectrumSlice> {
    HillProblem::with_stokes(*params, *stokes, eps, modes)?.spectrum(mu)
}

pub fn sweep(params: &PhysicalParams, stokes: &StokesExpansion, eps: f64, grid: &[f64], modes: usize) -> Result<Vec<SpectrumSlice>> {
    HillProblem::with_stokes(*params, *stokes, eps, modes)?.sweep(grid)
}

/// `points` uniformly spaced values on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => alloc::vec![0.5 * (lo + hi)],
        _ => (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect(),
    }
}
