//! Third-order Stokes expansion of the normalized Kawahara traveling wave.
//!
//! With ε defined as twice the first Fourier coefficient of the wave,
//!
//! ```text
//! u_S = ε cos x + ε² (σ/2)(−1/c0 + (2/Ω(2)) cos 2x) + ε³ (3σ²/(Ω(2)Ω(3))) cos 3x + O(ε⁴)
//! c   = c0 + σ²(1/c0 − 1/Ω(2)) ε² + O(ε⁴)
//! ```
//!
//! Fourier coefficients use `û_p = (1/2π)∫ u e^{−ipx} dx`; the wave is even so
//! `û_{−p} = û_p`.

use alloc::vec::Vec;


use crate::dispersion::{c0, omega, PhysicalParams};
use crate::{Error, Result};

/// Below this magnitude `c0`, `Ω(2)` or `Ω(3)` is treated as a resonance.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Amplitudes above this are outside the regime the truncation is meant for.
pub const EPS_SOFT_LIMIT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesExpansion {
    pub c0: f64,
    pub c2: f64,
    /// Mean of `u₂`.
    pub u2_0: f64,
    /// Exponential-basis coefficient of `u₂` at modes ±2.
    pub u2_2: f64,
    /// Exponential-basis coefficient of `u₃` at modes ±3.
    pub u3_3: f64,
}

pub fn stokes_expansion(params: &PhysicalParams) -> Result<StokesExpansion> {
    let sigma = params.sigma;
    let c0 = c0(params);
    let om2 = omega(2.0, params);
    let om3 = omega(3.0, params);
    for (what, value) in [("c0", c0), ("Omega(2)", om2), ("Omega(3)", om3)] {
        if value.abs() < DEGENERACY_TOL {
            return Err(Error::Degenerate { what, value: value.abs() });
        }
    }
    Ok(StokesExpansion {
        c0,
        c2: sigma * sigma * (1.0 / c0 - 1.0 / om2),
        u2_0: -sigma / (2.0 * c0),
        u2_2: sigma / (2.0 * om2),
        u3_3: 3.0 * sigma * sigma / (2.0 * om2 * om3),
    })
}

impl StokesExpansion {
    /// `c(ε) = c0 + c2 ε²`.
    pub fn speed(&self, eps: f64) -> f64 {
        self.c0 + self.c2 * eps * eps
    }

    /// Exponential-basis Fourier coefficient `û_p` of the truncated wave.
    ///
    /// Mode 1 is exactly ε/2; modes with `|p| > 3` vanish.
    pub fn fourier_coefficient(&self, p: i64, eps: f64) -> f64 {
        match p.unsigned_abs() {
            0 => eps * eps * self.u2_0,
            1 => 0.5 * eps,
            2 => eps * eps * self.u2_2,
            3 => eps * eps * eps * self.u3_3,
            _ => 0.0,
        }
    }

    /// Cosine-series coefficients `[a0, a1, a2, a3]` with `u = Σ a_p cos(px)`.
    pub fn cosine_coefficients(&self, eps: f64) -> [f64; 4] {
        [
            self.fourier_coefficient(0, eps),
            2.0 * self.fourier_coefficient(1, eps),
            2.0 * self.fourier_coefficient(2, eps),
            2.0 * self.fourier_coefficient(3, eps),
        ]
    }

    /// Evaluates the truncated series at `x`.
    pub fn eval(&self, x: f64, eps: f64) -> f64 {
        self.eval_derivative(x, eps, 0)
    }

    /// `order`-th x-derivative of the truncated series at `x`.
    pub fn eval_derivative(&self, x: f64, eps: f64, order: u32) -> f64 {
        let a = self.cosine_coefficients(eps);
        let mut sum = if order == 0 { a[0] } else { 0.0 };
        for (p, &ap) in a.iter().enumerate().skip(1) {
            let pf = p as f64;
            // d^r/dx^r cos(px) = p^r cos(px + rπ/2)
            let phase = pf * x + f64::from(order % 4) * core::f64::consts::FRAC_PI_2;
            sum += ap * pf.powi(order as i32) * phase.cos();
        }
        sum
    }

    /// Whether `eps` lies outside the amplitude range the truncation targets.
    pub fn eps_is_large(eps: f64) -> bool {
        eps.abs() > EPS_SOFT_LIMIT
    }
}

pub fn eval_stokes(exp: &StokesExpansion, x: f64, eps: f64) -> f64 {
    exp.eval(x, eps)
}

/// Max over `grid` of `|c(ε)u + u_xx + β u_4x + σ u²|` for the truncated wave.
pub fn residual(exp: &StokesExpansion, params: &PhysicalParams, eps: f64, grid: &[f64]) -> f64 {
    let c = exp.speed(eps);
    grid.iter()
        .map(|&x| {
            let u = exp.eval_derivative(x, eps, 0);
            let u2 = exp.eval_derivative(x, eps, 2);
            let u4 = exp.eval_derivative(x, eps, 4);
            (c * u + u2 + params.beta * u4 + params.sigma * u * u).abs()
        })
        .fold(0.0, f64::max)
}

/// `n` equally spaced points on `[0, 2π)`.
pub fn uniform_grid(n: usize) -> Vec<f64> {
    let h = 2.0 * core::f64::consts::PI / n as f64;
    (0..n).map(|i| i as f64 * h).collect()
}
