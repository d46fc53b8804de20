//! Linear dispersion relation, group velocity and parameter normalization.
//!
//! In the normalized frame (unit coefficient on `u_xx`, period 2π) the
//! dispersion relation seen from the frame moving with the leading-order
//! wave speed `c0 = 1 − β` is
//!
//! ```text
//! Ω(k) = −c0 k + k³ − β k⁵
//! ```

use core::f64::consts::PI;


use crate::{Error, Result};

/// Absolute distance from `1/(1+N²)` inside which β is treated as resonant.
pub const RESONANCE_TOL: f64 = 1e-9;

/// Smallest resonant value `1/(1+N²)` the scan will look at.
const RESONANCE_SCAN_FLOOR: f64 = 1e-6;

/// Coefficients of the normalized equation `c u + u_xx + β u_4x + σ u² = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub beta: f64,
    pub sigma: f64,
}

/// Coefficients of `c u + α u_xx + β u_4x + σ u² = 0` on a period `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawParams {
    pub alpha: f64,
    pub beta: f64,
    pub sigma: f64,
    pub period: f64,
}

impl PhysicalParams {
    /// Validated constructor: both coefficients finite and nonzero, β nonresonant.
    pub fn new(beta: f64, sigma: f64) -> Result<Self> {
        if !beta.is_finite() || beta == 0.0 {
            return Err(Error::InvalidParameter("beta must be finite and nonzero"));
        }
        if !sigma.is_finite() || sigma == 0.0 {
            return Err(Error::InvalidParameter("sigma must be finite and nonzero"));
        }
        if let Some(n) = is_resonant(beta) {
            return Err(Error::Resonant { n, beta });
        }
        Ok(Self { beta, sigma })
    }

    #[inline]
    pub fn c0(&self) -> f64 {
        c0(self)
    }

    #[inline]
    pub fn omega(&self, k: f64) -> f64 {
        omega(k, self)
    }

    #[inline]
    pub fn group_velocity(&self, k: f64) -> f64 {
        group_velocity(k, self)
    }
}

impl RawParams {
    pub fn new(alpha: f64, beta: f64, sigma: f64, period: f64) -> Self {
        Self { alpha, beta, sigma, period }
    }

    fn check(&self) -> Result<()> {
        if !self.alpha.is_finite() || self.alpha == 0.0 {
            return Err(Error::InvalidParameter("alpha must be finite and nonzero"));
        }
        if !self.period.is_finite() || self.period <= 0.0 {
            return Err(Error::InvalidParameter("period must be positive"));
        }
        Ok(())
    }
}

/// Rescales `x = (L/2π) y`, `u = (αL/2π) v`, which maps the raw problem
/// onto the normalized one with
///
/// ```text
/// β' = (β/α)(2π/L)²,   σ' = σ (L/2π)³,   c' = (c/α)(L/2π)²
/// ```
pub fn normalize(raw: &RawParams) -> Result<PhysicalParams> {
    raw.check()?;
    let scale = 2.0 * PI / raw.period;
    let beta = raw.beta / raw.alpha * scale * scale;
    let sigma = raw.sigma / (scale * scale * scale);
    PhysicalParams::new(beta, sigma)
}

/// Speed of the raw problem expressed in the normalized frame.
pub fn normalize_speed(c: f64, raw: &RawParams) -> Result<f64> {
    raw.check()?;
    let inv_scale = raw.period / (2.0 * PI);
    Ok(c / raw.alpha * inv_scale * inv_scale)
}

/// Leading-order wave speed `1 − β`.
#[inline]
pub fn c0(params: &PhysicalParams) -> f64 {
    1.0 - params.beta
}

/// `Ω(k) = −c0 k + k³ − β k⁵`.
#[inline]
pub fn omega(k: f64, params: &PhysicalParams) -> f64 {
    omega_with_speed(k, c0(params), params.beta)
}

/// Dispersion relation in a frame moving with an arbitrary speed `c`.
#[inline]
pub fn omega_with_speed(k: f64, c: f64, beta: f64) -> f64 {
    let k2 = k * k;
    k * (-c + k2 * (1.0 - beta * k2))
}

/// `c_g(k) = Ω'(k) = −c0 + 3k² − 5βk⁴`.
#[inline]
pub fn group_velocity(k: f64, params: &PhysicalParams) -> f64 {
    let k2 = k * k;
    -c0(params) + k2 * (3.0 - 5.0 * params.beta * k2)
}

/// Returns the integer `N > 1` with `|β − 1/(1+N²)| ≤ RESONANCE_TOL`, if any.
///
/// `N = 1` corresponds to the carrier mode itself and is never reported.
pub fn is_resonant(beta: f64) -> Option<u32> {
    if !(beta > 0.0) {
        return None;
    }
    let floor = (0.5 * beta).max(RESONANCE_SCAN_FLOOR);
    let mut n: u32 = 2;
    loop {
        let nf = f64::from(n);
        let target = 1.0 / (1.0 + nf * nf);
        if target < floor {
            return None;
        }
        if (beta - target).abs() <= RESONANCE_TOL {
            return Some(n);
        }
        n += 1;
    }
}
