//! Eigenvalue collisions of the zero-amplitude problem.
//!
//! At ε = 0 the Floquet-μ eigenvalues are `−iΩ(μ+j)`. Two of them, from
//! modes `n` and `m = n + Δn`, collide away from the origin exactly when
//! `k = μ+n` is a root of
//!
//! ```text
//! F(k; Δn) = (Ω(k+Δn) − Ω(k)) / Δn
//! ```
//!
//! with `Ω(k) ≠ 0`. For β in the admissible window there is one such
//! collision with `μ ∈ [0, 1/2]`, and it always has opposite Krein
//! signatures: `(μ+n)(μ+m) < 0`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dispersion::{group_velocity, is_resonant, omega, PhysicalParams};
use crate::poly;
use crate::{Error, Result};

/// `|Ω(k)|` at or below this is a collision at the origin, not a high-frequency one.
pub const ORIGIN_TOL: f64 = 1e-10;

/// Tolerance on `|Ω(k_m) − Ω(k_n)|` for an accepted site.
pub const COLLISION_TOL: f64 = 1e-10;

/// Open interval of β values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaWindow {
    pub lo: f64,
    pub hi: f64,
}

impl BetaWindow {
    pub fn is_empty(&self) -> bool {
        !(self.lo < self.hi)
    }

    /// Strict containment; the endpoints are degenerate collisions.
    pub fn contains(&self, beta: f64) -> bool {
        self.lo < beta && beta < self.hi
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo).max(0.0)
    }
}

/// Collided eigenvalue data for one Δn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionSite {
    pub delta_n: u32,
    /// Floquet exponent of the collision, in `[0, 1/2]`.
    pub mu0: f64,
    pub n: i64,
    /// Always `n + delta_n`.
    pub m: i64,
    /// Imaginary part of the collided eigenvalue `λ0 = −iΩ(k_n)`.
    pub lambda0_im: f64,
    pub k_n: f64,
    pub k_m: f64,
}

impl CollisionSite {
    pub fn lambda0(&self) -> Complex64 {
        Complex64::new(0.0, self.lambda0_im)
    }

    /// `(μ0+n)(μ0+m)`, negative for an unstable collision.
    pub fn krein_product(&self) -> f64 {
        self.k_n * self.k_m
    }

    pub fn krein_check(&self) -> bool {
        krein_check(self)
    }

    /// Wavenumber `μ0 + N` of mode `N`.
    pub fn wavenumber(&self, mode: i64) -> f64 {
        self.mu0 + mode as f64
    }

    /// `(c_g(k_m), c_g(k_n))`.
    pub fn group_velocities(&self, params: &PhysicalParams) -> (f64, f64) {
        (group_velocity(self.k_m, params), group_velocity(self.k_n, params))
    }
}

/// Admissible β window for a Δn collision. Empty when the bounds cross.
pub fn admissible_beta_range(delta_n: u32) -> BetaWindow {
    let d = f64::from(delta_n);
    let d2 = d * d;
    let resonant_lo = 1.0 / (1.0 + d2);
    let half_hi = 1.0 / (0.25 * d2 + 1.0);
    if delta_n < 3 {
        BetaWindow {
            lo: (3.0 / (5.0 * d2)).max(resonant_lo),
            hi: (6.0 / (5.0 * d2)).min(half_hi),
        }
    } else {
        BetaWindow { lo: resonant_lo, hi: half_hi }
    }
}

/// Coefficients of `F(k; Δn)` in `k`, highest degree first.
pub fn collision_polynomial_coefficients(delta_n: u32, params: &PhysicalParams) -> [f64; 5] {
    let b = params.beta;
    let d = f64::from(delta_n);
    let d2 = d * d;
    [
        -5.0 * b,
        -10.0 * b * d,
        3.0 - 10.0 * b * d2,
        3.0 * d - 5.0 * b * d2 * d,
        d2 - 1.0 + b - b * d2 * d2,
    ]
}

/// `F(k; Δn) = (Ω(k+Δn) − Ω(k))/Δn`, evaluated from its expanded quartic.
pub fn collision_polynomial(k: f64, delta_n: u32, params: &PhysicalParams) -> f64 {
    poly::eval(&collision_polynomial_coefficients(delta_n, params), k)
}

/// `k − [k]` with `[·]` the nearest integer, half-integers rounding down,
/// so the returned Floquet exponent lies in `(−1/2, 1/2]`.
pub fn nearest_int_map(k: f64) -> (f64, i64) {
    let n = (k - 0.5).ceil();
    (k - n, n as i64)
}

/// Real roots of `F(·; Δn)` that are not collisions at the origin, ascending.
pub fn collision_roots(delta_n: u32, params: &PhysicalParams) -> Result<Vec<f64>> {
    if delta_n == 0 {
        return Err(Error::InvalidParameter("delta_n must be positive"));
    }
    let beta = params.beta;
    let candidates: Vec<f64> = match delta_n {
        1 => {
            let disc = 12.0 / (5.0 * beta) - 3.0;
            if disc < 0.0 {
                Vec::new()
            } else {
                let s = disc.sqrt();
                alloc::vec![0.5 * (-1.0 - s), 0.5 * (-1.0 + s)]
            }
        }
        2 => {
            let disc = 3.0 / (5.0 * beta) - 2.0;
            if disc < 0.0 {
                Vec::new()
            } else {
                let s = disc.sqrt();
                alloc::vec![-1.0 - s, -1.0 + s]
            }
        }
        _ => poly::real_roots(&collision_polynomial_coefficients(delta_n, params))?,
    };
    Ok(candidates
        .into_iter()
        .filter(|&k| omega(k, params).abs() > ORIGIN_TOL)
        .collect())
}

/// The unique Δn collision site with `μ0 ∈ [0, 1/2]`.
pub fn find_collision(delta_n: u32, params: &PhysicalParams) -> Result<CollisionSite> {
    if delta_n == 0 {
        return Err(Error::InvalidParameter("delta_n must be positive"));
    }
    let beta = params.beta;
    let window = admissible_beta_range(delta_n);
    if !window.contains(beta) {
        return Err(Error::Inadmissible { delta_n, beta, lo: window.lo, hi: window.hi });
    }
    if let Some(n) = is_resonant(beta) {
        return Err(Error::Resonant { n, beta });
    }

    // roots come sorted ascending; at μ0 = 1/2 both roots qualify and the first wins
    let k_n = collision_roots(delta_n, params)?
        .into_iter()
        .find(|&k| nearest_int_map(k).0 >= 0.0)
        .ok_or(Error::NoCollision { delta_n, beta })?;

    let (mu0, n) = nearest_int_map(k_n);
    let m = n + i64::from(delta_n);
    let k_m = k_n + f64::from(delta_n);
    let site = CollisionSite {
        delta_n,
        mu0,
        n,
        m,
        lambda0_im: -omega(k_n, params),
        k_n,
        k_m,
    };

    let gap = (omega(k_m, params) - omega(k_n, params)).abs();
    if gap > COLLISION_TOL || !site.krein_check() {
        return Err(Error::NoCollision { delta_n, beta });
    }
    Ok(site)
}

/// `(μ0+n)(μ0+m) < 0`.
pub fn krein_check(site: &CollisionSite) -> bool {
    site.krein_product() < 0.0
}

/// Closed-form discriminant of `F(k; Δn)` with respect to `k`:
///
/// ```text
/// 5β (Δn² − 4)(β(Δn² + 4) − 4)(5β(β(Δn⁴ + 4) − 2(Δn² + 2)) + 9)²
/// ```
pub fn quartic_discriminant(delta_n: u32, params: &PhysicalParams) -> f64 {
    let b = params.beta;
    let d2 = f64::from(delta_n) * f64::from(delta_n);
    let last = 5.0 * b * (b * (d2 * d2 + 4.0) - 2.0 * (d2 + 2.0)) + 9.0;
    5.0 * b * (d2 - 4.0) * (b * (d2 + 4.0) - 4.0) * last * last
}
