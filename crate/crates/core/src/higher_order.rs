//! Second-order theory of the Δn = 1 isola.
//!
//! Expanding `μ = μ0 + εμ₁ + ε²μ₂` and `λ = λ0 + ελ₁ + ε²λ₂`, the O(ε²)
//! solvability conditions give
//!
//! ```text
//! λ₂ = −(i/(2λ₁,r)) (A λ₁ + iμ₁ B)
//! ```
//!
//! which blows up at the band edges `μ₁ = ±M1` unless μ₂ takes the single
//! value fixed by the regular curve condition. With that μ₂ the curve
//! `λ0 + ελ₁ + ε²λ₂` is closed, drifts along the imaginary axis at O(ε²) and
//! is no longer an ellipse.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::asymptotics::{m1, q_coefficient, Branch, SiteGeometry};
use crate::collision::CollisionSite;
use crate::dispersion::PhysicalParams;
use crate::stokes::{stokes_expansion, StokesExpansion};
use crate::{Error, Result};

/// `|μ₁|` within this of `M1` is treated as the band edge.
pub const NEAR_SINGULAR_TOL: f64 = 1e-8;

/// Relative clipping of `|μ₁|` used when sampling the curve.
pub const EDGE_CLIP: f64 = 1e-9;

/// Mode coefficients of the O(ε) eigenfunction correction (excluding γ₁ e^{imx}).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct W1Coefficients {
    /// Mode `n − 1`, coefficient `Q_{n,n−1}`.
    pub lower_mode: i64,
    pub lower: f64,
    /// Mode `m + 1`, coefficient `γ₀ Q_{n,m+1}`.
    pub upper_mode: i64,
    pub upper: Complex64,
    pub gamma0: Complex64,
}

impl W1Coefficients {
    /// Coefficient of mode `mode`; zero outside `{n−1, m+1}`.
    pub fn coefficient(&self, mode: i64) -> Complex64 {
        if mode == self.lower_mode {
            Complex64::new(self.lower, 0.0)
        } else if mode == self.upper_mode {
            self.upper
        } else {
            Complex64::new(0.0, 0.0)
        }
    }
}

/// Precomputed site data for the second-order formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondOrderTerms {
    pub geometry: SiteGeometry,
    pub m1: f64,
    pub sigma: f64,
    pub mu0: f64,
    pub n: i64,
    pub m: i64,
    /// `D^m`, `D^n` with `D^N = 3k_N − 10βk_N³`.
    pub d_m: f64,
    pub d_n: f64,
    /// `P̃^{m,1}`, `P̃^{n,−1}`.
    pub p_tilde_m: f64,
    pub p_tilde_n: f64,
}

impl SecondOrderTerms {
    pub fn new(site: &CollisionSite, params: &PhysicalParams) -> Result<Self> {
        check_dn1(site)?;
        let stokes = stokes_expansion(params)?;
        let d = |k: f64| 3.0 * k - 10.0 * params.beta * k * k * k;
        Ok(Self {
            geometry: SiteGeometry::new(site, params)?,
            m1: m1(site, params)?,
            sigma: params.sigma,
            mu0: site.mu0,
            n: site.n,
            m: site.m,
            d_m: d(site.k_m),
            d_n: d(site.k_n),
            p_tilde_m: p_tilde(site.m, 1, site, params, &stokes)?,
            p_tilde_n: p_tilde(site.n, -1, site, params, &stokes)?,
        })
    }

    fn k_m(&self) -> f64 {
        self.mu0 + self.m as f64
    }

    fn k_n(&self) -> f64 {
        self.mu0 + self.n as f64
    }

    /// `(A, B)` at `(μ₁, μ₂)`.
    pub fn a_b(&self, mu1: f64, mu2: f64) -> (f64, f64) {
        let g = &self.geometry;
        let c_m = mu2 * g.cg_m - self.p_tilde_m + mu1 * mu1 * self.d_m;
        let c_n = mu2 * g.cg_n - self.p_tilde_n + mu1 * mu1 * self.d_n;
        let a = c_m + c_n;
        let b = g.cg_m * c_n + g.cg_n * c_m - self.sigma * self.sigma * (self.k_m() + self.k_n());
        (a, b)
    }

    /// `λ₁` on `branch`.
    pub fn lambda1(&self, mu1: f64, branch: Branch) -> Complex64 {
        let [plus, minus] = self.geometry.splitting(mu1, self.sigma);
        match branch {
            Branch::Plus => plus,
            Branch::Minus => minus,
        }
    }

    /// `λ₂` without the band-edge guard; infinite at `|μ₁| = M1`.
    pub fn lambda2_unchecked(&self, mu1: f64, mu2: f64, branch: Branch) -> Complex64 {
        let l1 = self.lambda1(mu1, branch);
        let (a, b) = self.a_b(mu1, mu2);
        Complex64::new((a * l1.im + mu1 * b) / (2.0 * l1.re), -0.5 * a)
    }

    /// `λ₂`, rejecting `|μ₁| ≥ M1 − NEAR_SINGULAR_TOL`.
    pub fn lambda2(&self, mu1: f64, mu2: f64, branch: Branch) -> Result<Complex64> {
        let gap = self.m1 - mu1.abs();
        if gap < NEAR_SINGULAR_TOL {
            return Err(Error::NearSingular { mu1, m1: self.m1, gap });
        }
        Ok(self.lambda2_unchecked(mu1, mu2, branch))
    }

    /// μ₂ from the regular curve condition.
    pub fn regular_mu2(&self) -> f64 {
        let g = &self.geometry;
        let diff = g.diff();
        let s2 = self.sigma * self.sigma;
        let edge = 4.0 * s2 * g.krein_product / (diff * diff);
        let p_m = self.p_tilde_m + edge * self.d_m;
        let p_n = self.p_tilde_n + edge * self.d_n;
        (p_m - p_n) / diff - 2.0 * s2 * (self.k_m() + self.k_n()) / (diff * diff)
    }

    /// `μ*,1,1 = −4σ²k_m k_n (D^m − D^n)/Δ³`.
    pub fn mu_star_correction(&self) -> f64 {
        let diff = self.geometry.diff();
        -4.0 * self.sigma * self.sigma * self.geometry.krein_product * (self.d_m - self.d_n)
            / (diff * diff * diff)
    }

    /// `g(μ₁) = B − (Σ/2)A`, which the regular curve condition sets to zero at `±M1`.
    pub fn edge_function(&self, mu1: f64, mu2: f64) -> f64 {
        let (a, b) = self.a_b(mu1, mu2);
        b - 0.5 * self.geometry.sum() * a
    }

    /// Coefficients (highest first) of the critical-point quartic for `μ*,1`:
    /// `−εκd²x⁴ + d⁴x³ + (3/2)εκR x² − d²R x + (ε/2) g₀ R`, with `d = Δ/2`,
    /// `R = −σ² k_m k_n`, `κ = (Δ/2)(D^n − D^m)` and `g₀ = g(0)`.
    pub fn critical_point_quartic(&self, mu2: f64, eps: f64) -> [f64; 5] {
        let half = 0.5 * self.geometry.diff();
        let d2 = half * half;
        let r = -self.sigma * self.sigma * self.geometry.krein_product;
        let kappa = half * (self.d_n - self.d_m);
        let g0 = self.edge_function(0.0, mu2);
        [-eps * kappa * d2, d2 * d2, 1.5 * eps * kappa * r, -d2 * r, 0.5 * eps * g0 * r]
    }
}

/// `P̃^{N,k} = (μ0+N)[σ(Q_{n,N+k} + 2û(u₂)₀) + c₂]`.
pub fn p_tilde(mode: i64, k: i64, site: &CollisionSite, params: &PhysicalParams, stokes: &StokesExpansion) -> Result<f64> {
    let q = q_coefficient(site.n, mode + k, site, params)?;
    Ok(site.wavenumber(mode) * (params.sigma * (q + 2.0 * stokes.u2_0) + stokes.c2))
}

/// `γ₀` on `branch` at `μ₁`.
pub fn gamma0(mu1: f64, site: &CollisionSite, params: &PhysicalParams, branch: Branch) -> Result<Complex64> {
    check_dn1(site)?;
    let g = SiteGeometry::new(site, params)?;
    let [plus, minus] = g.splitting(mu1, params.sigma);
    let l1 = if branch == Branch::Plus { plus } else { minus };
    let denom = l1 + Complex64::new(0.0, mu1 * g.cg_m);
    Ok(Complex64::new(0.0, params.sigma * site.k_m) / denom)
}

/// O(ε) eigenfunction coefficients at modes `n − 1` and `m + 1`.
pub fn w1_coeffs(site: &CollisionSite, params: &PhysicalParams, mu1: f64, branch: Branch) -> Result<W1Coefficients> {
    check_dn1(site)?;
    let gamma0 = gamma0(mu1, site, params, branch)?;
    let lower = q_coefficient(site.n, site.n - 1, site, params)?;
    let upper = gamma0 * q_coefficient(site.n, site.m + 1, site, params)?;
    Ok(W1Coefficients { lower_mode: site.n - 1, lower, upper_mode: site.m + 1, upper, gamma0 })
}

/// `(A, B)` at `(μ₁, μ₂)`.
pub fn second_order_terms(mu1: f64, mu2: f64, site: &CollisionSite, params: &PhysicalParams) -> Result<(f64, f64)> {
    Ok(SecondOrderTerms::new(site, params)?.a_b(mu1, mu2))
}

pub fn lambda2(mu1: f64, mu2: f64, site: &CollisionSite, params: &PhysicalParams, branch: Branch) -> Result<Complex64> {
    SecondOrderTerms::new(site, params)?.lambda2(mu1, mu2, branch)
}

pub fn regular_curve_mu2(site: &CollisionSite, params: &PhysicalParams) -> Result<f64> {
    Ok(SecondOrderTerms::new(site, params)?.regular_mu2())
}

pub fn mu_star_correction(site: &CollisionSite, params: &PhysicalParams) -> Result<f64> {
    Ok(SecondOrderTerms::new(site, params)?.mu_star_correction())
}

/// `μ* = μ0 + ε²(μ₂ + μ*,1,1)`.
pub fn mu_star_second_order(site: &CollisionSite, params: &PhysicalParams, eps: f64) -> Result<f64> {
    let t = SecondOrderTerms::new(site, params)?;
    Ok(site.mu0 + eps * eps * (t.regular_mu2() + t.mu_star_correction()))
}

/// `λ* = λ0 + ελ₁(0) + ε²λ₂(0, μ₂ + μ*,1,1)`.
pub fn lambda_star_second_order(site: &CollisionSite, params: &PhysicalParams, eps: f64) -> Result<Complex64> {
    let t = SecondOrderTerms::new(site, params)?;
    let mu2 = t.regular_mu2() + t.mu_star_correction();
    Ok(site.lambda0() + t.lambda1(0.0, Branch::Plus) * eps + t.lambda2_unchecked(0.0, mu2, Branch::Plus) * (eps * eps))
}

/// Second-order Δn = 1 isola.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondOrderModel {
    pub eps: f64,
    pub mu0: f64,
    pub lambda0: Complex64,
    /// μ₂ in use (regular unless overridden).
    pub mu2: f64,
    pub mu_interval: (f64, f64),
    /// `μ₂ + μ*,1,1`.
    pub mu_star_shift: f64,
    pub mu_star: f64,
    pub lambda_star: Complex64,
    pub terms: SecondOrderTerms,
}

impl SecondOrderModel {
    pub fn new(site: &CollisionSite, params: &PhysicalParams, eps: f64) -> Result<Self> {
        let terms = SecondOrderTerms::new(site, params)?;
        Self::with_mu2(site, terms, eps, terms.regular_mu2())
    }

    /// Model with a caller-chosen μ₂; anything but the regular value blows up at the edges.
    pub fn with_mu2_override(site: &CollisionSite, params: &PhysicalParams, eps: f64, mu2: f64) -> Result<Self> {
        Self::with_mu2(site, SecondOrderTerms::new(site, params)?, eps, mu2)
    }

    fn with_mu2(site: &CollisionSite, terms: SecondOrderTerms, eps: f64, mu2: f64) -> Result<Self> {
        if !(eps.is_finite() && eps >= 0.0) {
            return Err(Error::InvalidParameter("eps must be finite and nonnegative"));
        }
        let center = site.mu0 + eps * eps * mu2;
        let mu_star_shift = mu2 + terms.mu_star_correction();
        let lambda_star = site.lambda0()
            + terms.lambda1(0.0, Branch::Plus) * eps
            + terms.lambda2_unchecked(0.0, mu_star_shift, Branch::Plus) * (eps * eps);
        Ok(Self {
            eps,
            mu0: site.mu0,
            lambda0: site.lambda0(),
            mu2,
            mu_interval: (center - eps * terms.m1, center + eps * terms.m1),
            mu_star_shift,
            mu_star: site.mu0 + eps * eps * mu_star_shift,
            lambda_star,
            terms,
        })
    }

    /// `(μ, λ0 + ελ₁ + ε²λ₂)` at `μ₁`, unguarded.
    pub fn point(&self, mu1: f64, branch: Branch) -> (f64, Complex64) {
        let e = self.eps;
        let mu = self.mu0 + e * mu1 + e * e * self.mu2;
        let lambda = self.lambda0
            + self.terms.lambda1(mu1, branch) * e
            + self.terms.lambda2_unchecked(mu1, self.mu2, branch) * (e * e);
        (mu, lambda)
    }

    /// Band-edge point at `μ₁ = ±M1`, where `λ₂,r` vanishes in the limit.
    pub fn edge_point(&self, sign: f64) -> (f64, Complex64) {
        let e = self.eps;
        let mu1 = sign.signum() * self.terms.m1;
        let mu = self.mu0 + e * mu1 + e * e * self.mu2;
        let l1 = Complex64::new(0.0, -0.5 * mu1 * self.terms.geometry.sum());
        let (a, _) = self.terms.a_b(mu1, self.mu2);
        (mu, self.lambda0 + l1 * e + Complex64::new(0.0, -0.5 * a) * (e * e))
    }

    /// Both branches sampled at `samples` points in μ₁ on
    /// `[−M1(1 − EDGE_CLIP), M1(1 − EDGE_CLIP)]`, bracketed by the two edge points.
    pub fn curve(&self, samples: usize) -> Vec<(f64, Complex64, Branch)> {
        let reach = self.terms.m1 * (1.0 - EDGE_CLIP);
        let mut out = Vec::with_capacity(2 * samples + 4);
        for branch in Branch::BOTH {
            let (mu, l) = self.edge_point(-1.0);
            out.push((mu, l, branch));
            for j in 0..samples {
                let t = if samples > 1 { j as f64 / (samples - 1) as f64 } else { 0.5 };
                let mu1 = -reach + 2.0 * reach * t;
                let (mu, l) = self.point(mu1, branch);
                out.push((mu, l, branch));
            }
            let (mu, l) = self.edge_point(1.0);
            out.push((mu, l, branch));
        }
        out
    }
}

fn check_dn1(site: &CollisionSite) -> Result<()> {
    if site.delta_n == 1 {
        Ok(())
    } else {
        Err(Error::WrongCollisionOrder { expected: 1, found: site.delta_n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::isola_dn1;
    use crate::collision::find_collision;
    use crate::dispersion::group_velocity;
    use crate::poly;
    use proptest::prelude::*;

    fn setup(sigma: f64) -> (PhysicalParams, CollisionSite, SecondOrderTerms) {
        let params = PhysicalParams { beta: 0.7, sigma };
        let site = find_collision(1, &params).unwrap();
        let terms = SecondOrderTerms::new(&site, &params).unwrap();
        (params, site, terms)
    }

    fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
        let r = 0.5 * (5.0f64.sqrt() - 1.0);
        let mut c = b - r * (b - a);
        let mut d = a + r * (b - a);
        while (b - a).abs() > tol {
            if f(c) > f(d) {
                b = d;
            } else {
                a = c;
            }
            c = b - r * (b - a);
            d = a + r * (b - a);
        }
        0.5 * (a + b)
    }

    #[test]
    fn w1_mode_structure() {
        let (params, site, _) = setup(1.0);
        let w = w1_coeffs(&site, &params, 0.3, Branch::Plus).unwrap();
        assert_eq!((w.lower_mode, w.upper_mode), (-2, 1));
        assert_eq!(w.coefficient(site.n), Complex64::new(0.0, 0.0));
        assert_eq!(w.coefficient(site.m), Complex64::new(0.0, 0.0));
        assert!(w.lower != 0.0 && w.upper.norm() > 0.0);

        let (p2, s2, _) = setup(2.0);
        let w2 = w1_coeffs(&s2, &p2, 0.3, Branch::Plus).unwrap();
        assert!((w2.lower - 2.0 * w.lower).abs() < 1e-12);
    }

    #[test]
    fn d_matches_group_velocity_derivative() {
        let (params, site, t) = setup(1.0);
        assert!((t.d_m - 0.4819805).abs() < 1e-6, "{}", t.d_m);
        let h = 1e-5;
        for (k, d) in [(site.k_m, t.d_m), (site.k_n, t.d_n)] {
            let fd = (group_velocity(k + h, &params) - group_velocity(k - h, &params)) / (2.0 * h);
            assert!((fd / 2.0 - d).abs() < 1e-8);
        }
    }

    #[test]
    fn a_b_structure() {
        let (_, _, t) = setup(1.0);
        let (a1, b1) = t.a_b(0.7, 0.3);
        let (a2, b2) = t.a_b(-0.7, 0.3);
        assert_eq!((a1, b1), (a2, b2));
        let (a3, _) = t.a_b(0.7, 1.3);
        assert!((a3 - a1 - t.geometry.sum()).abs() < 1e-12);
    }

    #[test]
    fn lambda2_at_center_is_imaginary() {
        let (_, _, t) = setup(1.0);
        let mu2 = t.regular_mu2();
        let l2 = t.lambda2(0.0, mu2, Branch::Plus).unwrap();
        assert_eq!(l2.re, 0.0);
        let (a, _) = t.a_b(0.0, mu2);
        assert_eq!(l2.im, -0.5 * a);
    }

    #[test]
    fn lambda2_rejects_band_edge() {
        let (_, _, t) = setup(1.0);
        let err = t.lambda2(t.m1 - 1e-9, 0.0, Branch::Plus).unwrap_err();
        assert!(matches!(err, Error::NearSingular { .. }));
        assert!(t.lambda2(t.m1 * 1.5, 0.0, Branch::Plus).is_err());
    }

    #[test]
    fn regular_mu2_satisfies_edge_condition() {
        let (_, _, t) = setup(1.0);
        let mu2 = t.regular_mu2();
        assert!(mu2.is_finite());
        assert!((mu2 + 1.222020185321563).abs() < 1e-9, "{mu2}");
        for sign in [-1.0, 1.0] {
            assert!(t.edge_function(sign * t.m1, mu2).abs() < 1e-12);
        }
        // numerical limit of (A λ₁,i + μ₁ B)/μ₁ as μ₁² → M1²
        let mu1 = t.m1 * (1.0 - 1e-7);
        let (a, b) = t.a_b(mu1, mu2);
        let l1i = -0.5 * mu1 * t.geometry.sum();
        assert!(((a * l1i + mu1 * b) / mu1).abs() < 1e-6);

        let (_, _, flipped) = setup(-1.0);
        assert!((flipped.regular_mu2() - mu2).abs() < 1e-12);
    }

    #[test]
    fn boundedness_and_blow_up() {
        let (_, _, t) = setup(1.0);
        let mu2 = t.regular_mu2();
        let mid = t.lambda2_unchecked(0.5 * t.m1, mu2, Branch::Plus).re.abs();
        let sup = |mu2: f64, delta: f64| {
            (0..=2000)
                .map(|j| {
                    let mu1 = (t.m1 - delta) * (2.0 * j as f64 / 2000.0 - 1.0);
                    t.lambda2_unchecked(mu1, mu2, Branch::Plus).re.abs()
                })
                .fold(0.0, f64::max)
        };
        for delta in [1e-6, 1e-9] {
            let edge = t.lambda2_unchecked(t.m1 - delta, mu2, Branch::Plus).re.abs();
            assert!(edge < 10.0 * mid.max(1e-3));
            assert!(sup(mu2, delta) < 10.0 * mid.max(1.0));
        }
        assert!((sup(mu2, 1e-6) - sup(mu2, 1e-9)).abs() < 1e-2 * sup(mu2, 1e-6).max(1.0));

        let bad = mu2 + 0.1;
        let near = t.lambda2_unchecked(t.m1 - 1e-6, bad, Branch::Plus).re.abs();
        let nearer = t.lambda2_unchecked(t.m1 - 1e-9, bad, Branch::Plus).re.abs();
        assert!(near > 10.0 * mid);
        assert!(nearer > 20.0 * near);
    }

    #[test]
    fn mu_star_correction_against_direct_maximization() {
        let (params, site, t) = setup(1.0);
        let corr = t.mu_star_correction();
        assert!((corr - 16.293602470954106).abs() < 1e-8, "{corr}");

        let eps = 1e-3;
        let mu2 = t.regular_mu2();
        let growth = |mu1: f64| {
            eps * t.lambda1(mu1, Branch::Plus).re + eps * eps * t.lambda2_unchecked(mu1, mu2, Branch::Plus).re
        };
        let best = golden_max(growth, -0.5 * t.m1, 0.5 * t.m1, 1e-12);
        let mu_star_direct = site.mu0 + eps * best + eps * eps * mu2;
        let mu_star = mu_star_second_order(&site, &params, eps).unwrap();
        assert!((mu_star - mu_star_direct).abs() < 1e-7, "{mu_star} vs {mu_star_direct}");
        assert_eq!(mu_star_second_order(&site, &params, 0.0).unwrap(), site.mu0);
    }

    #[test]
    fn critical_point_quartic_matches_expanded_condition() {
        let (_, _, t) = setup(1.0);
        let mu2 = t.regular_mu2();
        let eps = 1e-3;
        let q = t.critical_point_quartic(mu2, eps);
        let g = &t.geometry;
        let d2 = 0.25 * g.diff() * g.diff();
        let dsum = t.d_m + t.d_n;
        let bd = g.cg_m * t.d_n + g.cg_n * t.d_m;
        for j in 0..11 {
            let x = -2.0 + 0.4 * j as f64;
            let l1r2 = -x * x * d2 - t.sigma * t.sigma * g.krein_product;
            let l1i = -0.5 * x * g.sum();
            let (a, b) = t.a_b(x, mu2);
            let da = 2.0 * x * dsum;
            let db = 2.0 * x * bd;
            let dl1i = -0.5 * g.sum();
            let direct = -x * l1r2 * d2
                + 0.5 * eps * (l1r2 * (l1i * da + a * dl1i + x * db + b) + x * (a * l1i + x * b) * d2);
            let expanded = poly::eval(&q, x);
            assert!((direct - expanded).abs() < 1e-12 * (1.0 + direct.abs()));
        }
    }

    #[test]
    fn critical_point_quartic_roots() {
        let (_, _, t) = setup(1.0);
        let mu2 = t.regular_mu2();
        let eps = 1e-4;
        let mut roots = poly::real_roots(&t.critical_point_quartic(mu2, eps)).unwrap();
        roots.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
        assert_eq!(roots.len(), 4, "{roots:?}");
        assert!((roots[0] - eps * t.mu_star_correction()).abs() < 1e-3 * eps * t.mu_star_correction().abs());
        assert!((roots[1].abs() - t.m1).abs() < 1e-8 && (roots[2].abs() - t.m1).abs() < 1e-8);
        assert!(roots[1] * roots[2] < 0.0);
        assert!(roots[3].abs() > 0.1 / eps);

        let residual = |eps: f64| poly::eval(&t.critical_point_quartic(mu2, eps), eps * t.mu_star_correction()).abs();
        let scale = t.critical_point_quartic(mu2, eps)[3].abs();
        assert!(residual(eps) < scale * eps * eps);
        assert!(residual(eps) / residual(0.5 * eps) > 3.5);
    }

    #[test]
    fn lambda_star_values() {
        let (params, site, t) = setup(1.0);
        let eps = 1e-3;
        let l = lambda_star_second_order(&site, &params, eps).unwrap();
        assert!((l.re - eps * (1.0f64 / 7.0).sqrt()).abs() < 1e-15);
        assert!(((l.im - site.lambda0_im) / (eps * eps) - 0.4044304899040405).abs() < 1e-8);
        let l2 = lambda_star_second_order(&site, &params, 0.5 * eps).unwrap();
        let ratio = (l.im - site.lambda0_im) / (l2.im - site.lambda0_im);
        assert!((ratio - 4.0).abs() < 1e-8);
        assert_eq!(lambda_star_second_order(&site, &params, 0.0).unwrap(), site.lambda0());
        let (a0, _) = t.a_b(0.0, t.regular_mu2() + t.mu_star_correction());
        assert!((a0 + 0.808860979808081).abs() < 1e-9);
    }

    #[test]
    fn second_order_curve_properties() {
        let (params, site, _) = setup(1.0);
        let model = SecondOrderModel::new(&site, &params, 1e-3).unwrap();
        let curve = model.curve(DEFAULT_SAMPLES);
        let plus: Vec<_> = curve.iter().filter(|c| c.2 == Branch::Plus).collect();
        let minus: Vec<_> = curve.iter().filter(|c| c.2 == Branch::Minus).collect();
        for (p, m) in plus.iter().zip(&minus) {
            assert_eq!(p.0, m.0);
            assert!((-p.1.conj() - m.1).norm() < 1e-15);
        }
        let first = plus.first().unwrap();
        let second = plus[1];
        assert!((first.1 - second.1).norm() < 1e-7);

        let zero = SecondOrderModel::new(&site, &params, 0.0).unwrap();
        assert!(zero.curve(8).iter().all(|c| c.1 == site.lambda0()));
    }

    #[test]
    fn second_order_deviation_from_ellipse_is_quadratic() {
        let (params, site, _) = setup(1.0);
        let deviation = |eps: f64| {
            let model = SecondOrderModel::new(&site, &params, eps).unwrap();
            let leading = isola_dn1(&site, &params, eps).unwrap();
            (0..101)
                .map(|j| {
                    let mu1 = model.terms.m1 * 0.98 * (j as f64 / 50.0 - 1.0);
                    let (_, l2) = model.point(mu1, Branch::Plus);
                    let (_, l1) = leading.lambda_at(mu1, Branch::Plus);
                    ((l2 - l1).re.abs(), (l2 - l1).im.abs())
                })
                .fold((0.0f64, 0.0f64), |acc, v| (acc.0.max(v.0), acc.1.max(v.1)))
        };
        let (r1, i1) = deviation(1e-3);
        let (r2, i2) = deviation(2e-3);
        assert!(((r2 / r1).log2() - 2.0).abs() < 0.05);
        assert!(((i2 / i1).log2() - 2.0).abs() < 0.05);
    }

    #[test]
    fn reduces_to_leading_order() {
        let (params, site, _) = setup(1.0);
        let eps = 1e-6;
        let model = SecondOrderModel::new(&site, &params, eps).unwrap();
        let leading = isola_dn1(&site, &params, eps).unwrap();
        assert!((model.lambda_star - leading.lambda_star).norm() < 1e-11);
        assert!((model.mu_interval.0 - leading.mu_interval.0).abs() < 1e-11);
    }

    #[test]
    fn rejects_other_orders() {
        let params = PhysicalParams { beta: 0.25, sigma: 1.0 };
        let site = find_collision(2, &params).unwrap();
        assert!(matches!(
            SecondOrderModel::new(&site, &params, 1e-3),
            Err(Error::WrongCollisionOrder { expected: 1, found: 2 })
        ));
    }

    const DEFAULT_SAMPLES: usize = crate::asymptotics::DEFAULT_CURVE_SAMPLES;

    proptest! {
        #[test]
        fn lambda2_branch_symmetry(mu1 in -2.2f64..2.2, mu2 in -100.0f64..100.0) {
            let (_, _, t) = setup(1.0);
            let p = t.lambda2(mu1, mu2, Branch::Plus).unwrap();
            let m = t.lambda2(mu1, mu2, Branch::Minus).unwrap();
            prop_assert!((-p.conj() - m).norm() <= 1e-12 * p.norm().max(1.0));
        }
    }
}
