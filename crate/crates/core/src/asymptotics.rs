//! Leading-order models of the high-frequency isolas born at Δn = 1, 2, 3
//! collisions.
//!
//! All three share one structure. With `Σ = c_g(k_m) + c_g(k_n)`,
//! `Δ = c_g(k_m) − c_g(k_n)`, a coupling `S` and a Floquet offset `ν`, the
//! isola is traced by
//!
//! ```text
//! μ(ν) = μ0 + ε² μ_shift + ε^p ν
//! λ(ν) = i(λ0_im + ε² drift) + ε^p [ −iνΣ/2 ± √(−ν²Δ²/4 − S² k_m k_n) ]
//! ```
//!
//! with `p = Δn`. For Δn = 1 the shift and drift vanish and `S = σ`; for
//! Δn ≥ 2 they come from the common O(ε²) problem and `S` is `S₂` or `S₃`.
//! The real part is nonzero for `|ν| < 2|S|√(−k_m k_n)/|Δ|` and the curve is
//! an ellipse with semi-axes `a = ε^p |S| √(−k_m k_n)` and `b = a |Σ/Δ|`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::collision::CollisionSite;
use crate::dispersion::{group_velocity, omega, PhysicalParams};
use crate::stokes::{stokes_expansion, StokesExpansion};
use crate::{Error, Result};

/// Smallest admissible `|c_g(k_m) − c_g(k_n)|`.
pub const GROUP_VELOCITY_GAP_TOL: f64 = 1e-10;

/// Smallest admissible `|Ω(μ0+M) − Ω(μ0+N)|` in a `Q` coefficient.
pub const Q_DENOMINATOR_TOL: f64 = 1e-10;

/// Allowed disagreement between the two routes to `S₂`.
pub const S2_AGREEMENT_TOL: f64 = 1e-8;

pub const DEFAULT_CURVE_SAMPLES: usize = 512;

/// Sign of the square root in the eigenvalue correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        }
    }
}

/// Group velocities and Krein product at a collision site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteGeometry {
    pub cg_m: f64,
    pub cg_n: f64,
    /// `k_m k_n`, negative at an admissible site.
    pub krein_product: f64,
}

impl SiteGeometry {
    pub fn new(site: &CollisionSite, params: &PhysicalParams) -> Result<Self> {
        let geometry = Self {
            cg_m: group_velocity(site.k_m, params),
            cg_n: group_velocity(site.k_n, params),
            krein_product: site.krein_product(),
        };
        if geometry.diff().abs() < GROUP_VELOCITY_GAP_TOL {
            return Err(Error::Degenerate {
                what: "group velocity difference",
                value: geometry.diff().abs(),
            });
        }
        Ok(geometry)
    }

    /// `c_g(k_m) + c_g(k_n)`.
    pub fn sum(&self) -> f64 {
        self.cg_m + self.cg_n
    }

    /// `c_g(k_m) − c_g(k_n)`.
    pub fn diff(&self) -> f64 {
        self.cg_m - self.cg_n
    }

    /// `|Σ/Δ|`, the ratio of the imaginary to the real semi-axis.
    pub fn axis_ratio(&self) -> f64 {
        (self.sum() / self.diff()).abs()
    }

    /// Eigenvalue correction `−iνΣ/2 ± √(−ν²Δ²/4 − S² k_m k_n)`, `[+, −]`.
    pub fn splitting(&self, nu: f64, coupling: f64) -> [Complex64; 2] {
        let half_diff = 0.5 * self.diff();
        let radicand = -nu * nu * half_diff * half_diff - coupling * coupling * self.krein_product;
        let root = Complex64::new(radicand, 0.0).sqrt();
        let shift = Complex64::new(0.0, -0.5 * nu * self.sum());
        [shift + root, shift - root]
    }

    /// Half-width in ν of the unstable band, `2|S|√(−k_m k_n)/|Δ|`.
    pub fn half_width(&self, coupling: f64) -> f64 {
        2.0 * coupling.abs() * (-self.krein_product).sqrt() / self.diff().abs()
    }
}

/// Asymptotic description of one isola.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolaModel {
    pub delta_n: u32,
    /// Power `p` of ε in the growth rate.
    pub order: u32,
    pub eps: f64,
    pub mu0: f64,
    pub mu_interval: (f64, f64),
    /// ε² coefficient of the Floquet shift of the interval center.
    pub mu_shift: f64,
    /// Half-width of the interval in units of `ε^p`.
    pub nu_half_width: f64,
    /// `−Ω(k_n)`.
    pub center_im: f64,
    /// ε² coefficient of the imaginary drift of the center.
    pub center_drift: f64,
    /// Real semi-axis, including the factor `ε^p`.
    pub semi_major_a: f64,
    /// Imaginary semi-axis, including the factor `ε^p`.
    pub semi_minor_b: f64,
    pub mu_star: f64,
    pub lambda_star: Complex64,
    /// `σ`, `S₂` or `S₃`.
    pub coupling: f64,
    pub geometry: SiteGeometry,
}

impl IsolaModel {
    fn build(
        site: &CollisionSite,
        geometry: SiteGeometry,
        eps: f64,
        coupling: f64,
        mu_shift: f64,
        center_drift: f64,
    ) -> Self {
        let order = site.delta_n;
        let scale = eps.powi(order as i32);
        let nu_half_width = geometry.half_width(coupling);
        let mu_center = site.mu0 + eps * eps * mu_shift;
        let semi_major_a = scale * coupling.abs() * (-geometry.krein_product).sqrt();
        let center = site.lambda0_im + eps * eps * center_drift;
        Self {
            delta_n: site.delta_n,
            order,
            eps,
            mu0: site.mu0,
            mu_interval: (mu_center - scale * nu_half_width, mu_center + scale * nu_half_width),
            mu_shift,
            nu_half_width,
            center_im: site.lambda0_im,
            center_drift,
            semi_major_a,
            semi_minor_b: semi_major_a * geometry.axis_ratio(),
            mu_star: mu_center,
            lambda_star: Complex64::new(semi_major_a, center),
            coupling,
            geometry,
        }
    }

    /// `ε^p`.
    pub fn scale(&self) -> f64 {
        self.eps.powi(self.order as i32)
    }

    /// Imaginary coordinate of the ellipse center at this ε.
    pub fn center(&self) -> f64 {
        self.center_im + self.eps * self.eps * self.center_drift
    }

    /// Point on the model curve at Floquet offset `nu`.
    pub fn lambda_at(&self, nu: f64, branch: Branch) -> (f64, Complex64) {
        let scale = self.scale();
        let mu = self.mu0 + self.eps * self.eps * self.mu_shift + scale * nu;
        let split = self.geometry.splitting(nu, self.coupling);
        let correction = match branch {
            Branch::Plus => split[0],
            Branch::Minus => split[1],
        };
        (mu, Complex64::new(0.0, self.center()) + correction * scale)
    }

    /// Model eigenvalue at Floquet exponent `mu`.
    pub fn lambda_at_mu(&self, mu: f64, branch: Branch) -> Complex64 {
        let scale = self.scale();
        if scale == 0.0 {
            return Complex64::new(0.0, self.center());
        }
        let nu = (mu - self.mu0 - self.eps * self.eps * self.mu_shift) / scale;
        self.lambda_at(nu, branch).1
    }

    /// `samples` interior points per branch, uniformly spaced in ν.
    pub fn curve(&self, samples: usize) -> Vec<(f64, Complex64, Branch)> {
        let h = self.nu_half_width;
        let mut out = Vec::with_capacity(2 * samples);
        for branch in Branch::BOTH {
            for j in 0..samples {
                let nu = -h + 2.0 * h * (j as f64 + 1.0) / (samples as f64 + 1.0);
                let (mu, lambda) = self.lambda_at(nu, branch);
                out.push((mu, lambda, branch));
            }
        }
        out
    }

    /// Normalized ellipse residual `|LHS − RHS|/RHS` with
    /// `LHS = λ_r²/ε^{2p} + (λ_i − center)²/(ε^{2p}(Σ/Δ)²)` and `RHS = −S² k_m k_n`.
    pub fn ellipse_residual(&self, lambda: Complex64) -> f64 {
        let scale2 = self.scale() * self.scale();
        let ratio = self.geometry.sum() / self.geometry.diff();
        let di = lambda.im - self.center();
        let lhs = lambda.re * lambda.re / scale2 + di * di / (scale2 * ratio * ratio);
        let rhs = -self.coupling * self.coupling * self.geometry.krein_product;
        (lhs - rhs).abs() / rhs
    }
}

/// `λ₁(μ₁)` for a Δn = 1 site, `[+, −]` branches.
pub fn lambda1(mu1: f64, site: &CollisionSite, params: &PhysicalParams) -> Result<[Complex64; 2]> {
    Ok(SiteGeometry::new(site, params)?.splitting(mu1, params.sigma))
}

/// Half-width `M1 = 2|σ|√(−k_m k_n)/|c_g(k_m) − c_g(k_n)|` of the Δn = 1 band in μ₁.
pub fn m1(site: &CollisionSite, params: &PhysicalParams) -> Result<f64> {
    if !site.krein_check() {
        return Err(Error::Degenerate { what: "Krein product", value: site.krein_product() });
    }
    Ok(SiteGeometry::new(site, params)?.half_width(params.sigma))
}

/// `Q_{N,M} = σ(μ0+M)/(Ω(μ0+M) − Ω(μ0+N))`.
pub fn q_coefficient(n_mode: i64, m_mode: i64, site: &CollisionSite, params: &PhysicalParams) -> Result<f64> {
    let k_m = site.wavenumber(m_mode);
    let denominator = omega(k_m, params) - omega(site.wavenumber(n_mode), params);
    if denominator.abs() < Q_DENOMINATOR_TOL {
        return Err(Error::Degenerate { what: "Q denominator", value: denominator.abs() });
    }
    Ok(params.sigma * k_m / denominator)
}

/// `P^N = (μ0+N)[σ(Q_{n,N−1} + Q_{n,N+1} + 2û(u₂)₀) + c₂]`, valid for Δn ≥ 2.
pub fn p_term(mode: i64, site: &CollisionSite, params: &PhysicalParams, stokes: &StokesExpansion) -> Result<f64> {
    let n = site.n;
    let q_sum = q_coefficient(n, mode - 1, site, params)? + q_coefficient(n, mode + 1, site, params)?;
    Ok(site.wavenumber(mode) * (params.sigma * (q_sum + 2.0 * stokes.u2_0) + stokes.c2))
}

/// ε² center shift `μ₂*` and imaginary drift shared by all Δn ≥ 2 isolas.
pub fn second_order_shift(site: &CollisionSite, params: &PhysicalParams) -> Result<(f64, f64)> {
    check_order_at_least(site, 2)?;
    let stokes = stokes_expansion(params)?;
    let g = SiteGeometry::new(site, params)?;
    let p_m = p_term(site.m, site, params, &stokes)?;
    let p_n = p_term(site.n, site, params, &stokes)?;
    let shift = (p_m - p_n) / g.diff();
    let drift = -(p_m * g.cg_n - p_n * g.cg_m) / g.diff();
    Ok((shift, drift))
}

/// Closed form `σ²/(2(1 − 5β))` of the Δn = 2 coupling.
pub fn s2_closed_form(params: &PhysicalParams) -> f64 {
    params.sigma * params.sigma / (2.0 * (1.0 - 5.0 * params.beta))
}

/// `S₂ = σ(Q_{n,n+1} + 2û(u₂)₂)`, cross-checked against [`s2_closed_form`].
pub fn s2(site: &CollisionSite, params: &PhysicalParams) -> Result<f64> {
    check_order(site, 2)?;
    let stokes = stokes_expansion(params)?;
    let direct = params.sigma * (q_coefficient(site.n, site.n + 1, site, params)? + 2.0 * stokes.u2_2);
    let closed = s2_closed_form(params);
    if (direct - closed).abs() > S2_AGREEMENT_TOL * closed.abs().max(1.0) {
        return Err(Error::ConventionMismatch { what: "S2", first: direct, second: closed });
    }
    Ok(direct)
}

/// `S₃ = σ[Q_{n,n+1}Q_{n,n+2} + 2û(u₂)₂(Q_{n,n+1} + Q_{n,n+2}) + 2û(u₃)₃]`.
pub fn s3(site: &CollisionSite, params: &PhysicalParams) -> Result<f64> {
    check_order(site, 3)?;
    let stokes = stokes_expansion(params)?;
    let q1 = q_coefficient(site.n, site.n + 1, site, params)?;
    let q2 = q_coefficient(site.n, site.n + 2, site, params)?;
    Ok(params.sigma * (q1 * q2 + 2.0 * stokes.u2_2 * (q1 + q2) + 2.0 * stokes.u3_3))
}

/// `λ₂(μ₂)` for a Δn = 2 site, `[+, −]` branches.
pub fn lambda2_dn2(mu2: f64, site: &CollisionSite, params: &PhysicalParams) -> Result<[Complex64; 2]> {
    let coupling = s2(site, params)?;
    let (shift, drift) = second_order_shift(site, params)?;
    let g = SiteGeometry::new(site, params)?;
    let center = Complex64::new(0.0, drift);
    let [plus, minus] = g.splitting(mu2 - shift, coupling);
    Ok([center + plus, center + minus])
}

pub fn isola_dn1(site: &CollisionSite, params: &PhysicalParams, eps: f64) -> Result<IsolaModel> {
    check_order(site, 1)?;
    check_eps(eps)?;
    let geometry = SiteGeometry::new(site, params)?;
    Ok(IsolaModel::build(site, geometry, eps, params.sigma, 0.0, 0.0))
}

pub fn isola_dn2(site: &CollisionSite, params: &PhysicalParams, eps: f64) -> Result<IsolaModel> {
    check_order(site, 2)?;
    check_eps(eps)?;
    let coupling = s2(site, params)?;
    let (shift, drift) = second_order_shift(site, params)?;
    let geometry = SiteGeometry::new(site, params)?;
    Ok(IsolaModel::build(site, geometry, eps, coupling, shift, drift))
}

/// Δn = 3 ellipse; the ν band uses `S₃` in place of `S₂`.
pub fn isola_dn3(site: &CollisionSite, params: &PhysicalParams, eps: f64) -> Result<IsolaModel> {
    check_order(site, 3)?;
    check_eps(eps)?;
    let coupling = s3(site, params)?;
    let (shift, drift) = second_order_shift(site, params)?;
    let geometry = SiteGeometry::new(site, params)?;
    Ok(IsolaModel::build(site, geometry, eps, coupling, shift, drift))
}

/// Dispatches on `site.delta_n` (1, 2 or 3).
pub fn isola(site: &CollisionSite, params: &PhysicalParams, eps: f64) -> Result<IsolaModel> {
    match site.delta_n {
        1 => isola_dn1(site, params, eps),
        2 => isola_dn2(site, params, eps),
        3 => isola_dn3(site, params, eps),
        _ => Err(Error::InvalidParameter("leading-order models exist for delta_n = 1, 2, 3 only")),
    }
}

fn check_order(site: &CollisionSite, expected: u32) -> Result<()> {
    if site.delta_n == expected {
        Ok(())
    } else {
        Err(Error::WrongCollisionOrder { expected, found: site.delta_n })
    }
}

fn check_order_at_least(site: &CollisionSite, min: u32) -> Result<()> {
    if site.delta_n >= min {
        Ok(())
    } else {
        Err(Error::WrongCollisionOrder { expected: min, found: site.delta_n })
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter("eps must be finite and nonnegative"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collision::{admissible_beta_range, find_collision};
    use proptest::prelude::*;

    fn setup(dn: u32, beta: f64, sigma: f64) -> (PhysicalParams, CollisionSite) {
        let params = PhysicalParams { beta, sigma };
        (params, find_collision(dn, &params).unwrap())
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn lambda1_examples() {
        let (params, site) = setup(1, 0.7, 1.0);
        let r = (1.0f64 / 7.0).sqrt();
        let [p, m] = lambda1(0.0, &site, &params).unwrap();
        assert!(close(p.re, r, 1e-14) && p.im == 0.0 && close(m.re, -r, 1e-14));

        let big_m = m1(&site, &params).unwrap();
        let [p, _] = lambda1(big_m, &site, &params).unwrap();
        assert!(p.re.abs() < 1e-7);

        let [p, _] = lambda1(0.5 * big_m, &site, &params).unwrap();
        assert!(close(p.re, 0.75f64.sqrt() * r, 1e-13));
        assert!(close(p.re, 0.3273268, 1e-7));
    }

    #[test]
    fn m1_examples_and_bisection_oracle() {
        let (params, site) = setup(1, 0.7, 1.0);
        let big_m = m1(&site, &params).unwrap();
        assert!(close(big_m, 2.309401, 1e-6));

        let (mut lo, mut hi) = (0.0, 10.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let radicand = -mid * mid * 0.25 * SiteGeometry::new(&site, &params).unwrap().diff().powi(2)
                + 1.0 / 7.0;
            if radicand > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!(close(lo, big_m, 1e-12));

        let doubled = m1(&site, &PhysicalParams { beta: 0.7, sigma: 2.0 }).unwrap();
        assert!(close(doubled, 2.0 * big_m, 1e-13));
    }

    #[test]
    fn dn1_model_values() {
        let (params, site) = setup(1, 0.7, 1.0);
        let model = isola_dn1(&site, &params, 1e-3).unwrap();
        assert_eq!(model.order, 1);
        assert!(close(model.mu_interval.0, 0.1703637, 1e-7));
        assert!(close(model.mu_interval.1, 0.1749825, 1e-7));
        assert!(close(model.lambda_star.re, 3.779645e-4, 1e-10));
        assert!(close(model.lambda_star.im, 0.046761, 1e-6));
        assert!(close(model.semi_major_a, 3.779645e-4, 1e-10));
        assert!(close(model.semi_minor_b, 1.154706e-4, 1e-9));
        assert!(close(model.geometry.sum(), -0.1, 1e-12));
        assert_eq!(model.center_drift, 0.0);
        assert_eq!(model.mu_star, site.mu0);
    }

    #[test]
    fn dn1_zero_amplitude_is_a_point() {
        let (params, site) = setup(1, 0.7, 1.0);
        let model = isola_dn1(&site, &params, 0.0).unwrap();
        assert_eq!(model.mu_interval, (site.mu0, site.mu0));
        assert_eq!(model.lambda_star, site.lambda0());
        for (_, lambda, _) in model.curve(16) {
            assert_eq!(lambda, site.lambda0());
        }
    }

    #[test]
    fn ellipse_identity_on_sampled_curves() {
        let cases = [(1u32, 0.7, 1e-3), (2, 0.25, 1e-3), (3, 0.15, 2e-2)];
        for (dn, beta, eps) in cases {
            let (params, site) = setup(dn, beta, 1.0);
            let model = isola(&site, &params, eps).unwrap();
            for (_, lambda, _) in model.curve(100) {
                assert!(model.ellipse_residual(lambda) <= 1e-10, "dn = {dn}");
            }
        }
    }

    #[test]
    fn curves_have_quadrafold_symmetry() {
        for (dn, beta, eps) in [(1u32, 0.7, 1e-3), (2, 0.25, 1e-3), (3, 0.15, 2e-2)] {
            let (params, site) = setup(dn, beta, 1.0);
            let model = isola(&site, &params, eps).unwrap();
            for j in 0..50 {
                let nu = model.nu_half_width * (j as f64 / 25.0 - 1.0);
                let (_, plus) = model.lambda_at(nu, Branch::Plus);
                let (_, minus) = model.lambda_at(nu, Branch::Minus);
                for l in [plus, minus] {
                    let mirrored = -l.conj();
                    let d = (mirrored - plus).norm().min((mirrored - minus).norm());
                    assert!(d <= 1e-15 * l.norm().max(1.0));
                }
            }
        }
    }

    #[test]
    fn axis_ratio_holds_for_all_models() {
        for (dn, beta, eps) in [(1u32, 0.7, 1e-3), (2, 0.25, 1e-3), (3, 0.15, 2e-2)] {
            let (params, site) = setup(dn, beta, 1.0);
            let model = isola(&site, &params, eps).unwrap();
            let g = model.geometry;
            let expected = (g.cg_m + g.cg_n).abs() / (g.cg_m - g.cg_n).abs();
            assert!(close(model.semi_minor_b / model.semi_major_a, expected, 1e-14));
            assert!(model.semi_major_a > 0.0 && model.semi_minor_b > 0.0);
            assert!(model.mu_interval.0 <= model.mu_star && model.mu_star <= model.mu_interval.1);
            let best = model
                .curve(DEFAULT_CURVE_SAMPLES)
                .into_iter()
                .map(|(_, l, _)| l.re)
                .fold(f64::MIN, f64::max);
            assert!(best <= model.lambda_star.re * (1.0 + 1e-12));
        }
    }

    #[test]
    fn q_and_s2_at_quarter() {
        let (params, site) = setup(2, 0.25, 1.0);
        let q = q_coefficient(site.n, site.n + 1, &site, &params).unwrap();
        assert!(close(q, -4.0 / 3.0, 1e-12), "{q}");
        let s = s2(&site, &params).unwrap();
        assert!(close(s, -2.0, 1e-12));
        let q2 = q_coefficient(site.n, site.n + 1, &site, &PhysicalParams { beta: 0.25, sigma: 2.0 }).unwrap();
        assert!(close(q2, 2.0 * q, 1e-12));
        assert!(matches!(
            q_coefficient(site.n, site.m, &site, &params),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn s2_closed_form_examples() {
        assert!(close(s2_closed_form(&PhysicalParams { beta: 0.21, sigma: 1.0 }), -10.0, 1e-12));
        let (params, site) = setup(2, 0.21, 1.0);
        assert!(close(s2(&site, &params).unwrap(), -10.0, 1e-9));
        assert!(s2_closed_form(&PhysicalParams { beta: 0.2 + 1e-9, sigma: 1.0 }).abs() > 1e7);
    }

    #[test]
    fn s2_identity_across_window() {
        for i in 0..50 {
            let beta = 0.201 + 0.098 * (i as f64 + 0.5) / 50.0;
            let (params, site) = setup(2, beta, 1.0);
            let stokes = stokes_expansion(&params).unwrap();
            let direct = q_coefficient(site.n, site.n + 1, &site, &params).unwrap() + 2.0 * stokes.u2_2;
            assert!((direct - s2_closed_form(&params)).abs() <= 1e-10 * s2_closed_form(&params).abs().max(1.0));
        }
    }

    #[test]
    fn dn2_model_values() {
        let (params, site) = setup(2, 0.25, 1.0);
        let model = isola_dn2(&site, &params, 1e-3).unwrap();
        assert_eq!(model.order, 2);
        assert!(close(model.lambda_star.re, 1e-6 * 2.0 * 0.6f64.sqrt(), 1e-15));
        assert!(close(model.lambda_star.re, 1.549193e-6, 1e-12));
        let g = model.geometry;
        let width = (model.mu_interval.1 - model.mu_interval.0) / 1e-6;
        assert!(close(width, 4.0 * 2.0 * 0.6f64.sqrt() / g.diff().abs(), 1e-6));
        let zero = isola_dn2(&site, &params, 0.0).unwrap();
        assert_eq!(zero.lambda_star, site.lambda0());
    }

    #[test]
    fn dn2_lambda2_branches_and_peak() {
        let (params, site) = setup(2, 0.25, 1.0);
        let (shift, drift) = second_order_shift(&site, &params).unwrap();
        let [p, m] = lambda2_dn2(shift, &site, &params).unwrap();
        assert!(close(p.re, 2.0 * 0.6f64.sqrt(), 1e-12));
        assert!(close(p.im, drift, 1e-12));
        assert!(close(m.re, -p.re, 1e-12));
    }

    #[test]
    fn dn3_model_scaling_and_sign_invariance() {
        let (params, site) = setup(3, 0.15, 1.0);
        assert_eq!((site.n, site.m), (-1, 2));
        let s = s3(&site, &params).unwrap();
        assert!(s.abs() > 0.0);
        let a = isola_dn3(&site, &params, 0.02).unwrap().semi_major_a;
        let a2 = isola_dn3(&site, &params, 0.04).unwrap().semi_major_a;
        assert!(close(a2 / a, 8.0, 1e-12));
        assert!(close(a / 8e-6, s.abs() * (-site.krein_product()).sqrt(), 1e-12));

        let flipped = PhysicalParams { beta: 0.15, sigma: -1.0 };
        let site_f = find_collision(3, &flipped).unwrap();
        let af = isola_dn3(&site_f, &flipped, 0.02).unwrap().semi_major_a;
        assert!(close(af, a, 1e-15));
    }

    #[test]
    fn wrong_orders_are_rejected() {
        let (params, site) = setup(1, 0.7, 1.0);
        assert_eq!(
            isola_dn2(&site, &params, 1e-3),
            Err(Error::WrongCollisionOrder { expected: 2, found: 1 })
        );
        assert!(isola_dn3(&site, &params, 1e-3).is_err());
        assert!(isola_dn1(&site, &params, -1.0).is_err());
    }

    proptest! {
        #[test]
        fn dn2_branches_mirror(mu2 in -50.0f64..50.0) {
            let (params, site) = setup(2, 0.25, 1.0);
            let [p, m] = lambda2_dn2(mu2, &site, &params).unwrap();
            let mirrored = -p.conj();
            prop_assert!((mirrored - m).norm().min((mirrored - p).norm()) <= 1e-12 * p.norm().max(1.0));
            if p.re != 0.0 {
                prop_assert!((mirrored - m).norm() <= 1e-12 * p.norm().max(1.0));
            }
        }

        #[test]
        fn width_formula(frac in 0.02f64..0.98) {
            let w = admissible_beta_range(2);
            let beta = w.lo + frac * w.width();
            let (params, site) = setup(2, beta, 1.0);
            let model = isola_dn2(&site, &params, 1.0).unwrap();
            let g = model.geometry;
            let s = s2(&site, &params).unwrap();
            let expected = 4.0 * s.abs() * (-g.krein_product).sqrt() / g.diff().abs();
            prop_assert!((model.mu_interval.1 - model.mu_interval.0 - expected).abs() <= 1e-9 * expected);
        }
    }
}
