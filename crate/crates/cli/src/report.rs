//! Serializable views of the core results.

use kawahara_core::asymptotics::IsolaModel;
use kawahara_core::collision::admissible_beta_range;
use kawahara_core::ffh::IsolaNumerics;
use kawahara_core::{CollisionSite, Complex64, SecondOrderModel, StokesExpansion};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexDto {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexDto {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StokesDto {
    pub c0: f64,
    pub c2: f64,
    pub u2_0: f64,
    pub u2_2: f64,
    pub u3_3: f64,
    pub speed: f64,
}

impl StokesDto {
    pub fn new(s: &StokesExpansion, eps: f64) -> Self {
        Self { c0: s.c0, c2: s.c2, u2_0: s.u2_0, u2_2: s.u2_2, u3_3: s.u3_3, speed: s.speed(eps) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StokesFile {
    pub config: RunConfig,
    pub coefficients: StokesDto,
    pub profile: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollisionDto {
    pub delta_n: u32,
    pub mu0: f64,
    pub n: i64,
    pub m: i64,
    pub k_n: f64,
    pub k_m: f64,
    pub lambda0_im: f64,
    pub krein_product: f64,
    pub krein_ok: bool,
    pub omega_gap: f64,
    pub admissible_window: (f64, f64),
}

impl CollisionDto {
    pub fn new(site: &CollisionSite, omega_gap: f64) -> Self {
        let w = admissible_beta_range(site.delta_n);
        Self {
            delta_n: site.delta_n,
            mu0: site.mu0,
            n: site.n,
            m: site.m,
            k_n: site.k_n,
            k_m: site.k_m,
            lambda0_im: site.lambda0_im,
            krein_product: site.krein_product(),
            krein_ok: site.krein_check(),
            omega_gap,
            admissible_window: (w.lo, w.hi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollisionFile {
    pub config: RunConfig,
    pub site: CollisionDto,
}

/// Everything `isola_meta.json` records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsolaMeta {
    pub config: RunConfig,
    pub site: CollisionDto,
    pub delta_n: u32,
    /// Asymptotic order of the model (1 or 2 for Δn = 1).
    pub order: u32,
    pub growth_power: u32,
    pub mu_interval: (f64, f64),
    pub mu_star: f64,
    pub lambda_star: ComplexDto,
    pub semi_major_a: f64,
    pub semi_minor_b: f64,
    pub center_im: f64,
    pub center_drift: f64,
    pub coupling: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s3: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu2_regular: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_star_correction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_star_shift: Option<f64>,
}

impl IsolaMeta {
    pub fn leading(config: &RunConfig, site: CollisionDto, model: &IsolaModel) -> Self {
        Self {
            config: config.clone(),
            site,
            delta_n: model.delta_n,
            order: 1,
            growth_power: model.order,
            mu_interval: model.mu_interval,
            mu_star: model.mu_star,
            lambda_star: model.lambda_star.into(),
            semi_major_a: model.semi_major_a,
            semi_minor_b: model.semi_minor_b,
            center_im: model.center_im,
            center_drift: model.center_drift,
            coupling: model.coupling,
            s2: (model.delta_n == 2).then_some(model.coupling),
            s3: (model.delta_n == 3).then_some(model.coupling),
            m1: (model.delta_n == 1).then_some(model.nu_half_width),
            mu2: None,
            mu2_regular: None,
            mu_star_correction: None,
            mu_star_shift: None,
        }
    }

    pub fn second_order(config: &RunConfig, site: CollisionDto, leading: &IsolaModel, model: &SecondOrderModel) -> Self {
        let mut meta = Self::leading(config, site, leading);
        meta.order = 2;
        meta.mu_interval = model.mu_interval;
        meta.mu_star = model.mu_star;
        meta.lambda_star = model.lambda_star.into();
        meta.center_drift = (model.lambda_star.im - model.lambda0.im) / (model.eps * model.eps).max(f64::MIN_POSITIVE);
        meta.mu2 = Some(model.mu2);
        meta.mu2_regular = Some(model.terms.regular_mu2());
        meta.mu_star_correction = Some(model.terms.mu_star_correction());
        meta.mu_star_shift = Some(model.mu_star_shift);
        meta
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericsDto {
    pub mu_lo: f64,
    pub mu_hi: f64,
    pub mu_star: f64,
    pub lambda_star: ComplexDto,
    pub touches_grid_edge: bool,
    pub point_count: usize,
    pub points: Vec<(f64, ComplexDto)>,
}

impl From<&IsolaNumerics> for NumericsDto {
    fn from(n: &IsolaNumerics) -> Self {
        Self {
            mu_lo: n.mu_lo,
            mu_hi: n.mu_hi,
            mu_star: n.mu_star,
            lambda_star: n.lambda_star.into(),
            touches_grid_edge: n.touches_grid_edge,
            point_count: n.points.len(),
            points: n.points.iter().map(|&(mu, l)| (mu, l.into())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDto {
    pub mu_lo: f64,
    pub mu_hi: f64,
    pub points: usize,
    pub window_center: ComplexDto,
    pub window_radius: f64,
    pub growth_floor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericFile {
    pub config: RunConfig,
    pub grid: GridDto,
    /// True when no eigenvalue grew above the floor.
    pub stable: bool,
    pub isola: Option<NumericsDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantityReport {
    pub name: String,
    pub predicted: f64,
    pub measured: Option<f64>,
    /// Absolute difference divided by `scale`.
    pub error: Option<f64>,
    pub scale: f64,
    pub normalization: String,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub config: RunConfig,
    pub profile: String,
    pub tolerance_table_version: u32,
    pub tolerances: Tolerances,
    pub predicted: IsolaMeta,
    pub measured: Option<NumericsDto>,
    pub quantities: Vec<QuantityReport>,
    pub pass: bool,
    pub failing: Vec<String>,
}
