use std::path::PathBuf;

use clap::ValueEnum;
use kawahara_core::dispersion::normalize;
use kawahara_core::{PhysicalParams, RawParams};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Validated run parameters, embedded verbatim in every JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Normalized coefficients actually used.
    pub beta: f64,
    pub sigma: f64,
    pub eps: f64,
    pub delta_n: u32,
    pub order: u32,
    pub trunc_n: usize,
    pub mu_points: usize,
    pub margin: f64,
    pub out_dir: PathBuf,
    pub format: Format,
    pub samples: usize,
    /// Raw `(α, period)` when the inputs were normalized.
    pub raw_alpha: Option<f64>,
    pub raw_period: Option<f64>,
    pub mu_range: Option<(f64, f64)>,
    pub growth_floor: f64,
    pub mu2_override: Option<f64>,
}

impl RunConfig {
    /// Configuration with the command-line defaults for everything but the physics.
    pub fn with_defaults(beta: f64, sigma: f64, eps: f64, delta_n: u32, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            beta,
            sigma,
            eps,
            delta_n,
            order: 1,
            trunc_n: kawahara_core::ffh::DEFAULT_MODES,
            mu_points: 400,
            margin: 0.2,
            out_dir: out_dir.into(),
            format: Format::Csv,
            samples: kawahara_core::asymptotics::DEFAULT_CURVE_SAMPLES,
            raw_alpha: None,
            raw_period: None,
            mu_range: None,
            growth_floor: kawahara_core::ffh::DEFAULT_GROWTH_FLOOR,
            mu2_override: None,
        }
    }

    pub fn params(&self) -> Result<PhysicalParams, CliError> {
        Ok(PhysicalParams::new(self.beta, self.sigma)?)
    }

    /// Applies the normalization map when `alpha` or `period` is given.
    pub fn normalized_coefficients(
        beta: f64,
        sigma: f64,
        alpha: Option<f64>,
        period: Option<f64>,
    ) -> Result<(f64, f64), CliError> {
        if alpha.is_none() && period.is_none() {
            return Ok((beta, sigma));
        }
        let raw = RawParams::new(alpha.unwrap_or(1.0), beta, sigma, period.unwrap_or(2.0 * std::f64::consts::PI));
        let p = normalize(&raw)?;
        Ok((p.beta, p.sigma))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let fail = |m: &str| Err(CliError::Invalid(m.to_string()));
        if !(self.eps.is_finite() && self.eps >= 0.0) {
            return fail("--eps must be finite and >= 0");
        }
        if self.mu_points < 3 {
            return fail("--mu-points must be >= 3");
        }
        if !(self.margin.is_finite() && self.margin >= 0.0) {
            return fail("--margin must be finite and >= 0");
        }
        if self.delta_n == 0 {
            return fail("--dn must be >= 1");
        }
        if !(self.order == 1 || self.order == 2) {
            return fail("--order must be 1 or 2");
        }
        if self.trunc_n < kawahara_core::ffh::MIN_MODES {
            return fail("--modes must be >= 8");
        }
        if self.samples == 0 {
            return fail("--samples must be >= 1");
        }
        if !(self.growth_floor.is_finite() && self.growth_floor >= 0.0) {
            return fail("--growth-floor must be finite and >= 0");
        }
        if let Some((lo, hi)) = self.mu_range {
            if !(lo.is_finite() && hi.is_finite() && lo < hi && lo >= -0.5 && hi <= 0.5) {
                return fail("--mu-lo/--mu-hi must satisfy -1/2 <= lo < hi <= 1/2");
            }
        }
        if kawahara_core::stokes::StokesExpansion::eps_is_large(self.eps) {
            log::warn!("eps = {} exceeds the small-amplitude range of the expansion", self.eps);
        }
        Ok(())
    }
}
