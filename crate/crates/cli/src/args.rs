use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::tolerances::{Profile, ToleranceOverrides};

#[derive(Debug, Parser)]
#[command(name = "kawahara", version, about = "Stokes waves and high-frequency instability isolas of the Kawahara equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Third-order Stokes coefficients and a sampled wave profile.
    Stokes(RunArgs),
    /// Collision site of the zero-amplitude spectrum for one Δn.
    Collide(RunArgs),
    /// Asymptotic isola model: interval, most unstable eigenvalue, curve.
    Isola(RunArgs),
    /// Floquet-Fourier-Hill spectrum over a μ-grid and measured isola.
    Ffh(RunArgs),
    /// Asymptotics against FFH with tolerance-gated exit code.
    Compare(RunArgs),
}

impl Command {
    pub fn args(&self) -> &RunArgs {
        match self {
            Command::Stokes(a) | Command::Collide(a) | Command::Isola(a) | Command::Ffh(a) | Command::Compare(a) => a,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 0.7, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
    pub eps: f64,
    /// Mode gap m − n of the collision.
    #[arg(long, default_value_t = 1)]
    pub dn: u32,
    /// Asymptotic order for Δn = 1 (1 or 2).
    #[arg(long, default_value_t = 1)]
    pub order: u32,
    /// Fourier truncation N (modes −N..N).
    #[arg(long, default_value_t = kawahara_core::ffh::DEFAULT_MODES)]
    pub modes: usize,
    #[arg(long, default_value_t = 400)]
    pub mu_points: usize,
    /// Fractional widening of the predicted μ-window on each side.
    #[arg(long, default_value_t = 0.2)]
    pub margin: f64,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Curve / profile samples.
    #[arg(long, default_value_t = kawahara_core::asymptotics::DEFAULT_CURVE_SAMPLES)]
    pub samples: usize,
    /// Raw u_xx coefficient; triggers normalization of beta and sigma.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Raw period L; triggers normalization of beta and sigma.
    #[arg(long)]
    pub period: Option<f64>,
    /// Explicit μ-grid bounds for `ffh`/`compare`.
    #[arg(long, allow_negative_numbers = true, requires = "mu_hi")]
    pub mu_lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "mu_lo")]
    pub mu_hi: Option<f64>,
    #[arg(long, default_value_t = kawahara_core::ffh::DEFAULT_GROWTH_FLOOR)]
    pub growth_floor: f64,
    /// Replace the regular-curve μ₂ (diagnostics; Δn = 1, order 2).
    #[arg(long, allow_negative_numbers = true)]
    pub mu2_override: Option<f64>,
    /// Tolerance profile for `compare`; defaults from --dn/--order.
    #[arg(long, value_enum)]
    pub profile: Option<Profile>,
    #[arg(long)]
    pub tol_interval: Option<f64>,
    #[arg(long)]
    pub tol_mu_star: Option<f64>,
    #[arg(long)]
    pub tol_re: Option<f64>,
    #[arg(long)]
    pub tol_im: Option<f64>,
}

impl RunArgs {
    pub fn to_config(&self) -> Result<RunConfig, CliError> {
        let (beta, sigma) = RunConfig::normalized_coefficients(self.beta, self.sigma, self.alpha, self.period)?;
        let config = RunConfig {
            beta,
            sigma,
            eps: self.eps,
            delta_n: self.dn,
            order: self.order,
            trunc_n: self.modes,
            mu_points: self.mu_points,
            margin: self.margin,
            out_dir: self.out.clone(),
            format: self.format,
            samples: self.samples,
            raw_alpha: self.alpha,
            raw_period: self.period,
            mu_range: self.mu_lo.zip(self.mu_hi),
            growth_floor: self.growth_floor,
            mu2_override: self.mu2_override,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn tolerance_overrides(&self) -> ToleranceOverrides {
        ToleranceOverrides {
            interval: self.tol_interval,
            mu_star: self.tol_mu_star,
            re: self.tol_re,
            im: self.tol_im,
        }
    }
}
