//! Versioned default comparison tolerances.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const TOLERANCE_TABLE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum Profile {
    #[value(name = "dn1-order1")]
    #[serde(rename = "dn1-order1")]
    Dn1Order1,
    #[value(name = "dn1-order2")]
    #[serde(rename = "dn1-order2")]
    Dn1Order2,
    #[value(name = "dn2")]
    #[serde(rename = "dn2")]
    Dn2,
    #[value(name = "dn3")]
    #[serde(rename = "dn3")]
    Dn3,
}

impl Profile {
    pub fn for_run(delta_n: u32, order: u32) -> Result<Self, CliError> {
        match (delta_n, order) {
            (1, 1) => Ok(Profile::Dn1Order1),
            (1, _) => Ok(Profile::Dn1Order2),
            (2, _) => Ok(Profile::Dn2),
            (3, _) => Ok(Profile::Dn3),
            _ => Err(CliError::Invalid(format!("no comparison profile for delta_n = {delta_n}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Profile::Dn1Order1 => "dn1-order1",
            Profile::Dn1Order2 => "dn1-order2",
            Profile::Dn2 => "dn2",
            Profile::Dn3 => "dn3",
        }
    }

    /// Default tolerances. Interval and μ* errors are normalized by the
    /// predicted half-width (Δn = 1) or full width (Δn ≥ 2); Re λ* errors are
    /// relative; Im λ* errors are normalized by the ε² imaginary drift.
    pub fn defaults(self) -> Tolerances {
        match self {
            Profile::Dn1Order1 => Tolerances { interval: 0.10, mu_star: 0.10, re: 0.02, im: 1.5 },
            Profile::Dn1Order2 => Tolerances { interval: 0.02, mu_star: 0.02, re: 0.02, im: 0.1 },
            Profile::Dn2 => Tolerances { interval: 0.10, mu_star: 0.10, re: 0.10, im: 0.10 },
            Profile::Dn3 => Tolerances { interval: 0.25, mu_star: 0.25, re: 0.25, im: 0.25 },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub interval: f64,
    pub mu_star: f64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ToleranceOverrides {
    pub interval: Option<f64>,
    pub mu_star: Option<f64>,
    pub re: Option<f64>,
    pub im: Option<f64>,
}

impl Tolerances {
    pub fn with_overrides(self, o: ToleranceOverrides) -> Self {
        Self {
            interval: o.interval.unwrap_or(self.interval),
            mu_star: o.mu_star.unwrap_or(self.mu_star),
            re: o.re.unwrap_or(self.re),
            im: o.im.unwrap_or(self.im),
        }
    }
}
