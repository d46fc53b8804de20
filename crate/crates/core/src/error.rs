use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("resonant: N={n} (beta = {beta} lies within tolerance of 1/(1+N^2))")]
    Resonant { n: u32, beta: f64 },

    #[error("beta = {beta} is not admissible for delta_n = {delta_n}: window ({lo}, {hi})")]
    Inadmissible { delta_n: u32, beta: f64, lo: f64, hi: f64 },

    #[error("{what} is degenerate (|value| = {value:e})")]
    Degenerate { what: &'static str, value: f64 },

    #[error("expected a delta_n = {expected} collision site, got delta_n = {found}")]
    WrongCollisionOrder { expected: u32, found: u32 },

    #[error("no admissible collision root for delta_n = {delta_n} at beta = {beta}")]
    NoCollision { delta_n: u32, beta: f64 },

    #[error("mu1 = {mu1} is within {gap:e} of the interval edge M1 = {m1}")]
    NearSingular { mu1: f64, m1: f64, gap: f64 },

    #[error("closed forms disagree for {what}: {first} vs {second}")]
    ConventionMismatch { what: &'static str, first: f64, second: f64 },

    #[error("eigenvalue iteration did not converge (dimension {dim}, stalled at row {row})")]
    EigenFailure { dim: usize, row: usize },

    #[error("spectrum failed at grid index {index} (mu = {mu}): eigenvalue iteration stalled at row {row} of {dim}")]
    SliceFailure { index: usize, mu: f64, dim: usize, row: usize },
}
