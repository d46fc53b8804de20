//! Small-amplitude Stokes waves of the Kawahara equation and the
//! high-frequency instabilities they develop.
//!
//! The crate works in the normalized, 2π-periodic frame
//!
//! ```text
//! c u + u_xx + β u_xxxx + σ u² = 0
//! ```
//!
//! and provides:
//!
//! * the linear dispersion relation and parameter normalization ([`dispersion`]),
//! * the third-order Stokes expansion ([`stokes`]),
//! * eigenvalue collision sites and the Krein condition ([`collision`]),
//! * closed-form leading-order isola models for Δn = 1, 2, 3 ([`asymptotics`]),
//! * the second-order Δn = 1 theory with the regular curve condition ([`higher_order`]),
//! * a Floquet–Fourier–Hill spectrum oracle ([`ffh`]) used to validate all of the above.
//!
//! Everything here is pure and deterministic. The crate is `no_std` and only
//! needs an allocator.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod collision;
pub mod dispersion;
mod error;
pub mod ffh;
pub mod higher_order;
pub mod linalg;
pub mod poly;
pub mod stokes;

pub use asymptotics::{Branch, IsolaModel};
pub use collision::{BetaWindow, CollisionSite};
pub use dispersion::{PhysicalParams, RawParams};
pub use error::{Error, Result};
pub use ffh::{HillProblem, IsolaNumerics, SpectrumSlice};
pub use higher_order::SecondOrderModel;
pub use stokes::StokesExpansion;

pub use num_complex::Complex64;
