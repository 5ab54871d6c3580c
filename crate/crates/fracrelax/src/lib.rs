//! Numerics for fractional-order relaxation and linear viscoelasticity.
//!
//! The crate provides four layers that build on each other:
//!
//! - [`special`]: one- and two-parameter Mittag-Leffler functions on the real
//!   line with certified absolute-error estimates, plus the Gamma-function
//!   kernels they need.
//! - [`laplace`]: numerical forward Laplace transforms of sampled signals and
//!   numerical inversion (fixed Talbot and Gaver-Stehfest), used throughout as
//!   a cross-check oracle for transform-pair identities.
//! - [`operators`]: Riemann-Liouville fractional integrals and the
//!   Riemann-Liouville, Caputo, and Hilfer fractional derivatives acting on
//!   sampled signals, with closed-form power-law rules.
//! - [`relaxation`] and [`viscoelastic`]: closed-form solutions of the
//!   fractional relaxation initial-value problems, and the material-function
//!   layer of linear viscoelasticity (classical and fractional mechanical
//!   models, creep/relaxation spectra, hereditary convolutions).
//!
//! The `examples/` directory contains one runnable example per capability;
//! a thin `fracrelax` binary exposes the same functionality as subcommands
//! (`figure`, `eval`, `relax`, `model-report`, `respond`).
//!
//! All public operations are pure functions of their arguments: no shared
//! mutable state, deterministic output for identical inputs within one build.

pub mod figures;
pub mod laplace;
pub mod operators;
pub mod quad;
pub mod relaxation;
pub mod signal;
pub mod special;
pub mod viscoelastic;

pub use signal::{geomspace, linspace, SampledSignal};
pub use special::{ml1, ml2, MlResult, Regime};
