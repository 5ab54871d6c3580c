//! Special functions: Gamma kernels and Mittag-Leffler evaluation with
//! certified error estimates.

pub mod gamma;
pub mod mittag;

pub use gamma::{gamma, ln_gamma, rgamma, sin_pi};
pub use mittag::{
    ml1, ml2, ml_spectral_density, ml_via_spectrum, phi_kernel, MlResult, Regime, SpecialError,
};
