//! Linear viscoelasticity: constitutive models, material functions, the
//! four-type classification, time spectra, and hereditary responses.

use num_complex::Complex64;
use thiserror::Error;

pub mod material;
pub mod model;
pub mod respond;
pub mod spectrum;

pub use material::{
    classify, correspondence_map, Extended, MaterialFunctions, Mode, ViscoType,
};
pub use model::{material_functions, Family, ModelSpec};
pub use respond::{respond, ResponseMode};
pub use spectrum::{
    gross_normalization, gross_spectrum, spectrum_shape, spectrum_shape_root,
    spectrum_to_material, MaterialKind, Spectrum, SpectrumKind, SpectrumShape,
};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("InvalidModelCoefficients: {0}")]
    InvalidModelCoefficients(String),
    #[error("OrderOutOfRange: {0}")]
    OrderOutOfRange(String),
    #[error("PoleHit: {0}")]
    PoleHit(String),
    #[error("NonCausalInput: {0}")]
    NonCausalInput(String),
    #[error("GridTooCoarse: need at least {need} points, got {got}")]
    GridTooCoarse { need: usize, got: usize },
    #[error("QuadratureNonConvergence: {0}")]
    QuadratureNonConvergence(String),
    #[error("MalformedInput: {0}")]
    MalformedInput(String),
    #[error(transparent)]
    Special(#[from] crate::special::SpecialError),
    #[error(transparent)]
    Signal(#[from] crate::signal::SignalError),
}

/// Residual |s J~(s) * s G~(s) - 1| of the reciprocity relation for a model,
/// built from its material functions.
pub fn reciprocity_residual(model: &ModelSpec, s: Complex64) -> Result<f64, ModelError> {
    let mf = material_functions(model)?;
    material::reciprocity_residual_mf(&mf, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocity_for_named_models() {
        let zener = ModelSpec { family: Family::Zener, m: 1.0, a: vec![1.0], b: vec![2.0], nu: 1.0 };
        let s = Complex64::new(1.0, 0.0);
        assert!(reciprocity_residual(&zener, s).unwrap() < 1e-12);

        let hooke = ModelSpec { family: Family::Hooke, m: 2.0, a: vec![], b: vec![], nu: 1.0 };
        assert_eq!(reciprocity_residual(&hooke, Complex64::new(3.3, 1.0)).unwrap(), 0.0);

        let frac_maxwell =
            ModelSpec { family: Family::FracMaxwell, m: 0.0, a: vec![1.0], b: vec![1.0], nu: 0.5 };
        assert!(reciprocity_residual(&frac_maxwell, Complex64::new(2.0, 0.0)).unwrap() < 1e-10);
    }
}
