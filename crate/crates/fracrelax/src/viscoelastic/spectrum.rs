//! Retardation/relaxation time spectra: discrete weights and the continuous
//! Gross density underlying Mittag-Leffler material functions.

use super::material::Mode;
use super::ModelError;
use crate::quad::adaptive_gk15;

/// A time-spectral function: either discrete delta weights (the classical
/// mechanical models) or the continuous Gross density of order nu.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumKind {
    /// Delta weights (coefficient, tau); coefficients sum to the total
    /// weight.
    Discrete(Vec<Mode>),
    /// Gross density of order nu in (0,1) centered at tau_star.
    Gross { nu: f64, tau_star: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub kind: SpectrumKind,
    /// Total weight: alpha (creep) or beta (relaxation).
    pub total_weight: f64,
}

impl Spectrum {
    pub fn discrete(weights: Vec<Mode>) -> Result<Self, ModelError> {
        if weights.iter().any(|m| !(m.coeff > 0.0) || !(m.tau > 0.0)) {
            return Err(ModelError::InvalidModelCoefficients(
                "discrete spectrum weights and times must be positive".into(),
            ));
        }
        let total_weight = weights.iter().map(|m| m.coeff).sum();
        Ok(Spectrum { kind: SpectrumKind::Discrete(weights), total_weight })
    }

    pub fn gross(nu: f64, tau_star: f64, total_weight: f64) -> Result<Self, ModelError> {
        if !(nu > 0.0 && nu < 1.0) {
            return Err(ModelError::OrderOutOfRange(format!(
                "Gross spectrum requires 0 < nu < 1, got {nu}"
            )));
        }
        if !(tau_star > 0.0) || !(total_weight > 0.0) {
            return Err(ModelError::InvalidModelCoefficients(
                "Gross spectrum requires tau_star > 0 and positive weight".into(),
            ));
        }
        Ok(Spectrum { kind: SpectrumKind::Gross { nu, tau_star }, total_weight })
    }
}

/// The Gross density
/// R(tau) = (1 / (pi tau)) sin(nu pi) / [(tau/tau*)^nu + (tau/tau*)^{-nu}
/// + 2 cos(nu pi)], non-negative for 0 < nu < 1.
pub fn gross_spectrum(nu: f64, tau_star: f64, tau: f64) -> Result<f64, ModelError> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(ModelError::OrderOutOfRange(format!(
            "Gross spectrum requires 0 < nu < 1, got {nu}"
        )));
    }
    if !(tau > 0.0) || !(tau_star > 0.0) {
        return Err(ModelError::InvalidModelCoefficients(format!(
            "Gross spectrum requires tau, tau_star > 0; got tau = {tau}, tau_star = {tau_star}"
        )));
    }
    let x = tau / tau_star;
    let c = (nu * std::f64::consts::PI).cos();
    let s = (nu * std::f64::consts::PI).sin();
    let denom = x.powf(nu) + x.powf(-nu) + 2.0 * c;
    Ok(s / (std::f64::consts::PI * tau * denom))
}

/// Shape of the Gross density as a function of tau.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumShape {
    MonotonicDecreasing,
    MinThenMax,
}

/// The critical order nu0 separating monotone from min-then-max spectra:
/// the positive root of nu = sin(nu pi), by bisection on [0.5, 0.99].
pub fn spectrum_shape_root() -> f64 {
    let g = |v: f64| (v * std::f64::consts::PI).sin() - v;
    let (mut lo, mut hi) = (0.5, 0.99);
    debug_assert!(g(lo) > 0.0 && g(hi) < 0.0);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn spectrum_shape(nu: f64) -> Result<SpectrumShape, ModelError> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(ModelError::OrderOutOfRange(format!(
            "spectrum shape defined for 0 < nu < 1, got {nu}"
        )));
    }
    Ok(if nu < spectrum_shape_root() {
        SpectrumShape::MonotonicDecreasing
    } else {
        SpectrumShape::MinThenMax
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaterialKind {
    Creep,
    Relaxation,
}

/// Evaluate the time-dependent material contribution of a spectrum:
/// Psi(t) = W  int R(tau)(1 - e^{-t/tau}) d tau for creep, and
/// Phi(t) = W  int R(tau) e^{-t/tau} d tau for relaxation (exact sums in the
/// discrete case). The Gross integral is taken in u = log(tau/tau*), where
/// the density decays like e^{-nu |u|}; the window scales as 1/nu so the
/// discarded tails stay below ~1e-7.
pub fn spectrum_to_material(spec: &Spectrum, t: f64, which: MaterialKind) -> Result<f64, ModelError> {
    if !(t > 0.0) {
        return Err(ModelError::InvalidModelCoefficients(format!("need t > 0, got {t}")));
    }
    match &spec.kind {
        SpectrumKind::Discrete(weights) => {
            let mut acc = 0.0;
            for m in weights {
                let e = (-t / m.tau).exp();
                acc += m.coeff * match which {
                    MaterialKind::Creep => 1.0 - e,
                    MaterialKind::Relaxation => e,
                };
            }
            Ok(acc)
        }
        SpectrumKind::Gross { nu, tau_star } => {
            let (nu, tau_star) = (*nu, *tau_star);
            let s = (nu * std::f64::consts::PI).sin();
            let c = (nu * std::f64::consts::PI).cos();
            let window = 40.0f64.max(16.0 / nu);
            let density = move |u: f64| s / (std::f64::consts::PI * (2.0 * (nu * u).cosh() + 2.0 * c));
            let rate = t / tau_star;
            let integrand = move |u: f64| {
                let decay = (-rate * (-u).exp()).exp();
                density(u)
                    * match which {
                        MaterialKind::Creep => 1.0 - decay,
                        MaterialKind::Relaxation => decay,
                    }
            };
            // split at u = 0 (density peak) and at the kernel transition
            let u_t = rate.ln().clamp(-window + 1.0, window - 1.0);
            let mut acc = 0.0;
            let mut pts = vec![-window, u_t.min(0.0), u_t.max(0.0), window];
            pts.dedup_by(|a, b| a == b);
            for w in pts.windows(2) {
                let r = adaptive_gk15(integrand, w[0], w[1], 2e-9, 1e-9, 3000)
                    .map_err(|e| ModelError::QuadratureNonConvergence(e.to_string()))?;
                acc += r.value;
            }
            Ok(spec.total_weight * acc)
        }
    }
}

/// Total mass int_0^inf R(tau) d tau of a unit Gross density, by the same
/// quadrature as `spectrum_to_material` (equals 1 when convergent).
pub fn gross_normalization(nu: f64) -> Result<f64, ModelError> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(ModelError::OrderOutOfRange(format!(
            "Gross spectrum requires 0 < nu < 1, got {nu}"
        )));
    }
    let s = (nu * std::f64::consts::PI).sin();
    let c = (nu * std::f64::consts::PI).cos();
    let window = 40.0f64.max(16.0 / nu);
    let f = move |u: f64| s / (std::f64::consts::PI * (2.0 * (nu * u).cosh() + 2.0 * c));
    let left = adaptive_gk15(f, -window, 0.0, 1e-10, 1e-10, 3000)
        .map_err(|e| ModelError::QuadratureNonConvergence(e.to_string()))?;
    let right = adaptive_gk15(f, 0.0, window, 1e-10, 1e-10, 3000)
        .map_err(|e| ModelError::QuadratureNonConvergence(e.to_string()))?;
    Ok(left.value + right.value)
}
