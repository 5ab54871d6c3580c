//! Material functions of linear viscoelasticity.
//!
//! A [`MaterialFunctions`] value holds the structured creep/relaxation pair
//!
//!   J(t) = Jg + sum_n J_n {1 - E_nu[-(t/tau_en)^nu]} + J_+ t^nu/Gamma(1+nu)
//!   G(t) = Ge + sum_n G_n E_nu[-(t/tau_sn)^nu]      + G_- t^{-nu}/Gamma(1-nu)
//!
//! with nu = 1 giving the classical exponential modes, linear creep drift,
//! and an impulse G_- delta(t) (the t^{-nu}/Gamma(1-nu) term vanishes
//! pointwise at nu = 1 since 1/Gamma(0) = 0; the delta is carried
//! symbolically). The four-type classification, the Laplace-domain images,
//! and the classical->fractional correspondence map all operate on this
//! representation.

use num_complex::Complex64;

use super::ModelError;
use crate::special::gamma::rgamma;
use crate::special::ml1;

/// A single relaxation or retardation mode: coefficient and characteristic
/// time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub coeff: f64,
    pub tau: f64,
}

/// A possibly-infinite limit value, kept out of arithmetic paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(f64),
    Infinite,
}

impl Extended {
    /// Reciprocal under the convention that 0 and +infinity are reciprocal.
    pub fn reciprocal(self) -> Extended {
        match self {
            Extended::Finite(x) if x == 0.0 => Extended::Infinite,
            Extended::Finite(x) => Extended::Finite(1.0 / x),
            Extended::Infinite => Extended::Finite(0.0),
        }
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Infinite => None,
        }
    }
}

impl std::fmt::Display for Extended {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extended::Finite(x) => write!(f, "{x}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaterialFunctions {
    /// Glass compliance Jg = J(0+).
    pub jg: f64,
    /// Retardation modes (J_n, tau_eps_n).
    pub j_modes: Vec<Mode>,
    /// Coefficient of the creep drift term t^nu/Gamma(1+nu).
    pub j_plus: f64,
    /// Equilibrium modulus Ge = G(inf).
    pub ge: f64,
    /// Relaxation modes (G_n, tau_sig_n).
    pub g_modes: Vec<Mode>,
    /// Impulse coefficient: G_- delta(t) classically, G_- t^{-nu}/Gamma(1-nu)
    /// for fractional models.
    pub g_minus: f64,
    /// Order of the modes: 1 = exponential, < 1 = Mittag-Leffler.
    pub nu: f64,
}

impl MaterialFunctions {
    /// Equilibrium compliance Je = J(inf); infinite iff the drift term is
    /// present.
    pub fn je(&self) -> Extended {
        if self.j_plus > 0.0 {
            Extended::Infinite
        } else {
            Extended::Finite(self.jg + self.j_modes.iter().map(|m| m.coeff).sum::<f64>())
        }
    }

    /// Glass modulus Gg = G(0+); infinite iff the impulse/singular term is
    /// present.
    pub fn gg(&self) -> Extended {
        if self.g_minus > 0.0 {
            Extended::Infinite
        } else {
            Extended::Finite(self.ge + self.g_modes.iter().map(|m| m.coeff).sum::<f64>())
        }
    }

    /// Creep compliance J(t) at t > 0.
    pub fn creep(&self, t: f64) -> Result<f64, ModelError> {
        let nu = self.nu;
        let mut acc = self.jg;
        for m in &self.j_modes {
            let e = ml1(nu, -(t / m.tau).powf(nu))?;
            acc += m.coeff * (1.0 - e.value);
        }
        if self.j_plus != 0.0 {
            acc += self.j_plus * t.powf(nu) * rgamma(1.0 + nu);
        }
        Ok(acc)
    }

    /// Relaxation modulus G(t) at t > 0, excluding any symbolic delta term
    /// (the t^{-nu}/Gamma(1-nu) factor vanishes identically at nu = 1).
    pub fn relaxation(&self, t: f64) -> Result<f64, ModelError> {
        let nu = self.nu;
        let mut acc = self.ge;
        for m in &self.g_modes {
            let e = ml1(nu, -(t / m.tau).powf(nu))?;
            acc += m.coeff * e.value;
        }
        if self.g_minus != 0.0 {
            acc += self.g_minus * t.powf(-nu) * rgamma(1.0 - nu);
        }
        Ok(acc)
    }

    /// Laplace-domain creep image s J~(s) =
    /// Jg + sum J_n / (1 + (s tau)^nu) + J_+ / s^nu.
    pub fn creep_image(&self, s: Complex64) -> Complex64 {
        let nu = Complex64::new(self.nu, 0.0);
        let mut acc = Complex64::new(self.jg, 0.0);
        for m in &self.j_modes {
            acc += m.coeff / (1.0 + (s * m.tau).powc(nu));
        }
        if self.j_plus != 0.0 {
            acc += self.j_plus / s.powc(nu);
        }
        acc
    }

    /// Laplace-domain relaxation image s G~(s) =
    /// Ge + sum G_n (s tau)^nu / (1 + (s tau)^nu) + G_- s^nu.
    pub fn relaxation_image(&self, s: Complex64) -> Complex64 {
        let nu = Complex64::new(self.nu, 0.0);
        let mut acc = Complex64::new(self.ge, 0.0);
        for m in &self.g_modes {
            let p = (s * m.tau).powc(nu);
            acc += m.coeff * p / (1.0 + p);
        }
        if self.g_minus != 0.0 {
            acc += self.g_minus * s.powc(nu);
        }
        acc
    }
}

/// The four types of viscoelasticity, classified by the glass compliance
/// (zero or positive) and the creep drift (present or absent):
/// I (Jg>0, J+=0), II (Jg>0, J+!=0), III (Jg=0, J+=0), IV (Jg=0, J+!=0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViscoType {
    I,
    II,
    III,
    IV,
}

impl std::fmt::Display for ViscoType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ViscoType::I => "I",
            ViscoType::II => "II",
            ViscoType::III => "III",
            ViscoType::IV => "IV",
        };
        write!(f, "{s}")
    }
}

pub fn classify(mf: &MaterialFunctions) -> ViscoType {
    match (mf.jg > 0.0, mf.j_plus != 0.0) {
        (true, false) => ViscoType::I,
        (true, true) => ViscoType::II,
        (false, false) => ViscoType::III,
        (false, true) => ViscoType::IV,
    }
}

/// Residual |s J~(s) * s G~(s) - 1| of the Laplace-domain reciprocity
/// relation for a material-function pair.
pub fn reciprocity_residual_mf(mf: &MaterialFunctions, s: Complex64) -> Result<f64, ModelError> {
    let j = mf.creep_image(s);
    let g = mf.relaxation_image(s);
    if !j.norm().is_finite() || !g.norm().is_finite() || j.norm() < 1e-300 {
        return Err(ModelError::PoleHit(format!("image evaluation degenerate at s = {s}")));
    }
    Ok((j * g - 1.0).norm())
}

/// Classical -> fractional correspondence: keep every coefficient, replace
/// delta(t) by t^{-nu}/Gamma(1-nu), t by t^nu/Gamma(1+nu), and each
/// exponential mode e^{-t/tau} by the Mittag-Leffler mode with the same
/// s-domain pole, E_nu(-t^nu / tau). In the (t/tau')^nu storage of the modes
/// that pole preservation reads tau' = tau^{1/nu}; it is exactly what keeps
/// s J~ * s G~ = 1 intact through the map (the operator equation goes from
/// P(s)/Q(s) to P(s^nu')/Q(s^nu') with unchanged coefficients).
pub fn correspondence_map(mf: &MaterialFunctions, nu: f64) -> Result<MaterialFunctions, ModelError> {
    if mf.nu != 1.0 {
        return Err(ModelError::OrderOutOfRange(format!(
            "correspondence map expects a classical input (nu = 1), got nu = {}",
            mf.nu
        )));
    }
    if !(nu > 0.0 && nu <= 1.0) {
        return Err(ModelError::OrderOutOfRange(format!(
            "correspondence order must lie in (0, 1], got {nu}"
        )));
    }
    let mut out = mf.clone();
    out.nu = nu;
    if nu < 1.0 {
        for m in out.j_modes.iter_mut().chain(out.g_modes.iter_mut()) {
            m.tau = m.tau.powf(1.0 / nu);
        }
    }
    Ok(out)
}
