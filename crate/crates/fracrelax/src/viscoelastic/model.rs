//! Constitutive model specifications and their material functions.
//!
//! A [`ModelSpec`] names one of the mechanical models (spring, dashpot, and
//! their two- and three-element combinations, plus the fractional variants
//! built from Scott-Blair elements) or a general operator equation
//!
//!   [1 + sum_{k<=p} a_k d^k/dt^k] sigma = [m + sum_{k<=q} b_k d^k/dt^k] eps
//!
//! with q = p or q = p + 1 and non-negative coefficients. For the named
//! families the material functions come from their closed-form parameter
//! tables; for the general equation they are derived by partial fractions of
//! s J~(s) = P(s)/Q(s), after checking that P and Q have simple, alternating
//! real zeros on the non-positive axis with the least zero belonging to Q.

use serde::Deserialize;

use super::material::{MaterialFunctions, Mode};
use super::ModelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Hooke,
    Newton,
    Voigt,
    Maxwell,
    Zener,
    AntiZener,
    ScottBlair,
    FracVoigt,
    FracMaxwell,
    FracZener,
    FracAntiZener,
    GeneralOperator,
}

impl Family {
    pub fn is_fractional(&self) -> bool {
        matches!(
            self,
            Family::ScottBlair
                | Family::FracVoigt
                | Family::FracMaxwell
                | Family::FracZener
                | Family::FracAntiZener
        )
    }
}

/// A viscoelastic constitutive model: operator-equation coefficients
/// (m, a_k, b_k) plus the order nu of the derivative elements (1 for the
/// classical models).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub family: Family,
    #[serde(default)]
    pub m: f64,
    #[serde(default)]
    pub a: Vec<f64>,
    #[serde(default)]
    pub b: Vec<f64>,
    #[serde(default = "default_nu")]
    pub nu: f64,
}

fn default_nu() -> f64 {
    1.0
}

impl ModelSpec {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let spec: ModelSpec =
            serde_json::from_str(text).map_err(|e| ModelError::MalformedInput(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    /// Stress-side derivative count p.
    pub fn p(&self) -> usize {
        self.a.len()
    }

    /// Strain-side derivative count q.
    pub fn q(&self) -> usize {
        self.b.len()
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |msg: String| Err(ModelError::InvalidModelCoefficients(msg));
        if self.a.iter().chain(self.b.iter()).any(|&c| !(c >= 0.0) || !c.is_finite()) {
            return bad("all coefficients must be non-negative and finite".into());
        }
        if !(self.m >= 0.0) || !self.m.is_finite() {
            return bad(format!("m must be non-negative and finite, got {}", self.m));
        }
        if !(self.nu > 0.0 && self.nu <= 1.0) {
            return bad(format!("nu must lie in (0, 1], got {}", self.nu));
        }
        if self.family.is_fractional() && self.nu >= 1.0 {
            return bad("fractional families require nu < 1".into());
        }
        let (p, q) = (self.p(), self.q());
        match self.family {
            Family::Hooke => {
                if !(self.m > 0.0) || p != 0 || q != 0 {
                    return bad("Hooke requires m > 0 and no a/b coefficients".into());
                }
            }
            Family::Newton | Family::ScottBlair => {
                if self.m != 0.0 || p != 0 || q != 1 || !(self.b[0] > 0.0) {
                    return bad("Newton/Scott-Blair requires m = 0, a = [], b = [b1 > 0]".into());
                }
            }
            Family::Voigt | Family::FracVoigt => {
                if !(self.m > 0.0) || p != 0 || q != 1 || !(self.b[0] > 0.0) {
                    return bad("Voigt requires m > 0, a = [], b = [b1 > 0]".into());
                }
            }
            Family::Maxwell | Family::FracMaxwell => {
                if self.m != 0.0 || p != 1 || q != 1 || !(self.a[0] > 0.0) || !(self.b[0] > 0.0) {
                    return bad("Maxwell requires m = 0, a = [a1 > 0], b = [b1 > 0]".into());
                }
            }
            Family::Zener | Family::FracZener => {
                if p != 1 || q != 1 || !(self.a[0] > 0.0) || !(self.b[0] > 0.0) {
                    return bad("Zener requires a = [a1 > 0], b = [b1 > 0]".into());
                }
                if !(self.m > 0.0 && self.m < self.b[0] / self.a[0]) {
                    return bad(format!(
                        "Zener requires 0 < m < b1/a1 = {}, got m = {}",
                        self.b[0] / self.a[0],
                        self.m
                    ));
                }
            }
            Family::AntiZener | Family::FracAntiZener => {
                if self.m != 0.0
                    || p != 1
                    || q != 2
                    || !(self.a[0] > 0.0)
                    || !(self.b[0] > 0.0)
                    || !(self.b[1] > 0.0)
                {
                    return bad("anti-Zener requires m = 0, a = [a1 > 0], b = [b1 > 0, b2 > 0]".into());
                }
                if !(self.b[1] / self.b[0] < self.a[0]) {
                    return bad(format!(
                        "anti-Zener requires 0 < b2/b1 < a1; got b2/b1 = {}, a1 = {}",
                        self.b[1] / self.b[0],
                        self.a[0]
                    ));
                }
            }
            Family::GeneralOperator => {
                if !(q == p || q == p + 1) {
                    return bad(format!("operator equation requires q = p or q = p + 1, got p = {p}, q = {q}"));
                }
                if q == 0 {
                    if !(self.m > 0.0) {
                        return bad("degenerate operator equation: need m > 0 when q = 0".into());
                    }
                } else if !(self.b[q - 1] > 0.0) || (p > 0 && !(self.a[p - 1] > 0.0)) {
                    return bad("leading operator coefficients must be positive".into());
                }
                if self.m == 0.0 && q >= 1 && !(self.b[0] > 0.0) {
                    return bad("m = 0 requires b1 > 0 (simple zero of Q at s = 0)".into());
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// real-rooted polynomial roots (for the general operator equation)
// ---------------------------------------------------------------------------

/// Real roots of a polynomial with coefficients in ascending order, found by
/// recursive bracketing on the critical points of the derivative. Returns an
/// error if any root is complex or repeated (the operator-equation
/// validation requires simple real zeros).
fn real_roots(coeffs: &[f64]) -> Result<Vec<f64>, ModelError> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.len() > 1 && c.last() == Some(&0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Ok(vec![]);
    }
    if deg == 1 {
        return Ok(vec![-c[0] / c[1]]);
    }
    let evaluate = |x: f64| -> f64 { c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck) };

    // Cauchy bound on |roots|
    let lead = *c.last().unwrap();
    let bound = 1.0 + c[..deg].iter().map(|ck| (ck / lead).abs()).fold(0.0, f64::max);

    // critical points from the derivative
    let dcoeffs: Vec<f64> = c.iter().enumerate().skip(1).map(|(k, &ck)| ck * k as f64).collect();
    let mut brackets = real_roots(&dcoeffs)?;
    brackets.retain(|x| x.is_finite());
    brackets.sort_by(f64::total_cmp);
    let mut pts = Vec::with_capacity(brackets.len() + 2);
    pts.push(-bound - 1.0);
    pts.extend(brackets.iter().copied());
    pts.push(bound + 1.0);

    let mut roots = Vec::new();
    for w in pts.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (evaluate(lo), evaluate(hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo * fhi > 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let fm = evaluate(mid);
            if fm == 0.0 || (hi - lo).abs() < 1e-15 * (1.0 + mid.abs()) {
                lo = mid;
                break;
            }
            if flo * fm < 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-12 * (1.0 + a.abs()));
    if roots.len() != deg {
        return Err(ModelError::InvalidModelCoefficients(format!(
            "polynomial of degree {deg} has only {} simple real roots; \
             the operator equation requires real, simple zeros",
            roots.len()
        )));
    }
    Ok(roots)
}

fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn poly_derivative_eval(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for (k, &c) in coeffs.iter().enumerate().skip(1) {
        acc += c * k as f64 * x.powi(k as i32 - 1);
    }
    acc
}

/// Material functions of the general operator equation by partial fractions
/// of s J~ = P/Q and s G~ = Q/P (classical orders; the fractional variant is
/// obtained afterwards through the correspondence map).
fn general_material_functions(m: f64, a: &[f64], b: &[f64]) -> Result<MaterialFunctions, ModelError> {
    let p_coeffs: Vec<f64> = std::iter::once(1.0).chain(a.iter().copied()).collect();
    let q_coeffs: Vec<f64> = std::iter::once(m).chain(b.iter().copied()).collect();
    let (p, q) = (a.len(), b.len());

    let zp = real_roots(&p_coeffs)?;
    // for m = 0, Q has a simple zero at s = 0: factor it out analytically
    let zq = if m == 0.0 { real_roots(b)? } else { real_roots(&q_coeffs)? };
    if zp.iter().chain(zq.iter()).any(|&z| z > 1e-12) {
        return Err(ModelError::InvalidModelCoefficients(
            "operator polynomials must have all zeros on the non-positive real axis".into(),
        ));
    }

    // interlacing with the least zero in absolute magnitude belonging to Q:
    // merged by |zero| the sequence must alternate Q, P, Q, P, ...
    {
        let mut tagged: Vec<(f64, bool)> = zq.iter().map(|&z| (-z, true)).collect();
        if m == 0.0 {
            tagged.push((0.0, true));
        }
        tagged.extend(zp.iter().map(|&z| (-z, false)));
        tagged.sort_by(|x, y| x.0.total_cmp(&y.0));
        for (i, &(_, is_q)) in tagged.iter().enumerate() {
            if is_q != (i % 2 == 0) {
                return Err(ModelError::InvalidModelCoefficients(
                    "zeros of P and Q must alternate on the negative real axis \
                     with the least zero belonging to Q"
                        .into(),
                ));
            }
        }
    }

    // creep side: s J~ = P/Q
    let jg = if q == p { a[p - 1] / b[q - 1] } else { 0.0 };
    let j_plus = if m == 0.0 { 1.0 / b[0] } else { 0.0 };
    let mut j_modes = Vec::new();
    for &root in &zq {
        let res = poly_eval(&p_coeffs, root) / poly_derivative_eval(&q_coeffs, root);
        let tau = -1.0 / root;
        let coeff = res * tau;
        if coeff <= 0.0 {
            return Err(ModelError::InvalidModelCoefficients(format!(
                "non-positive retardation weight {coeff} at tau = {tau}"
            )));
        }
        j_modes.push(Mode { coeff, tau });
    }

    // relaxation side: s G~ = Q/P
    let ge = m; // Q(0)/P(0)
    let g_minus = if q == p + 1 {
        if p == 0 {
            b[q - 1]
        } else {
            b[q - 1] / a[p - 1]
        }
    } else {
        0.0
    };
    let mut g_modes = Vec::new();
    for &root in &zp {
        let res = poly_eval(&q_coeffs, root) / poly_derivative_eval(&p_coeffs, root);
        let tau = -1.0 / root;
        let coeff = res / root; // -G_n/tau is the residue of sG~ at the pole
        if coeff <= 0.0 {
            return Err(ModelError::InvalidModelCoefficients(format!(
                "non-positive relaxation weight {coeff} at tau = {tau}"
            )));
        }
        g_modes.push(Mode { coeff, tau });
    }

    j_modes.sort_by(|x, y| x.tau.total_cmp(&y.tau));
    g_modes.sort_by(|x, y| x.tau.total_cmp(&y.tau));
    Ok(MaterialFunctions { jg, j_modes, j_plus, ge, g_modes, g_minus, nu: 1.0 })
}

/// Closed-form material functions for a validated model.
pub fn material_functions(model: &ModelSpec) -> Result<MaterialFunctions, ModelError> {
    model.validate()?;
    let classical = |model: &ModelSpec| -> Result<MaterialFunctions, ModelError> {
        let (m, a, b) = (model.m, &model.a, &model.b);
        Ok(match model.family {
            Family::Hooke => MaterialFunctions {
                jg: 1.0 / m,
                j_modes: vec![],
                j_plus: 0.0,
                ge: m,
                g_modes: vec![],
                g_minus: 0.0,
                nu: 1.0,
            },
            Family::Newton | Family::ScottBlair => MaterialFunctions {
                jg: 0.0,
                j_modes: vec![],
                j_plus: 1.0 / b[0],
                ge: 0.0,
                g_modes: vec![],
                g_minus: b[0],
                nu: 1.0,
            },
            Family::Voigt | Family::FracVoigt => MaterialFunctions {
                jg: 0.0,
                j_modes: vec![Mode { coeff: 1.0 / m, tau: b[0] / m }],
                j_plus: 0.0,
                ge: m,
                g_modes: vec![],
                g_minus: b[0],
                nu: 1.0,
            },
            Family::Maxwell | Family::FracMaxwell => MaterialFunctions {
                jg: a[0] / b[0],
                j_modes: vec![],
                j_plus: 1.0 / b[0],
                ge: 0.0,
                g_modes: vec![Mode { coeff: b[0] / a[0], tau: a[0] }],
                g_minus: 0.0,
                nu: 1.0,
            },
            Family::Zener | Family::FracZener => MaterialFunctions {
                jg: a[0] / b[0],
                j_modes: vec![Mode { coeff: 1.0 / m - a[0] / b[0], tau: b[0] / m }],
                j_plus: 0.0,
                ge: m,
                g_modes: vec![Mode { coeff: b[0] / a[0] - m, tau: a[0] }],
                g_minus: 0.0,
                nu: 1.0,
            },
            Family::AntiZener | Family::FracAntiZener => MaterialFunctions {
                jg: 0.0,
                j_modes: vec![Mode {
                    coeff: a[0] / b[0] - b[1] / (b[0] * b[0]),
                    tau: b[1] / b[0],
                }],
                j_plus: 1.0 / b[0],
                ge: 0.0,
                g_modes: vec![Mode {
                    coeff: b[0] / a[0] - b[1] / (a[0] * a[0]),
                    tau: a[0],
                }],
                g_minus: b[1] / a[0],
                nu: 1.0,
            },
            Family::GeneralOperator => general_material_functions(m, a, b)?,
        })
    };

    let mf = classical(model)?;
    if model.nu < 1.0 {
        super::material::correspondence_map(&mf, model.nu)
    } else {
        Ok(mf)
    }
}
