//! Hereditary stress-strain responses.
//!
//! respond() evaluates the convolution form of the constitutive law,
//!
//!   output(t) = input(0+) K(t) + int_0^t K(t - tau) d(input)(tau),
//!
//! with K = J (stress input) or K = G (strain input). The input is taken
//! piecewise linear and the kernel is integrated exactly over each panel
//! through its antiderivative IK(x) = int_0^x K, so weakly singular kernels
//! (the fractional t^{-nu} relaxation term) are handled without sampling the
//! singularity. A classical impulse G_- delta(t) contributes the exact panel
//! limit G_- * (backward-difference derivative of the input).

use super::material::MaterialFunctions;
use super::ModelError;
use crate::signal::SampledSignal;
use crate::special::gamma::rgamma;
use crate::special::ml2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseMode {
    /// Input is a stress history; output is the strain (kernel J).
    StressToStrain,
    /// Input is a strain history; output is the stress (kernel G).
    StrainToStress,
}

/// Antiderivative IJ(x) = int_0^x J(u) du.
fn creep_antiderivative(mf: &MaterialFunctions, x: f64) -> Result<f64, ModelError> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    let nu = mf.nu;
    let mut acc = mf.jg * x;
    for m in &mf.j_modes {
        // int_0^x (1 - E_nu[-(u/tau)^nu]) du = x (1 - E_{nu,2}[-(x/tau)^nu])
        let e = ml2(nu, 2.0, -(x / m.tau).powf(nu))?;
        acc += m.coeff * x * (1.0 - e.value);
    }
    if mf.j_plus != 0.0 {
        acc += mf.j_plus * x.powf(1.0 + nu) * rgamma(2.0 + nu);
    }
    Ok(acc)
}

/// Antiderivative IG(x) = int_0^x G(u) du, including the impulse/singular
/// term: for nu < 1 the t^{-nu}/Gamma(1-nu) kernel integrates to
/// x^{1-nu}/Gamma(2-nu); at nu = 1 that expression degenerates to the exact
/// Heaviside mass of G_- delta(t).
fn relaxation_antiderivative(mf: &MaterialFunctions, x: f64) -> Result<f64, ModelError> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    let nu = mf.nu;
    let mut acc = mf.ge * x;
    for m in &mf.g_modes {
        // int_0^x E_nu[-(u/tau)^nu] du = x E_{nu,2}[-(x/tau)^nu]
        let e = ml2(nu, 2.0, -(x / m.tau).powf(nu))?;
        acc += m.coeff * x * e.value;
    }
    if mf.g_minus != 0.0 {
        acc += mf.g_minus * x.powf(1.0 - nu) * rgamma(2.0 - nu);
    }
    Ok(acc)
}

/// Strain response to a stress history, or stress response to a strain
/// history, on the input's own grid.
pub fn respond(
    mf: &MaterialFunctions,
    input: &SampledSignal,
    mode: ResponseMode,
) -> Result<SampledSignal, ModelError> {
    let grid = input.grid();
    let vals = input.values();
    let n = grid.len();
    if n < 3 {
        return Err(ModelError::GridTooCoarse { need: 3, got: n });
    }
    if grid[0] > 0.02 * grid[n - 1] {
        return Err(ModelError::NonCausalInput(format!(
            "history must start near t = 0: first sample at {} vs horizon {}",
            grid[0],
            grid[n - 1]
        )));
    }
    let v0 = input.value_at_origin().ok_or_else(|| {
        ModelError::NonCausalInput("history diverges at the time origin".into())
    })?;

    let anti = |x: f64| -> Result<f64, ModelError> {
        match mode {
            ResponseMode::StressToStrain => creep_antiderivative(mf, x),
            ResponseMode::StrainToStress => relaxation_antiderivative(mf, x),
        }
    };
    let kernel = |t: f64| -> Result<f64, ModelError> {
        match mode {
            ResponseMode::StressToStrain => mf.creep(t),
            ResponseMode::StrainToStress => mf.relaxation(t),
        }
    };

    // panel slopes of the piecewise-linear input, with the [0, t_1] segment
    // rising from the extrapolated origin value
    let mut slopes = Vec::with_capacity(n);
    slopes.push((vals[0] - v0) / grid[0]);
    for j in 0..n - 1 {
        slopes.push((vals[j + 1] - vals[j]) / (grid[j + 1] - grid[j]));
    }

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let t = grid[i];
        let mut acc = v0 * kernel(t)?;
        // panel j spans [prev_t, min(t_j, t)]
        let mut prev_t = 0.0;
        for (j, &slope) in slopes.iter().enumerate().take(i + 1) {
            let end = if j == 0 { grid[0] } else { grid[j] };
            if slope != 0.0 {
                acc += slope * (anti(t - prev_t)? - anti(t - end)?);
            }
            prev_t = end;
        }
        out.push(acc);
    }
    Ok(SampledSignal::new(grid.to_vec(), out)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::geomspace;
    use crate::viscoelastic::model::{material_functions, Family, ModelSpec};

    fn step_input() -> SampledSignal {
        SampledSignal::from_fn(geomspace(1e-4, 20.0, 400), |_| 1.0).unwrap()
    }

    #[test]
    fn step_stress_reproduces_creep_compliance() {
        let mf = material_functions(&ModelSpec {
            family: Family::Zener,
            m: 1.0,
            a: vec![1.0],
            b: vec![2.0],
            nu: 1.0,
        })
        .unwrap();
        let out = respond(&mf, &step_input(), ResponseMode::StressToStrain).unwrap();
        for (&t, &v) in out.grid().iter().zip(out.values()).step_by(37) {
            let want = 0.5 + 0.5 * (1.0 - (-t / 2.0).exp());
            assert!((v - want).abs() < 1e-12, "t={t}: {v} vs {want}");
        }
    }

    #[test]
    fn hooke_is_proportional() {
        let mf = material_functions(&ModelSpec {
            family: Family::Hooke,
            m: 2.0,
            a: vec![],
            b: vec![],
            nu: 1.0,
        })
        .unwrap();
        let input = SampledSignal::from_fn(geomspace(1e-4, 10.0, 300), |t| (0.3 * t).sin()).unwrap();
        let out = respond(&mf, &input, ResponseMode::StrainToStress).unwrap();
        for (o, i) in out.values().iter().zip(input.values()) {
            assert!((o - 2.0 * i).abs() < 1e-12);
        }
    }

    #[test]
    fn maxwell_step_stress_gives_linear_creep() {
        let mf = material_functions(&ModelSpec {
            family: Family::Maxwell,
            m: 0.0,
            a: vec![1.0],
            b: vec![1.0],
            nu: 1.0,
        })
        .unwrap();
        let out = respond(&mf, &step_input(), ResponseMode::StressToStrain).unwrap();
        for (&t, &v) in out.grid().iter().zip(out.values()).step_by(41) {
            assert!((v - (1.0 + t)).abs() < 1e-12, "t={t}: {v}");
        }
    }

    #[test]
    fn ramp_strain_through_voigt_includes_impulse_term() {
        // Voigt: sigma = m eps + b eps'; for eps = t: sigma = m t + b
        let mf = material_functions(&ModelSpec {
            family: Family::Voigt,
            m: 2.0,
            a: vec![],
            b: vec![3.0],
            nu: 1.0,
        })
        .unwrap();
        let input = SampledSignal::from_fn(geomspace(1e-4, 10.0, 500), |t| t).unwrap();
        let out = respond(&mf, &input, ResponseMode::StrainToStress).unwrap();
        for (&t, &v) in out.grid().iter().zip(out.values()).step_by(53).skip(1) {
            let want = 2.0 * t + 3.0;
            assert!((v - want).abs() / want < 1e-9, "t={t}: {v} vs {want}");
        }
    }

    #[test]
    fn non_causal_input_rejected() {
        let mf = material_functions(&ModelSpec {
            family: Family::Hooke,
            m: 1.0,
            a: vec![],
            b: vec![],
            nu: 1.0,
        })
        .unwrap();
        let late = SampledSignal::from_fn(geomspace(1.0, 10.0, 50), |_| 1.0).unwrap();
        assert!(matches!(
            respond(&mf, &late, ResponseMode::StressToStrain),
            Err(ModelError::NonCausalInput(_))
        ));
        let singular = SampledSignal::from_fn(geomspace(1e-4, 10.0, 50), |t| t.powf(-0.3))
            .unwrap()
            .with_origin_exponent(-0.3);
        assert!(matches!(
            respond(&mf, &singular, ResponseMode::StressToStrain),
            Err(ModelError::NonCausalInput(_))
        ));
    }

    #[test]
    fn fractional_maxwell_step_matches_mittag_leffler_relaxation() {
        // G(t) = E_nu[-t^nu] for the fractional Maxwell with a1 = b1 = 1
        let mf = material_functions(&ModelSpec {
            family: Family::FracMaxwell,
            m: 0.0,
            a: vec![1.0],
            b: vec![1.0],
            nu: 0.5,
        })
        .unwrap();
        let out = respond(&mf, &step_input(), ResponseMode::StrainToStress).unwrap();
        let i = out.grid().iter().position(|&t| (t - 1.0).abs() < 2e-2).unwrap();
        let t = out.grid()[i];
        let want = crate::special::ml1(0.5, -t.powf(0.5)).unwrap().value;
        assert!((out.values()[i] - want).abs() < 1e-9, "{} vs {want}", out.values()[i]);
    }
}
