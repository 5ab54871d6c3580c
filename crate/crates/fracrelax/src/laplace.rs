//! Numerical Laplace transforms: forward transform of sampled signals and
//! inversion of s-domain handles.
//!
//! The forward transform composes four exactly-integrated pieces: the
//! symbolic origin segment c t^p on [0, t_1], product-trapezoidal panels
//! (exact for piecewise-linear signals against e^{-st}), an analytic tail
//! extrapolation, and the impulse coefficient (transform of delta is 1).
//!
//! Inversion offers the fixed-Talbot contour (32 nodes, complex arithmetic)
//! and Gaver-Stehfest (16 terms, real arithmetic, documented as check-only:
//! the coefficients are large and alternating, so it is used to flag
//! disagreement rather than as the primary answer).

use num_complex::Complex64;
use thiserror::Error;

use crate::signal::{SampledSignal, SignalError};

#[derive(Debug, Error)]
pub enum LaplaceError {
    #[error("InsufficientTailCoverage: t_max * Re(s) = {0:.3} < 30 and no tail model declared")]
    InsufficientTailCoverage(f64),
    #[error("GridTooCoarse: estimated quadrature error {est:.3e} exceeds {tol:.3e}")]
    GridTooCoarse { est: f64, tol: f64 },
    #[error("ContourEvaluationFailure: transform handle returned a non-finite value at s = {0}")]
    ContourEvaluationFailure(Complex64),
    #[error("PoleHit: denominator vanishes at s = {0}")]
    PoleHit(Complex64),
    #[error(transparent)]
    Signal(#[from] SignalError),
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

/// An s-domain function handle F(s), analytic for Re s > `abscissa`.
pub struct SDomainFunction {
    eval: Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    abscissa: f64,
}

impl SDomainFunction {
    pub fn new(abscissa: f64, eval: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        SDomainFunction { eval: Box::new(eval), abscissa }
    }

    pub fn abscissa(&self) -> f64 {
        self.abscissa
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        (self.eval)(s)
    }
}

/// Tail model for the forward transform beyond the last grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailModel {
    /// Fit a power-decay exponent from the last decade of samples. Requires
    /// t_max * Re(s) >= 30 so the tail is a small correction.
    PowerFit,
    /// Declared power decay f ~ f(T) (t/T)^{-q}.
    Power(f64),
    /// Declared exponential decay f ~ f(T) e^{-rate (t - T)}.
    Exponential(f64),
    /// No tail: truncate the integral at t_max.
    Truncate,
}

// ---------------------------------------------------------------------------
// forward transform
// ---------------------------------------------------------------------------

/// phi0(x) = int_0^1 (1-w) e^{-xw} dw and phi1(x) = int_0^1 w e^{-xw} dw,
/// the panel weights of the product trapezoid rule.
fn panel_weights(x: Complex64) -> (Complex64, Complex64) {
    if x.norm() < 0.35 {
        // series sum (-x)^m / (m! (m+1)(m+2)) and sum (-x)^m / (m! (m+2))
        let mut a = Complex64::new(0.0, 0.0);
        let mut b = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0); // (-x)^m / m!
        for m in 0..24 {
            let mf = m as f64;
            a += term / ((mf + 1.0) * (mf + 2.0));
            b += term / (mf + 2.0);
            term *= -x / (mf + 1.0);
            if term.norm() < 1e-20 {
                break;
            }
        }
        (a, b)
    } else {
        let e = (-x).exp();
        let x2 = x * x;
        ((x - 1.0 + e) / x2, (1.0 - (1.0 + x) * e) / x2)
    }
}

/// int_0^eps t^p e^{-st} dt for p > -1 via the entire series in (s eps).
fn origin_moment(p: f64, eps: f64, s: Complex64) -> Complex64 {
    let se = s * eps;
    if se.norm() <= 0.5 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0); // (-s)^j / j!
        for j in 0..40 {
            let jf = j as f64;
            sum += pow * eps.powf(p + jf + 1.0) / (p + jf + 1.0);
            pow *= -s / (jf + 1.0);
            if pow.norm() * eps.powf(p + jf + 2.0) < 1e-22 {
                break;
            }
        }
        sum
    } else {
        // composite evaluation: series on the small head, 64-panel product
        // trapezoid of the explicit model on the rest
        let head = 0.5 / s.norm();
        let mut total = origin_moment(p, head, s);
        let n = 64;
        let mut prev_t = head;
        let ratio = (eps / head).powf(1.0 / n as f64);
        for i in 1..=n {
            let t = if i == n { eps } else { head * ratio.powi(i) };
            let h = t - prev_t;
            let (w0, w1) = panel_weights(s * h);
            let f0 = prev_t.powf(p);
            let f1 = t.powf(p);
            total += (-s * prev_t).exp() * h * (w0 * f0 + w1 * f1);
            prev_t = t;
        }
        total
    }
}

/// Fit a power-decay exponent q (f ~ t^{-q}) from the last decade of samples.
fn fit_tail_exponent(signal: &SampledSignal) -> Option<f64> {
    let grid = signal.grid();
    let vals = signal.values();
    let t_max = *grid.last().unwrap();
    let cut = t_max / 10.0;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let sign = vals.last().unwrap().signum();
    for (&t, &v) in grid.iter().zip(vals.iter()) {
        if t >= cut && v * sign > 0.0 {
            xs.push(t.ln());
            ys.push((v * sign).ln());
        }
    }
    if xs.len() < 3 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return None;
    }
    Some(-(sxy / sxx))
}

/// Tail integral int_T^inf e^{-st} f(T) (t/T)^{-q} dt, as an asymptotic
/// correction around f(T) e^{-sT} / s. Terms are added while they shrink
/// (the series in q/(sT) is asymptotic).
fn power_tail(f_end: f64, t_end: f64, s: Complex64, q: f64) -> Complex64 {
    if f_end == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let base = f_end * (-s * t_end).exp() / s;
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut prev_mag = f64::INFINITY;
    for j in 0..8 {
        let factor = -(q + j as f64) / (s * t_end);
        let next = term * factor;
        if next.norm() >= prev_mag {
            break;
        }
        prev_mag = next.norm();
        term = next;
        sum += term;
    }
    base * sum
}

/// Forward Laplace transform of a sampled signal at `s`, with the default
/// power-fit tail (requires t_max * Re(s) >= 30).
pub fn laplace_forward(signal: &SampledSignal, s: Complex64) -> Result<Complex64, LaplaceError> {
    laplace_forward_with_tail(signal, s, TailModel::PowerFit)
}

/// Forward Laplace transform with an explicit tail model.
pub fn laplace_forward_with_tail(
    signal: &SampledSignal,
    s: Complex64,
    tail: TailModel,
) -> Result<Complex64, LaplaceError> {
    let grid = signal.grid();
    let vals = signal.values();
    let n = grid.len();
    let t_end = grid[n - 1];

    if tail == TailModel::PowerFit && t_end * s.re < 30.0 {
        return Err(LaplaceError::InsufficientTailCoverage(t_end * s.re));
    }

    let mut total = Complex64::new(signal.impulse_coeff(), 0.0);

    // origin segment [0, t_1] from the symbolic model
    let p = signal.origin_exponent();
    if p == 0.0 {
        // linear extrapolation through the first two samples
        let slope = (vals[1] - vals[0]) / (grid[1] - grid[0]);
        let a = vals[0] - slope * grid[0];
        total += a * origin_moment(0.0, grid[0], s) + slope * origin_moment(1.0, grid[0], s);
    } else {
        let c = signal.origin_coeff();
        total += c * origin_moment(p, grid[0], s);
    }

    // product-trapezoid panels, exact for piecewise-linear f
    let mut est_err = 0.0;
    let mut magnitude = total.norm();
    for i in 0..n - 1 {
        let h = grid[i + 1] - grid[i];
        let (w0, w1) = panel_weights(s * h);
        let head = (-s * grid[i]).exp();
        let contrib = head * h * (w0 * vals[i] + w1 * vals[i + 1]);
        total += contrib;
        magnitude += contrib.norm();
        // piecewise-linear interpolation error ~ h^2 |f''| / 8 per panel
        if i > 0 {
            let h0 = grid[i] - grid[i - 1];
            let d2 = 2.0
                * ((vals[i + 1] - vals[i]) / h - (vals[i] - vals[i - 1]) / h0)
                / (h + h0);
            est_err += d2.abs() * h * h * h / 8.0 * (-s.re * grid[i]).exp().min(1.0);
        }
    }

    let tol = 1e-4 * magnitude.max(1e-30);
    if est_err > tol {
        return Err(LaplaceError::GridTooCoarse { est: est_err, tol });
    }

    // tail beyond t_max
    total += match tail {
        TailModel::Truncate => Complex64::new(0.0, 0.0),
        TailModel::Exponential(rate) => vals[n - 1] * (-s * t_end).exp() / (s + rate),
        TailModel::Power(q) => power_tail(vals[n - 1], t_end, s, q),
        TailModel::PowerFit => {
            let q = fit_tail_exponent(signal).unwrap_or(0.0);
            power_tail(vals[n - 1], t_end, s, q.max(0.0))
        }
    };

    if !total.re.is_finite() || !total.im.is_finite() {
        return Err(LaplaceError::InvalidInput("forward transform overflowed".into()));
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// inversion
// ---------------------------------------------------------------------------

/// Inversion algorithm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InversionMethod {
    Talbot,
    GaverStehfest,
    /// Talbot values, cross-checked against Gaver-Stehfest; relative
    /// disagreement above 1e-6 at any point flags the result.
    Both,
}

/// Result of a numerical inversion.
pub struct Inversion {
    pub signal: SampledSignal,
    /// Largest relative Talbot/Gaver-Stehfest difference (method = Both).
    pub max_rel_diff: f64,
    /// True if the two methods disagreed beyond 1e-6 relative anywhere.
    pub methods_disagree: bool,
}

const TALBOT_NODES: usize = 32;
const STEHFEST_TERMS: usize = 16;

fn talbot_point(f: &SDomainFunction, t: f64) -> Result<f64, LaplaceError> {
    let m = TALBOT_NODES;
    let r = 2.0 * m as f64 / (5.0 * t);
    let s0 = Complex64::new(r, 0.0);
    let f0 = f.eval(s0);
    if !f0.re.is_finite() || !f0.im.is_finite() {
        return Err(LaplaceError::ContourEvaluationFailure(s0));
    }
    let mut acc = 0.5 * f0.re * (r * t).exp();
    for k in 1..m {
        let theta = k as f64 * std::f64::consts::PI / m as f64;
        let cot = theta.cos() / theta.sin();
        let sk = r * theta * Complex64::new(cot, 1.0);
        let sigma = theta + (theta * cot - 1.0) * cot;
        let fk = f.eval(sk);
        if !fk.re.is_finite() || !fk.im.is_finite() {
            return Err(LaplaceError::ContourEvaluationFailure(sk));
        }
        acc += ((sk * t).exp() * fk * Complex64::new(1.0, sigma)).re;
    }
    let v = acc * r / m as f64;
    if !v.is_finite() {
        return Err(LaplaceError::ContourEvaluationFailure(s0));
    }
    Ok(v)
}

fn stehfest_coefficients() -> [f64; STEHFEST_TERMS] {
    let n = STEHFEST_TERMS;
    let half = n / 2;
    let fact = |m: usize| -> f64 { (1..=m).map(|i| i as f64).product::<f64>().max(1.0) };
    let mut v = [0.0f64; STEHFEST_TERMS];
    for (k, vk) in v.iter_mut().enumerate() {
        let k = k + 1;
        let mut sum = 0.0;
        let j0 = k.div_ceil(2);
        for j in j0..=k.min(half) {
            sum += (j as f64).powi(half as i32) * fact(2 * j)
                / (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
        }
        let sign = if (half + k) % 2 == 0 { 1.0 } else { -1.0 };
        *vk = sign * sum;
    }
    v
}

fn stehfest_point(f: &SDomainFunction, t: f64, coeffs: &[f64; STEHFEST_TERMS]) -> Result<f64, LaplaceError> {
    let ln2t = std::f64::consts::LN_2 / t;
    let mut acc = 0.0;
    for (k, &c) in coeffs.iter().enumerate() {
        let s = Complex64::new((k + 1) as f64 * ln2t, 0.0);
        let fv = f.eval(s);
        if !fv.re.is_finite() {
            return Err(LaplaceError::ContourEvaluationFailure(s));
        }
        acc += c * fv.re;
    }
    Ok(acc * ln2t)
}

/// Invert an s-domain handle on a positive time grid.
pub fn laplace_invert(
    f: &SDomainFunction,
    times: &[f64],
    method: InversionMethod,
) -> Result<Inversion, LaplaceError> {
    if times.iter().any(|&t| !(t > 0.0)) {
        return Err(LaplaceError::InvalidInput("inversion times must be positive".into()));
    }
    let coeffs = stehfest_coefficients();
    let mut values = Vec::with_capacity(times.len());
    let mut max_rel = 0.0f64;
    for &t in times {
        let v = match method {
            InversionMethod::Talbot => talbot_point(f, t)?,
            InversionMethod::GaverStehfest => stehfest_point(f, t, &coeffs)?,
            InversionMethod::Both => {
                let vt = talbot_point(f, t)?;
                let vg = stehfest_point(f, t, &coeffs)?;
                let scale = vt.abs().max(vg.abs()).max(1e-300);
                max_rel = max_rel.max((vt - vg).abs() / scale);
                vt
            }
        };
        values.push(v);
    }
    let signal = SampledSignal::new(times.to_vec(), values)?;
    Ok(Inversion { signal, max_rel_diff: max_rel, methods_disagree: max_rel > 1e-6 })
}

// ---------------------------------------------------------------------------
// rational images
// ---------------------------------------------------------------------------

/// A sum of c_k s^{e_k} terms with real exponents, evaluated on the principal
/// branch. Covers both integer-order operator polynomials and their
/// fractional generalization.
#[derive(Debug, Clone)]
pub struct PowerPoly {
    pub terms: Vec<(f64, f64)>, // (coefficient, exponent)
}

impl PowerPoly {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(c, e) in &self.terms {
            if c == 0.0 {
                continue;
            }
            let p = if e == 0.0 { Complex64::new(1.0, 0.0) } else { s.powc(Complex64::new(e, 0.0)) };
            acc += c * p;
        }
        acc
    }
}

/// s J~(s) = P(s)/Q(s) with P(s) = 1 + sum a_k s^k and Q(s) = m + sum b_k s^k.
/// `a` holds [a_1, ..., a_p]; `mq` holds [m, b_1, ..., b_q].
pub fn rational_image(a: &[f64], mq: &[f64], s: Complex64) -> Result<Complex64, LaplaceError> {
    let p = PowerPoly {
        terms: std::iter::once((1.0, 0.0))
            .chain(a.iter().enumerate().map(|(k, &c)| (c, (k + 1) as f64)))
            .collect(),
    };
    let q = PowerPoly {
        terms: mq.iter().enumerate().map(|(k, &c)| (c, k as f64)).collect(),
    };
    let qv = q.eval(s);
    let scale: f64 = mq.iter().map(|c| c.abs()).sum::<f64>().max(1.0);
    if qv.norm() <= 1e-14 * scale {
        return Err(LaplaceError::PoleHit(s));
    }
    Ok(p.eval(s) / qv)
}

/// Fractional-order variant of [`rational_image`]: exponents nu_k = k + nu - 1.
pub fn rational_image_fractional(
    a: &[f64],
    mq: &[f64],
    nu: f64,
    s: Complex64,
) -> Result<Complex64, LaplaceError> {
    let ex = |k: usize| k as f64 + nu - 1.0;
    let p = PowerPoly {
        terms: std::iter::once((1.0, 0.0))
            .chain(a.iter().enumerate().map(|(k, &c)| (c, ex(k + 1))))
            .collect(),
    };
    let q = PowerPoly {
        terms: std::iter::once((mq[0], 0.0))
            .chain(mq[1..].iter().enumerate().map(|(k, &c)| (c, ex(k + 1))))
            .collect(),
    };
    let qv = q.eval(s);
    let scale: f64 = mq.iter().map(|c| c.abs()).sum::<f64>().max(1.0);
    if qv.norm() <= 1e-14 * scale {
        return Err(LaplaceError::PoleHit(s));
    }
    Ok(p.eval(s) / qv)
}
