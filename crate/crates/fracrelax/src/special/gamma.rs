//! Gamma-function kernels: `gamma`, `ln_gamma`, reciprocal Gamma, and an
//! accurate `sin_pi` for reflection.
//!
//! The Mittag-Leffler series and the power-law rules of the fractional
//! operators need Gamma at arbitrary real arguments, including far into the
//! negative axis where reflection must be done carefully. Reciprocal Gamma
//! (`rgamma`) is the preferred primitive: it is entire, with zeros at the
//! poles of Gamma, so series terms vanish there instead of blowing up.

use std::f64::consts::PI;

/// Lanczos parameter g = 7 with the 9-term coefficient set
/// (Godfrey's values, also used by GSL and CPython).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

const SQRT_TWO_PI: f64 = 2.5066282746310002;

/// Ln-gamma Lanczos coefficients (g = 607/128, 14 terms), accurate to
/// ~1e-15 in the log for x > 0. LG_SHIFT = g + 1/2 = 671/128.
const LG_SHIFT: f64 = 5.24218750000000000;
const LG_COEFFS: [f64; 14] = [
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
];

/// sin(pi x) with exact argument reduction, so it vanishes exactly at
/// integer x and stays accurate for |x| up to ~1e15.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let n = x.round();
    let r = x - n; // |r| <= 0.5, computed exactly for moderate x
    let s = (PI * r).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

fn lanczos_sum(z: f64) -> f64 {
    let mut sum = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    sum
}

fn gamma_positive(x: f64) -> f64 {
    // Lanczos for 0.5 <= x <= ~30
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    SQRT_TWO_PI * t.powf(z + 0.5) * (-t).exp() * lanczos_sum(z)
}

/// Stirling-series coefficients B_{2n} / ((2n)(2n-1)) for n = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Stirling for x > 20 (truncation below 1e-17 there). The exponent
/// (x-1/2) ln x - x reaches ~700, so a plainly rounded product would cost
/// ~700 ulp of relative error after exp; the logarithm and the product are
/// carried with a compensated low part instead.
fn gamma_positive_large(x: f64) -> f64 {
    let hi = x.ln();
    let hi_lo = x * (-hi).exp() - 1.0; // ln x = hi + hi_lo + O(1e-32)
    let a = x - 0.5;
    let p = a * hi;
    let p_lo = a.mul_add(hi, -p) + a * hi_lo;
    // two_sum(p, -x)
    let s = p - x;
    let bv = s - p;
    let s_lo = (p - (s - bv)) + (-x - bv);
    let lo = p_lo + s_lo;

    let y = 1.0 / (x * x);
    let mut series = STIRLING[7];
    for n in (0..7).rev() {
        series = series * y + STIRLING[n];
    }
    series /= x;

    SQRT_TWO_PI * s.exp() * (1.0 + lo) * series.exp()
}

/// ln Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    let mut y = x;
    let tmp = x + LG_SHIFT;
    let tmp = (x + 0.5) * tmp.ln() - tmp;
    let mut ser = 0.999999999999997092;
    for &c in LG_COEFFS.iter() {
        y += 1.0;
        ser += c / y;
    }
    tmp + (2.5066282746310005 * ser / x).ln()
}

/// (ln |Gamma(x)|, sign of Gamma(x)). Sign is 0.0 at the poles.
pub fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        (ln_gamma(x), 1.0)
    } else if x == x.round() {
        (f64::INFINITY, 0.0)
    } else {
        // |Gamma(x)| = pi / (|sin(pi x)| Gamma(1-x))
        let s = sin_pi(x);
        (PI.ln() - s.abs().ln() - ln_gamma(1.0 - x), s.signum())
    }
}

/// Gamma(x) for real x. Returns NaN at the poles (non-positive integers)
/// and +inf past the overflow threshold x ~ 171.62.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x >= 0.5 {
        if x > 171.63 {
            return f64::INFINITY;
        }
        return if x > 20.0 { gamma_positive_large(x) } else { gamma_positive(x) };
    }
    if x == x.round() {
        return f64::NAN; // pole
    }
    // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).
    let s = sin_pi(x);
    let y = 1.0 - x;
    if y <= 20.0 {
        PI / (s * gamma_positive(y))
    } else if y <= 171.63 {
        PI / (s * gamma_positive_large(y))
    } else {
        // Work in logs to dodge intermediate overflow; the result itself
        // underflows around x < -170.6.
        let ln_mag = PI.ln() - s.abs().ln() - ln_gamma(y);
        s.signum() * ln_mag.exp()
    }
}

/// Reciprocal Gamma, 1/Gamma(x): entire in x, zero at the poles of Gamma.
pub fn rgamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x >= 0.5 {
        if x > 171.63 {
            return 0.0;
        }
        return 1.0 / gamma_positive(x);
    }
    if x == x.round() {
        return 0.0;
    }
    // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
    let s = sin_pi(x);
    let y = 1.0 - x;
    if y <= 171.63 {
        s * gamma_positive(y) / PI
    } else {
        let ln_mag = ln_gamma(y) + s.abs().ln() - PI.ln();
        s.signum() * ln_mag.exp()
    }
}
