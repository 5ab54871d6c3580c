//! Fractional integrals and derivatives on sampled signals.
//!
//! The fractional integral J^alpha is discretized by product integration:
//! the signal is taken piecewise linear between grid points and the weakly
//! singular kernel (t - tau)^{alpha-1} is integrated exactly against it, so
//! the rule is exact on piecewise-linear integrands. The segment [0, t_1] is
//! handled from the signal's symbolic origin model c tau^p.
//!
//! The three derivatives are operator compositions of J^alpha with ordinary
//! differentiation (3-point Lagrange stencils on nonuniform grids):
//! Riemann-Liouville D^mu = D^m J^{m-mu}, Caputo *D^mu = J^{m-mu} D^m, and
//! Hilfer D^{mu,nu} = J^{nu(1-mu)} D^1 J^{(1-nu)(1-mu)} interpolating the
//! two (nu = 0 is Riemann-Liouville, nu = 1 is Caputo).

use num_complex::Complex64;
use thiserror::Error;

use crate::laplace::{laplace_forward, LaplaceError};
use crate::signal::{SampledSignal, SignalError};
use crate::special::gamma::{gamma, rgamma};

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("NonNegativeOrderViolation: integral order must be >= 0, got {0}")]
    NonNegativeOrderViolation(f64),
    #[error("OriginTooSingular: origin exponent {p} <= -1 is not locally integrable")]
    OriginTooSingular { p: f64 },
    #[error("OrderOutOfRange: {0}")]
    OrderOutOfRange(String),
    #[error("GridTooCoarse: need at least {need} points, got {got}")]
    GridTooCoarse { need: usize, got: usize },
    #[error("MissingInitialData: need {need} derivative values at 0+, got {got}")]
    MissingInitialData { need: usize, got: usize },
    #[error("IntegerOrder: operation requires a non-integer order, got {0}")]
    IntegerOrder(f64),
    #[error("GammaOutOfRange: power-law exponent must be > -1, got {0}")]
    GammaOutOfRange(f64),
    #[error(transparent)]
    Signal(#[from] SignalError),
    #[error(transparent)]
    Laplace(#[from] LaplaceError),
}

/// A validated fractional order mu > 0 with its integer ceiling m
/// (m - 1 < mu <= m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder {
    mu: f64,
    m: u32,
    integer: bool,
}

const INTEGER_ORDER_EPS: f64 = 1e-12;

impl FractionalOrder {
    pub fn new(mu: f64) -> Result<Self, OperatorError> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(OperatorError::OrderOutOfRange(format!(
                "fractional order must be positive and finite, got {mu}"
            )));
        }
        let nearest = mu.round();
        if nearest > 0.0 && (mu - nearest).abs() < INTEGER_ORDER_EPS {
            return Ok(FractionalOrder { mu: nearest, m: nearest as u32, integer: true });
        }
        Ok(FractionalOrder { mu, m: mu.ceil() as u32, integer: false })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Integer ceiling m with m - 1 < mu <= m.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn is_integer(&self) -> bool {
        self.integer
    }
}

/// Initial data f^(k)(0+) for k = 0..m-1, supplied by the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialData {
    derivs_at_zero: Vec<f64>,
}

impl InitialData {
    pub fn new(derivs_at_zero: Vec<f64>) -> Self {
        InitialData { derivs_at_zero }
    }

    pub fn zero(m: usize) -> Self {
        InitialData { derivs_at_zero: vec![0.0; m] }
    }

    pub fn derivs(&self) -> &[f64] {
        &self.derivs_at_zero
    }

    fn check(&self, m: u32) -> Result<(), OperatorError> {
        if self.derivs_at_zero.len() != m as usize {
            return Err(OperatorError::MissingInitialData {
                need: m as usize,
                got: self.derivs_at_zero.len(),
            });
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// fractional integral
// ---------------------------------------------------------------------------

/// Gauss-Legendre 20-point nodes/weights on [-1, 1] (positive half; the rule
/// is symmetric).
const GL20_X: [f64; 10] = [
    0.076526521133497333755,
    0.227785851141645078080,
    0.373706088715419560673,
    0.510867001950827098004,
    0.636053680726515025453,
    0.746331906460150792614,
    0.839116971822218823395,
    0.912234428251325905868,
    0.963971927277913791268,
    0.993128599185094924786,
];
const GL20_W: [f64; 10] = [
    0.152753387130725850698,
    0.149172986472603746788,
    0.142096109318382051329,
    0.131688638449176626898,
    0.118194531961518417312,
    0.101930119817240435037,
    0.083276741576704748725,
    0.062672048334109063570,
    0.040601429800386941331,
    0.017614007139152118312,
];

fn gl20<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for i in 0..10 {
        acc += GL20_W[i] * (f(c - h * GL20_X[i]) + f(c + h * GL20_X[i]));
    }
    acc * h
}

/// Exact integral of the linear segment f = fa + slope (tau - ta) over
/// [ta, tb] against the kernel (t - tau)^{alpha-1}, tb <= t.
fn linear_panel(t: f64, ta: f64, tb: f64, fa: f64, fb: f64, alpha: f64) -> f64 {
    let slope = (fb - fa) / (tb - ta);
    // f(tau) = a_lin - slope * u with u = t - tau
    let a_lin = fa + slope * (t - ta);
    let ua = t - ta;
    let ub = t - tb;
    let pow_a = ua.powf(alpha);
    let pow_b = ub.powf(alpha);
    a_lin * (pow_a - pow_b) / alpha - slope * (pow_a * ua - pow_b * ub) / (alpha + 1.0)
}

/// Contribution of the origin segment [0, t1] to
/// int_0^{t} (t - tau)^{alpha-1} f(tau) d tau. Regular signals (p = 0) use
/// the linear extrapolation through the first two samples; power-law models
/// c tau^p use an exact Beta integral at t = t1 and Gauss-Legendre beyond.
fn origin_contribution(f: &SampledSignal, t: f64, alpha: f64) -> f64 {
    let p = f.origin_exponent();
    let t1 = f.grid()[0];
    if p == 0.0 {
        let v0 = f.value_at_origin().expect("p = 0 origin is regular");
        return linear_panel(t, 0.0, t1, v0, f.values()[0], alpha);
    }
    let c = f.origin_coeff();
    if c == 0.0 {
        return 0.0;
    }
    if t <= t1 {
        // exact Beta-function integral: c t^{alpha+p} B(p+1, alpha)
        let beta = gamma(p + 1.0) * gamma(alpha) * rgamma(p + 1.0 + alpha);
        return c * t.powf(alpha + p) * beta;
    }
    if p > 0.0 {
        // bounded integrand; kernel is smooth on [0, t1] since t > t1
        gl20(|tau| c * tau.powf(p) * (t - tau).powf(alpha - 1.0), 0.0, t1)
    } else {
        // absorb the tau^p endpoint singularity: tau = t1 x^{1/(p+1)}
        let inv = 1.0 / (p + 1.0);
        let scale = c * t1.powf(p + 1.0) * inv;
        gl20(
            |x| {
                let tau = t1 * x.powf(inv);
                (t - tau).powf(alpha - 1.0)
            },
            0.0,
            1.0,
        ) * scale
    }
}

/// Riemann-Liouville fractional integral J^alpha f on the signal's own grid.
pub fn frac_integral(f: &SampledSignal, alpha: f64) -> Result<SampledSignal, OperatorError> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(OperatorError::NonNegativeOrderViolation(alpha));
    }
    if alpha == 0.0 {
        return Ok(f.clone()); // J^0 = identity
    }
    // local integrability at the origin is all the kernel needs; exponents
    // in (-1, -alpha] are admitted (the output then carries the singular
    // exponent p + alpha <= 0), which the Hilfer chain and the
    // t^{mu-1}-kernel identities rely on
    let p = f.origin_exponent();
    if p <= -1.0 {
        return Err(OperatorError::OriginTooSingular { p });
    }

    let grid = f.grid();
    let vals = f.values();
    let n = grid.len();
    let rg_alpha = rgamma(alpha);

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let t = grid[i];
        let mut acc = origin_contribution(f, t, alpha);
        // panels [t_j, t_{j+1}] for j < i, each exact for linear f
        for j in 0..i {
            acc += linear_panel(t, grid[j], grid[j + 1], vals[j], vals[j + 1], alpha);
        }
        out.push(acc * rg_alpha);
    }

    // impulse input contributes t^{alpha-1}/Gamma(alpha) pointwise
    let imp = f.impulse_coeff();
    if imp != 0.0 {
        for (i, v) in out.iter_mut().enumerate() {
            *v += imp * grid[i].powf(alpha - 1.0) * rg_alpha;
        }
    }

    // leading origin power of the output: a regular input with f(0+) = 0
    // rises like t, so its integral leads with t^{1+alpha}
    let mut out_p = if p == 0.0 {
        let v0 = f.value_at_origin().unwrap_or(0.0);
        let scale = vals[0].abs().max(vals[1].abs());
        if v0.abs() <= 1e-10 * scale.max(f64::MIN_POSITIVE) {
            alpha + 1.0
        } else {
            alpha
        }
    } else {
        p + alpha
    };
    if imp != 0.0 {
        out_p = out_p.min(alpha - 1.0);
    }
    Ok(SampledSignal::new(grid.to_vec(), out)?.with_origin_exponent(out_p))
}

// ---------------------------------------------------------------------------
// ordinary differentiation on nonuniform grids
// ---------------------------------------------------------------------------

/// First derivative by 3-point Lagrange stencils (centered inside, one-sided
/// at the ends).
fn derivative_once(f: &SampledSignal) -> Result<SampledSignal, OperatorError> {
    let grid = f.grid();
    let vals = f.values();
    let n = grid.len();
    if n < 3 {
        return Err(OperatorError::GridTooCoarse { need: 3, got: n });
    }
    // difference form annihilates constants exactly
    let stencil = |i0: usize, at: f64| -> f64 {
        let (x0, x1, x2) = (grid[i0], grid[i0 + 1], grid[i0 + 2]);
        let (f0, f1, f2) = (vals[i0], vals[i0 + 1], vals[i0 + 2]);
        let c0 = (2.0 * at - x1 - x2) / ((x0 - x1) * (x0 - x2));
        let c2 = (2.0 * at - x0 - x1) / ((x2 - x0) * (x2 - x1));
        c0 * (f0 - f1) + c2 * (f2 - f1)
    };
    let mut out = Vec::with_capacity(n);
    out.push(stencil(0, grid[0]));
    for i in 1..n - 1 {
        out.push(stencil(i - 1, grid[i]));
    }
    out.push(stencil(n - 3, grid[n - 1]));

    let p = f.origin_exponent();
    let out_p = if p == 0.0 { 0.0 } else { p - 1.0 };
    Ok(SampledSignal::new(grid.to_vec(), out)?.with_origin_exponent(out_p))
}

fn derivative_m(f: &SampledSignal, m: u32) -> Result<SampledSignal, OperatorError> {
    let mut g = f.clone();
    for _ in 0..m {
        g = derivative_once(&g)?;
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// the three fractional derivatives
// ---------------------------------------------------------------------------

/// Riemann-Liouville derivative D^mu f = D^m J^{m-mu} f. Integer orders
/// reduce to plain m-fold differentiation.
pub fn rl_derivative(f: &SampledSignal, order: &FractionalOrder) -> Result<SampledSignal, OperatorError> {
    if order.is_integer() {
        return derivative_m(f, order.m());
    }
    let g = frac_integral(f, order.m() as f64 - order.mu())?;
    derivative_m(&g, order.m())
}

/// Caputo derivative *D^mu f = J^{m-mu} D^m f. Integer orders reduce to
/// plain m-fold differentiation. `init` must carry m values f^(k)(0+).
pub fn caputo_derivative(
    f: &SampledSignal,
    order: &FractionalOrder,
    init: &InitialData,
) -> Result<SampledSignal, OperatorError> {
    init.check(order.m())?;
    if order.is_integer() {
        return derivative_m(f, order.m());
    }
    let h = derivative_m(f, order.m())?;
    frac_integral(&h, order.m() as f64 - order.mu())
}

/// Hilfer derivative D^{mu,nu} f = J^{nu(1-mu)} D^1 J^{(1-nu)(1-mu)} f for
/// 0 < mu < 1, 0 <= nu <= 1. The endpoints route to the exact
/// Riemann-Liouville (nu = 0) and Caputo (nu = 1) code paths.
pub fn hilfer_derivative(f: &SampledSignal, mu: f64, nu: f64) -> Result<SampledSignal, OperatorError> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(OperatorError::OrderOutOfRange(format!(
            "Hilfer derivative requires 0 < mu < 1, got {mu}"
        )));
    }
    if !(0.0..=1.0).contains(&nu) {
        return Err(OperatorError::OrderOutOfRange(format!(
            "Hilfer type must lie in [0, 1], got {nu}"
        )));
    }
    let order = FractionalOrder::new(mu)?;
    if nu == 0.0 {
        return rl_derivative(f, &order);
    }
    if nu == 1.0 {
        let h = derivative_once(f)?;
        return frac_integral(&h, 1.0 - mu);
    }
    let inner = frac_integral(f, (1.0 - nu) * (1.0 - mu))?;
    let mid = derivative_once(&inner)?;
    frac_integral(&mid, nu * (1.0 - mu))
}

// ---------------------------------------------------------------------------
// closed-form rules and relations
// ---------------------------------------------------------------------------

/// Pointwise gap between the Riemann-Liouville and Caputo derivatives:
/// sum_{k=0}^{m-1} f^(k)(0+) t^{k-mu} / Gamma(k - mu + 1), so that
/// rl = caputo + gap.
pub fn rl_caputo_gap(init: &InitialData, order: &FractionalOrder, t: f64) -> Result<f64, OperatorError> {
    if order.is_integer() {
        return Err(OperatorError::IntegerOrder(order.mu()));
    }
    init.check(order.m())?;
    let mu = order.mu();
    let mut acc = 0.0;
    for (k, &fk) in init.derivs().iter().enumerate() {
        let k = k as f64;
        acc += fk * t.powf(k - mu) * rgamma(k - mu + 1.0);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerLawKind {
    Integral,
    Derivative,
}

/// Closed-form action of J^alpha / D^mu on t^gamma:
/// Gamma(gamma+1)/Gamma(gamma+1 +/- order) * t^{gamma +/- order}.
/// The derivative branch returns 0 where the denominator Gamma has a pole.
pub fn power_law_rule(gam: f64, order: f64, t: f64, kind: PowerLawKind) -> Result<f64, OperatorError> {
    if !(gam > -1.0) {
        return Err(OperatorError::GammaOutOfRange(gam));
    }
    if !(order >= 0.0) || !order.is_finite() {
        return Err(OperatorError::NonNegativeOrderViolation(order));
    }
    let signed = match kind {
        PowerLawKind::Integral => order,
        PowerLawKind::Derivative => -order,
    };
    Ok(gamma(gam + 1.0) * rgamma(gam + 1.0 + signed) * t.powf(gam + signed))
}

/// Both sides of the Laplace rules for the two derivatives at real s > 0:
/// the Caputo rule  L{*D^mu f} = s^mu F(s) - sum s^{mu-1-k} f^(k)(0+), and
/// the simplified Riemann-Liouville rule  L{D^mu f} = s^mu F(s), valid when
/// all f^(k)(0+) are finite.
#[derive(Debug, Clone, Copy)]
pub struct LaplaceRuleCheck {
    pub caputo_lhs: f64,
    pub caputo_rhs: f64,
    pub rl_lhs: f64,
    pub rl_rhs: f64,
}

pub fn laplace_rule_check(
    f: &SampledSignal,
    order: &FractionalOrder,
    init: &InitialData,
    s: f64,
) -> Result<LaplaceRuleCheck, OperatorError> {
    if order.is_integer() {
        return Err(OperatorError::IntegerOrder(order.mu()));
    }
    init.check(order.m())?;
    if !(s > 0.0) {
        return Err(OperatorError::OrderOutOfRange(format!("need s > 0, got {s}")));
    }
    let sc = Complex64::new(s, 0.0);
    let mu = order.mu();

    let f_tilde = laplace_forward(f, sc)?.re;

    let cap = caputo_derivative(f, order, init)?;
    let caputo_lhs = laplace_forward(&cap, sc)?.re;
    let mut caputo_rhs = s.powf(mu) * f_tilde;
    for (k, &fk) in init.derivs().iter().enumerate() {
        caputo_rhs -= s.powf(mu - 1.0 - k as f64) * fk;
    }

    let rl = rl_derivative(f, order)?;
    let rl_lhs = laplace_forward(&rl, sc)?.re;
    let rl_rhs = s.powf(mu) * f_tilde;

    Ok(LaplaceRuleCheck { caputo_lhs, caputo_rhs, rl_lhs, rl_rhs })
}
