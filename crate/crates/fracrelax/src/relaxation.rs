//! Closed-form solutions of the fractional relaxation initial-value problems.
//!
//! Four problem kinds share the rate-1 equation u' ~ -u generalized to
//! fractional order mu in (0, 1]:
//!
//! - `Caputo`:     *D^mu u = -u,  u(0+) = 1
//! - `RiemannLiouville`: D^mu u = -u, with the integral initial condition
//!   lim J^{1-mu} u = 1 (the solution diverges at the time origin)
//! - `Renewal`:    u' = -D^{1-mu} u, u(0+) = 1 (same solution as Caputo)
//! - `Hilfer`:     D^{mu,nu} u = -u, lim J^{(1-mu)(1-nu)} u = 1
//!
//! Solutions are Mittag-Leffler: Psi(t) = E_mu(-t^mu) for Caputo/renewal,
//! Phi(t) = t^{mu-1} E_{mu,mu}(-t^mu) for Riemann-Liouville, and
//! t^{(1-nu)(mu-1)} E_{mu, mu+nu(1-mu)}(-t^mu) for Hilfer. Each solution's
//! origin singularity is recorded symbolically on the returned signal.

use num_complex::Complex64;
use thiserror::Error;

use crate::signal::{SampledSignal, SignalError};
use crate::special::{ml2, phi_kernel, SpecialError};

#[derive(Debug, Error)]
pub enum RelaxationError {
    #[error("OrderOutOfRange: {0}")]
    OrderOutOfRange(String),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Signal(#[from] SignalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelaxationKind {
    /// *D^mu u = -u with u(0+) = 1.
    Caputo,
    /// D^mu u = -u with lim J^{1-mu} u = 1.
    RiemannLiouville,
    /// u' = -D^{1-mu} u with u(0+) = 1; equivalent to `Caputo`.
    Renewal,
    /// D^{mu,nu} u = -u with lim J^{(1-mu)(1-nu)} u = 1.
    Hilfer,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationProblem {
    pub kind: RelaxationKind,
    pub mu: f64,
    /// Hilfer type, required only for `RelaxationKind::Hilfer`.
    pub nu: Option<f64>,
    /// Relaxation rate; the non-dimensional problems fix it to 1.
    pub lambda: f64,
}

impl RelaxationProblem {
    pub fn caputo(mu: f64) -> Self {
        RelaxationProblem { kind: RelaxationKind::Caputo, mu, nu: None, lambda: 1.0 }
    }

    pub fn riemann_liouville(mu: f64) -> Self {
        RelaxationProblem { kind: RelaxationKind::RiemannLiouville, mu, nu: None, lambda: 1.0 }
    }

    pub fn renewal(mu: f64) -> Self {
        RelaxationProblem { kind: RelaxationKind::Renewal, mu, nu: None, lambda: 1.0 }
    }

    pub fn hilfer(mu: f64, nu: f64) -> Self {
        RelaxationProblem { kind: RelaxationKind::Hilfer, mu, nu: Some(nu), lambda: 1.0 }
    }

    pub fn with_rate(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    fn validate(&self) -> Result<f64, RelaxationError> {
        if !(self.mu > 0.0 && self.mu <= 1.0) {
            return Err(RelaxationError::OrderOutOfRange(format!(
                "relaxation order must lie in (0, 1], got {}",
                self.mu
            )));
        }
        if !(self.lambda > 0.0) {
            return Err(RelaxationError::OrderOutOfRange(format!(
                "relaxation rate must be positive, got {}",
                self.lambda
            )));
        }
        match self.kind {
            RelaxationKind::Hilfer => {
                let nu = self.nu.ok_or_else(|| {
                    RelaxationError::OrderOutOfRange("Hilfer kind requires a type nu".into())
                })?;
                if !(0.0..=1.0).contains(&nu) {
                    return Err(RelaxationError::OrderOutOfRange(format!(
                        "Hilfer type must lie in [0, 1], got {nu}"
                    )));
                }
                Ok(nu)
            }
            _ => Ok(f64::NAN),
        }
    }

    /// Solution value at a single positive time.
    pub fn eval(&self, t: f64) -> Result<f64, RelaxationError> {
        let nu = self.validate()?;
        if !(t > 0.0) {
            return Err(RelaxationError::OrderOutOfRange(format!("need t > 0, got {t}")));
        }
        let mu = self.mu;
        let lam = self.lambda;
        let z = -lam * t.powf(mu);
        Ok(match self.kind {
            RelaxationKind::Caputo | RelaxationKind::Renewal => ml2(mu, 1.0, z)?.value,
            RelaxationKind::RiemannLiouville => phi_kernel(mu, lam, t)?,
            RelaxationKind::Hilfer => {
                if nu == 1.0 {
                    ml2(mu, 1.0, z)?.value // Caputo endpoint, exact agreement
                } else if nu == 0.0 {
                    phi_kernel(mu, lam, t)? // Riemann-Liouville endpoint
                } else {
                    let beta = mu + nu * (1.0 - mu);
                    t.powf((1.0 - nu) * (mu - 1.0)) * ml2(mu, beta, z)?.value
                }
            }
        })
    }

    /// Exponent p of the solution's origin behavior u ~ c t^p.
    pub fn origin_exponent(&self) -> f64 {
        match self.kind {
            RelaxationKind::Caputo | RelaxationKind::Renewal => 0.0,
            RelaxationKind::RiemannLiouville => self.mu - 1.0,
            RelaxationKind::Hilfer => (1.0 - self.nu.unwrap_or(1.0)) * (self.mu - 1.0),
        }
    }
}

/// Solve the problem on a positive time grid. The returned signal records
/// the origin singularity exponent of the solution.
pub fn solve(problem: &RelaxationProblem, times: &[f64]) -> Result<SampledSignal, RelaxationError> {
    problem.validate()?;
    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        values.push(problem.eval(t)?);
    }
    Ok(SampledSignal::new(times.to_vec(), values)?.with_origin_exponent(problem.origin_exponent()))
}

/// Laplace-domain image of the solution:
/// s^{mu-1}/(s^mu + lambda) for Caputo/renewal, 1/(s^mu + lambda) for
/// Riemann-Liouville, s^{nu(mu-1)}/(s^mu + lambda) for Hilfer.
pub fn laplace_image(problem: &RelaxationProblem, s: Complex64) -> Result<Complex64, RelaxationError> {
    let nu = problem.validate()?;
    let mu = problem.mu;
    let lam = problem.lambda;
    let smu = s.powc(Complex64::new(mu, 0.0));
    let denom = smu + lam;
    Ok(match problem.kind {
        RelaxationKind::Caputo | RelaxationKind::Renewal => {
            s.powc(Complex64::new(mu - 1.0, 0.0)) / denom
        }
        RelaxationKind::RiemannLiouville => 1.0 / denom,
        RelaxationKind::Hilfer => s.powc(Complex64::new(nu * (mu - 1.0), 0.0)) / denom,
    })
}
