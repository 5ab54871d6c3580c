//! Sampled time signals with a symbolic origin model.
//!
//! A [`SampledSignal`] holds values on a strictly increasing positive grid,
//! plus two symbolic annotations that keep origin singularities and impulses
//! exact instead of sampled: `origin_exponent` p (the signal behaves like
//! c t^p as t -> 0, with c inferred from the first grid point) and
//! `impulse_coeff` (the coefficient of delta(t)).

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SignalError {
    #[error("InvalidGrid: grid must contain at least 2 points")]
    TooShort,
    #[error("InvalidGrid: grid times must be strictly increasing and positive (index {0})")]
    NotIncreasing(usize),
    #[error("InvalidGrid: grid and values have different lengths ({grid} vs {values})")]
    LengthMismatch { grid: usize, values: usize },
    #[error("InvalidGrid: non-finite value at index {0}")]
    NonFinite(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    grid: Vec<f64>,
    values: Vec<f64>,
    origin_exponent: f64,
    impulse_coeff: f64,
}

impl SampledSignal {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self, SignalError> {
        if grid.len() < 2 {
            return Err(SignalError::TooShort);
        }
        if grid.len() != values.len() {
            return Err(SignalError::LengthMismatch { grid: grid.len(), values: values.len() });
        }
        let mut prev = 0.0;
        for (i, &t) in grid.iter().enumerate() {
            if !(t > prev) || !t.is_finite() {
                return Err(SignalError::NotIncreasing(i));
            }
            prev = t;
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(SignalError::NonFinite(i));
            }
        }
        Ok(SampledSignal { grid, values, origin_exponent: 0.0, impulse_coeff: 0.0 })
    }

    /// Sample a function on a grid.
    pub fn from_fn(grid: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self, SignalError> {
        let values = grid.iter().map(|&t| f(t)).collect();
        Self::new(grid, values)
    }

    pub fn with_origin_exponent(mut self, p: f64) -> Self {
        self.origin_exponent = p;
        self
    }

    pub fn with_impulse_coeff(mut self, c: f64) -> Self {
        self.impulse_coeff = c;
        self
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn origin_exponent(&self) -> f64 {
        self.origin_exponent
    }

    pub fn impulse_coeff(&self) -> f64 {
        self.impulse_coeff
    }

    /// Coefficient c of the origin model f ~ c t^p, inferred from the first
    /// grid point.
    pub fn origin_coeff(&self) -> f64 {
        self.values[0] / self.grid[0].powf(self.origin_exponent)
    }

    /// Limit value at t -> 0+: 0 for p > 0, the linearly extrapolated value
    /// for p = 0, and None (divergent) for p < 0.
    pub fn value_at_origin(&self) -> Option<f64> {
        if self.origin_exponent > 0.0 {
            Some(0.0)
        } else if self.origin_exponent == 0.0 {
            let (t0, t1) = (self.grid[0], self.grid[1]);
            let (v0, v1) = (self.values[0], self.values[1]);
            Some(v0 - (v1 - v0) / (t1 - t0) * t0)
        } else {
            None
        }
    }

    /// Same grid, values transformed pointwise. Symbolic annotations reset.
    pub fn map_values(&self, f: impl Fn(f64, f64) -> f64) -> SampledSignal {
        let values = self.grid.iter().zip(self.values.iter()).map(|(&t, &v)| f(t, v)).collect();
        SampledSignal {
            grid: self.grid.clone(),
            values,
            origin_exponent: 0.0,
            impulse_coeff: 0.0,
        }
    }
}

/// `n` equally spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least 2 points");
    let step = (b - a) / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { b } else { a + step * i as f64 }).collect()
}

/// `n` logarithmically spaced points from `a` to `b` inclusive (a, b > 0).
pub fn geomspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && a > 0.0 && b > 0.0, "geomspace needs n >= 2 and positive endpoints");
    let (la, lb) = (a.ln(), b.ln());
    let step = (lb - la) / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { b } else { (la + step * i as f64).exp() }).collect()
}
