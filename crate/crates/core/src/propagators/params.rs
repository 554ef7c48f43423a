use crate::error::{Error, Result};

/// Physical constants of the pressure law `P = a rho^gamma` and the viscosities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    a: f64,
    gamma: f64,
    mu1: f64,
    mu2: f64,
}

impl Params {
    /// Checked against the physical standing assumptions
    /// `a > 1`, `gamma >= 1`, `mu1 > 0`, `mu2 > 0`.
    pub fn new(a: f64, gamma: f64, mu1: f64, mu2: f64) -> Result<Self> {
        let p = Self::symbol_only(a, gamma, mu1, mu2)?;
        if !(a > 1.0) {
            return Err(Error::Config(format!("pressure constant a = {a} must exceed 1")));
        }
        if !(gamma >= 1.0) {
            return Err(Error::Config(format!("adiabatic exponent gamma = {gamma} must be at least 1")));
        }
        Ok(p)
    }

    /// Only positivity is required. The linear symbols make sense for any
    /// positive constants, e.g. the normalized case `a = gamma = 1`.
    pub fn symbol_only(a: f64, gamma: f64, mu1: f64, mu2: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("gamma", gamma), ("mu1", mu1), ("mu2", mu2)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} = {v} must be positive and finite")));
            }
        }
        Ok(Self { a, gamma, mu1, mu2 })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mu1(&self) -> f64 {
        self.mu1
    }

    pub fn mu2(&self) -> f64 {
        self.mu2
    }

    /// `mu = mu1 + mu2`.
    pub fn mu(&self) -> f64 {
        self.mu1 + self.mu2
    }

    /// `a * gamma`, the squared sound speed at the reference density.
    pub fn sound_speed_sq(&self) -> f64 {
        self.a * self.gamma
    }

    pub fn sound_speed(&self) -> f64 {
        self.sound_speed_sq().sqrt()
    }

    /// `2 sqrt(a gamma) / mu`, where the two eigenvalues of the linear flow merge.
    pub fn threshold(&self) -> f64 {
        2.0 * self.sound_speed() / self.mu()
    }
}
