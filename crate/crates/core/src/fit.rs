//! Least-squares fits of decay series.

use std::fmt;

use crate::error::{Error, Result};
use crate::propagators::DecaySeries;

/// Minimum coefficient of determination for a fit to count as a pass.
pub const MIN_R2: f64 = 0.995;

#[derive(Clone, Debug, PartialEq)]
pub struct DecayFit {
    pub window: (f64, f64),
    /// Slope of `log(norm)` against `log(t)` (power law) or against `t` (rate).
    pub slope: f64,
    pub stderr: f64,
    pub r2: f64,
    pub samples: usize,
    pub target: Option<f64>,
    pub tolerance: f64,
}

impl DecayFit {
    /// Pass iff the slope is within tolerance of the target and `r^2 >= 0.995`.
    pub fn verdict(&self) -> Option<bool> {
        self.target
            .map(|t| (self.slope - t).abs() <= self.tolerance && self.r2 >= MIN_R2)
    }

    pub fn with_target(mut self, target: f64, tolerance: f64) -> Self {
        self.target = Some(target);
        self.tolerance = tolerance;
        self
    }
}

impl fmt::Display for DecayFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "window [{}, {}]  n = {}  slope = {:.6}  stderr = {:.2e}  r2 = {:.6}",
            self.window.0, self.window.1, self.samples, self.slope, self.stderr, self.r2
        )?;
        if let (Some(t), Some(v)) = (self.target, self.verdict()) {
            write!(
                f,
                "  target = {t} +/- {}  {}",
                self.tolerance,
                if v { "PASS" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Ordinary least squares of `y` on `x`: `(slope, intercept, stderr, r2)`.
pub fn ols(x: &[f64], y: &[f64]) -> (f64, f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    let stderr = if n > 2.0 {
        (sse / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    let r2 = if syy > 0.0 { 1.0 - sse / syy } else if sse == 0.0 { 1.0 } else { 0.0 };
    (slope, intercept, stderr, r2)
}

fn windowed(series: &DecaySeries, window: (f64, f64), log_t: bool) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(window.0 < window.1) {
        return Err(Error::Contract(format!("fit window [{}, {}] is empty", window.0, window.1)));
    }
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (&t, &n) in series.times.iter().zip(&series.norms) {
        if t >= window.0 && t <= window.1 {
            if !(t > 0.0 && n > 0.0) {
                return Err(Error::Numerical(format!("cannot take logarithms of t = {t}, norm = {n}")));
            }
            x.push(if log_t { t.ln() } else { t });
            y.push(n.ln());
        }
    }
    if x.len() < 3 {
        return Err(Error::Contract(format!(
            "fit window [{}, {}] holds {} sample(s); at least 3 are needed",
            window.0,
            window.1,
            x.len()
        )));
    }
    Ok((x, y))
}

/// Power-law exponent: OLS of `log norm` on `log t` inside `window`.
pub fn fit_power_law(series: &DecaySeries, window: (f64, f64)) -> Result<DecayFit> {
    let (x, y) = windowed(series, window, true)?;
    let (slope, _, stderr, r2) = ols(&x, &y);
    Ok(DecayFit {
        window,
        slope,
        stderr,
        r2,
        samples: x.len(),
        target: None,
        tolerance: 0.0,
    })
}

/// Exponential rate: OLS of `log norm` on `t`; the decay rate is `-slope`.
pub fn fit_exponential(series: &DecaySeries, window: (f64, f64)) -> Result<DecayFit> {
    let (x, y) = windowed(series, window, false)?;
    let (slope, _, stderr, r2) = ols(&x, &y);
    Ok(DecayFit {
        window,
        slope,
        stderr,
        r2,
        samples: x.len(),
        target: None,
        tolerance: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series(f: impl Fn(f64) -> f64) -> DecaySeries {
        let times = crate::propagators::probe::log_times(1.0, 1e3, 25);
        let norms = times.iter().map(|&t| f(t)).collect();
        DecaySeries::new("s", times, norms).unwrap()
    }

    #[test]
    fn exact_power_law() {
        let fit = fit_power_law(&series(|t| 3.0 * t.powf(-1.5)), (1.0, 1e3))
            .unwrap()
            .with_target(-1.5, 0.05);
        assert!((fit.slope + 1.5).abs() < 1e-12);
        assert_eq!(fit.verdict(), Some(true));
    }

    #[test]
    fn constant_series_fails() {
        let fit = fit_power_law(&series(|_| 2.0), (1.0, 1e3))
            .unwrap()
            .with_target(-1.5, 0.05);
        assert_eq!(fit.slope, 0.0);
        assert_eq!(fit.verdict(), Some(false));
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(
            fit_power_law(&series(|t| 1.0 / t), (1.0, 1.5)),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn exponential_rate() {
        let fit = fit_exponential(&series(|t| (-0.25 * t).exp()), (1.0, 100.0)).unwrap();
        assert!((fit.slope + 0.25).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn recovers_any_exponent(p in -4.0f64..1.0, c in 0.01f64..100.0) {
            let fit = fit_power_law(&series(|t| c * t.powf(p)), (1.0, 1e3)).unwrap();
            prop_assert!((fit.slope - p).abs() < 1e-10);
            prop_assert!(fit.r2 > 1.0 - 1e-10 || p.abs() < 1e-12);
        }
    }
}
