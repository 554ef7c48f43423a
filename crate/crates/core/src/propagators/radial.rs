//! Inverse Fourier transform of radial functions on the whole space.
//!
//! With `f(x) = (2 pi)^{-3} int e^{ix.xi} f^(xi) dxi` and `f^` radial,
//!
//! ```text
//! u(r)      = (2 pi^2)^{-1} int_0^inf rho^2 sinc(r rho) m(rho) f^(rho) d rho
//! |grad u|  = (2 pi^2)^{-1} | int_0^inf rho^3 j1(r rho) m(rho) f^(rho) d rho |
//! ```
//!
//! evaluated by composite Gauss-Legendre quadrature with panels sized to the
//! oscillation scale and doubled until two successive layouts agree.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::cutoff;

const GL_ORDER: usize = 20;
/// Oscillation periods covered by one panel.
const PERIODS_PER_PANEL: f64 = 2.0;
const MAX_PANELS: usize = 1 << 18;
const REL_TOL: f64 = 1e-11;

fn gauss_legendre() -> &'static (Vec<f64>, Vec<f64>) {
    static NODES: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    NODES.get_or_init(|| {
        let n = GL_ORDER;
        let mut x = vec![0.0; n];
        let mut w = vec![0.0; n];
        for i in 0..n {
            let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Legendre recurrence for P_n and P_{n-1}
                let (mut p0, mut p1) = (1.0, z);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
                let dz = p1 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        (x, w)
    })
}

/// `sin(x) / x`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Spherical Bessel function `j1(x) = sin x / x^2 - cos x / x`.
pub fn j1(x: f64) -> f64 {
    if x.abs() < 0.1 {
        let x2 = x * x;
        x * (1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0 - x2 * x2 * x2 / 45360.0 + x2 * x2 * x2 * x2 / 3991680.0)
    } else {
        (x.sin() / x - x.cos()) / x
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Shape {
    Gaussian { width: f64 },
    Band { k: i32 },
    LowPass { k: i32 },
    Sampled { rho: Vec<f64>, values: Vec<f64> },
}

/// Radial Fourier-side data `f^(rho)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialProfile {
    shape: Shape,
}

impl RadialProfile {
    /// `f^ = exp(-width^2 rho^2 / 2)`, the transform of a Gaussian of width `width`.
    pub fn gaussian(width: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::Domain(format!("Gaussian width {width} must be positive")));
        }
        Ok(Self { shape: Shape::Gaussian { width } })
    }

    /// `f^ = phi_k(rho)`: data living in one dyadic band.
    pub fn band(k: i32) -> Self {
        Self { shape: Shape::Band { k } }
    }

    /// `f^ = phi_{<=k}(rho)`: smooth data with all frequencies below `2^(k+1)`.
    pub fn low_pass(k: i32) -> Self {
        Self { shape: Shape::LowPass { k } }
    }

    /// Piecewise-linear samples, zero beyond the last node.
    pub fn sampled(rho: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if rho.len() != values.len() || rho.len() < 2 {
            return Err(Error::Domain("sampled profile needs matching nodes and values (at least 2)".into()));
        }
        if rho[0] < 0.0 || rho.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("profile nodes must be nonnegative and strictly increasing".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("profile value at node {i} is not finite")));
        }
        Ok(Self { shape: Shape::Sampled { rho, values } })
    }

    pub fn value(&self, rho: f64) -> f64 {
        match &self.shape {
            Shape::Gaussian { width } => (-0.5 * (width * rho).powi(2)).exp(),
            Shape::Band { k } => cutoff::phi_band(*k, rho),
            Shape::LowPass { k } => cutoff::phi_at_most(*k, rho),
            Shape::Sampled { rho: r, values } => {
                if rho < r[0] || rho > r[r.len() - 1] {
                    return 0.0;
                }
                let j = r.partition_point(|&x| x <= rho).clamp(1, r.len() - 1);
                let s = (rho - r[j - 1]) / (r[j] - r[j - 1]);
                values[j - 1] * (1.0 - s) + values[j] * s
            }
        }
    }

    /// Interval outside of which `f^` vanishes (or is below `e^{-72}`).
    pub fn support(&self) -> (f64, f64) {
        match &self.shape {
            Shape::Gaussian { width } => (0.0, 12.0 / width),
            Shape::Band { k } => ((*k as f64 - 1.0).exp2(), (*k as f64 + 1.0).exp2()),
            Shape::LowPass { k } => (0.0, (*k as f64 + 1.0).exp2()),
            Shape::Sampled { rho, .. } => (rho[0], rho[rho.len() - 1]),
        }
    }

    /// Points where `f^` is not smooth; panels never straddle them.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.shape {
            Shape::Sampled { rho, .. } => rho.clone(),
            _ => {
                let (a, b) = self.support();
                vec![a, b]
            }
        }
    }

    /// Physical length scale of the data, used to lay out radial grids.
    pub fn length_scale(&self) -> f64 {
        match &self.shape {
            Shape::Gaussian { width } => *width,
            _ => {
                let (a, b) = self.support();
                let mid = 0.5 * (a + b);
                2.0 * PI / mid.max(1e-300)
            }
        }
    }
}

/// Which radial integral to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Value,
    GradientNorm,
}

/// Quadrature nodes with `rho^p m f^ w` folded in, reusable across radii.
pub(crate) struct NodeSet {
    rho: Vec<f64>,
    weighted: Vec<Complex64>,
    output: Output,
}

impl NodeSet {
    pub(crate) fn build<M>(m: &M, f: &RadialProfile, breaks: &[f64], panels: usize, output: Output) -> Result<Self>
    where
        M: Fn(f64) -> Complex64 + ?Sized,
    {
        let (x, w) = gauss_legendre();
        let total: f64 = breaks.windows(2).map(|s| s[1] - s[0]).sum();
        let mut rho = Vec::new();
        let mut weighted = Vec::new();
        for seg in breaks.windows(2) {
            let len = seg[1] - seg[0];
            if len <= 0.0 {
                continue;
            }
            let np = ((panels as f64 * len / total).ceil() as usize).max(1);
            let h = len / np as f64;
            for p in 0..np {
                let a = seg[0] + p as f64 * h;
                for (xi, wi) in x.iter().zip(w) {
                    let r = a + 0.5 * h * (xi + 1.0);
                    let pow = match output {
                        Output::Value => r * r,
                        Output::GradientNorm => r * r * r,
                    };
                    let g = m(r) * (pow * f.value(r) * 0.5 * h * wi);
                    if !(g.re.is_finite() && g.im.is_finite()) {
                        return Err(Error::Numerical(format!(
                            "integrand is not finite at rho = {r} (multiplier {})",
                            m(r)
                        )));
                    }
                    rho.push(r);
                    weighted.push(g);
                }
            }
        }
        Ok(Self { rho, weighted, output })
    }

    pub(crate) fn eval(&self, r: f64) -> Complex64 {
        let kern: fn(f64) -> f64 = match self.output {
            Output::Value => sinc,
            Output::GradientNorm => j1,
        };
        let mut acc = Complex64::default();
        for (rho, g) in self.rho.iter().zip(&self.weighted) {
            acc += g * kern(r * rho);
        }
        acc / (2.0 * PI * PI)
    }

    /// `int |integrand|`, the magnitude scale used for the tolerance.
    pub(crate) fn magnitude(&self) -> f64 {
        self.weighted.iter().map(|g| g.norm()).sum::<f64>() / (2.0 * PI * PI)
    }
}

/// Panel count resolving oscillations of `exp(i s rho)` with `s = osc`.
pub(crate) fn initial_panels(breaks: &[f64], osc: f64) -> usize {
    let len = breaks.last().unwrap_or(&0.0) - breaks.first().unwrap_or(&0.0);
    let periods = len * osc / (2.0 * PI);
    ((periods / PERIODS_PER_PANEL).ceil() as usize).max(4 * breaks.len().max(1))
}

/// Restrict `f`'s breakpoints to where `|rho^2 m f^|` is not negligible.
pub(crate) fn effective_breaks<M>(m: &M, f: &RadialProfile) -> Vec<f64>
where
    M: Fn(f64) -> Complex64 + ?Sized,
{
    let (a, b) = f.support();
    let samples = 4000;
    let h = (b - a) / samples as f64;
    let mags: Vec<f64> = (0..=samples)
        .map(|i| {
            let r = a + i as f64 * h;
            (r * r * m(r) * f.value(r)).norm()
        })
        .collect();
    let peak = mags.iter().cloned().fold(0.0, f64::max);
    let mut breaks = f.breakpoints();
    if peak == 0.0 || !peak.is_finite() {
        return breaks;
    }
    let last = mags.iter().rposition(|&v| v > 1e-20 * peak).unwrap_or(samples);
    let hi = (a + (last + 2) as f64 * h).min(b);
    breaks.retain(|&x| x < hi);
    breaks.push(hi);
    breaks
}

/// Evaluate one radial integral to the crate tolerance by doubling panels.
pub(crate) fn converged<M>(m: &M, f: &RadialProfile, r: f64, osc: f64, output: Output) -> Result<Complex64>
where
    M: Fn(f64) -> Complex64 + ?Sized,
{
    let breaks = effective_breaks(m, f);
    let mut panels = initial_panels(&breaks, osc + r);
    let mut prev = NodeSet::build(m, f, &breaks, panels, output)?.eval(r);
    loop {
        panels *= 2;
        if panels > MAX_PANELS {
            return Err(Error::Numerical(format!(
                "radial quadrature did not converge at r = {r} with {MAX_PANELS} panels"
            )));
        }
        let set = NodeSet::build(m, f, &breaks, panels, output)?;
        let cur = set.eval(r);
        if (cur - prev).norm() <= REL_TOL * set.magnitude() {
            return Ok(cur);
        }
        prev = cur;
    }
}

/// `u(r)` for `u^ = m f^`. `osc` bounds the phase derivative of `m` in `rho`
/// (0 for non-oscillatory multipliers, `t` for `e^{it rho}`).
pub fn radial_eval<M>(m: &M, f: &RadialProfile, r: f64, osc: f64) -> Result<Complex64>
where
    M: Fn(f64) -> Complex64 + ?Sized,
{
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("radius {r} must be nonnegative")));
    }
    converged(m, f, r, osc, Output::Value)
}

/// `|grad u|(r)` for `u^ = m f^`; the gradient of a radial function is radial.
pub fn radial_gradient<M>(m: &M, f: &RadialProfile, r: f64, osc: f64) -> Result<f64>
where
    M: Fn(f64) -> Complex64 + ?Sized,
{
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("radius {r} must be nonnegative")));
    }
    Ok(converged(m, f, r, osc, Output::GradientNorm)?.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(_: f64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn nodes_integrate_polynomials() {
        let (x, w) = gauss_legendre();
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let m4: f64 = x.iter().zip(w).map(|(x, w)| w * x.powi(4)).sum();
        assert!((m4 - 0.4).abs() < 1e-14);
    }

    #[test]
    fn bessel_branches_agree() {
        for x in [0.099_999f64, 0.1] {
            let direct = (x.sin() / x - x.cos()) / x;
            assert!((j1(x) - direct).abs() < 1e-13 * direct);
        }
    }

    #[test]
    fn gaussian_inverse_transform() {
        // f^ = e^{-rho^2/2} is the transform of (2 pi)^{-3/2} e^{-|x|^2/2}
        let f = RadialProfile::gaussian(1.0).unwrap();
        let c = (2.0 * PI).powf(-1.5);
        for r in [0.0, 0.3, 1.0, 2.5] {
            let u = radial_eval(&one, &f, r, 0.0).unwrap();
            let exact = c * (-0.5 * r * r).exp();
            assert!((u.re - exact).abs() < 1e-10 * c, "r = {r}");
            let g = radial_gradient(&one, &f, r, 0.0).unwrap();
            assert!((g - r * exact).abs() < 1e-10 * c);
        }
        let far = radial_eval(&one, &f, 15.0, 0.0).unwrap();
        assert!(far.norm() < 1e-12 * c);
    }

    #[test]
    fn heat_multiplier_matches_closed_form() {
        let f = RadialProfile::gaussian(1.0).unwrap();
        for t in [0.5, 4.0, 30.0] {
            let m = move |rho: f64| Complex64::new((-t * rho * rho).exp(), 0.0);
            let s: f64 = 1.0 + 2.0 * t;
            for r in [0.0, 1.0, 3.0] {
                let u = radial_eval(&m, &f, r, 0.0).unwrap().re;
                let exact = (2.0 * PI * s).powf(-1.5) * (-r * r / (2.0 * s)).exp();
                assert!((u - exact).abs() < 1e-10 * (2.0 * PI).powf(-1.5));
            }
        }
    }

    #[test]
    fn sampled_profile_validation() {
        assert!(RadialProfile::sampled(vec![0.0, 1.0, 1.0], vec![1.0; 3]).is_err());
        assert!(RadialProfile::sampled(vec![0.0, 1.0], vec![1.0, f64::NAN]).is_err());
        let p = RadialProfile::sampled(vec![0.0, 1.0, 2.0], vec![1.0, 0.5, 0.0]).unwrap();
        assert_eq!(p.value(0.5), 0.75);
        assert_eq!(p.value(3.0), 0.0);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let f = RadialProfile::gaussian(1.0).unwrap();
        let bad = |rho: f64| Complex64::new(1.0 / (rho - rho), 0.0);
        assert!(matches!(radial_eval(&bad, &f, 0.0, 0.0), Err(Error::Numerical(_))));
    }
}
