//! The 2x2 symbol of the coupled density-velocity flow.
//!
//! For `rho = |xi|` the generator is `B = [[0, -rho], [a gamma rho, -mu rho^2]]`
//! acting on `(varrho^, v^)`. With `alpha = mu rho^2 / 2` and
//! `b^2 = a gamma rho^2 - alpha^2`, the flow is
//!
//! ```text
//! e^{tB} = e^{-alpha t} [[C + alpha S, -rho S], [a gamma rho S, C - alpha S]]
//! ```
//!
//! where `C = cos(bt)` and `S = sin(bt) / b` (hyperbolic when `b^2 < 0`).

use num_complex::Complex64;

use super::params::Params;
use crate::error::{Error, Result};

/// Below this value of `|b^2 t^2|` the trigonometric factors use series.
pub const TAYLOR_THRESHOLD: f64 = 1e-4;

/// `b^2 = a gamma rho^2 - mu^2 rho^4 / 4`, factored so it vanishes cleanly at
/// the threshold.
pub fn discriminant(rho: f64, p: &Params) -> f64 {
    let c = p.sound_speed();
    let h = 0.5 * p.mu() * rho;
    rho * rho * (c - h) * (c + h)
}

/// Eigenvalues `(Lambda_+, Lambda_-)` of `B(rho)`.
///
/// Above the threshold the slow root is formed as `-a gamma rho^2 / (alpha + beta)`
/// to avoid cancellation.
pub fn lambda_pm(rho: f64, p: &Params) -> Result<(Complex64, Complex64)> {
    if !(rho >= 0.0) {
        return Err(Error::Domain(format!("frequency magnitude {rho} must be nonnegative")));
    }
    let alpha = 0.5 * p.mu() * rho * rho;
    let b2 = discriminant(rho, p);
    if b2 >= 0.0 {
        let b = b2.sqrt();
        Ok((Complex64::new(-alpha, b), Complex64::new(-alpha, -b)))
    } else {
        let s = alpha + (-b2).sqrt();
        Ok((
            Complex64::new(-p.sound_speed_sq() * rho * rho / s, 0.0),
            Complex64::new(-s, 0.0),
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EtbSymbol {
    pub t: f64,
    pub rho: f64,
    /// Row-major entries `[[m11, m12], [m21, m22]]`.
    pub m: [[Complex64; 2]; 2],
}

impl EtbSymbol {
    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Apply to a coefficient pair `(varrho^, v^)`.
    #[inline]
    pub fn apply(&self, r: Complex64, v: Complex64) -> (Complex64, Complex64) {
        (
            self.m[0][0] * r + self.m[0][1] * v,
            self.m[1][0] * r + self.m[1][1] * v,
        )
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &EtbSymbol) -> [[Complex64; 2]; 2] {
        let (a, b) = (&self.m, &other.m);
        let mut out = [[Complex64::default(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    }

    /// Real parts; the imaginary parts vanish for real `(t, rho)`.
    pub fn real(&self) -> [[f64; 2]; 2] {
        [
            [self.m[0][0].re, self.m[0][1].re],
            [self.m[1][0].re, self.m[1][1].re],
        ]
    }
}

/// Real entries of `e^{tB(rho)}`.
pub fn etb_real(t: f64, rho: f64, p: &Params) -> [[f64; 2]; 2] {
    let ag = p.sound_speed_sq();
    let alpha = 0.5 * p.mu() * rho * rho;
    let b2 = discriminant(rho, p);
    let z = b2 * t * t;
    // (e^{-alpha t} C, e^{-alpha t} S)
    let (ec, es) = if z.abs() < TAYLOR_THRESHOLD {
        let c = 1.0 - z / 2.0 + z * z / 24.0 - z * z * z / 720.0;
        let s = t * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0);
        let e = (-alpha * t).exp();
        (e * c, e * s)
    } else if b2 > 0.0 {
        let b = b2.sqrt();
        let e = (-alpha * t).exp();
        (e * (b * t).cos(), e * (b * t).sin() / b)
    } else {
        let beta = (-b2).sqrt();
        if beta * t < 1.0 {
            let e = (-alpha * t).exp();
            (e * (beta * t).cosh(), e * (beta * t).sinh() / beta)
        } else {
            // split into the slow and fast exponentials
            let fast = alpha + beta;
            let slow = ag * rho * rho / fast;
            let es_ = (-slow * t).exp();
            let ef = (-fast * t).exp();
            let m11 = (es_ * fast - ef * slow) / (2.0 * beta);
            let m22 = (ef * fast - es_ * slow) / (2.0 * beta);
            let s = (es_ - ef) / (2.0 * beta);
            return [[m11, -rho * s], [ag * rho * s, m22]];
        }
    };
    [[ec + alpha * es, -rho * es], [ag * rho * es, ec - alpha * es]]
}

/// `e^{tB(rho)}` with `t >= 0`.
pub fn etb_symbol(t: f64, rho: f64, p: &Params) -> EtbSymbol {
    let r = etb_real(t, rho, p);
    let c = |x: f64| Complex64::new(x, 0.0);
    EtbSymbol {
        t,
        rho,
        m: [[c(r[0][0]), c(r[0][1])], [c(r[1][0]), c(r[1][1])]],
    }
}

/// Determinant defect `|det - e^{-mu rho^2 t}|`, relative to the scale of the
/// terms whose difference forms the determinant.
pub fn det_defect(s: &EtbSymbol, p: &Params) -> f64 {
    let m = &s.m;
    let target = (-p.mu() * s.rho * s.rho * s.t).exp();
    let scale = ((m[0][0] * m[1][1]).norm() + (m[0][1] * m[1][0]).norm()).max(target);
    if scale == 0.0 {
        return 0.0;
    }
    (s.det() - target).norm() / scale
}

fn frobenius(m: &[[Complex64; 2]; 2]) -> f64 {
    m.iter().flatten().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// `max_rho |e^{(t+s)B} - e^{tB} e^{sB}| / |e^{(t+s)B}|` in the Frobenius norm.
pub fn semigroup_compose_check(t: f64, s: f64, rhos: &[f64], p: &Params) -> f64 {
    rhos.iter()
        .map(|&rho| {
            let whole = etb_symbol(t + s, rho, p);
            let prod = etb_symbol(t, rho, p).compose(&etb_symbol(s, rho, p));
            let mut diff = whole.m;
            for i in 0..2 {
                for j in 0..2 {
                    diff[i][j] -= prod[i][j];
                }
            }
            let n = frobenius(&whole.m);
            if n == 0.0 {
                frobenius(&diff)
            } else {
                frobenius(&diff) / n
            }
        })
        .fold(0.0, f64::max)
}

/// Log-spaced frequencies over `[1e-2, 10] * threshold` with the threshold itself.
pub fn default_rho_grid(p: &Params, count: usize) -> Vec<f64> {
    let thr = p.threshold();
    let mut v: Vec<f64> = (0..count)
        .map(|i| thr * 10f64.powf(-2.0 + 3.0 * i as f64 / (count.max(2) - 1) as f64))
        .collect();
    v.push(thr);
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}
