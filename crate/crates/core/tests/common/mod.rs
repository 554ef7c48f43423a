//! Manufactured trigonometric states with closed-form derivatives.
#![allow(dead_code)]

use std::sync::Arc;

use chlc::model::State;
use chlc::spectral::{GridSpec, SpectralField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `sum_m A_m cos(m . x + theta_m)` with integer wave vectors on a `2 pi` box.
#[derive(Clone, Debug, Default)]
pub struct Trig {
    pub modes: Vec<([f64; 3], f64, f64)>,
}

impl Trig {
    pub fn random(rng: &mut ChaCha8Rng, amp: f64, count: usize, kmax: i32) -> Self {
        let modes = (0..count)
            .map(|_| {
                let m = std::array::from_fn(|_| rng.random_range(-kmax..=kmax) as f64);
                (m, amp * rng.random_range(-1.0..1.0), rng.random_range(0.0..std::f64::consts::TAU))
            })
            .collect();
        Self { modes }
    }

    pub fn value(&self, x: [f64; 3]) -> f64 {
        self.modes.iter().map(|(m, a, th)| a * (dot(m, &x) + th).cos()).sum()
    }

    pub fn grad(&self, x: [f64; 3]) -> [f64; 3] {
        let mut g = [0.0; 3];
        for (m, a, th) in &self.modes {
            let s = (dot(m, &x) + th).sin();
            for j in 0..3 {
                g[j] -= a * m[j] * s;
            }
        }
        g
    }

    pub fn hessian(&self, x: [f64; 3]) -> [[f64; 3]; 3] {
        let mut h = [[0.0; 3]; 3];
        for (m, a, th) in &self.modes {
            let c = (dot(m, &x) + th).cos();
            for i in 0..3 {
                for j in 0..3 {
                    h[i][j] -= a * m[i] * m[j] * c;
                }
            }
        }
        h
    }

    pub fn laplacian(&self, x: [f64; 3]) -> f64 {
        let h = self.hessian(x);
        h[0][0] + h[1][1] + h[2][2]
    }

    pub fn field(&self, g: &Arc<GridSpec>) -> SpectralField {
        SpectralField::from_fn(g, |x| self.value(x))
    }

    /// Same function with the constant mode removed.
    pub fn mean_free(mut self) -> Self {
        self.modes.retain(|(m, _, _)| m.iter().any(|&v| v != 0.0));
        self
    }
}

pub fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Closed-form description of a state.
#[derive(Clone, Debug)]
pub struct Manufactured {
    pub rho: Trig,
    pub u: [Trig; 3],
    pub phi: [Trig; 2],
    pub phit: [Trig; 2],
}

impl Manufactured {
    pub fn random(seed: u64, eps: f64, kmax: i32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = |rng: &mut ChaCha8Rng| Trig::random(rng, eps, 3, kmax).mean_free();
        Self {
            rho: t(&mut rng),
            u: std::array::from_fn(|_| t(&mut rng)),
            phi: std::array::from_fn(|_| t(&mut rng)),
            phit: std::array::from_fn(|_| t(&mut rng)),
        }
    }

    pub fn state(&self, g: &Arc<GridSpec>) -> State {
        let mut s = State::zeros(g);
        s.rho = self.rho.field(g);
        for i in 0..3 {
            s.u[i] = self.u[i].field(g);
        }
        for a in 0..2 {
            s.phi[a] = self.phi[a].field(g);
            s.phit[a] = self.phit[a].field(g);
        }
        s
    }
}

/// Max pointwise difference over the grid, relative to the oracle's max.
pub fn rel_sup_error(g: &GridSpec, f: &SpectralField, oracle: impl Fn([f64; 3]) -> f64) -> (f64, f64) {
    let v = f.to_physical();
    let mut err: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for (k, val) in v.iter().enumerate() {
        let o = oracle(g.position(k));
        err = err.max((val - o).abs());
        scale = scale.max(o.abs());
    }
    (err, scale)
}

/// `exp(t B)` for `B = [[0, -rho], [a gamma rho, -mu rho^2]]` by a
/// 30-term Taylor step of size `t / 2^s` composed `2^s` times.
pub fn etb_taylor(t: f64, rho: f64, ag: f64, mu: f64) -> [[f64; 2]; 2] {
    let b = [[0.0, -rho], [ag * rho, -mu * rho * rho]];
    let norm = b.iter().flatten().map(|x: &f64| x.abs()).sum::<f64>() * t;
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let h = t / 2f64.powi(s);
    let mul = |x: [[f64; 2]; 2], y: [[f64; 2]; 2]| -> [[f64; 2]; 2] {
        std::array::from_fn(|i| std::array::from_fn(|j| x[i][0] * y[0][j] + x[i][1] * y[1][j]))
    };
    let hb = [[0.0, -rho * h], [ag * rho * h, -mu * rho * rho * h]];
    let mut term = [[1.0, 0.0], [0.0, 1.0]];
    let mut sum = term;
    for k in 1..=30 {
        term = mul(term, hb);
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v /= k as f64;
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                sum[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..s {
        sum = mul(sum, sum);
    }
    sum
}
