//! Strang splitting: exact linear flow for a half step, explicit midpoint
//! for the nonlinear sources over a full step, exact linear flow again.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{Model, State};
use crate::par;
use crate::propagators::symbol::etb_real;
use crate::propagators::Params;
use crate::spectral::{helmholtz_join, helmholtz_split, GridSpec, SpectralField};

/// Per-mode multipliers of the linear flow over a fixed time `tau`.
///
/// `(varrho, v)` with `v = |nabla|^{-1} div u` evolves by `e^{tau B}`, the
/// solenoidal part `w` by the heat flow `e^{tau (mu1/2) Lap}`, and `phi` by the
/// free wave equation, written as the rotation of `(phi, d_t phi)` that
/// `Phi -> e^{i tau |nabla|} Phi` induces.
#[derive(Clone, Debug)]
pub struct LinearFlow {
    tau: f64,
    etb: Vec<[[f64; 2]; 2]>,
    heat: Vec<f64>,
    /// `(cos(tau |xi|), sin(tau |xi|) / |xi|, |xi| sin(tau |xi|))`
    wave: Vec<[f64; 3]>,
}

impl LinearFlow {
    pub fn new(g: &GridSpec, p: &Params, tau: f64) -> Self {
        let n = g.len();
        let etb = par::map_indexed(n, |k| {
            let r = (0..3).map(|j| g.xi_odd(k, j).powi(2)).sum::<f64>().sqrt();
            etb_real(tau, r, p)
        });
        let heat = par::map_indexed(n, |k| (-0.5 * p.mu1() * g.abs_xi(k).powi(2) * tau).exp());
        let wave = par::map_indexed(n, |k| {
            let r = g.abs_xi(k);
            let (s, c) = (r * tau).sin_cos();
            let sinc = if r > 0.0 { s / r } else { tau };
            [c, sinc, r * s]
        });
        Self { tau, etb, heat, wave }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn apply(&self, s: &State) -> State {
        let g = s.grid().clone();
        let (v, w) = helmholtz_split(&s.u);
        let (rc, vc) = (s.rho.coeffs(), v.coeffs());
        let pairs: Vec<(Complex64, Complex64)> = par::map_indexed(g.len(), |k| {
            let m = &self.etb[k];
            (m[0][0] * rc[k] + m[0][1] * vc[k], m[1][0] * rc[k] + m[1][1] * vc[k])
        });
        let rho = SpectralField::from_coeffs(&g, pairs.iter().map(|p| p.0).collect(), s.rho.parity()).expect("grid");
        let v = SpectralField::from_coeffs(&g, pairs.iter().map(|p| p.1).collect(), v.parity()).expect("grid");
        let w: [SpectralField; 3] = std::array::from_fn(|i| w[i].multiply_real(|k| self.heat[k]));
        let u = helmholtz_join(&v, &w);
        let mut phi = s.phi.clone();
        let mut phit = s.phit.clone();
        for a in 0..2 {
            let (pc, qc) = (s.phi[a].coeffs(), s.phit[a].coeffs());
            let new: Vec<(Complex64, Complex64)> = par::map_indexed(g.len(), |k| {
                let [c, sinc, rs] = self.wave[k];
                (c * pc[k] + sinc * qc[k], -rs * pc[k] + c * qc[k])
            });
            phi[a] = SpectralField::from_coeffs(&g, new.iter().map(|p| p.0).collect(), s.phi[a].parity()).expect("grid");
            phit[a] = SpectralField::from_coeffs(&g, new.iter().map(|p| p.1).collect(), s.phit[a].parity()).expect("grid");
        }
        State {
            t: s.t + self.tau,
            rho,
            u,
            phi,
            phit,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Integrator {
    pub model: Model,
    dt: f64,
    half: LinearFlow,
    /// Skip the nonlinear stage entirely.
    pub forced_linear: bool,
}

impl Integrator {
    pub fn new(model: Model, grid: &GridSpec, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Config(format!("dt = {dt} must be positive")));
        }
        Ok(Self {
            half: LinearFlow::new(grid, &model.params, 0.5 * dt),
            model,
            dt,
            forced_linear: false,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// `y + h N(y)` where `N = (F1, F2, 0, G)`.
    fn nonlinear_euler(&self, base: &State, at: &State, h: f64) -> Result<State> {
        let src = self.model.sources(at)?;
        let mut out = base.clone();
        out.rho.axpy(h, &src.f1);
        for i in 0..3 {
            out.u[i].axpy(h, &src.f2[i]);
        }
        for a in 0..2 {
            out.phit[a].axpy(h, &src.g[a]);
        }
        Ok(out)
    }

    fn nonlinear_midpoint(&self, s: &State) -> Result<State> {
        let mid = self.nonlinear_euler(s, s, 0.5 * self.dt)?;
        self.nonlinear_euler(s, &mid, self.dt)
    }

    pub fn step(&self, s: &State) -> Result<State> {
        let a = self.half.apply(s);
        let b = if self.forced_linear {
            a
        } else {
            self.nonlinear_midpoint(&a).map_err(|e| at_time(e, s.t))?
        };
        let mut out = self.half.apply(&b);
        out.t = s.t + self.dt;
        check_finite(&out)?;
        Ok(out)
    }
}

fn at_time(e: Error, t: f64) -> Error {
    match e {
        Error::Model(m) => Error::Model(format!("t = {t}: {m}")),
        other => other,
    }
}

pub fn check_finite(s: &State) -> Result<()> {
    const NAMES: [&str; 8] = ["varrho", "u1", "u2", "u3", "phi1", "phi2", "phit1", "phit2"];
    for (k, f) in s.fields().iter().enumerate() {
        if f.coeffs().iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Divergence {
                t: s.t,
                what: format!("{} has non-finite coefficients", NAMES[k]),
            });
        }
    }
    Ok(())
}
