//! Nonlinear terms of the `(varrho, u, phi)` system.
//!
//! ```text
//! d_t varrho + div u = F1
//! d_t u - (mu1/2) Lap u - (mu1/2 + mu2) grad div u + a gamma grad varrho = F2
//! d_t^2 phi - Lap phi / (1 + varrho) = F3
//! ```
//!
//! Products are formed in physical space and transformed back; with
//! dealiasing enabled every transformed product is truncated by the 2/3 rule.

use std::sync::Arc;

use super::state::{check_chart, State};
use crate::error::Result;
use crate::par;
use crate::propagators::Params;
use crate::spectral::{GridSpec, SpectralField, Vector};

/// Physical constants plus the dealiasing switch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Model {
    pub params: Params,
    pub dealias: bool,
}

/// The five groups of `F2`, each a velocity-shaped field.
#[derive(Clone, Debug)]
pub struct F2Groups {
    /// `-u . grad u`
    pub advection: Vector,
    /// `(a gamma - P'(1 + varrho) / (1 + varrho)) grad varrho`
    pub pressure: Vector,
    /// `-(varrho / (1 + varrho)) [(mu1/2) Lap u + (mu1/2 + mu2) grad div u]`
    pub viscous: Vector,
    /// `(1/(1 + varrho)) [grad |grad phi|^2 / 2 - d_j (grad phi d_j phi)]`
    pub director: Vector,
    pub err2: Vector,
}

impl F2Groups {
    pub fn total(&self) -> Vector {
        std::array::from_fn(|i| {
            let mut s = self.advection[i].clone();
            for g in [&self.pressure, &self.viscous, &self.director, &self.err2] {
                s.axpy(1.0, &g[i]);
            }
            s
        })
    }
}

/// Everything one nonlinear stage of the integrator needs.
#[derive(Clone, Debug)]
pub struct Sources {
    pub f1: SpectralField,
    pub f2: Vector,
    /// `d_t u` by substitution of the momentum equation
    pub ut: Vector,
    /// `G = F3 - (varrho / (1 + varrho)) Lap phi`
    pub g: [SpectralField; 2],
}

/// Physical samples shared by all terms of one evaluation.
pub(crate) struct Phys {
    pub grid: Arc<GridSpec>,
    pub rho: Vec<f64>,
    pub drho: [Vec<f64>; 3],
    pub u: [Vec<f64>; 3],
    /// `du[i][j] = d_j u_i`
    pub du: [[Vec<f64>; 3]; 3],
    pub visc: [Vec<f64>; 3],
    pub phi: [Vec<f64>; 2],
    /// `dphi[a][j] = d_j phi_a`
    pub dphi: [[Vec<f64>; 3]; 2],
    pub inv: Vec<f64>,
}

/// `(mu1/2) Lap u + (mu1/2 + mu2) grad div u` in coefficient space.
pub fn viscous_operator(u: &Vector, p: &Params) -> Vector {
    let div = crate::spectral::helmholtz::divergence(u);
    std::array::from_fn(|i| {
        let mut v = u[i].laplacian().scaled(0.5 * p.mu1());
        v.axpy(0.5 * p.mu1() + p.mu2(), &div.derivative(i));
        v
    })
}

fn add_into(acc: &mut [f64], f: impl Fn(usize) -> f64 + Sync) {
    par::for_each_indexed_mut(acc, |i, a| *a += f(i));
}

impl Model {
    pub fn new(params: Params) -> Self {
        Self { params, dealias: true }
    }

    pub(crate) fn spec(&self, grid: &Arc<GridSpec>, vals: &[f64]) -> SpectralField {
        let f = SpectralField::from_real(grid, vals).expect("sample count matches grid");
        if self.dealias {
            f.dealiased()
        } else {
            f
        }
    }

    pub(crate) fn phys(&self, s: &State) -> Result<Phys> {
        let grid = s.grid().clone();
        let rho = s.rho.to_physical();
        s.check_density(&rho)?;
        let phi: [Vec<f64>; 2] = std::array::from_fn(|a| s.phi[a].to_physical());
        check_chart(&grid, &phi[1])?;
        let inv = par::map_indexed(rho.len(), |i| 1.0 / (1.0 + rho[i]));
        let visc = viscous_operator(&s.u, &self.params);
        Ok(Phys {
            drho: std::array::from_fn(|j| s.rho.derivative(j).to_physical()),
            u: std::array::from_fn(|i| s.u[i].to_physical()),
            du: std::array::from_fn(|i| std::array::from_fn(|j| s.u[i].derivative(j).to_physical())),
            visc: std::array::from_fn(|i| visc[i].to_physical()),
            dphi: std::array::from_fn(|a| std::array::from_fn(|j| s.phi[a].derivative(j).to_physical())),
            grid,
            rho,
            phi,
            inv,
        })
    }

    /// `F1 = -u . grad varrho - varrho div u`, formed as `-div(varrho u)`.
    pub fn f1(&self, s: &State) -> Result<SpectralField> {
        let p = self.phys(s)?;
        Ok(self.f1_from(&p))
    }

    fn f1_from(&self, p: &Phys) -> SpectralField {
        let mut out = SpectralField::zeros(&p.grid, crate::spectral::Parity::Real);
        for i in 0..3 {
            let flux = par::map_indexed(p.rho.len(), |k| p.rho[k] * p.u[i][k]);
            out.axpy(-1.0, &self.spec(&p.grid, &flux).derivative(i));
        }
        out
    }

    /// Pointwise physical parts of the first three groups.
    fn local_groups(&self, p: &Phys) -> [[Vec<f64>; 3]; 3] {
        let ag = self.params.sound_speed_sq();
        let gm2 = self.params.gamma() - 2.0;
        let n = p.rho.len();
        let adv = std::array::from_fn(|i| {
            par::map_indexed(n, |k| -(p.u[0][k] * p.du[i][0][k] + p.u[1][k] * p.du[i][1][k] + p.u[2][k] * p.du[i][2][k]))
        });
        let press = std::array::from_fn(|i| {
            par::map_indexed(n, |k| -ag * (gm2 * p.rho[k].ln_1p()).exp_m1() * p.drho[i][k])
        });
        let visc = std::array::from_fn(|i| par::map_indexed(n, |k| -p.rho[k] * p.inv[k] * p.visc[i][k]));
        [adv, press, visc]
    }

    /// Spectral `grad(s/2) - div T` for a scalar `s` and symmetric tensor `T`.
    fn stress_divergence(&self, p: &Phys, s: &[f64], t: &[[Vec<f64>; 3]; 3]) -> [Vec<f64>; 3] {
        let sh = self.spec(&p.grid, s);
        let th: [[Option<SpectralField>; 3]; 3] = {
            let mut m: [[Option<SpectralField>; 3]; 3] = Default::default();
            for i in 0..3 {
                for j in i..3 {
                    m[i][j] = Some(self.spec(&p.grid, &t[i][j]));
                }
            }
            m
        };
        std::array::from_fn(|i| {
            let mut q = sh.derivative(i).scaled(0.5);
            for j in 0..3 {
                let tij = th[i.min(j)][i.max(j)].as_ref().expect("upper triangle filled");
                q.axpy(-1.0, &tij.derivative(j));
            }
            q.to_physical()
        })
    }

    /// Director stress with weight `w` on the `phi1` products: `w = 1` gives
    /// the plain stress, `w = sin^2 phi2` the bracket of `Err2`.
    fn director_bracket(&self, p: &Phys, weight: Option<&[f64]>) -> [Vec<f64>; 3] {
        let n = p.rho.len();
        let w = |k: usize| weight.map_or(1.0, |w| w[k]);
        let s = match weight {
            None => par::map_indexed(n, |k| {
                (0..2).map(|a| (0..3).map(|j| p.dphi[a][j][k].powi(2)).sum::<f64>()).sum()
            }),
            Some(_) => par::map_indexed(n, |k| w(k) * (0..3).map(|j| p.dphi[0][j][k].powi(2)).sum::<f64>()),
        };
        let mut t: [[Vec<f64>; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in i..3 {
                t[i][j] = match weight {
                    None => par::map_indexed(n, |k| {
                        p.dphi[0][i][k] * p.dphi[0][j][k] + p.dphi[1][i][k] * p.dphi[1][j][k]
                    }),
                    Some(_) => par::map_indexed(n, |k| w(k) * p.dphi[0][i][k] * p.dphi[0][j][k]),
                };
            }
        }
        self.stress_divergence(p, &s, &t)
    }

    fn sin2_phi2(p: &Phys) -> Vec<f64> {
        par::map_indexed(p.rho.len(), |k| p.phi[1][k].sin().powi(2))
    }

    /// All five groups of `F2`, each transformed separately.
    pub fn f2_groups(&self, s: &State) -> Result<F2Groups> {
        let p = self.phys(s)?;
        let g = &p.grid;
        let [adv, press, visc] = self.local_groups(&p);
        let n = p.rho.len();
        let dir = self.director_bracket(&p, None);
        let sin2 = Self::sin2_phi2(&p);
        let e2 = self.director_bracket(&p, Some(&sin2));
        let to = |v: &[Vec<f64>; 3], sign: f64, weighted: bool| -> Vector {
            std::array::from_fn(|i| {
                if weighted {
                    let w = par::map_indexed(n, |k| sign * p.inv[k] * v[i][k]);
                    self.spec(g, &w)
                } else {
                    self.spec(g, &v[i])
                }
            })
        };
        Ok(F2Groups {
            advection: to(&adv, 1.0, false),
            pressure: to(&press, 1.0, false),
            viscous: to(&visc, 1.0, false),
            director: to(&dir, 1.0, true),
            err2: to(&e2, -1.0, true),
        })
    }

    /// `F2` as one field per component, with all groups summed before the
    /// final transform.
    pub fn f2(&self, s: &State) -> Result<Vector> {
        let p = self.phys(s)?;
        Ok(self.f2_from(&p))
    }

    fn f2_from(&self, p: &Phys) -> Vector {
        let n = p.rho.len();
        let sin2 = Self::sin2_phi2(p);
        // merged bracket: plain stress minus the sin^2-weighted phi1 stress
        let s = par::map_indexed(n, |k| {
            let g1: f64 = (0..3).map(|j| p.dphi[0][j][k].powi(2)).sum();
            let g2: f64 = (0..3).map(|j| p.dphi[1][j][k].powi(2)).sum();
            (1.0 - sin2[k]) * g1 + g2
        });
        let mut t: [[Vec<f64>; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in i..3 {
                t[i][j] = par::map_indexed(n, |k| {
                    (1.0 - sin2[k]) * p.dphi[0][i][k] * p.dphi[0][j][k] + p.dphi[1][i][k] * p.dphi[1][j][k]
                });
            }
        }
        let bracket = self.stress_divergence(p, &s, &t);
        let mut local = self.local_groups(p);
        std::array::from_fn(|i| {
            let [adv, press, visc] = &mut local;
            add_into(&mut adv[i], |k| press[i][k] + visc[i][k] + p.inv[k] * bracket[i][k]);
            self.spec(&p.grid, &adv[i])
        })
    }

    /// `d_t u = (mu1/2) Lap u + (mu1/2 + mu2) grad div u - a gamma grad varrho + F2`.
    pub fn time_derivative_u(&self, s: &State) -> Result<Vector> {
        let f2 = self.f2(s)?;
        Ok(self.ut_from(s, &f2))
    }

    fn ut_from(&self, s: &State, f2: &Vector) -> Vector {
        let v = viscous_operator(&s.u, &self.params);
        let ag = self.params.sound_speed_sq();
        std::array::from_fn(|i| {
            let mut out = v[i].clone();
            out.axpy(-ag, &s.rho.derivative(i));
            out.axpy(1.0, &f2[i]);
            out
        })
    }

    /// `F3`, and `G = F3 - (varrho/(1+varrho)) Lap phi` when `with_defect`.
    fn f3_phys(&self, s: &State, p: &Phys, ut: &Vector, with_defect: bool) -> [SpectralField; 2] {
        let n = p.rho.len();
        let g = &p.grid;
        let ut_p: [Vec<f64>; 3] = std::array::from_fn(|i| ut[i].to_physical());
        let phit: [Vec<f64>; 2] = std::array::from_fn(|a| s.phit[a].to_physical());
        let dphit: [[Vec<f64>; 3]; 2] =
            std::array::from_fn(|a| std::array::from_fn(|j| s.phit[a].derivative(j).to_physical()));
        let dot = |v: &[Vec<f64>; 3], w: &[Vec<f64>; 3], k: usize| v[0][k] * w[0][k] + v[1][k] * w[1][k] + v[2][k] * w[2][k];
        // q_a = u . grad phi_a and its gradient
        let q: [Vec<f64>; 2] = std::array::from_fn(|a| par::map_indexed(n, |k| dot(&p.u, &p.dphi[a], k)));
        let dq: [[Vec<f64>; 3]; 2] = std::array::from_fn(|a| {
            let qh = self.spec(g, &q[a]);
            std::array::from_fn(|j| qh.derivative(j).to_physical())
        });
        let lap: Option<[Vec<f64>; 2]> = with_defect.then(|| std::array::from_fn(|a| s.phi[a].laplacian().to_physical()));
        std::array::from_fn(|a| {
            let vals = par::map_indexed(n, |k| {
                let transport = -dot(&ut_p, &p.dphi[a], k) - 2.0 * dot(&p.u, &dphit[a], k) - dot(&p.u, &dq[a], k);
                let m1 = phit[0][k] + q[0][k];
                let m2 = phit[1][k] + q[1][k];
                let inv = p.inv[k];
                let g12: f64 = (0..3).map(|j| p.dphi[0][j][k] * p.dphi[1][j][k]).sum();
                let g11: f64 = (0..3).map(|j| p.dphi[0][j][k].powi(2)).sum();
                let phi2 = p.phi[1][k];
                let err = if a == 0 {
                    2.0 * phi2.tan() * (m1 * m2 - g12 * inv)
                } else {
                    0.5 * (2.0 * phi2).sin() * (-m1 * m1 + g11 * inv)
                };
                let defect = lap.as_ref().map_or(0.0, |l| -p.rho[k] * inv * l[a][k]);
                transport + err + defect
            });
            self.spec(g, &vals)
        })
    }

    /// `F3 = -d_t u . grad phi - 2 u . grad d_t phi - u . grad(u . grad phi) + Err3`
    /// with `d_t u` supplied by the caller.
    pub fn f3(&self, s: &State, ut: &Vector) -> Result<[SpectralField; 2]> {
        let p = self.phys(s)?;
        Ok(self.f3_phys(s, &p, ut, false))
    }

    /// `F1`, `F2`, `d_t u` and `G` from one set of physical samples.
    pub fn sources(&self, s: &State) -> Result<Sources> {
        let p = self.phys(s)?;
        let f1 = self.f1_from(&p);
        let f2 = self.f2_from(&p);
        let ut = self.ut_from(s, &f2);
        let g = self.f3_phys(s, &p, &ut, true);
        Ok(Sources { f1, f2, ut, g })
    }
}
