//! Defect of the director equation `rho d'' - Lap d = (-rho |d'|^2 + |grad d|^2) d`
//! for a state of the angle system, with `'` the material derivative.

use super::director::{director, hessian, jacobian};
use super::nonlinear::Model;
use super::state::State;
use crate::error::Result;
use crate::par;
use crate::spectral::{field::physical_l2, SpectralField};

impl Model {
    /// `||rho d'' - Lap d - (-rho |d'|^2 + |grad d|^2) d||_2`.
    ///
    /// `d_t^2 phi` comes from the angle equation; `perturb` is added to it to
    /// probe the sensitivity of the defect. The director, its Laplacian and
    /// gradient are built directly from `d(phi)`; the material derivatives by
    /// the chain rule.
    pub fn cross_formulation_residual(&self, s: &State, perturb: Option<&[SpectralField; 2]>) -> Result<f64> {
        let g = s.grid().clone();
        let n = g.len();
        let ut = self.time_derivative_u(s)?;
        let f3 = self.f3(s, &ut)?;
        let rho = s.rho.to_physical();
        let inv: Vec<f64> = rho.iter().map(|r| 1.0 / (1.0 + r)).collect();
        let phi: [Vec<f64>; 2] = std::array::from_fn(|a| s.phi[a].to_physical());
        let phitt: [Vec<f64>; 2] = std::array::from_fn(|a| {
            let lap = s.phi[a].laplacian().to_physical();
            let mut f = f3[a].to_physical();
            if let Some(p) = perturb {
                let e = p[a].to_physical();
                par::for_each_indexed_mut(&mut f, |k, v| *v += e[k]);
            }
            par::map_indexed(n, |k| lap[k] * inv[k] + f[k])
        });
        let u: [Vec<f64>; 3] = std::array::from_fn(|i| s.u[i].to_physical());
        let utp: [Vec<f64>; 3] = std::array::from_fn(|i| ut[i].to_physical());
        let grad = |f: &SpectralField| -> [Vec<f64>; 3] { std::array::from_fn(|j| f.derivative(j).to_physical()) };
        let dot = |a: &[Vec<f64>; 3], b: &[Vec<f64>; 3], k: usize| a[0][k] * b[0][k] + a[1][k] * b[1][k] + a[2][k] * b[2][k];
        let mut dd: [Vec<f64>; 2] = Default::default();
        let mut mat: [Vec<f64>; 2] = Default::default();
        for a in 0..2 {
            let dphi = grad(&s.phi[a]);
            let dphit = grad(&s.phit[a]);
            let phit = s.phit[a].to_physical();
            // material derivative m = phi_t + u . grad phi, then m' = d_t m + u . grad m
            let m = par::map_indexed(n, |k| phit[k] + dot(&u, &dphi, k));
            let dm = grad(&SpectralField::from_real(&g, &m)?);
            dd[a] = par::map_indexed(n, |k| {
                phitt[a][k] + dot(&utp, &dphi, k) + dot(&u, &dphit, k) + dot(&u, &dm, k)
            });
            mat[a] = m;
        }
        let dvec: [Vec<f64>; 3] = {
            let pts: Vec<[f64; 3]> = par::map_indexed(n, |k| director(phi[0][k], phi[1][k]));
            std::array::from_fn(|c| pts.iter().map(|p| p[c]).collect())
        };
        let dhat: [SpectralField; 3] = std::array::from_fn(|c| SpectralField::from_real(&g, &dvec[c]).expect("grid"));
        let lap_d: [Vec<f64>; 3] = std::array::from_fn(|c| dhat[c].laplacian().to_physical());
        let grad_d: [[Vec<f64>; 3]; 3] = std::array::from_fn(|c| grad(&dhat[c]));
        let res: [Vec<f64>; 3] = std::array::from_fn(|c| {
            par::map_indexed(n, |k| {
                let (a, b) = (phi[0][k], phi[1][k]);
                let j = jacobian(a, b);
                let h = hessian(a, b);
                let (m1, m2) = (mat[0][k], mat[1][k]);
                let dot_d: [f64; 3] = std::array::from_fn(|q| j[0][q] * m1 + j[1][q] * m2);
                let ddot = j[0][c] * dd[0][k] + j[1][c] * dd[1][k] + h[0][c] * m1 * m1 + 2.0 * h[1][c] * m1 * m2 + h[2][c] * m2 * m2;
                let r = 1.0 + rho[k];
                let speed2: f64 = dot_d.iter().map(|x| x * x).sum();
                let gd2: f64 = (0..3).map(|q| dot(&grad_d[q], &grad_d[q], k)).sum();
                r * ddot - lap_d[c][k] - (-r * speed2 + gd2) * dvec[c][k]
            })
        });
        Ok((0..3).map(|c| physical_l2(&g, &res[c]).powi(2)).sum::<f64>().sqrt())
    }
}
