//! Energy functionals and dissipation rates.

use std::fmt::Write as _;
use std::path::Path;

use super::nonlinear::Model;
use super::state::State;
use crate::error::{Error, Result};
use crate::par;
use crate::spectral::{helmholtz::divergence, GridSpec, SpectralField};

/// Multi-indices `n` in `N^3` with `lo <= |n| <= hi`.
pub fn multi_indices(lo: usize, hi: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for total in lo..=hi {
        for a in (0..=total).rev() {
            for b in (0..=total - a).rev() {
                out.push([a, b, total - a - b]);
            }
        }
    }
    out
}

pub fn derivative_multi(f: &SpectralField, n: [usize; 3]) -> SpectralField {
    let mut out = f.clone();
    for (axis, &k) in n.iter().enumerate() {
        for _ in 0..k {
            out = out.derivative(axis);
        }
    }
    out
}

fn weighted_sq(f: &SpectralField, w: &[f64], dv: f64) -> f64 {
    let v = f.to_physical();
    dv * par::sum_by(v.len(), |k| w[k] * v[k] * v[k])
}

/// Instantaneous dissipation rates summed over `|n| <= order`:
/// `((mu1/2) ||d^n grad u||^2, (mu1/2 + mu2) ||d^n div u||^2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dissipation {
    pub grad_u: f64,
    pub div_u: f64,
}

impl Dissipation {
    pub fn total(&self) -> f64 {
        self.grad_u + self.div_u
    }
}

impl Model {
    /// `E0 = sum_{|n| <= N} 1/2 int a gamma (1 + varrho)^(gamma - 2) |d^n varrho|^2 + (1 + varrho) |d^n u|^2`.
    pub fn energy_e0(&self, s: &State, order: usize) -> Result<f64> {
        let g = s.grid().clone();
        let rho = s.rho.to_physical();
        s.check_density(&rho)?;
        let ag = self.params.sound_speed_sq();
        let gm2 = self.params.gamma() - 2.0;
        let wr = par::map_indexed(rho.len(), |k| ag * (gm2 * rho[k].ln_1p()).exp());
        let wu = par::map_indexed(rho.len(), |k| 1.0 + rho[k]);
        let dv = g.cell_volume();
        let mut e = 0.0;
        for n in multi_indices(0, order) {
            e += weighted_sq(&derivative_multi(&s.rho, n), &wr, dv);
            for i in 0..3 {
                e += weighted_sq(&derivative_multi(&s.u[i], n), &wu, dv);
            }
        }
        Ok(0.5 * e)
    }

    pub fn dissipation(&self, s: &State, order: usize) -> Dissipation {
        let w = multi_weight(s.grid(), order);
        self.dissipation_weighted(s, &w)
    }

    /// Same as [`Model::dissipation`] with the weight from [`multi_weight`]
    /// precomputed.
    pub fn dissipation_weighted(&self, s: &State, w: &[f64]) -> Dissipation {
        let g = s.grid().clone();
        let div = divergence(&s.u);
        let dc = div.coeffs();
        let uc: [&[_]; 3] = std::array::from_fn(|i| s.u[i].coeffs());
        let grad_u = par::sum_by(g.len(), |k| {
            let x2: f64 = (0..3).map(|j| g.xi_odd(k, j).powi(2)).sum();
            w[k] * x2 * (0..3).map(|i| uc[i][k].norm_sqr()).sum::<f64>()
        });
        let div_u = par::sum_by(g.len(), |k| w[k] * dc[k].norm_sqr());
        Dissipation {
            grad_u: 0.5 * self.params.mu1() * g.volume() * grad_u,
            div_u: (0.5 * self.params.mu1() + self.params.mu2()) * g.volume() * div_u,
        }
    }
}

/// `sum_{|n| <= N} prod_i xi_i^{2 n_i}`, the symbol of `sum_n ||d^n f||^2`.
pub fn multi_weight(g: &GridSpec, order: usize) -> Vec<f64> {
    let idx = multi_indices(0, order);
    par::map_indexed(g.len(), |k| {
        let x: [f64; 3] = std::array::from_fn(|j| g.xi_odd(k, j).powi(2));
        idx.iter()
            .map(|n| x[0].powi(n[0] as i32) * x[1].powi(n[1] as i32) * x[2].powi(n[2] as i32))
            .sum()
    })
}

/// `E1 = 1/2 sum_{|n| = N} int (1 + varrho) |d^n d_t phi|^2 + |d^n grad phi|^2`.
pub fn energy_e1(s: &State, order: usize) -> f64 {
    let g = s.grid().clone();
    let rho = s.rho.to_physical();
    let w = par::map_indexed(rho.len(), |k| 1.0 + rho[k]);
    let dv = g.cell_volume();
    let mut e = 0.0;
    for n in multi_indices(order, order) {
        for a in 0..2 {
            e += weighted_sq(&derivative_multi(&s.phit[a], n), &w, dv);
            let pn = derivative_multi(&s.phi[a], n);
            for j in 0..3 {
                e += pn.derivative(j).l2_norm().powi(2);
            }
        }
    }
    0.5 * e
}

/// `1/2 int (1 + varrho) |d_t phi|^2 + |grad phi|^2`.
pub fn phi_energy(s: &State) -> f64 {
    energy_e1(s, 0)
}

/// One monitor sample.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LedgerRow {
    pub t: f64,
    pub e0: f64,
    pub e1: f64,
    /// accumulated `int (mu1/2) ||grad u||^2`-type dissipation
    pub diss_grad_u: f64,
    /// accumulated `int (mu1/2 + mu2) ||div u||^2`-type dissipation
    pub diss_div_u: f64,
    pub phi_energy: f64,
    /// `E0(t) + accumulated dissipation - E0(0)`
    pub balance_residual: f64,
    pub profile_weighted_norm: f64,
}

pub const LEDGER_HEADER: &str = "t,E0,E1,diss_grad_u,diss_div_u,phi_energy,balance_residual,profile_weighted_norm";

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EnergyLedger {
    pub rows: Vec<LedgerRow>,
}

impl EnergyLedger {
    pub fn push(&mut self, row: LedgerRow) {
        self.rows.push(row);
    }

    /// Both dissipation accumulators are nondecreasing.
    pub fn accumulators_monotone(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].diss_grad_u >= w[0].diss_grad_u && w[1].diss_div_u >= w[0].diss_div_u)
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("{LEDGER_HEADER}\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                r.t, r.e0, r.e1, r.diss_grad_u, r.diss_div_u, r.phi_energy, r.balance_residual, r.profile_weighted_norm
            );
        }
        s
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == LEDGER_HEADER => {}
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("expected header `{LEDGER_HEADER}`"),
                })
            }
        }
        let mut rows = Vec::new();
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let v: Vec<f64> = line
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })?;
            if v.len() != 8 {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected 8 columns, got {}", v.len()),
                });
            }
            rows.push(LedgerRow {
                t: v[0],
                e0: v[1],
                e1: v[2],
                diss_grad_u: v[3],
                diss_div_u: v[4],
                phi_energy: v[5],
                balance_residual: v[6],
                profile_weighted_norm: v[7],
            });
        }
        Ok(Self { rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagators::Params;
    use crate::spectral::make_grid;

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indices(0, 2).len(), 10);
        assert_eq!(multi_indices(2, 2).len(), 6);
        assert_eq!(multi_indices(0, 0), vec![[0, 0, 0]]);
    }

    #[test]
    fn equilibrium_has_no_energy() {
        let g = make_grid(8, 6.0).unwrap();
        let s = State::zeros(&g);
        let m = Model::new(Params::new(1.5, 1.4, 1.0, 1.0).unwrap());
        assert_eq!(m.energy_e0(&s, 2).unwrap(), 0.0);
        assert_eq!(energy_e1(&s, 2), 0.0);
        assert_eq!(m.dissipation(&s, 2).total(), 0.0);
    }

    #[test]
    fn quadratic_energy_at_zero_density() {
        let g = make_grid(16, 2.0 * std::f64::consts::PI).unwrap();
        let mut s = State::zeros(&g);
        s.u[1] = SpectralField::from_fn(&g, |x| 0.1 * x[0].sin());
        s.rho = SpectralField::from_fn(&g, |x| 1e-9 * x[2].cos());
        let m = Model::new(Params::new(1.5, 1.4, 1.0, 1.0).unwrap());
        // order 0: (a gamma ||varrho||^2 + ||u||^2) / 2 up to cubic terms
        let e = m.energy_e0(&s, 0).unwrap();
        let q = 0.5 * (2.1 * s.rho.l2_norm().powi(2) + s.u[1].l2_norm().powi(2));
        assert!((e - q).abs() < 1e-8 * q);
    }

    #[test]
    fn weighted_dissipation_matches_derivatives() {
        let g = make_grid(16, 5.0).unwrap();
        let mut s = State::zeros(&g);
        s.u[0] = SpectralField::from_fn(&g, |x| (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])).exp());
        s.u[2] = SpectralField::from_fn(&g, |x| 0.3 * (2.0 * std::f64::consts::PI * x[1] / 5.0).sin());
        let m = Model::new(Params::new(1.5, 1.4, 0.8, 0.3).unwrap());
        let div = divergence(&s.u);
        let (mut gu, mut du) = (0.0, 0.0);
        for n in multi_indices(0, 2) {
            for i in 0..3 {
                let un = derivative_multi(&s.u[i], n);
                for j in 0..3 {
                    gu += un.derivative(j).l2_norm().powi(2);
                }
            }
            du += derivative_multi(&div, n).l2_norm().powi(2);
        }
        let d = m.dissipation(&s, 2);
        assert!((d.grad_u - 0.4 * gu).abs() < 1e-12 * gu);
        assert!((d.div_u - 0.7 * du).abs() < 1e-12 * du);
    }

    #[test]
    fn ledger_csv_round_trip() {
        let mut l = EnergyLedger::default();
        l.push(LedgerRow { t: 0.0, e0: 1.0, ..Default::default() });
        l.push(LedgerRow { t: 0.5, e0: 0.9, diss_grad_u: 0.1, ..Default::default() });
        assert!(l.to_csv().starts_with(LEDGER_HEADER));
        assert_eq!(EnergyLedger::from_csv(&l.to_csv()).unwrap(), l);
        assert!(l.accumulators_monotone());
    }
}
