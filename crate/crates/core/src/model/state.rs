use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::spectral::{GridSpec, Parity, SpectralField};

/// Chart margin: `|phi_2|` must stay below `pi/2 - CHART_MARGIN`.
pub const CHART_MARGIN: f64 = 0.1;

/// Solution `(varrho, u, phi, d_t phi)` at time `t`, with `varrho = rho - 1`.
#[derive(Clone, Debug)]
pub struct State {
    pub t: f64,
    pub rho: SpectralField,
    pub u: [SpectralField; 3],
    pub phi: [SpectralField; 2],
    pub phit: [SpectralField; 2],
}

impl State {
    pub fn zeros(grid: &Arc<GridSpec>) -> Self {
        let z = SpectralField::zeros(grid, Parity::Real);
        Self {
            t: 0.0,
            rho: z.clone(),
            u: [z.clone(), z.clone(), z.clone()],
            phi: [z.clone(), z.clone()],
            phit: [z.clone(), z],
        }
    }

    pub fn grid(&self) -> &Arc<GridSpec> {
        self.rho.grid()
    }

    /// The eight fields in snapshot order.
    pub fn fields(&self) -> [&SpectralField; 8] {
        [
            &self.rho, &self.u[0], &self.u[1], &self.u[2], &self.phi[0], &self.phi[1], &self.phit[0], &self.phit[1],
        ]
    }

    pub fn fields_mut(&mut self) -> [&mut SpectralField; 8] {
        let [u0, u1, u2] = &mut self.u;
        let [p0, p1] = &mut self.phi;
        let [q0, q1] = &mut self.phit;
        [&mut self.rho, u0, u1, u2, p0, p1, q0, q1]
    }

    /// Rebuild from the eight fields in snapshot order.
    pub fn from_fields(t: f64, f: [SpectralField; 8]) -> Self {
        let [rho, u0, u1, u2, p0, p1, q0, q1] = f;
        Self {
            t,
            rho,
            u: [u0, u1, u2],
            phi: [p0, p1],
            phit: [q0, q1],
        }
    }

    /// `1 + varrho > 0` on the grid.
    pub fn check_density(&self, rho_phys: &[f64]) -> Result<()> {
        if let Some(i) = rho_phys.iter().position(|&r| !(1.0 + r > 0.0)) {
            let x = self.grid().position(i);
            return Err(Error::Model(format!(
                "density 1 + varrho = {} is not positive at grid point {i} (x = {x:?})",
                1.0 + rho_phys[i]
            )));
        }
        Ok(())
    }

    /// Angle chart: `|phi_2| < pi/2 - 0.1` on the grid.
    pub fn check_chart(&self, phi2_phys: &[f64]) -> Result<()> {
        check_chart(self.grid(), phi2_phys)
    }

    /// Full invariant check: mean-free density, positivity, chart, finiteness.
    pub fn validate(&self) -> Result<()> {
        for (k, f) in self.fields().iter().enumerate() {
            if f.coeffs().iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
                return Err(Error::Divergence {
                    t: self.t,
                    what: format!("field {k} has non-finite coefficients"),
                });
            }
        }
        let scale = self.rho.max_abs_coeff().max(1.0);
        if self.rho.mean().norm() > 1e-12 * scale {
            return Err(Error::Model(format!("varrho has nonzero mean {}", self.rho.mean())));
        }
        self.check_density(&self.rho.to_physical())?;
        self.check_chart(&self.phi[1].to_physical())
    }
}

pub(crate) fn check_chart(grid: &GridSpec, phi2: &[f64]) -> Result<()> {
    let limit = FRAC_PI_2 - CHART_MARGIN;
    if let Some(i) = phi2.iter().position(|&p| !(p.abs() < limit)) {
        return Err(Error::Model(format!(
            "angle chart violated: |phi_2| = {} at grid point {i} (x = {:?})",
            phi2[i].abs(),
            grid.position(i)
        )));
    }
    Ok(())
}
