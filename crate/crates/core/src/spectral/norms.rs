//! Norms of spectral fields.
//!
//! `L^2` and the Sobolev norms are evaluated from coefficients. `L^p` and the
//! sup norm are grid quadrature / grid maximum of the physical samples, which
//! only approximates the continuum norm.

use super::field::SpectralField;
use crate::error::{Error, Result};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormKind {
    L2,
    Lp(f64),
    Sup,
    /// `H^N` with weight `(1 + |xi|^2)^{N/2}`
    Sobolev(f64),
    /// `dot H^N` with weight `|xi|^N`, zero mode excluded
    Homogeneous(f64),
}

pub fn norm(f: &SpectralField, kind: NormKind) -> Result<f64> {
    let g = f.grid();
    let c = f.coeffs();
    match kind {
        NormKind::L2 => Ok(f.l2_norm()),
        NormKind::Sobolev(s) => {
            let sum = par::sum_by(c.len(), |i| {
                (1.0 + g.abs_xi(i).powi(2)).powf(s) * c[i].norm_sqr()
            });
            Ok((g.volume() * sum).sqrt())
        }
        NormKind::Homogeneous(s) => {
            let sum = par::sum_by(c.len(), |i| {
                let r = g.abs_xi(i);
                if r > 0.0 {
                    r.powf(2.0 * s) * c[i].norm_sqr()
                } else {
                    0.0
                }
            });
            Ok((g.volume() * sum).sqrt())
        }
        NormKind::Sup => {
            let v = f.to_physical_complex();
            Ok(par::max_by(v.len(), |i| v[i].norm()))
        }
        NormKind::Lp(p) => {
            if !(p >= 1.0) {
                return Err(Error::Domain(format!("L^p norm needs p >= 1, got {p}")));
            }
            if p.is_infinite() {
                return norm(f, NormKind::Sup);
            }
            let v = f.to_physical_complex();
            let sum = par::sum_by(v.len(), |i| v[i].norm().powf(p));
            Ok((g.cell_volume() * sum).powf(1.0 / p))
        }
    }
}
