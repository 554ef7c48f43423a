use num_complex::Complex64;

use super::params::Params;
use super::symbol::etb_real;
use crate::error::{Error, Result};
use crate::spectral::{Parity, SpectralField};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Propagator {
    /// `e^{t Delta}`, multiplier `e^{-t |xi|^2}`
    Heat,
    /// `e^{it|nabla|}`, multiplier `e^{i t |xi|}`
    HalfWave,
    /// `e^{tB}` on the pair `(varrho, v)`
    Etb(Params),
}

/// Apply a linear flow multiplier. Heat and half-wave act on every field
/// independently; `Etb` needs exactly the pair `(varrho, v)`.
pub fn apply_propagator(
    fields: &[SpectralField],
    t: f64,
    kind: Propagator,
) -> Result<Vec<SpectralField>> {
    match kind {
        Propagator::Heat => {
            check_forward(t)?;
            Ok(fields
                .iter()
                .map(|f| {
                    let g = f.grid().clone();
                    f.multiply_real(|i| (-t * g.abs_xi(i).powi(2)).exp())
                })
                .collect())
        }
        Propagator::HalfWave => Ok(fields.iter().map(|f| half_wave(f, t)).collect()),
        Propagator::Etb(p) => {
            check_forward(t)?;
            if fields.len() != 2 {
                return Err(Error::Arity(format!(
                    "e^(tB) acts on the pair (varrho, v), got {} field(s)",
                    fields.len()
                )));
            }
            let (r, v) = etb_pair(&fields[0], &fields[1], t, &p);
            Ok(vec![r, v])
        }
    }
}

fn check_forward(t: f64) -> Result<()> {
    if t >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("dissipative flow needs t >= 0, got {t}")))
    }
}

pub fn half_wave(f: &SpectralField, t: f64) -> SpectralField {
    let g = f.grid().clone();
    f.multiply(|i| Complex64::from_polar(1.0, t * g.abs_xi(i)), Parity::Complex)
}

/// `e^{tB}` on `(varrho, v)` evaluated mode by mode.
pub fn etb_pair(r: &SpectralField, v: &SpectralField, t: f64, p: &Params) -> (SpectralField, SpectralField) {
    let g = r.grid().clone();
    let (cr, cv) = (r.coeffs(), v.coeffs());
    let pairs = crate::par::map_indexed(g.len(), |i| {
        let m = etb_real(t, g.abs_xi(i), p);
        (m[0][0] * cr[i] + m[0][1] * cv[i], m[1][0] * cr[i] + m[1][1] * cv[i])
    });
    let (a, b): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    (
        SpectralField::from_coeffs(&g, a, r.parity()).expect("same grid"),
        SpectralField::from_coeffs(&g, b, v.parity()).expect("same grid"),
    )
}
