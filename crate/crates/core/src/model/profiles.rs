//! `Phi = d_t phi + i |nabla| phi` and its profile `Psi = e^{-it|nabla|} Phi`.

use num_complex::Complex64;

use super::state::State;
use crate::par;
use crate::propagators::apply::half_wave;
use crate::spectral::{norm, NormKind, Parity, SpectralField};

#[derive(Clone, Debug)]
pub struct ProfileRecord {
    pub phi: [SpectralField; 2],
    pub psi: [SpectralField; 2],
    /// `||F^{-1}(|xi| grad_xi Psi^)||_{H^N}` with lattice centered differences
    pub weighted_norm: f64,
}

/// Physical complex conjugate: `c(xi) -> conj(c(-xi))`.
pub fn conjugate(f: &SpectralField) -> SpectralField {
    let g = f.grid().clone();
    let c = f.coeffs();
    let out = par::map_indexed(c.len(), |i| c[g.mirror(i)].conj());
    SpectralField::from_coeffs(&g, out, f.parity()).expect("same grid")
}

/// `d_t phi = (Phi + conj Phi) / 2`.
pub fn recover_phit(big_phi: &SpectralField) -> SpectralField {
    (big_phi + &conjugate(big_phi)).scaled(0.5).with_parity(Parity::Real)
}

/// `|nabla| phi = (Phi - conj Phi) / (2i)`.
pub fn recover_abs_grad_phi(big_phi: &SpectralField) -> SpectralField {
    let d = big_phi - &conjugate(big_phi);
    d.multiply(|_| Complex64::new(0.0, -0.5), Parity::Real).with_parity(Parity::Real)
}

/// Centered difference of the coefficients along one frequency axis, with
/// zero beyond the lattice edge, times `|xi|`.
fn weighted_xi_derivative(f: &SpectralField, axis: usize) -> SpectralField {
    let g = f.grid().clone();
    let n = g.n() as i64;
    let c = f.coeffs();
    let h = g.dxi();
    let signed = |i: usize| if (i as i64) <= n / 2 { i as i64 } else { i as i64 - n };
    let out = par::map_indexed(c.len(), |idx| {
        let mut ix = g.unravel(idx);
        let m = signed(ix[axis]);
        let at = |mm: i64, ix: &mut [usize; 3]| -> Complex64 {
            if mm <= -n / 2 || mm > n / 2 {
                return Complex64::default();
            }
            ix[axis] = mm.rem_euclid(n) as usize;
            c[g.index(ix[0], ix[1], ix[2])]
        };
        let d = (at(m + 1, &mut ix) - at(m - 1, &mut ix)) / (2.0 * h);
        d * g.abs_xi(idx)
    });
    SpectralField::from_coeffs(&g, out, Parity::Complex).expect("same grid")
}

pub fn make_profiles(s: &State, order: usize) -> ProfileRecord {
    let phi: [SpectralField; 2] = std::array::from_fn(|a| {
        let g = s.grid().clone();
        let cp = s.phi[a].coeffs();
        let ct = s.phit[a].coeffs();
        let out = par::map_indexed(cp.len(), |i| ct[i] + Complex64::new(0.0, g.abs_xi(i)) * cp[i]);
        SpectralField::from_coeffs(&g, out, Parity::Complex).expect("same grid")
    });
    let psi: [SpectralField; 2] = std::array::from_fn(|a| half_wave(&phi[a], -s.t));
    let mut sq = 0.0;
    for p in &psi {
        for axis in 0..3 {
            let w = weighted_xi_derivative(p, axis);
            sq += norm(&w, NormKind::Sobolev(order as f64)).expect("Sobolev norms never fail").powi(2);
        }
    }
    ProfileRecord {
        phi,
        psi,
        weighted_norm: sq.sqrt(),
    }
}
