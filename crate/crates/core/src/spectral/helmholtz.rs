//! Split of a velocity into compressible and solenoidal parts.
//!
//! `v = |nabla|^{-1} div u` and `w = u + nabla |nabla|^{-2} div u`, so that
//! `u = -|nabla|^{-1} nabla v + w`. In coefficients, for `xi != 0`,
//! `v = i (xi . u) / |xi|` and `w = u - xi (xi . u) / |xi|^2`. The zero mode of
//! `u` is kept in `w`.
//!
//! On the lattice both `xi` and `|xi|` are taken with the Nyquist components
//! zeroed, so split and join are exact inverses and `div w = 0` holds mode by
//! mode. Pure Nyquist modes go to `w`.

use num_complex::Complex64;

use super::field::{Parity, SpectralField};
use super::grid::GridSpec;
use crate::par;

pub type Vector = [SpectralField; 3];

fn odd_xi(g: &GridSpec, i: usize) -> ([f64; 3], f64) {
    let xi = [g.xi_odd(i, 0), g.xi_odd(i, 1), g.xi_odd(i, 2)];
    (xi, (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt())
}

pub fn helmholtz_split(u: &Vector) -> (SpectralField, Vector) {
    let g = u[0].grid().clone();
    let (c0, c1, c2) = (u[0].coeffs(), u[1].coeffs(), u[2].coeffs());
    let n = g.len();
    // xi . u / |xi|, zero at the origin
    let proj: Vec<Complex64> = par::map_indexed(n, |i| {
        let (xi, r) = odd_xi(&g, i);
        if r == 0.0 {
            return Complex64::default();
        }
        (c0[i] * xi[0] + c1[i] * xi[1] + c2[i] * xi[2]) / r
    });
    let parity = u.iter().fold(Parity::Real, |p, f| {
        if f.parity() == Parity::Real {
            p
        } else {
            Parity::Complex
        }
    });
    let v_coeffs = proj.iter().map(|c| c * Complex64::i()).collect();
    let v = SpectralField::from_coeffs(&g, v_coeffs, parity).expect("same grid");
    let w = std::array::from_fn(|a| {
        let ca = u[a].coeffs();
        let out = par::map_indexed(n, |i| {
            let (xi, r) = odd_xi(&g, i);
            if r == 0.0 {
                ca[i]
            } else {
                ca[i] - proj[i] * (xi[a] / r)
            }
        });
        SpectralField::from_coeffs(&g, out, u[a].parity()).expect("same grid")
    });
    (v, w)
}

/// Inverse of [`helmholtz_split`]: `u = -|nabla|^{-1} nabla v + w`.
pub fn helmholtz_join(v: &SpectralField, w: &Vector) -> Vector {
    let g = v.grid().clone();
    let cv = v.coeffs();
    std::array::from_fn(|a| {
        let cw = w[a].coeffs();
        let out = par::map_indexed(g.len(), |i| {
            let (xi, r) = odd_xi(&g, i);
            if r == 0.0 {
                cw[i]
            } else {
                // -(1/|xi|) (i xi_a) v
                cw[i] - Complex64::new(0.0, xi[a] / r) * cv[i]
            }
        });
        SpectralField::from_coeffs(&g, out, w[a].parity()).expect("same grid")
    })
}

/// The compressible velocity `-|nabla|^{-1} nabla v`.
pub fn gradient_part(v: &SpectralField) -> Vector {
    let g = v.grid().clone();
    let zero = SpectralField::zeros(&g, v.parity());
    helmholtz_join(v, &[zero.clone(), zero.clone(), zero])
}

/// Spectral divergence.
pub fn divergence(u: &Vector) -> SpectralField {
    let mut d = u[0].derivative(0);
    d.axpy(1.0, &u[1].derivative(1));
    d.axpy(1.0, &u[2].derivative(2));
    d
}
