//! Rotation and scaling vector fields as diagnostic operators.
//!
//! `Omega_i = (x ^ nabla)_i`, i.e. `Omega_i = eps_ijk x_j d_k`, realized as
//! multiplication by box coordinates composed with spectral derivatives. On the
//! velocity the rotated operator adds the constant matrix `A_i`; scalar fields
//! get pure `Omega`. Box coordinates jump at the faces, so results are only
//! meaningful for fields concentrated near the origin; every result carries a
//! flag that is set when less than 99.9% of the `L^2` mass lies in `|x| < L/4`.

use num_complex::Complex64;

use super::field::SpectralField;
use super::helmholtz::Vector;
use crate::error::{Error, Result};
use crate::par;

pub const SUPPORT_FRACTION: f64 = 0.999;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum VectorFieldKind {
    /// `Omega_i`, `i` in `0..3`
    Omega(usize),
    /// `Omega~_i`; equals `Omega_i` on scalars
    OmegaTilde(usize),
    /// `x . nabla`
    Radial,
    /// `S = t d_t + x . nabla`
    Scaling { t: f64 },
}

#[derive(Clone, Debug)]
pub struct Diagnostic<T> {
    pub value: T,
    /// Set when the input is not concentrated away from the box faces.
    pub support_warning: bool,
}

/// Fraction of the `L^2` mass inside the ball `|x| < L/4`.
pub fn support_mass_fraction(f: &SpectralField) -> f64 {
    let g = f.grid().clone();
    let v = f.to_physical_complex();
    let r2 = (0.25 * g.length()).powi(2);
    let total = par::sum_by(v.len(), |i| v[i].norm_sqr());
    if total == 0.0 {
        return 1.0;
    }
    let inner = par::sum_by(v.len(), |i| {
        let x = g.position(i);
        if x[0] * x[0] + x[1] * x[1] + x[2] * x[2] < r2 {
            v[i].norm_sqr()
        } else {
            0.0
        }
    });
    inner / total
}

fn concentrated(fields: &[&SpectralField]) -> bool {
    fields.iter().all(|f| support_mass_fraction(f) >= SUPPORT_FRACTION)
}

/// `sum_j coef_j(x) * d_j f` with `coef` given in physical space.
fn coordinate_combination(f: &SpectralField, coef: impl Fn([f64; 3]) -> [f64; 3] + Sync) -> SpectralField {
    let g = f.grid().clone();
    let d: Vec<Vec<Complex64>> = (0..3).map(|a| f.derivative(a).to_physical_complex()).collect();
    let vals = par::map_indexed(g.len(), |i| {
        let c = coef(g.position(i));
        d[0][i] * c[0] + d[1][i] * c[1] + d[2][i] * c[2]
    });
    SpectralField::from_complex(&g, &vals)
        .expect("same grid")
        .with_parity(f.parity())
}

/// `Omega_i f = eps_ijk x_j d_k f`.
pub fn omega(f: &SpectralField, i: usize) -> SpectralField {
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    coordinate_combination(f, move |x| {
        let mut c = [0.0; 3];
        c[k] = x[j];
        c[j] = -x[k];
        c
    })
}

/// `x . nabla f`.
pub fn radial_derivative(f: &SpectralField) -> SpectralField {
    coordinate_combination(f, |x| x)
}

fn check_axis(i: usize) -> Result<()> {
    if i < 3 {
        Ok(())
    } else {
        Err(Error::Contract(format!("rotation index {i} is not in 0..3")))
    }
}

/// Apply a vector field to a scalar (density or director angle).
pub fn apply_scalar(
    f: &SpectralField,
    which: VectorFieldKind,
    time_derivative: Option<&SpectralField>,
) -> Result<Diagnostic<SpectralField>> {
    let value = match which {
        VectorFieldKind::Omega(i) | VectorFieldKind::OmegaTilde(i) => {
            check_axis(i)?;
            omega(f, i)
        }
        VectorFieldKind::Radial => radial_derivative(f),
        VectorFieldKind::Scaling { t } => {
            let dt = time_derivative
                .ok_or_else(|| Error::Contract("S needs the time derivative of its argument".into()))?;
            let mut s = radial_derivative(f);
            s.axpy(t, dt);
            s
        }
    };
    Ok(Diagnostic {
        value,
        support_warning: !concentrated(&[f]),
    })
}

/// Apply a vector field to the velocity; `Omega~_i u = Omega_i u + A_i u`.
pub fn apply_velocity(
    u: &Vector,
    which: VectorFieldKind,
    time_derivative: Option<&Vector>,
) -> Result<Diagnostic<Vector>> {
    let value: Vector = match which {
        VectorFieldKind::Omega(i) => {
            check_axis(i)?;
            std::array::from_fn(|a| omega(&u[a], i))
        }
        VectorFieldKind::OmegaTilde(i) => {
            check_axis(i)?;
            let mut out: Vector = std::array::from_fn(|a| omega(&u[a], i));
            // A_i = e_j (x) e_k - e_k (x) e_j with (i, j, k) cyclic
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            out[j].axpy(1.0, &u[k]);
            out[k].axpy(-1.0, &u[j]);
            out
        }
        VectorFieldKind::Radial => std::array::from_fn(|a| radial_derivative(&u[a])),
        VectorFieldKind::Scaling { t } => {
            let dt = time_derivative
                .ok_or_else(|| Error::Contract("S needs the time derivative of its argument".into()))?;
            std::array::from_fn(|a| {
                let mut s = radial_derivative(&u[a]);
                s.axpy(t, &dt[a]);
                s
            })
        }
    };
    Ok(Diagnostic {
        value,
        support_warning: !concentrated(&[&u[0], &u[1], &u[2]]),
    })
}

/// Relative defect of `|xi| grad_xi h^ = (xi/|xi|)(xi . grad_xi) h^ - (xi/|xi|) ^ Omega(xi) h^`.
///
/// Frequency-side derivatives are produced from physical operators:
/// `grad_xi h^ = F(-i x h)`, `xi . grad_xi h^ = -F(x . nabla h) - 3 h^` and
/// `Omega(xi) h^ = F(Omega h)`. The two sides are therefore assembled from
/// independent routes (coordinate multiplication versus the rotation and
/// scaling operators).
pub fn xi_identity_defect(h: &SpectralField) -> f64 {
    let g = h.grid().clone();
    let phys = h.to_physical_complex();
    let grad_xi: Vec<Vec<Complex64>> = (0..3)
        .map(|a| {
            let vals = par::map_indexed(g.len(), |i| phys[i] * Complex64::new(0.0, -g.position(i)[a]));
            SpectralField::from_complex(&g, &vals).expect("same grid").into_coeffs()
        })
        .collect();
    let radial = radial_derivative(h);
    let rot: Vec<SpectralField> = (0..3).map(|i| omega(h, i)).collect();
    let (hc, rc) = (h.coeffs(), radial.coeffs());
    let mut num = 0.0;
    let mut den = 0.0;
    for a in 0..3 {
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        let diffs = par::map_indexed(g.len(), |i| {
            let r = g.abs_xi(i);
            if r == 0.0 {
                return (0.0, 0.0);
            }
            let xi = g.xi(i);
            let unit = [xi[0] / r, xi[1] / r, xi[2] / r];
            let lhs = grad_xi[a][i] * r;
            let scale = -rc[i] - hc[i] * 3.0;
            // (unit ^ Omega)_a = unit_b Omega_c - unit_c Omega_b
            let cross = rot[c].coeffs()[i] * unit[b] - rot[b].coeffs()[i] * unit[c];
            let rhs = scale * unit[a] - cross;
            ((lhs - rhs).norm_sqr(), lhs.norm_sqr())
        });
        num += par::pairwise_sum(&diffs.iter().map(|d| d.0).collect::<Vec<_>>());
        den += par::pairwise_sum(&diffs.iter().map(|d| d.1).collect::<Vec<_>>());
    }
    if den == 0.0 {
        0.0
    } else {
        (num / den).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{make_grid, Parity};

    fn bump(x: [f64; 3]) -> f64 {
        (-0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])).exp()
    }

    #[test]
    fn radial_scalar_has_no_rotation() {
        let g = make_grid(32, 14.0).unwrap();
        let f = SpectralField::from_fn(&g, bump);
        for i in 0..3 {
            let d = apply_scalar(&f, VectorFieldKind::Omega(i), None).unwrap();
            assert!(!d.support_warning);
            assert!(d.value.l2_norm() < 1e-10 * f.l2_norm());
        }
    }

    #[test]
    fn zero_velocity() {
        let g = make_grid(8, 8.0).unwrap();
        let z = SpectralField::zeros(&g, Parity::Real);
        let u = [z.clone(), z.clone(), z];
        let d = apply_velocity(&u, VectorFieldKind::OmegaTilde(1), None).unwrap();
        assert!(d.value.iter().all(|f| f.max_abs_coeff() == 0.0));
    }

    #[test]
    fn radial_derivative_of_gaussian() {
        let g = make_grid(32, 14.0).unwrap();
        let f = SpectralField::from_fn(&g, bump);
        let r = radial_derivative(&f).to_physical();
        for (i, v) in r.iter().enumerate() {
            let x = g.position(i);
            let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            assert!((v + r2 * bump(x)).abs() < 1e-8);
        }
    }

    #[test]
    fn rotation_of_linear_velocity() {
        // u = (-x2, x1, 0) e^{-|x|^2/2}: Omega~_3 u = 0 because u is equivariant
        let g = make_grid(32, 14.0).unwrap();
        let u = [
            SpectralField::from_fn(&g, |x| -x[1] * bump(x)),
            SpectralField::from_fn(&g, |x| x[0] * bump(x)),
            SpectralField::zeros(&g, Parity::Real),
        ];
        let plain = apply_velocity(&u, VectorFieldKind::Omega(2), None).unwrap();
        let tilde = apply_velocity(&u, VectorFieldKind::OmegaTilde(2), None).unwrap();
        let norm = |v: &Vector| v.iter().map(|f| f.l2_norm().powi(2)).sum::<f64>().sqrt();
        assert!(norm(&tilde.value) < 1e-9 * norm(&u));
        assert!(norm(&plain.value) > 0.5 * norm(&u));
    }

    #[test]
    fn scaling_requires_time_derivative() {
        let g = make_grid(8, 8.0).unwrap();
        let f = SpectralField::from_fn(&g, bump);
        assert!(matches!(
            apply_scalar(&f, VectorFieldKind::Scaling { t: 1.0 }, None),
            Err(Error::Contract(_))
        ));
        let s = apply_scalar(&f, VectorFieldKind::Scaling { t: 2.0 }, Some(&f)).unwrap();
        let expect = &radial_derivative(&f) + &(&f * 2.0);
        assert!((&s.value - &expect).l2_norm() < 1e-14);
    }

    #[test]
    fn spread_field_is_flagged() {
        let g = make_grid(8, 8.0).unwrap();
        let f = SpectralField::from_fn(&g, |x| x[0].cos());
        assert!(apply_scalar(&f, VectorFieldKind::Radial, None).unwrap().support_warning);
    }

    #[test]
    fn xi_identity_holds() {
        let g = make_grid(32, 14.0).unwrap();
        let h = SpectralField::from_fn(&g, |x| {
            let y = [x[0] - 0.3, x[1] + 0.2, x[2]];
            (1.0 + 0.5 * y[0] - 0.2 * y[1] * y[2]) * (-0.5 * (y[0] * y[0] + 1.5 * y[1] * y[1] + y[2] * y[2])).exp()
        });
        let d = xi_identity_defect(&h);
        assert!(d < 1e-6, "{d}");
    }
}
