//! Director field from the angle chart and its derivatives with respect to the angles.

use super::state::check_chart;
use crate::error::Result;
use crate::spectral::GridSpec;

/// `d = (cos phi1 cos phi2, sin phi1 cos phi2, sin phi2)` pointwise.
pub fn director_from_angles(grid: &GridSpec, phi1: &[f64], phi2: &[f64]) -> Result<[Vec<f64>; 3]> {
    check_chart(grid, phi2)?;
    let mut d = [Vec::with_capacity(phi1.len()), Vec::with_capacity(phi1.len()), Vec::with_capacity(phi1.len())];
    for (&a, &b) in phi1.iter().zip(phi2) {
        let v = director(a, b);
        for k in 0..3 {
            d[k].push(v[k]);
        }
    }
    Ok(d)
}

#[inline]
pub fn director(a: f64, b: f64) -> [f64; 3] {
    let (s1, c1) = a.sin_cos();
    let (s2, c2) = b.sin_cos();
    [c1 * c2, s1 * c2, s2]
}

/// First angle derivatives `(d_{phi1} d, d_{phi2} d)`.
#[inline]
pub fn jacobian(a: f64, b: f64) -> [[f64; 3]; 2] {
    let (s1, c1) = a.sin_cos();
    let (s2, c2) = b.sin_cos();
    [[-s1 * c2, c1 * c2, 0.0], [-c1 * s2, -s1 * s2, c2]]
}

/// Second angle derivatives `(d_11, d_12, d_22)`.
#[inline]
pub fn hessian(a: f64, b: f64) -> [[f64; 3]; 3] {
    let (s1, c1) = a.sin_cos();
    let (s2, c2) = b.sin_cos();
    [[-c1 * c2, -s1 * c2, 0.0], [s1 * s2, -c1 * s2, 0.0], [-c1 * c2, -s1 * c2, -s2]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::make_grid;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn equilibrium_and_quarter_turn() {
        assert_eq!(director(0.0, 0.0), [1.0, 0.0, 0.0]);
        let d = director(FRAC_PI_2, 0.0);
        assert!(d[0].abs() < 1e-16 && (d[1] - 1.0).abs() < 1e-16 && d[2] == 0.0);
    }

    #[test]
    fn chart_violation_names_the_point() {
        let g = make_grid(8, 1.0).unwrap();
        let mut b = vec![0.0; g.len()];
        b[17] = 1.5;
        let err = director_from_angles(&g, &vec![0.0; g.len()], &b).unwrap_err();
        assert!(err.to_string().contains("grid point 17"));
    }

    proptest! {
        #[test]
        fn unit_length(a in -10.0f64..10.0, b in -1.4f64..1.4) {
            let d = director(a, b);
            prop_assert!(((d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt() - 1.0).abs() < 1e-14);
        }

        #[test]
        fn derivatives_match_differences(a in -3.0f64..3.0, b in -1.3f64..1.3) {
            let h = 1e-5;
            let j = jacobian(a, b);
            let hs = hessian(a, b);
            for k in 0..3 {
                let da = (director(a + h, b)[k] - director(a - h, b)[k]) / (2.0 * h);
                let db = (director(a, b + h)[k] - director(a, b - h)[k]) / (2.0 * h);
                prop_assert!((da - j[0][k]).abs() < 1e-9 && (db - j[1][k]).abs() < 1e-9);
                let daa = (jacobian(a + h, b)[0][k] - jacobian(a - h, b)[0][k]) / (2.0 * h);
                let dab = (jacobian(a, b + h)[0][k] - jacobian(a, b - h)[0][k]) / (2.0 * h);
                let dbb = (jacobian(a, b + h)[1][k] - jacobian(a, b - h)[1][k]) / (2.0 * h);
                prop_assert!((daa - hs[0][k]).abs() < 1e-9);
                prop_assert!((dab - hs[1][k]).abs() < 1e-9);
                prop_assert!((dbb - hs[2][k]).abs() < 1e-9);
            }
        }
    }
}
