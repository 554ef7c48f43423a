//! Smooth dyadic cutoffs.
//!
//! The base cutoff is `1` on `[-1, 1]`, `0` outside `(-2, 2)`, and on the
//! transition `1 < |x| < 2` equals `psi(2 - |x|) / (psi(2 - |x|) + psi(|x| - 1))`
//! with `psi(s) = exp(-1/s)`.

use crate::error::{Error, Result};

fn psi(s: f64) -> f64 {
    if s > 0.0 {
        (-1.0 / s).exp()
    } else {
        0.0
    }
}

/// The even smooth bump `phi`.
pub fn base_cutoff(x: f64) -> f64 {
    let a = x.abs();
    if a <= 1.0 {
        1.0
    } else if a >= 2.0 {
        0.0
    } else {
        let p = psi(2.0 - a);
        p / (p + psi(a - 1.0))
    }
}

#[inline]
fn dyadic(k: i32) -> f64 {
    (k as f64).exp2()
}

/// `phi_k(x) = phi(x / 2^k) - phi(x / 2^(k-1))`, supported in `2^(k-1) <= |x| <= 2^(k+1)`.
pub fn phi_band(k: i32, x: f64) -> f64 {
    base_cutoff(x / dyadic(k)) - base_cutoff(x / dyadic(k - 1))
}

/// `phi_{<=k}(x) = phi(x / 2^k)`; this is the telescoped sum over `l <= k`
/// and carries the value 1 at the origin.
pub fn phi_at_most(k: i32, x: f64) -> f64 {
    base_cutoff(x / dyadic(k))
}

/// `phi_{>k} = 1 - phi_{<=k}`.
pub fn phi_above(k: i32, x: f64) -> f64 {
    1.0 - phi_at_most(k, x)
}

/// `phi_I` for the integer window `lo..=hi`, summed band by band.
pub fn phi_interval(lo: i32, hi: i32, x: f64) -> f64 {
    (lo..=hi).map(|m| phi_band(m, x)).sum()
}

/// Frequency selectors for Littlewood-Paley projections.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Selector {
    /// `P_k`
    Band(i32),
    /// `P_{<=k}`
    AtMost(i32),
    /// `P_I` with `I = [lo, hi]`
    Interval(i32, i32),
    /// `P_{>k}`
    Above(i32),
}

impl Selector {
    pub fn weight(&self, x: f64) -> f64 {
        match *self {
            Selector::Band(k) => phi_band(k, x),
            Selector::AtMost(k) => phi_at_most(k, x),
            Selector::Interval(lo, hi) => phi_interval(lo, hi, x),
            Selector::Above(k) => phi_above(k, x),
        }
    }
}

/// Physical localizer of `Q_{jk}`.
pub fn q_weight(j: i32, k: i32, x: f64) -> Result<f64> {
    check_jk(j, k)?;
    Ok(if j >= 1 && k + j >= 1 {
        phi_band(j, x)
    } else if k + j == 0 && k <= 0 {
        phi_at_most(-k, x)
    } else {
        // j == 0, k >= 0
        phi_at_most(0, x)
    })
}

pub(crate) fn check_jk(j: i32, k: i32) -> Result<()> {
    if j < 0 || k + j < 0 {
        Err(Error::Index { k, j })
    } else {
        Ok(())
    }
}

/// Smallest admissible `j` for a given `k`.
pub fn j_min(k: i32) -> i32 {
    (-k).max(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn plateau_support_and_midpoint() {
        assert_eq!(base_cutoff(0.5), 1.0);
        assert_eq!(base_cutoff(3.0), 0.0);
        assert_eq!(base_cutoff(-1.0), 1.0);
        assert_eq!(base_cutoff(2.0), 0.0);
        // psi(0.5) / (psi(0.5) + psi(0.5))
        let p = (-2.0f64).exp();
        assert!((base_cutoff(1.5) - p / (p + p)).abs() < 1e-15);
        assert!((base_cutoff(1.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn q_weight_cases() {
        assert!(matches!(q_weight(-1, 3, 0.0), Err(Error::Index { .. })));
        assert!(matches!(q_weight(1, -2, 0.0), Err(Error::Index { .. })));
        // k + j = 0, k <= 0
        assert_eq!(q_weight(2, -2, 3.0).unwrap(), phi_at_most(2, 3.0));
        // j = 0, k >= 0
        assert_eq!(q_weight(0, 3, 1.5).unwrap(), phi_at_most(0, 1.5));
        assert_eq!(q_weight(3, 1, 6.0).unwrap(), phi_band(3, 6.0));
    }

    proptest! {
        #[test]
        fn cutoff_is_even_and_bounded(x in -5.0f64..5.0) {
            let v = base_cutoff(x);
            prop_assert!((0.0..=1.0).contains(&v));
            prop_assert_eq!(v, base_cutoff(-x));
        }

        #[test]
        fn dyadic_partition_of_unity(x in 1e-3f64..1e3) {
            let s: f64 = (-15..=15).map(|k| phi_band(k, x)).sum();
            prop_assert!((s - 1.0).abs() < 1e-12);
        }

        #[test]
        fn q_localizers_sum_to_one(x in 0.0f64..200.0, k in -6i32..6) {
            let s: f64 = (j_min(k)..=12).map(|j| q_weight(j, k, x).unwrap()).sum();
            prop_assert!((s - 1.0).abs() < 1e-12);
        }
    }
}
