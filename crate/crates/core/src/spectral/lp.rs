//! Littlewood-Paley projections and space-frequency localizers.

use std::ops::RangeInclusive;

use num_complex::Complex64;

use super::cutoff::{self, Selector};
use super::field::SpectralField;
use super::grid::GridSpec;
use crate::error::Result;
use crate::par;

/// Multiply the coefficients by the selector's cutoff of `|xi|`.
pub fn project(f: &SpectralField, selector: Selector) -> SpectralField {
    let g = f.grid().clone();
    f.multiply_real(|i| selector.weight(g.abs_xi(i)))
}

/// Physical localization window for `Q_{jk}` on a finite box: from the
/// smallest admissible `j` up to the first `j` with `2^j` at least the
/// half-diagonal of the box, so the localizers sum to one at every sample.
pub fn q_window(k: i32, grid: &GridSpec) -> RangeInclusive<i32> {
    let reach = 0.5 * 3f64.sqrt() * grid.length();
    let top = reach.log2().ceil() as i32;
    let lo = cutoff::j_min(k);
    lo..=top.max(lo)
}

/// `Q_{jk} f = phi~_j^(k)(x) * P_k f(x)`, formed in physical space.
pub fn q_localize(f: &SpectralField, j: i32, k: i32) -> Result<SpectralField> {
    cutoff::check_jk(j, k)?;
    let g = f.grid().clone();
    let pk = project(f, Selector::Band(k)).to_physical_complex();
    let weights = par::map_indexed(g.len(), |i| {
        let x = g.position(i);
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        cutoff::q_weight(j, k, r).expect("indices checked above")
    });
    let prod: Vec<Complex64> = pk.iter().zip(&weights).map(|(v, w)| v * w).collect();
    let out = SpectralField::from_complex(&g, &prod)?;
    Ok(out.with_parity(f.parity()))
}

/// `f_{j,k} = P_{[k-2, k+2]} Q_{jk} f`.
pub fn f_jk(f: &SpectralField, j: i32, k: i32) -> Result<SpectralField> {
    let q = q_localize(f, j, k)?;
    Ok(project(&q, Selector::Interval(k - 2, k + 2)))
}
