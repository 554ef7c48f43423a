//! Periodic cubic box and its dual frequency lattice.

use std::f64::consts::PI;
use std::sync::Arc;

use super::fft::Fft3;
use crate::error::{Error, Result};

/// Periodic box `[-L/2, L/2)^3` sampled with `n` points per axis.
///
/// Sample `i` on an axis sits at `x = i * L / n`, reported in box coordinates
/// `(-L/2, L/2]`. Frequencies are `2 pi m / L` with integer `m` in
/// `(-n/2, n/2]`.
#[derive(Debug)]
pub struct GridSpec {
    n: usize,
    length: f64,
    spacing: f64,
    dxi: f64,
    coords: Vec<f64>,
    wavenumbers: Vec<f64>,
    abs_xi: Vec<f64>,
    dealias: Vec<bool>,
    fft: Fft3,
}

/// Build a grid shared by the fields that live on it.
pub fn make_grid(n: usize, length: f64) -> Result<Arc<GridSpec>> {
    GridSpec::new(n, length).map(Arc::new)
}

impl GridSpec {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::Config(format!(
                "grid size n = {n} must be a power of two and at least 8"
            )));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::Config(format!("box length L = {length} must be positive")));
        }
        let spacing = length / n as f64;
        let dxi = 2.0 * PI / length;
        let signed = |i: usize| -> i64 {
            if i <= n / 2 {
                i as i64
            } else {
                i as i64 - n as i64
            }
        };
        let coords = (0..n)
            .map(|i| {
                let x = i as f64 * spacing;
                if x > 0.5 * length {
                    x - length
                } else {
                    x
                }
            })
            .collect();
        let wavenumbers: Vec<f64> = (0..n).map(|i| signed(i) as f64 * dxi).collect();
        // 2/3 rule: keep |m_i| <= floor(n/3) on every axis
        let keep_max = (n / 3) as i64;
        let mut abs_xi = Vec::with_capacity(n * n * n);
        let mut dealias = Vec::with_capacity(n * n * n);
        for i0 in 0..n {
            for i1 in 0..n {
                for i2 in 0..n {
                    let (a, b, c) = (wavenumbers[i0], wavenumbers[i1], wavenumbers[i2]);
                    abs_xi.push((a * a + b * b + c * c).sqrt());
                    dealias.push(
                        signed(i0).abs() <= keep_max
                            && signed(i1).abs() <= keep_max
                            && signed(i2).abs() <= keep_max,
                    );
                }
            }
        }
        Ok(Self {
            n,
            length,
            spacing,
            dxi,
            coords,
            wavenumbers,
            abs_xi,
            dealias,
            fft: Fft3::new(n),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of lattice points, `n^3`.
    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Physical grid spacing `L / n`.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Frequency spacing `2 pi / L`, identical on every axis.
    pub fn dxi(&self) -> f64 {
        self.dxi
    }

    /// Quadrature weight of one physical sample, `(L/n)^3`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing.powi(3)
    }

    pub fn volume(&self) -> f64 {
        self.length.powi(3)
    }

    /// Largest per-axis frequency retained by the 2/3 rule.
    pub fn max_retained_wavenumber(&self) -> f64 {
        (self.n / 3) as f64 * self.dxi
    }

    /// Nyquist frequency `pi n / L`.
    pub fn nyquist(&self) -> f64 {
        PI * self.n as f64 / self.length
    }

    pub fn fft(&self) -> &Fft3 {
        &self.fft
    }

    #[inline]
    pub fn index(&self, i0: usize, i1: usize, i2: usize) -> usize {
        (i0 * self.n + i1) * self.n + i2
    }

    #[inline]
    pub fn unravel(&self, idx: usize) -> [usize; 3] {
        let n = self.n;
        [idx / (n * n), (idx / n) % n, idx % n]
    }

    /// Frequency vector of lattice point `idx`.
    #[inline]
    pub fn xi(&self, idx: usize) -> [f64; 3] {
        let [a, b, c] = self.unravel(idx);
        [self.wavenumbers[a], self.wavenumbers[b], self.wavenumbers[c]]
    }

    /// Frequency component along `axis`, zero on the Nyquist plane so that odd
    /// symbols keep real fields real.
    #[inline]
    pub fn xi_odd(&self, idx: usize, axis: usize) -> f64 {
        let i = self.unravel(idx)[axis];
        if i == self.n / 2 {
            0.0
        } else {
            self.wavenumbers[i]
        }
    }

    #[inline]
    pub fn abs_xi(&self, idx: usize) -> f64 {
        self.abs_xi[idx]
    }

    pub fn abs_xi_all(&self) -> &[f64] {
        &self.abs_xi
    }

    #[inline]
    pub fn keeps(&self, idx: usize) -> bool {
        self.dealias[idx]
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    /// Box coordinate of sample `i` on one axis, in `(-L/2, L/2]`.
    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        self.coords[i]
    }

    #[inline]
    pub fn position(&self, idx: usize) -> [f64; 3] {
        let [a, b, c] = self.unravel(idx);
        [self.coords[a], self.coords[b], self.coords[c]]
    }

    /// Index of the lattice point `-xi`.
    #[inline]
    pub fn mirror(&self, idx: usize) -> usize {
        let n = self.n;
        let [a, b, c] = self.unravel(idx);
        self.index((n - a) % n, (n - b) % n, (n - c) % n)
    }

    /// Whether two grids describe the same discretization.
    pub fn same_as(&self, other: &GridSpec) -> bool {
        self.n == other.n && self.length == other.length
    }
}
