//! Scalar fields stored as Fourier coefficients on a [`GridSpec`].

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use super::grid::GridSpec;
use crate::error::{Error, Result};
use crate::par;

/// Whether the physical field is real-valued.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Real,
    Complex,
}

impl Parity {
    fn join(self, other: Parity) -> Parity {
        if self == Parity::Real && other == Parity::Real {
            Parity::Real
        } else {
            Parity::Complex
        }
    }
}

/// A scalar field as coefficients `c(xi)` with `f(x) = sum_xi c(xi) exp(i xi.x)`.
///
/// With this convention the plane wave `exp(i xi.x)` has coefficient exactly 1
/// at `xi`, and `||f||_{L^2}^2 = L^3 sum |c|^2`.
#[derive(Clone, Debug)]
pub struct SpectralField {
    grid: Arc<GridSpec>,
    coeffs: Vec<Complex64>,
    parity: Parity,
}

impl SpectralField {
    pub fn zeros(grid: &Arc<GridSpec>, parity: Parity) -> Self {
        Self {
            grid: Arc::clone(grid),
            coeffs: vec![Complex64::default(); grid.len()],
            parity,
        }
    }

    pub fn from_coeffs(grid: &Arc<GridSpec>, coeffs: Vec<Complex64>, parity: Parity) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::Dimension {
                expected: grid.len(),
                got: coeffs.len(),
            });
        }
        Ok(Self {
            grid: Arc::clone(grid),
            coeffs,
            parity,
        })
    }

    /// Forward transform of real physical samples.
    pub fn from_real(grid: &Arc<GridSpec>, values: &[f64]) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Dimension {
                expected: grid.len(),
                got: values.len(),
            });
        }
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        forward_normalized(grid, &mut buf);
        Ok(Self {
            grid: Arc::clone(grid),
            coeffs: buf,
            parity: Parity::Real,
        })
    }

    /// Forward transform of complex physical samples.
    pub fn from_complex(grid: &Arc<GridSpec>, values: &[Complex64]) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Dimension {
                expected: grid.len(),
                got: values.len(),
            });
        }
        let mut buf = values.to_vec();
        forward_normalized(grid, &mut buf);
        Ok(Self {
            grid: Arc::clone(grid),
            coeffs: buf,
            parity: Parity::Complex,
        })
    }

    /// Sample a real function of box coordinates and transform it.
    pub fn from_fn<F>(grid: &Arc<GridSpec>, f: F) -> Self
    where
        F: Fn([f64; 3]) -> f64 + Sync + Send,
    {
        let vals = par::map_indexed(grid.len(), |i| f(grid.position(i)));
        Self::from_real(grid, &vals).expect("sample count matches grid")
    }

    /// Real part of the physical samples.
    pub fn to_physical(&self) -> Vec<f64> {
        self.to_physical_complex().into_iter().map(|c| c.re).collect()
    }

    pub fn to_physical_complex(&self) -> Vec<Complex64> {
        let mut buf = self.coeffs.clone();
        self.grid.fft().inverse(&mut buf);
        buf
    }

    pub fn grid(&self) -> &Arc<GridSpec> {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    /// Coefficient at integer lattice coordinates `m` (each in `(-n/2, n/2]`).
    pub fn coeff_at(&self, m: [i64; 3]) -> Complex64 {
        let n = self.grid.n() as i64;
        let w = |v: i64| v.rem_euclid(n) as usize;
        self.coeffs[self.grid.index(w(m[0]), w(m[1]), w(m[2]))]
    }

    /// Zero-frequency coefficient (the box average).
    pub fn mean(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Pointwise multiplier `c(xi) -> symbol(idx) c(xi)`.
    pub fn multiply<F>(&self, symbol: F, parity: Parity) -> Self
    where
        F: Fn(usize) -> Complex64 + Sync + Send,
    {
        let mut out = self.coeffs.clone();
        par::for_each_indexed_mut(&mut out, |i, c| *c *= symbol(i));
        Self {
            grid: Arc::clone(&self.grid),
            coeffs: out,
            parity: self.parity.join(parity),
        }
    }

    /// Pointwise real multiplier; an even real symbol keeps the parity.
    pub fn multiply_real<F>(&self, symbol: F) -> Self
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        let mut out = self.coeffs.clone();
        par::for_each_indexed_mut(&mut out, |i, c| *c *= symbol(i));
        Self {
            grid: Arc::clone(&self.grid),
            coeffs: out,
            parity: self.parity,
        }
    }

    /// Spectral partial derivative along `axis`.
    pub fn derivative(&self, axis: usize) -> Self {
        let g = &self.grid;
        self.multiply(|i| Complex64::new(0.0, g.xi_odd(i, axis)), Parity::Real)
    }

    pub fn gradient(&self) -> [Self; 3] {
        [self.derivative(0), self.derivative(1), self.derivative(2)]
    }

    pub fn laplacian(&self) -> Self {
        let g = &self.grid;
        self.multiply_real(|i| -g.abs_xi(i).powi(2))
    }

    /// `|nabla|`, multiplier `|xi|`.
    pub fn abs_grad(&self) -> Self {
        let g = &self.grid;
        self.multiply_real(|i| g.abs_xi(i))
    }

    /// `|nabla|^{-1}`, defined as 0 at the zero frequency.
    pub fn inv_abs_grad(&self) -> Self {
        let g = &self.grid;
        self.multiply_real(|i| {
            let r = g.abs_xi(i);
            if r > 0.0 {
                1.0 / r
            } else {
                0.0
            }
        })
    }

    /// Zero every mode outside the 2/3-rule cube.
    pub fn dealias_in_place(&mut self) {
        let g = Arc::clone(&self.grid);
        par::for_each_indexed_mut(&mut self.coeffs, |i, c| {
            if !g.keeps(i) {
                *c = Complex64::default();
            }
        });
    }

    pub fn dealiased(mut self) -> Self {
        self.dealias_in_place();
        self
    }

    /// `self += a * x`.
    pub fn axpy(&mut self, a: f64, x: &SpectralField) {
        debug_assert!(self.grid.same_as(&x.grid));
        let xs = &x.coeffs;
        par::for_each_indexed_mut(&mut self.coeffs, |i, c| *c += xs[i] * a);
        self.parity = self.parity.join(x.parity);
    }

    pub fn scaled(&self, a: f64) -> Self {
        self.multiply_real(|_| a)
    }

    /// Spectral L^2 norm, `sqrt(L^3 sum |c|^2)`.
    pub fn l2_norm(&self) -> f64 {
        let c = &self.coeffs;
        (self.grid.volume() * par::sum_by(c.len(), |i| c[i].norm_sqr())).sqrt()
    }

    /// `<self, other>_{L^2} = L^3 sum conj(a) b`.
    pub fn inner(&self, other: &SpectralField) -> Complex64 {
        let (a, b) = (&self.coeffs, &other.coeffs);
        let re = par::sum_by(a.len(), |i| (a[i].conj() * b[i]).re);
        let im = par::sum_by(a.len(), |i| (a[i].conj() * b[i]).im);
        Complex64::new(re, im) * self.grid.volume()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        let c = &self.coeffs;
        par::max_by(c.len(), |i| c[i].norm())
    }

    /// `max |c(-xi) - conj(c(xi))|` relative to the largest coefficient.
    pub fn conj_symmetry_defect(&self) -> f64 {
        let scale = self.max_abs_coeff();
        if scale == 0.0 {
            return 0.0;
        }
        let g = &self.grid;
        let c = &self.coeffs;
        par::max_by(c.len(), |i| (c[g.mirror(i)] - c[i].conj()).norm()) / scale
    }

    /// Project onto conjugate-symmetric coefficients and mark the field real.
    pub fn symmetrize_real(&self) -> Self {
        let g = &self.grid;
        let c = &self.coeffs;
        let out = par::map_indexed(c.len(), |i| 0.5 * (c[i] + c[g.mirror(i)].conj()));
        Self {
            grid: Arc::clone(g),
            coeffs: out,
            parity: Parity::Real,
        }
    }

    /// Transform physical samples onto this field's grid, keeping `parity`.
    pub fn from_physical_like(like: &SpectralField, values: &[f64]) -> Self {
        Self::from_real(&like.grid, values).expect("sample count matches grid")
    }
}

fn forward_normalized(grid: &GridSpec, buf: &mut [Complex64]) {
    grid.fft().forward(buf);
    let inv = 1.0 / grid.len() as f64;
    par::for_each_indexed_mut(buf, |_, c| *c *= inv);
}

impl Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: &SpectralField) -> SpectralField {
        let mut out = self.clone();
        out.axpy(1.0, rhs);
        out
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: &SpectralField) -> SpectralField {
        let mut out = self.clone();
        out.axpy(-1.0, rhs);
        out
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, a: f64) -> SpectralField {
        self.scaled(a)
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;
    fn neg(self) -> SpectralField {
        self.scaled(-1.0)
    }
}

/// Physical-space L^2 norm by grid quadrature.
pub fn physical_l2(grid: &GridSpec, values: &[f64]) -> f64 {
    (grid.cell_volume() * par::sum_by(values.len(), |i| values[i] * values[i])).sqrt()
}
