//! Cubic 3-D complex FFT built from 1-D rustfft plans.
//!
//! Layout is axis-major: element `(i0, i1, i2)` sits at `(i0 * n + i1) * n + i2`.
//! Transforms are unnormalized in both directions.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::par;

#[derive(Clone)]
pub struct Fft3 {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for Fft3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fft3").field("n", &self.n).finish()
    }
}

impl Fft3 {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// In-place forward transform, `X(m) = sum_j x(j) exp(-2 pi i m.j / n)`.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, &self.forward);
    }

    /// In-place inverse transform without the `1/n^3` factor.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, &self.inverse);
    }

    fn transform(&self, data: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        let n = self.n;
        let plane = n * n;
        assert_eq!(data.len(), plane * n, "FFT buffer has the wrong length");
        let scratch_len = fft.get_inplace_scratch_len();

        // axis 2: rows are contiguous
        par::for_each_chunk_mut(data, plane, |_, chunk| {
            let mut scratch = vec![Complex64::default(); scratch_len];
            fft.process_with_scratch(chunk, &mut scratch);
        });

        // axis 1: transpose each plane, transform rows, transpose back
        par::for_each_chunk_mut(data, plane, |_, chunk| {
            let mut scratch = vec![Complex64::default(); scratch_len];
            let mut t = vec![Complex64::default(); plane];
            for i1 in 0..n {
                for i2 in 0..n {
                    t[i2 * n + i1] = chunk[i1 * n + i2];
                }
            }
            fft.process_with_scratch(&mut t, &mut scratch);
            for i2 in 0..n {
                for i1 in 0..n {
                    chunk[i1 * n + i2] = t[i2 * n + i1];
                }
            }
        });

        // axis 0: gather lines across planes into a scratch volume
        let mut lines = vec![Complex64::default(); plane * n];
        {
            let src: &[Complex64] = data;
            par::for_each_chunk_mut(&mut lines, plane, |i1, chunk| {
                for i2 in 0..n {
                    for i0 in 0..n {
                        chunk[i2 * n + i0] = src[(i0 * n + i1) * n + i2];
                    }
                }
                let mut scratch = vec![Complex64::default(); scratch_len];
                fft.process_with_scratch(chunk, &mut scratch);
            });
        }
        let lines = &lines;
        par::for_each_chunk_mut(data, plane, |i0, chunk| {
            for i1 in 0..n {
                for i2 in 0..n {
                    chunk[i1 * n + i2] = lines[(i1 * n + i2) * n + i0];
                }
            }
        });
    }
}
