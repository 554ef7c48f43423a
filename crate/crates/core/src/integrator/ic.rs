//! Initial-condition families.

use std::f64::consts::TAU;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::IcFamily;
use crate::model::State;
use crate::spectral::{GridSpec, SpectralField};

const BUMPS_PER_FIELD: usize = 3;

/// Deterministic initial state of amplitude `eps` from `seed`.
pub fn initial_state(grid: &Arc<GridSpec>, family: IcFamily, eps: f64, seed: u64) -> State {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields: [SpectralField; 8] = std::array::from_fn(|f| match family {
        IcFamily::Bumps => bump_field(grid, &mut rng, eps),
        IcFamily::PlaneWave => plane_wave(grid, &mut rng, eps, f),
    });
    let mut s = State::from_fields(0.0, fields);
    for f in s.fields_mut() {
        f.coeffs_mut()[0] = Default::default();
    }
    s
}

/// `eps * sum_b exp(-|x - c_b|^2 / (2 w^2)) cos(kappa_b . (x - c_b) + theta_b)`
/// with centers inside `|x| < L/8` and width `L/16`.
fn bump_field(g: &Arc<GridSpec>, rng: &mut ChaCha8Rng, eps: f64) -> SpectralField {
    let l = g.length();
    let w = l / 16.0;
    let bumps: Vec<([f64; 3], [f64; 3], f64, f64)> = (0..BUMPS_PER_FIELD)
        .map(|_| {
            let c = std::array::from_fn(|_| rng.random_range(-l / 14.0..l / 14.0));
            let kappa = std::array::from_fn(|_| rng.random_range(-1.0..1.0) / w);
            let amp = rng.random_range(0.5..1.0) / BUMPS_PER_FIELD as f64;
            (c, kappa, rng.random_range(0.0..TAU), amp)
        })
        .collect();
    SpectralField::from_fn(g, |x| {
        bumps
            .iter()
            .map(|(c, k, th, amp)| {
                let d = [x[0] - c[0], x[1] - c[1], x[2] - c[2]];
                let r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
                amp * (-r2 / (2.0 * w * w)).exp() * (k[0] * d[0] + k[1] * d[1] + k[2] * d[2] + th).cos()
            })
            .sum::<f64>()
            * eps
    })
}

/// `eps cos(2 pi x_axis / L + theta)` on axis `field mod 3`.
fn plane_wave(g: &Arc<GridSpec>, rng: &mut ChaCha8Rng, eps: f64, field: usize) -> SpectralField {
    let th = rng.random_range(0.0..TAU);
    let k = g.dxi();
    let axis = field % 3;
    SpectralField::from_fn(g, |x| eps * (k * x[axis] + th).cos())
}
