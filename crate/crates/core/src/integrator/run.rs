//! Time stepping with monitors.

use std::sync::Arc;

use super::config::RunConfig;
use super::ic::initial_state;
use super::step::Integrator;
use crate::error::{Error, Result};
use crate::model::energy::multi_weight;
use crate::model::{energy_e1, make_profiles, phi_energy, EnergyLedger, LedgerRow, Model, State};
use crate::propagators::DecaySeries;
use crate::spectral::{make_grid, norm, GridSpec, NormKind};

/// Derivative order `N` of the energies and profile norms.
pub const ENERGY_ORDER: usize = 2;

/// Everything sampled along a trajectory.
#[derive(Debug)]
pub struct RunSummary {
    pub ledger: EnergyLedger,
    /// `max(||grad varrho||_inf, ||grad u||_inf)`
    pub sup_grad: DecaySeries,
    /// `||(varrho, u)||_{H^2}`
    pub h2: DecaySeries,
    /// `||Phi||_{H^N}`
    pub profile_norm: DecaySeries,
    pub steps_taken: usize,
    pub final_state: State,
    /// Set when the run stopped early; the series above hold the samples taken
    /// before the failure.
    pub failure: Option<Error>,
}

impl RunSummary {
    pub fn h2_growth(&self) -> f64 {
        let h = &self.h2.norms;
        match h.first() {
            Some(&h0) if h0 > 0.0 => h.iter().fold(0.0, |m: f64, &x| m.max(x)) / h0,
            _ => 0.0,
        }
    }

    pub fn max_balance_residual(&self) -> f64 {
        self.ledger.rows.iter().fold(0.0, |m: f64, r| m.max(r.balance_residual.abs()))
    }

    /// `C` in `|balance residual| <= C (dt^2 + eps^3) T`, with the residual
    /// measured in units of `E0(0) / eps^2` so that `C` does not scale with the
    /// amplitude of the data.
    pub fn balance_constant(&self, dt: f64, eps: f64) -> f64 {
        let res = self.max_balance_residual();
        let e0 = self.ledger.rows.first().map_or(0.0, |r| r.e0);
        let t = self.ledger.rows.last().map_or(0.0, |r| r.t);
        if res == 0.0 {
            return 0.0;
        }
        res * eps * eps / (e0 * (dt * dt + eps.powi(3)) * t)
    }
}

pub fn h2_norm(s: &State) -> f64 {
    let sq: f64 = std::iter::once(&s.rho)
        .chain(s.u.iter())
        .map(|f| norm(f, NormKind::Sobolev(2.0)).expect("Sobolev norms never fail").powi(2))
        .sum();
    sq.sqrt()
}

fn sup_grad(s: &State) -> f64 {
    std::iter::once(&s.rho)
        .chain(s.u.iter())
        .flat_map(|f| f.gradient())
        .map(|d| norm(&d, NormKind::Sup).expect("sup norm never fails"))
        .fold(0.0, f64::max)
}

struct Sampler {
    model: Model,
    weight: Vec<f64>,
    e0_init: Option<f64>,
    ledger: EnergyLedger,
    times: Vec<f64>,
    sup: Vec<f64>,
    h2: Vec<f64>,
    prof: Vec<f64>,
}

impl Sampler {
    fn sample(&mut self, s: &State, acc: (f64, f64)) -> Result<()> {
        let e0 = self.model.energy_e0(s, ENERGY_ORDER)?;
        let e0_init = *self.e0_init.get_or_insert(e0);
        let profiles = make_profiles(s, ENERGY_ORDER);
        self.ledger.push(LedgerRow {
            t: s.t,
            e0,
            e1: energy_e1(s, ENERGY_ORDER),
            diss_grad_u: acc.0,
            diss_div_u: acc.1,
            phi_energy: phi_energy(s),
            balance_residual: e0 + acc.0 + acc.1 - e0_init,
            profile_weighted_norm: profiles.weighted_norm,
        });
        let phi_norm: f64 = profiles
            .phi
            .iter()
            .map(|f| norm(f, NormKind::Sobolev(ENERGY_ORDER as f64)).expect("Sobolev norms never fail").powi(2))
            .sum::<f64>()
            .sqrt();
        self.times.push(s.t);
        self.sup.push(sup_grad(s));
        self.h2.push(h2_norm(s));
        self.prof.push(phi_norm);
        Ok(())
    }
}

/// Step `steps` times from `s0`, sampling every `stride` steps (and at the
/// end). `on_sample` sees each sampled state.
pub fn evolve(
    it: &Integrator,
    s0: State,
    steps: usize,
    stride: usize,
    mut on_sample: impl FnMut(&State) -> Result<()>,
) -> Result<RunSummary> {
    if stride == 0 {
        return Err(Error::Config("monitor stride must be positive".into()));
    }
    s0.validate()?;
    let g: Arc<GridSpec> = s0.grid().clone();
    let mut sm = Sampler {
        model: it.model,
        weight: multi_weight(&g, ENERGY_ORDER),
        e0_init: None,
        ledger: EnergyLedger::default(),
        times: Vec::new(),
        sup: Vec::new(),
        h2: Vec::new(),
        prof: Vec::new(),
    };
    let rate = |s: &State, w: &[f64]| {
        let d = it.model.dissipation_weighted(s, w);
        (d.grad_u, d.div_u)
    };
    let mut acc = (0.0, 0.0);
    let mut s = s0;
    let mut d_prev = rate(&s, &sm.weight);
    sm.sample(&s, acc)?;
    on_sample(&s)?;
    let mut failure = None;
    let mut taken = 0;
    for k in 1..=steps {
        match it.step(&s) {
            Ok(next) => {
                let d = rate(&next, &sm.weight);
                let h = next.t - s.t;
                acc.0 += 0.5 * h * (d_prev.0 + d.0);
                acc.1 += 0.5 * h * (d_prev.1 + d.1);
                d_prev = d;
                s = next;
                taken = k;
            }
            Err(e) => {
                failure = Some(e);
                break;
            }
        }
        if k % stride == 0 || k == steps {
            if let Err(e) = sm.sample(&s, acc).and_then(|_| on_sample(&s)) {
                failure = Some(e);
                break;
            }
        }
    }
    Ok(RunSummary {
        sup_grad: DecaySeries::new("sup_grad_rho_u", sm.times.clone(), sm.sup)?,
        h2: DecaySeries::new("h2_rho_u", sm.times.clone(), sm.h2)?,
        profile_norm: DecaySeries::new("phi_hn", sm.times, sm.prof)?,
        ledger: sm.ledger,
        steps_taken: taken,
        final_state: s,
        failure,
    })
}

pub fn setup(cfg: &RunConfig) -> Result<(Integrator, State)> {
    cfg.validate()?;
    let g = make_grid(cfg.n, cfg.length)?;
    let s0 = initial_state(&g, cfg.ic, cfg.eps, cfg.seed);
    let it = Integrator::new(Model::new(cfg.params), &g, cfg.dt)?;
    Ok((it, s0))
}

pub fn run(cfg: &RunConfig, on_sample: impl FnMut(&State) -> Result<()>) -> Result<RunSummary> {
    let (it, s0) = setup(cfg)?;
    evolve(&it, s0, cfg.steps(), cfg.monitor_stride(), on_sample)
}

/// `sqrt(sum ||a_f - b_f||_2^2)` over the eight fields.
pub fn state_distance(a: &State, b: &State) -> f64 {
    a.fields()
        .iter()
        .zip(b.fields())
        .map(|(x, y)| (*x - y).l2_norm().powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Observed order `log2(e(dt) / e(dt/2))` for successive step sizes against
/// a reference solution.
pub fn observed_orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}
