//! Acceptance criteria AC1-AC11, one line each.
//!
//! Runs as a plain binary so that every line is printed. The process fails
//! if any criterion fails, except those listed in `KNOWN_UNATTAINABLE`; those
//! are evaluated at full tolerance and reported, and the process fails if
//! one of them starts passing so the list cannot go stale.

mod common;

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use chlc::integrator::run::observed_orders;
use chlc::integrator::{run, setup, state_distance, IcFamily, Integrator, RunConfig};
use chlc::model::director::director;
use chlc::model::profiles::{recover_abs_grad_phi, recover_phit};
use chlc::model::{director_from_angles, make_profiles, Model, State};
use chlc::propagators::apply::half_wave;
use chlc::propagators::symbol::{default_rho_grid, det_defect, etb_real};
use chlc::propagators::{etb_symbol, semigroup_compose_check, Params};
use chlc::spectral::helmholtz::{divergence, gradient_part};
use chlc::spectral::lp::q_window;
use chlc::spectral::{
    f_jk, helmholtz_join, helmholtz_split, make_grid, project, q_localize, GridSpec, Parity, Selector, SpectralField,
};
use chlc::verify::{random_band_field, run_row, RowKind, SuiteOptions, SuiteRow};
use common::{etb_taylor, Manufactured};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_UNATTAINABLE: [&str; 1] = ["AC3"];

struct Outcome {
    pass: bool,
    summary: String,
}

fn within(elapsed: Duration, limit: Duration) -> (bool, String) {
    (elapsed <= limit, format!("runtime {:.1}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()))
}

fn row(kind: RowKind) -> SuiteRow {
    run_row(kind, &SuiteOptions::default()).unwrap_or_else(|e| panic!("{} row: {e}", kind.name()))
}

fn describe(r: &SuiteRow) -> String {
    format!("{} measured {:.4} (target {}, r2 {:.5})", r.kind.name(), r.measured, r.target, r.r2)
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let mut worst_ode: f64 = 0.0;
    let mut worst_det: f64 = 0.0;
    let mut worst_semi: f64 = 0.0;
    let sets = [
        Params::symbol_only(1.0, 1.0, 1.0, 1.0).unwrap(),
        Params::new(1.1, 1.0, 0.5, 0.25).unwrap(),
    ];
    for p in &sets {
        let rhos = default_rho_grid(p, 20);
        assert!(rhos.contains(&p.threshold()));
        let times: Vec<f64> = (0..20).map(|i| 10f64.powf(-2.0 + 4.0 * i as f64 / 19.0)).collect();
        for &t in &times {
            for &rho in &rhos {
                let m = etb_real(t, rho, p);
                let o = etb_taylor(t, rho, p.sound_speed_sq(), p.mu());
                let diff: f64 = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| (m[i][j] - o[i][j]).powi(2)).sum();
                let size: f64 = o.iter().flatten().map(|x| x * x).sum();
                worst_ode = worst_ode.max((diff / size).sqrt());
                worst_det = worst_det.max(det_defect(&etb_symbol(t, rho, p), p));
            }
        }
        for (t, s) in [(1.0, 1.0), (0.3, 2.5), (10.0, 5.0), (0.01, 40.0)] {
            worst_semi = worst_semi.max(semigroup_compose_check(t, s, &rhos, p));
        }
    }
    let (fast, rt) = within(start.elapsed(), Duration::from_secs(10));
    Outcome {
        pass: worst_ode < 1e-8 && worst_semi < 1e-10 && worst_det < 1e-10 && fast,
        summary: format!(
            "ODE residual {worst_ode:.2e} (< 1e-8), semigroup defect {worst_semi:.2e} (< 1e-10), det defect {worst_det:.2e} (< 1e-10), {rt}"
        ),
    }
}

fn slope_row(kinds: &[RowKind], limit: u64) -> Outcome {
    let start = Instant::now();
    let rows: Vec<SuiteRow> = kinds.iter().map(|&k| row(k)).collect();
    let (fast, rt) = within(start.elapsed(), Duration::from_secs(limit));
    Outcome {
        pass: rows.iter().all(|r| r.pass) && fast,
        summary: format!("{}; {rt}", rows.iter().map(describe).collect::<Vec<_>>().join("; ")),
    }
}

fn ac5() -> Outcome {
    let start = Instant::now();
    let r = row(RowKind::HalfWave);
    let g = make_grid(32, 20.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = random_band_field(&g, 0, &mut rng);
    let n0 = f.l2_norm();
    let drift = [1e2, 1e3, 1e4]
        .iter()
        .map(|&t| (half_wave(&f, t).l2_norm() - n0).abs() / n0)
        .fold(0.0, f64::max);
    let (fast, rt) = within(start.elapsed(), Duration::from_secs(60));
    Outcome {
        pass: r.pass && drift < 1e-12 && fast,
        summary: format!("{}; L2 drift {drift:.2e} (< 1e-12); {rt}", describe(&r)),
    }
}

fn ac6() -> Outcome {
    let r = row(RowKind::Bernstein);
    Outcome {
        pass: r.pass,
        summary: format!("max normalized ratio {:.4} (<= 4); {}", r.measured, r.detail),
    }
}

fn random_field(g: &std::sync::Arc<GridSpec>, rng: &mut ChaCha8Rng) -> SpectralField {
    // smooth random data: Gaussian bumps with random centers and phases
    let bumps: Vec<([f64; 3], f64, f64)> = (0..4)
        .map(|_| (std::array::from_fn(|_| rng.random_range(-3.0..3.0)), rng.random_range(0.5..2.0), rng.random_range(0.0..TAU)))
        .collect();
    SpectralField::from_fn(g, |x| {
        bumps
            .iter()
            .map(|(c, w, th)| {
                let r2: f64 = (0..3).map(|i| (x[i] - c[i]).powi(2)).sum();
                (-r2 / (2.0 * w * w)).exp() * (x[0] / w + th).cos()
            })
            .sum()
    })
}

fn ac7() -> Outcome {
    let g = make_grid(32, 8.0 * PI).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut pu, mut qr) = (0.0f64, 0.0f64);
    for _ in 0..5 {
        let f = random_field(&g, &mut rng);
        let (k0, k1) = (-3, 2);
        let mut sum = project(&f, Selector::AtMost(k0));
        for k in k0 + 1..=k1 {
            sum.axpy(1.0, &project(&f, Selector::Band(k)));
        }
        sum.axpy(1.0, &project(&f, Selector::Above(k1)));
        pu = pu.max((&sum - &f).l2_norm() / f.l2_norm());
        for k in -2..=1 {
            let pk = project(&f, Selector::Band(k));
            let mut q = SpectralField::zeros(&g, Parity::Real);
            let mut fj = SpectralField::zeros(&g, Parity::Real);
            for j in q_window(k, &g) {
                q.axpy(1.0, &q_localize(&f, j, k).unwrap());
                fj.axpy(1.0, &f_jk(&f, j, k).unwrap());
            }
            let scale = pk.l2_norm();
            qr = qr.max((&q - &pk).l2_norm() / scale).max((&fj - &pk).l2_norm() / scale);
        }
    }
    Outcome {
        pass: pu < 1e-10 && qr < 1e-10,
        summary: format!("partition-of-unity defect {pu:.2e}, Q_jk reconstruction defect {qr:.2e} (both < 1e-10)"),
    }
}

fn ac8() -> Outcome {
    let g = make_grid(32, 8.0 * PI).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut rt, mut dv, mut orth) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..5 {
        let u: [SpectralField; 3] = std::array::from_fn(|_| random_field(&g, &mut rng));
        let un: f64 = u.iter().map(|c| c.l2_norm().powi(2)).sum::<f64>().sqrt();
        let gn: f64 = u.iter().map(|c| c.abs_grad().l2_norm().powi(2)).sum::<f64>().sqrt();
        let (v, w) = helmholtz_split(&u);
        let back = helmholtz_join(&v, &w);
        rt = rt.max((0..3).map(|i| (&back[i] - &u[i]).l2_norm().powi(2)).sum::<f64>().sqrt() / un);
        dv = dv.max(divergence(&w).l2_norm() / gn);
        let gp = gradient_part(&v);
        let ip: num_complex::Complex64 = (0..3).map(|i| gp[i].inner(&w[i])).sum();
        let (a, b) = (
            gp.iter().map(|c| c.l2_norm().powi(2)).sum::<f64>().sqrt(),
            w.iter().map(|c| c.l2_norm().powi(2)).sum::<f64>().sqrt(),
        );
        orth = orth.max(ip.norm() / (a * b));
    }
    Outcome {
        pass: rt < 1e-12 && dv < 1e-12 && orth < 1e-10,
        summary: format!("round trip {rt:.2e} (< 1e-12), div w {dv:.2e} (< 1e-12), orthogonality {orth:.2e} (< 1e-10)"),
    }
}

fn ac9() -> Outcome {
    let g = make_grid(32, TAU).unwrap();
    let model = Model::new(Params::new(1.3, 1.4, 0.7, 0.4).unwrap());
    let mut worst: f64 = 0.0;
    for seed in 0..4 {
        let s = Manufactured::random(100 + seed, 1e-2, 2).state(&g);
        worst = worst.max(model.cross_formulation_residual(&s, None).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut unit: f64 = 0.0;
    for _ in 0..100_000 {
        let d = director(rng.random_range(-PI..PI), rng.random_range(-1.4..1.4));
        unit = unit.max(((d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt() - 1.0).abs());
    }
    let s = Manufactured::random(200, 0.5, 2).state(&g);
    let d = director_from_angles(&g, &s.phi[0].to_physical(), &s.phi[1].to_physical()).unwrap();
    for k in 0..g.len() {
        unit = unit.max(((d[0][k].powi(2) + d[1][k].powi(2) + d[2][k].powi(2)).sqrt() - 1.0).abs());
    }
    Outcome {
        pass: worst < 1e-8 && unit <= 1e-14,
        summary: format!("max residual {worst:.2e} (< 1e-8) over 4 states, max ||d| - 1| {unit:.2e} (<= 1e-14)"),
    }
}

const AC10_BASE: &str = "n = 64\nL = 31.41592653589793\na = 1.1\ngamma = 1\nmu1 = 0.5\nmu2 = 0.25\neps = 0.01\nseed = 1\nic = bumps\n";

fn ac10() -> Outcome {
    let start = Instant::now();
    let cfg = RunConfig::parse(&format!("{AC10_BASE}dt = 0.1\nT = 10\nmonitor_every = 0.5\n")).unwrap();
    assert!(cfg.t_final < cfg.crossing_time());
    let r = run(&cfg, |_| Ok(())).unwrap();
    let finished = r.failure.is_none();
    let growth = r.h2_growth();
    let c = r.balance_constant(cfg.dt, cfg.eps);
    let mono = r.ledger.accumulators_monotone();
    // self-convergence against a dt/16 reference
    let t_end = 0.4;
    let finals: Vec<State> = [0.2, 0.1, 0.05, 0.0125]
        .iter()
        .map(|dt| {
            let cfg = RunConfig::parse(&format!("{AC10_BASE}dt = {dt}\nT = {t_end}\nmonitor_every = {t_end}\n")).unwrap();
            let (it, mut s) = setup(&cfg).unwrap();
            for _ in 0..cfg.steps() {
                s = it.step(&s).unwrap();
            }
            s
        })
        .collect();
    let errs: Vec<f64> = finals[..3].iter().map(|s| state_distance(s, &finals[3])).collect();
    let orders = observed_orders(&errs);
    let orders_ok = orders.iter().all(|o| (1.8..=2.2).contains(o));
    let (fast, rt) = within(start.elapsed(), Duration::from_secs(600));
    Outcome {
        pass: finished && growth <= 1.5 && c <= 10.0 && mono && orders_ok && fast,
        summary: format!(
            "(a) sup H2 / initial {growth:.4} (<= 1.5); (b) balance residual {:.2e}, C = {c:.3e} (<= 10); (c) monotone {mono}; (d) orders {:.3}, {:.3} (in [1.8, 2.2]); T = {} < crossing {:.2}; {rt}",
            r.max_balance_residual(),
            orders[0],
            orders[1],
            cfg.t_final,
            cfg.crossing_time()
        ),
    }
}

fn ac11() -> Outcome {
    let g = make_grid(32, 20.0).unwrap();
    let mut s = chlc::integrator::initial_state(&g, IcFamily::Bumps, 1e-2, 11);
    s.rho = SpectralField::zeros(&g, Parity::Real);
    for u in s.u.iter_mut() {
        *u = SpectralField::zeros(&g, Parity::Real);
    }
    let mut it = Integrator::new(Model::new(Params::new(1.1, 1.0, 0.5, 0.25).unwrap()), &g, 0.1).unwrap();
    it.forced_linear = true;
    let p0 = make_profiles(&s, 2);
    let (mut drift, mut recover) = (0.0f64, 0.0f64);
    for _ in 0..30 {
        s = it.step(&s).unwrap();
        let p = make_profiles(&s, 2);
        for a in 0..2 {
            drift = drift.max((&p.psi[a] - &p0.psi[a]).l2_norm() / p0.psi[a].l2_norm());
            let scale = s.phit[a].l2_norm().max(s.phi[a].abs_grad().l2_norm());
            recover = recover
                .max((&recover_phit(&p.phi[a]) - &s.phit[a]).l2_norm() / scale)
                .max((&recover_abs_grad_phi(&p.phi[a]) - &s.phi[a].abs_grad()).l2_norm() / scale);
        }
    }
    Outcome {
        pass: drift < 1e-12 && recover < 1e-12,
        summary: format!("profile drift over 30 steps {drift:.2e} (< 1e-12), recovery identities {recover:.2e} (< 1e-12)"),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("AC1", ac1),
        ("AC2", || slope_row(&[RowKind::Heat0, RowKind::Heat1], 30)),
        ("AC3", || slope_row(&[RowKind::LowFreq], 120)),
        ("AC4", || slope_row(&[RowKind::BandSub, RowKind::BandSuper], 120)),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
        ("AC11", ac11),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| a.starts_with("AC")).collect();
    let mut unexpected = Vec::new();
    for (id, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|x| x == id) {
            continue;
        }
        let o = f();
        let known = KNOWN_UNATTAINABLE.contains(&id);
        let note = if known { "  [known unattainable, see README]" } else { "" };
        println!("{id:<5} {}  {}{note}", if o.pass { "PASS" } else { "FAIL" }, o.summary);
        if o.pass == known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for: {}", unexpected.join(", "));
        std::process::exit(1);
    }
}
