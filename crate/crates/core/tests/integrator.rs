use std::path::Path;

use chlc::integrator::snapshot;
use chlc::integrator::{run, setup, RunConfig};
use chlc::par;

fn small(extra: &str) -> RunConfig {
    RunConfig::parse(&format!("n = 16\nL = 12\ndt = 0.1\nT = 0.6\nmonitor_every = 0.2\n{extra}")).unwrap()
}

#[test]
fn shipped_config_parses() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/small_data.conf");
    let c = RunConfig::load(&path).unwrap();
    assert_eq!(c.n, 32);
    assert!(c.t_final < c.crossing_time());
    assert_eq!(RunConfig::parse(&c.to_text()).unwrap().to_text(), c.to_text());
}

#[test]
fn snapshot_file_round_trip() {
    let (it, s0) = setup(&small("seed = 4")).unwrap();
    let s = it.step(&s0).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.chlc");
    snapshot::save(&path, &s).unwrap();
    let back = snapshot::load(&path).unwrap();
    assert_eq!(back.t.to_bits(), s.t.to_bits());
    for (a, b) in back.fields().iter().zip(s.fields().iter()) {
        assert!(a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()));
    }
}

#[test]
fn runs_are_bitwise_reproducible() {
    let cfg = small("seed = 2");
    let a = run(&cfg, |_| Ok(())).unwrap();
    let b = par::sequential(|| run(&cfg, |_| Ok(())).unwrap());
    assert_eq!(a.ledger.to_csv(), b.ledger.to_csv());
    assert_eq!(a.sup_grad.to_csv(), b.sup_grad.to_csv());
}

#[test]
fn zero_data_stays_zero() {
    let r = run(&small("eps = 0"), |_| Ok(())).unwrap();
    assert!(r.failure.is_none());
    assert_eq!(r.ledger.rows.len(), 4);
    assert!(r.ledger.rows.iter().all(|row| row.e0 == 0.0 && row.diss_grad_u == 0.0 && row.balance_residual == 0.0));
}

#[test]
fn small_data_run_is_bounded() {
    let cfg = small("eps = 0.01\nseed = 9");
    let r = run(&cfg, |_| Ok(())).unwrap();
    assert!(r.failure.is_none());
    assert!(r.h2_growth() <= 1.5);
    assert!(r.ledger.accumulators_monotone());
    assert!(r.balance_constant(cfg.dt, cfg.eps) <= 10.0);
}
