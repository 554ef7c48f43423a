use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use chlc::integrator::snapshot;
use chlc::integrator::{run as run_config, RunConfig, RunSummary};

use crate::{EXIT_DIVERGED, EXIT_FAIL, EXIT_USAGE};

/// Bounds checked in the report.
const MAX_H2_GROWTH: f64 = 1.5;
const MAX_BALANCE_CONSTANT: f64 = 10.0;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Config file of `key = value` lines
    config: PathBuf,

    /// Skip writing snapshots
    #[arg(long)]
    no_snapshots: bool,
}

pub fn run(args: Args, out_dir: Option<PathBuf>, seed: Option<u64>) -> u8 {
    let mut cfg = match RunConfig::load(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", args.config.display());
            return EXIT_USAGE;
        }
    };
    if let Some(d) = out_dir {
        cfg.out_dir = d;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let dir = cfg.out_dir.clone();
    let snaps = dir.join("snapshots");
    let prepared = fs::create_dir_all(&dir).and_then(|_| if args.no_snapshots { Ok(()) } else { fs::create_dir_all(&snaps) });
    if let Err(e) = prepared {
        eprintln!("error: creating {}: {e}", dir.display());
        return EXIT_USAGE;
    }

    let mut index = 0usize;
    let mut io_failed = false;
    let result = run_config(&cfg, |s| {
        if !args.no_snapshots {
            snapshot::save(&snaps.join(format!("snap_{index:05}.chlc")), s).inspect_err(|_| io_failed = true)?;
        }
        index += 1;
        Ok(())
    });
    // errors before the first step come from the config or the initial data
    let summary = match result {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };

    let (report, bounded) = report(&cfg, &summary);
    if let Err(e) = write_outputs(&dir, &summary, &report) {
        eprintln!("error: writing to {}: {e}", dir.display());
        return EXIT_USAGE;
    }
    print!("{report}");
    match &summary.failure {
        Some(e) if io_failed => {
            eprintln!("error: writing snapshot: {e}");
            EXIT_USAGE
        }
        Some(e) => {
            eprintln!("error: run stopped: {e}");
            EXIT_DIVERGED
        }
        None if bounded => 0,
        None => EXIT_FAIL,
    }
}

fn write_outputs(dir: &Path, s: &RunSummary, report: &str) -> chlc::Result<()> {
    s.ledger.write_csv(&dir.join("ledger.csv"))?;
    s.sup_grad.write_csv(&dir.join("decay.csv"))?;
    s.h2.write_csv(&dir.join("h2.csv"))?;
    s.profile_norm.write_csv(&dir.join("profile_norm.csv"))?;
    fs::write(dir.join("report.txt"), report)?;
    Ok(())
}

fn report(cfg: &RunConfig, s: &RunSummary) -> (String, bool) {
    let growth = s.h2_growth();
    let c = s.balance_constant(cfg.dt, cfg.eps);
    let mono = s.ledger.accumulators_monotone();
    let finished = s.failure.is_none();
    let bounded = finished && growth <= MAX_H2_GROWTH && c <= MAX_BALANCE_CONSTANT && mono;
    let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let mut r = String::new();
    let _ = writeln!(r, "# resolved config");
    r.push_str(&cfg.to_text());
    let _ = writeln!(r);
    let _ = writeln!(r, "# run");
    let _ = writeln!(r, "steps taken = {} of {}", s.steps_taken, cfg.steps());
    let _ = writeln!(r, "final time = {:?}", s.final_state.t);
    if let Some(e) = &s.failure {
        let _ = writeln!(r, "stopped early: {e}");
    }
    let _ = writeln!(
        r,
        "note: a finite periodic box only models decay until sound crosses half the box, t < L / (2 sqrt(a gamma)) = {:.4}; T = {:?} {}",
        cfg.crossing_time(),
        cfg.t_final,
        if cfg.t_final < cfg.crossing_time() { "is inside this range" } else { "exceeds it, so late-time decay reflects the box" }
    );
    let _ = writeln!(r);
    let _ = writeln!(r, "# boundedness");
    let _ = writeln!(r, "sup H2 norm of (rho, u) / initial = {growth:.6} (<= {MAX_H2_GROWTH})  {}", verdict(growth <= MAX_H2_GROWTH));
    let _ = writeln!(
        r,
        "max energy balance residual = {:.6e}, C = {c:.6e} (<= {MAX_BALANCE_CONSTANT})  {}",
        s.max_balance_residual(),
        verdict(c <= MAX_BALANCE_CONSTANT)
    );
    let _ = writeln!(r, "dissipation accumulators monotone  {}", verdict(mono));
    let _ = writeln!(r, "run completed  {}", verdict(finished));
    let _ = writeln!(r, "boundedness verdict  {}", verdict(bounded));
    (r, bounded)
}
