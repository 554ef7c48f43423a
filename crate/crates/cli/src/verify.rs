use std::fs;
use std::path::PathBuf;

use chlc::fit::MIN_R2;
use chlc::verify::{format_table, run_suite, RowKind, SuiteOptions, ALL_ROWS};

use crate::{EXIT_FAIL, EXIT_USAGE};

/// Power-law fits starting earlier than this see the initial transient.
const TRANSIENT_END: f64 = 10.0;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Run a single row (heat, heat1, lowfreq, band-sub, band-super, halfwave, bernstein)
    #[arg(long)]
    only: Option<String>,

    /// Fit window `t0 t1`, replacing each row's default
    #[arg(long, num_args = 2, value_names = ["T0", "T1"])]
    window: Option<Vec<f64>>,

    /// Random fields per band for the Bernstein row
    #[arg(long)]
    bernstein_fields: Option<usize>,
}

pub fn run(args: Args, out_dir: Option<PathBuf>, seed: Option<u64>) -> u8 {
    let only = match args.only.as_deref() {
        None => None,
        Some(name) => match RowKind::from_name(name) {
            Some(k) => Some(k),
            None => {
                let names: Vec<&str> = ALL_ROWS.iter().map(|r| r.name()).collect();
                eprintln!("error: unknown row `{name}` (expected one of {})", names.join(", "));
                return EXIT_USAGE;
            }
        },
    };
    let window = args.window.map(|w| (w[0], w[1]));
    if let Some((t0, t1)) = window {
        if !(0.0 < t0 && t0 < t1) {
            eprintln!("error: window needs 0 < t0 < t1, got [{t0}, {t1}]");
            return EXIT_USAGE;
        }
    }
    let opts = SuiteOptions {
        only,
        window,
        seed: seed.unwrap_or(0),
        bernstein_fields: args.bernstein_fields,
    };
    let rows = run_suite(&opts);

    let mut report = format_table(&rows);
    for r in &rows {
        let Some(fit) = &r.fit else { continue };
        if fit.r2 < MIN_R2 {
            report.push_str(&format!("note: {} fit has r2 = {:.4} below {MIN_R2}\n", r.kind.name(), fit.r2));
        }
        if fit.window.0 < TRANSIENT_END && r.kind != RowKind::BandSuper {
            report.push_str(&format!(
                "note: {} window starts at t = {} and includes the transient t < {TRANSIENT_END}\n",
                r.kind.name(),
                fit.window.0
            ));
        }
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    report.push_str(&format!(
        "tolerances: heat +/- 0.05, dispersive +/- 0.1, r2 >= {MIN_R2}\n{passed}/{} rows pass\n",
        rows.len()
    ));
    print!("{report}");

    let dir = out_dir.unwrap_or_else(|| PathBuf::from("out"));
    let written = fs::create_dir_all(&dir).map_err(chlc::Error::from).and_then(|_| {
        for r in &rows {
            if let Some(s) = &r.series {
                s.write_csv(&dir.join(format!("{}.csv", r.kind.name())))?;
            }
        }
        fs::write(dir.join("verify_report.txt"), &report)?;
        Ok(())
    });
    if let Err(e) = written {
        eprintln!("error: writing to {}: {e}", dir.display());
        return EXIT_USAGE;
    }
    if passed == rows.len() {
        0
    } else {
        EXIT_FAIL
    }
}
