use std::fmt::Write as _;
use std::path::PathBuf;

use chlc::fit::{fit_power_law, DecayFit};
use chlc::propagators::DecaySeries;

use crate::{EXIT_FAIL, EXIT_USAGE};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// CSV with header `t,norm`
    csv: PathBuf,

    /// Expected exponent
    #[arg(long, allow_negative_numbers = true)]
    target: f64,

    /// Fit window `t0 t1` (default: every sample)
    #[arg(long, num_args = 2, value_names = ["T0", "T1"])]
    window: Option<Vec<f64>>,

    /// Allowed distance between slope and target
    #[arg(long, default_value_t = 0.1)]
    tolerance: f64,

    /// Also print a gnuplot script showing the data and the fit
    #[arg(long)]
    gnuplot: bool,
}

pub fn run(args: Args, out_dir: Option<PathBuf>) -> u8 {
    let text = match std::fs::read_to_string(&args.csv) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: reading {}: {e}", args.csv.display());
            return EXIT_USAGE;
        }
    };
    let label = args.csv.file_stem().map_or("series".into(), |s| s.to_string_lossy().into_owned());
    let series = match DecaySeries::from_csv(label, &text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", args.csv.display());
            return EXIT_USAGE;
        }
    };
    let window = match args.window {
        Some(w) => (w[0], w[1]),
        None => match (series.times.first(), series.times.last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => (0.0, 0.0),
        },
    };
    let fit = match fit_power_law(&series, window) {
        Ok(f) => f.with_target(args.target, args.tolerance),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    println!("{}: {fit}", series.label);
    if args.gnuplot {
        print!("{}", gnuplot_script(&args.csv, &fit, &series));
    }
    if let Some(dir) = out_dir {
        let res = std::fs::create_dir_all(&dir).and_then(|_| std::fs::write(dir.join("analyze.txt"), format!("{}: {fit}\n", series.label)));
        if let Err(e) = res {
            eprintln!("error: writing to {}: {e}", dir.display());
            return EXIT_USAGE;
        }
    }
    if fit.verdict() == Some(true) {
        0
    } else {
        EXIT_FAIL
    }
}

fn gnuplot_script(csv: &std::path::Path, fit: &DecayFit, series: &DecaySeries) -> String {
    // intercept of the fitted line through the window means
    let pts: Vec<(f64, f64)> = series
        .times
        .iter()
        .zip(&series.norms)
        .filter(|(t, _)| **t >= fit.window.0 && **t <= fit.window.1)
        .map(|(t, n)| (t.ln(), n.ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let c = (my - fit.slope * mx).exp();
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set logscale xy");
    let _ = writeln!(s, "set xlabel 't'");
    let _ = writeln!(s, "set ylabel 'norm'");
    let _ = writeln!(s, "set key bottom left autotitle columnhead");
    let _ = writeln!(s, "fit_line(t) = {c:e} * t**({})", fit.slope);
    let _ = writeln!(
        s,
        "plot '{}' using 1:2 with points title '{}', [{}:{}] fit_line(x) with lines title 'slope {:.4}'",
        csv.display(),
        series.label,
        fit.window.0,
        fit.window.1,
        fit.slope
    );
    s
}
