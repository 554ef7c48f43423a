//! Time series of sup norms of linear flows applied to radial data.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use super::params::Params;
use super::radial::{effective_breaks, initial_panels, NodeSet, Output, RadialProfile};
use super::symbol::etb_real;
use crate::error::{Error, Result};
use crate::par;
use crate::spectral::cutoff;

const SUP_TOL: f64 = 1e-9;

/// Which linear flow a probe measures. The `Etb*` kinds act on data `(f, 0)`
/// and report the larger of the two components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProbeKind {
    /// `e^{t Delta} |nabla|^l`
    Heat { l: u32 },
    /// `e^{it|nabla|} P_k`
    HalfWave { k: i32 },
    /// `P_{<=k} e^{tB} nabla` with `scale = 2^k` (need not be a power of two)
    EtbLow { scale: f64, params: Params },
    /// `P_{>k} e^{tB} nabla` with `scale = 2^k`
    EtbHigh { scale: f64, params: Params },
    /// `P_k e^{tB}`
    EtbBand { k: i32, params: Params },
}

impl ProbeKind {
    pub fn label(&self) -> String {
        match self {
            ProbeKind::Heat { l } => format!("heat_l{l}"),
            ProbeKind::HalfWave { k } => format!("halfwave_k{k}"),
            ProbeKind::EtbLow { scale, .. } => format!("etb_low_{scale}"),
            ProbeKind::EtbHigh { scale, .. } => format!("etb_high_{scale}"),
            ProbeKind::EtbBand { k, .. } => format!("etb_band_k{k}"),
        }
    }

    fn output(&self) -> Output {
        match self {
            ProbeKind::EtbLow { .. } | ProbeKind::EtbHigh { .. } => Output::GradientNorm,
            _ => Output::Value,
        }
    }

    /// Multipliers of the reported components at time `t`.
    fn channels(&self, t: f64) -> Vec<Box<dyn Fn(f64) -> Complex64 + Send + Sync>> {
        let re = |x: f64| Complex64::new(x, 0.0);
        match *self {
            ProbeKind::Heat { l } => vec![Box::new(move |r: f64| re(r.powi(l as i32) * (-t * r * r).exp()))],
            ProbeKind::HalfWave { k } => {
                vec![Box::new(move |r: f64| Complex64::from_polar(cutoff::phi_band(k, r), t * r))]
            }
            ProbeKind::EtbLow { scale, params } => {
                etb_channels(params, t, move |r| cutoff::base_cutoff(r / scale))
            }
            ProbeKind::EtbHigh { scale, params } => {
                etb_channels(params, t, move |r| 1.0 - cutoff::base_cutoff(r / scale))
            }
            ProbeKind::EtbBand { k, params } => etb_channels(params, t, move |r| cutoff::phi_band(k, r)),
        }
    }

    /// Bound on the phase derivative of the multipliers in `rho`.
    fn phase_rate(&self, t: f64) -> f64 {
        match self {
            ProbeKind::Heat { .. } => 0.0,
            ProbeKind::HalfWave { .. } => t,
            ProbeKind::EtbLow { params, .. }
            | ProbeKind::EtbHigh { params, .. }
            | ProbeKind::EtbBand { params, .. } => params.sound_speed() * t,
        }
    }

    /// Propagation speed and diffusivity used to place the radial grid.
    fn transport(&self) -> (f64, f64) {
        match self {
            ProbeKind::Heat { .. } => (0.0, 1.0),
            ProbeKind::HalfWave { .. } => (1.0, 0.0),
            ProbeKind::EtbLow { params, .. }
            | ProbeKind::EtbHigh { params, .. }
            | ProbeKind::EtbBand { params, .. } => (params.sound_speed(), params.mu()),
        }
    }
}

fn etb_channels(
    p: Params,
    t: f64,
    proj: impl Fn(f64) -> f64 + Send + Sync + Copy + 'static,
) -> Vec<Box<dyn Fn(f64) -> Complex64 + Send + Sync>> {
    vec![
        Box::new(move |r: f64| Complex64::new(proj(r) * etb_real(t, r, &p)[0][0], 0.0)),
        Box::new(move |r: f64| Complex64::new(proj(r) * etb_real(t, r, &p)[1][0], 0.0)),
    ]
}

/// Radii scanned for the supremum: dense near the origin, geometric out to
/// twice the travelled distance, and dense around the sound cone.
fn radial_grid(kind: &ProbeKind, f: &RadialProfile, t: f64) -> Vec<f64> {
    let (c, d) = kind.transport();
    let width = f.length_scale() + (2.0 * d * t).sqrt();
    let core = 4.0 * width;
    let outer = (2.0 * c * t + 8.0 * width).max(core * 1.01);
    let mut r: Vec<f64> = (0..=48).map(|i| core * i as f64 / 48.0).collect();
    let ratio = (outer / core).powf(1.0 / 40.0);
    r.extend((1..=40).map(|i| core * ratio.powi(i)));
    if c > 0.0 {
        let center = c * t;
        r.extend((0..=80).map(|i| (center - core + 2.0 * core * i as f64 / 80.0).max(0.0)));
    }
    r.sort_by(f64::total_cmp);
    r.dedup();
    r
}

/// Golden-section refinement of `max |g|` inside `[a, b]`.
fn refine_max(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let (mut f1, mut f2) = (g(x1), g(x2));
    for _ in 0..40 {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = g(x2);
        }
    }
    f1.max(f2)
}

fn sup_at_time(kind: &ProbeKind, f: &RadialProfile, t: f64) -> Result<f64> {
    let radii = radial_grid(kind, f, t);
    let rmax = radii.last().copied().unwrap_or(0.0);
    let mut best: f64 = 0.0;
    for m in kind.channels(t) {
        let breaks = effective_breaks(m.as_ref(), f);
        let mut panels = initial_panels(&breaks, kind.phase_rate(t) + rmax);
        let mut coarse = NodeSet::build(m.as_ref(), f, &breaks, panels, kind.output())?;
        loop {
            panels *= 2;
            let fine = NodeSet::build(m.as_ref(), f, &breaks, panels, kind.output())?;
            let vals: Vec<f64> = radii.iter().map(|&r| fine.eval(r).norm()).collect();
            let (imax, _) = vals
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
            let lo = radii[imax.saturating_sub(1)];
            let hi = radii[(imax + 1).min(radii.len() - 1)];
            let g = |r: f64| fine.eval(r).norm();
            let peak = refine_max(&g, lo, hi).max(vals[imax]);
            let rpeak = radii[imax];
            let err = (fine.eval(rpeak) - coarse.eval(rpeak)).norm();
            if err <= SUP_TOL * peak.max(1e-300) || err <= 1e-13 * fine.magnitude() {
                best = best.max(peak);
                break;
            }
            if panels > (1 << 20) {
                return Err(Error::Numerical(format!(
                    "sup-norm quadrature for {} did not settle at t = {t}",
                    kind.label()
                )));
            }
            coarse = fine;
        }
    }
    Ok(best)
}

/// Sample `sup_x |(kind) f|` at the given times (evaluated concurrently,
/// merged in time order).
pub fn decay_probe(kind: ProbeKind, f: &RadialProfile, times: &[f64]) -> Result<DecaySeries> {
    if times.is_empty() {
        return Err(Error::Contract("decay probe needs at least one time".into()));
    }
    if times[0] < 1.0 || times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Contract("probe times must be strictly increasing and at least 1".into()));
    }
    let norms = par::map_indexed(times.len(), |i| sup_at_time(&kind, f, times[i]));
    let norms = norms.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(DecaySeries {
        label: kind.label(),
        times: times.to_vec(),
        norms,
    })
}

/// `count` log-spaced times over `[t0, t1]`.
pub fn log_times(t0: f64, t1: f64, count: usize) -> Vec<f64> {
    let (a, b) = (t0.ln(), t1.ln());
    let last = count.max(2) - 1;
    (0..count)
        .map(|i| match i {
            0 => t0,
            i if i == last => t1,
            _ => (a + (b - a) * i as f64 / last as f64).exp(),
        })
        .collect()
}

/// A time-indexed norm record.
#[derive(Clone, Debug, PartialEq)]
pub struct DecaySeries {
    pub label: String,
    pub times: Vec<f64>,
    pub norms: Vec<f64>,
}

impl DecaySeries {
    pub fn new(label: impl Into<String>, times: Vec<f64>, norms: Vec<f64>) -> Result<Self> {
        if times.len() != norms.len() {
            return Err(Error::Dimension {
                expected: times.len(),
                got: norms.len(),
            });
        }
        Ok(Self {
            label: label.into(),
            times,
            norms,
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// CSV with header `t,norm` and 17 significant digits per value.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,norm\n");
        for (t, n) in self.times.iter().zip(&self.norms) {
            let _ = writeln!(s, "{t:.16e},{n:.16e}");
        }
        s
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn from_csv(label: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == "t,norm" => {}
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    msg: "expected header `t,norm`".into(),
                })
            }
        }
        let mut times = Vec::new();
        let mut norms = Vec::new();
        for (i, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Parse { line: i + 1, msg };
            let (a, b) = line
                .split_once(',')
                .ok_or_else(|| bad(format!("expected two columns, got `{line}`")))?;
            let t: f64 = a.trim().parse().map_err(|_| bad(format!("bad time `{a}`")))?;
            let n: f64 = b.trim().parse().map_err(|_| bad(format!("bad norm `{b}`")))?;
            times.push(t);
            norms.push(n);
        }
        Self::new(label, times, norms)
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Self::from_csv(label, &text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn csv_round_trip_is_exact() {
        let s = DecaySeries::new("x", vec![1.0, 10.0 / 3.0], vec![0.1, 1e-300]).unwrap();
        let back = DecaySeries::from_csv("x", &s.to_csv()).unwrap();
        assert_eq!(s, back);
        assert!(s.to_csv().starts_with("t,norm\n1.0000000000000000e0,"));
    }

    #[test]
    fn csv_errors_name_the_line() {
        let e = DecaySeries::from_csv("x", "t,norm\n1,2\n3;4\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        assert!(DecaySeries::from_csv("x", "time,value\n").is_err());
    }

    #[test]
    fn empty_times_are_rejected() {
        let f = RadialProfile::gaussian(1.0).unwrap();
        assert!(matches!(decay_probe(ProbeKind::Heat { l: 0 }, &f, &[]), Err(Error::Contract(_))));
        assert!(decay_probe(ProbeKind::Heat { l: 0 }, &f, &[2.0, 1.0]).is_err());
    }

    #[test]
    fn heat_sup_is_closed_form() {
        let f = RadialProfile::gaussian(1.0).unwrap();
        let times = [1.0, 10.0, 100.0];
        let s = decay_probe(ProbeKind::Heat { l: 0 }, &f, &times).unwrap();
        for (t, n) in times.iter().zip(&s.norms) {
            let exact = (2.0 * PI * (1.0 + 2.0 * t)).powf(-1.5);
            assert!((n - exact).abs() < 1e-9 * exact);
        }
    }

    #[test]
    fn log_times_endpoints() {
        let t = log_times(10.0, 1000.0, 5);
        assert!((t[0] - 10.0).abs() < 1e-12 && (t[4] - 1000.0).abs() < 1e-9);
        assert!((t[2] - 100.0).abs() < 1e-10);
    }
}
