//! Plain-text run configuration: `key = value` per line, `#` comments.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::propagators::Params;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IcFamily {
    /// Mean-free Gaussian bumps with randomized phases.
    Bumps,
    /// One plane wave per field.
    PlaneWave,
}

impl IcFamily {
    pub fn name(&self) -> &'static str {
        match self {
            IcFamily::Bumps => "bumps",
            IcFamily::PlaneWave => "plane_wave",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "bumps" => Some(IcFamily::Bumps),
            "plane_wave" => Some(IcFamily::PlaneWave),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub length: f64,
    pub params: Params,
    pub dt: f64,
    pub t_final: f64,
    pub eps: f64,
    pub seed: u64,
    pub ic: IcFamily,
    /// Monitor cadence in time units; a positive multiple of `dt`.
    pub monitor_every: f64,
    pub out_dir: PathBuf,
}

pub const KEYS: [&str; 13] = [
    "n", "L", "a", "gamma", "mu1", "mu2", "dt", "T", "eps", "seed", "ic", "monitor_every", "out_dir",
];

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 32,
            length: 10.0 * std::f64::consts::PI,
            params: Params::new(1.1, 1.0, 0.5, 0.25).expect("valid defaults"),
            dt: 0.1,
            t_final: 1.0,
            eps: 1e-2,
            seed: 0,
            ic: IcFamily::Bumps,
            monitor_every: 0.5,
            out_dir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    /// Parse a config file. Keys not present keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Self::default();
        let (mut a, mut gamma, mut mu1, mut mu2) = (c.params.a(), c.params.gamma(), c.params.mu1(), c.params.mu2());
        let mut seen: Vec<&str> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| perr(format!("expected `key = value`, got `{line}`")))?;
            let Some(&known) = KEYS.iter().find(|&&k| k == key) else {
                return Err(perr(format!("unknown key `{key}`")));
            };
            if seen.contains(&known) {
                return Err(perr(format!("duplicate key `{key}`")));
            }
            seen.push(known);
            let num = || -> Result<f64> {
                value
                    .parse::<f64>()
                    .map_err(|_| perr(format!("key `{key}`: `{value}` is not a number")))
            };
            let int = || -> Result<u64> {
                value
                    .parse::<u64>()
                    .map_err(|_| perr(format!("key `{key}`: `{value}` is not a nonnegative integer")))
            };
            match key {
                "n" => c.n = int()? as usize,
                "L" => c.length = num()?,
                "a" => a = num()?,
                "gamma" => gamma = num()?,
                "mu1" => mu1 = num()?,
                "mu2" => mu2 = num()?,
                "dt" => c.dt = num()?,
                "T" => c.t_final = num()?,
                "eps" => c.eps = num()?,
                "seed" => c.seed = int()?,
                "ic" => {
                    c.ic = IcFamily::parse(value)
                        .ok_or_else(|| perr(format!("key `ic`: unknown family `{value}` (bumps, plane_wave)")))?
                }
                "monitor_every" => c.monitor_every = num()?,
                "out_dir" => c.out_dir = PathBuf::from(value),
                _ => unreachable!("key list checked above"),
            }
        }
        c.params = Params::new(a, gamma, mu1, mu2)?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt = {} must be positive", self.dt));
        }
        if !(self.t_final >= self.dt) {
            return bad(format!("T = {} must be at least dt = {}", self.t_final, self.dt));
        }
        if !(self.eps >= 0.0 && self.eps.is_finite()) {
            return bad(format!("eps = {} must be nonnegative", self.eps));
        }
        let ratio = self.monitor_every / self.dt;
        if !(ratio >= 1.0 - 1e-9 && (ratio - ratio.round()).abs() < 1e-9) {
            return bad(format!(
                "monitor_every = {} must be a positive multiple of dt = {}",
                self.monitor_every, self.dt
            ));
        }
        crate::spectral::GridSpec::new(self.n, self.length)?;
        let limit = self.cfl_limit();
        if self.dt > limit {
            return bad(format!("dt = {} exceeds the step guard 0.5 dx / c = {limit}", self.dt));
        }
        Ok(())
    }

    /// `0.5 dx / sqrt(a gamma)`.
    pub fn cfl_limit(&self) -> f64 {
        0.5 * (self.length / self.n as f64) / self.params.sound_speed()
    }

    pub fn steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }

    pub fn monitor_stride(&self) -> usize {
        (self.monitor_every / self.dt).round() as usize
    }

    /// Time for a sound wave to cross half the box, `L / (2 sqrt(a gamma))`.
    pub fn crossing_time(&self) -> f64 {
        self.length / (2.0 * self.params.sound_speed())
    }

    /// Every key with its resolved value, in the file syntax.
    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "L = {:?}", self.length);
        let _ = writeln!(s, "a = {:?}", p.a());
        let _ = writeln!(s, "gamma = {:?}", p.gamma());
        let _ = writeln!(s, "mu1 = {:?}", p.mu1());
        let _ = writeln!(s, "mu2 = {:?}", p.mu2());
        let _ = writeln!(s, "dt = {:?}", self.dt);
        let _ = writeln!(s, "T = {:?}", self.t_final);
        let _ = writeln!(s, "eps = {:?}", self.eps);
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "ic = {}", self.ic.name());
        let _ = writeln!(s, "monitor_every = {:?}", self.monitor_every);
        let _ = writeln!(s, "out_dir = {}", self.out_dir.display());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_text() {
        let c = RunConfig::parse("n = 16\nL = 20 # box\n\neps = 0.001\nic = plane_wave\nmonitor_every = 0.2\n").unwrap();
        assert_eq!(c.n, 16);
        assert_eq!(c.ic, IcFamily::PlaneWave);
        assert_eq!(RunConfig::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn unknown_key_names_key_and_line() {
        let e = RunConfig::parse("n = 16\nmu3 = 1\n").unwrap_err();
        match e {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("mu3"));
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn rejects_bad_values() {
        assert!(matches!(RunConfig::parse("dt = x"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(RunConfig::parse("a = 0.5"), Err(Error::Config(_))));
        assert!(matches!(RunConfig::parse("dt = 0.1\nmonitor_every = 0.15"), Err(Error::Config(_))));
        assert!(matches!(RunConfig::parse("dt = 5\nT = 10\nmonitor_every = 5"), Err(Error::Config(_))));
        assert!(matches!(RunConfig::parse("T = 0.01"), Err(Error::Config(_))));
        assert!(matches!(RunConfig::parse("eps = -1"), Err(Error::Config(_))));
        assert!(matches!(RunConfig::parse("n = 16\nn = 32"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(RunConfig::parse("just words"), Err(Error::Parse { line: 1, .. })));
    }
}
