//! Flat `key=value` configuration with command-line overrides.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::model::{Parameters, State};
use crate::simulation::default_transient;

pub const DEFAULT_N: usize = 10_000;

/// Recognised keys. Dashes and underscores are interchangeable in files.
pub const KEYS: [&str; 15] = [
    "c",
    "beta",
    "r",
    "theta",
    "initial_u",
    "initial_v",
    "n",
    "transient",
    "theta_min",
    "theta_max",
    "theta_step",
    "search_min",
    "search_max",
    "out",
    "svg",
];

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub c: Option<f64>,
    pub beta: Option<f64>,
    pub r: Option<f64>,
    pub theta: Option<f64>,
    pub initial_u: Option<f64>,
    pub initial_v: Option<f64>,
    pub n: Option<usize>,
    pub transient: Option<usize>,
    pub theta_min: Option<f64>,
    pub theta_max: Option<f64>,
    pub theta_step: Option<f64>,
    pub search_min: Option<f64>,
    pub search_max: Option<f64>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// A real number, optionally written as a ratio `a/b`.
pub fn parse_real(key: &str, s: &str) -> Result<f64, ConfigError> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((a, b)) => match (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
            (Ok(a), Ok(b)) => a / b,
            _ => return err(format!("{key}: cannot parse `{s}` as a number")),
        },
        None => match s.parse::<f64>() {
            Ok(x) => x,
            Err(_) => return err(format!("{key}: cannot parse `{s}` as a number")),
        },
    };
    if !value.is_finite() {
        return err(format!("{key}: `{s}` is not finite"));
    }
    Ok(value)
}

fn parse_count(key: &str, s: &str) -> Result<usize, ConfigError> {
    s.trim()
        .parse()
        .or_else(|_| err(format!("{key}: `{}` is not a non-negative integer", s.trim())))
}

/// Parse the text of a config file into raw key/value pairs.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return err(format!("line {}: expected key=value", lineno + 1));
        };
        let key = k.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return err(format!("line {}: unknown key `{}`", lineno + 1, k.trim()));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let key = key.replace('-', "_");
        match key.as_str() {
            "c" => self.c = Some(parse_real("c", value)?),
            "beta" => self.beta = Some(parse_real("beta", value)?),
            "r" => self.r = Some(parse_real("r", value)?),
            "theta" => self.theta = Some(parse_real("theta", value)?),
            "initial_u" => self.initial_u = Some(parse_real("initial_u", value)?),
            "initial_v" => self.initial_v = Some(parse_real("initial_v", value)?),
            "n" => self.n = Some(parse_count("n", value)?),
            "transient" => self.transient = Some(parse_count("transient", value)?),
            "theta_min" => self.theta_min = Some(parse_real("theta_min", value)?),
            "theta_max" => self.theta_max = Some(parse_real("theta_max", value)?),
            "theta_step" => self.theta_step = Some(parse_real("theta_step", value)?),
            "search_min" => self.search_min = Some(parse_real("search_min", value)?),
            "search_max" => self.search_max = Some(parse_real("search_max", value)?),
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "svg" => self.svg = Some(PathBuf::from(value.trim())),
            other => return err(format!("unknown key `{other}`")),
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        for (k, v) in parse_pairs(text)? {
            cfg.set(&k, &v)?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .or_else(|e| err(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    fn need<T: Copy>(v: Option<T>, key: &str) -> Result<T, ConfigError> {
        v.map_or_else(|| err(format!("missing `{key}`")), Ok)
    }

    pub fn c(&self) -> Result<f64, ConfigError> {
        Self::need(self.c, "c")
    }

    pub fn beta(&self) -> Result<f64, ConfigError> {
        Self::need(self.beta, "beta")
    }

    pub fn r(&self) -> Result<f64, ConfigError> {
        Self::need(self.r, "r")
    }

    pub fn parameters(&self) -> Result<Parameters, ConfigError> {
        let theta = Self::need(self.theta, "theta")?;
        Parameters::new(self.c()?, self.beta()?, self.r()?, theta).map_err(|e| ConfigError(e.to_string()))
    }

    /// c, β, r validated with a placeholder θ.
    pub fn base_parameters(&self) -> Result<(f64, f64, f64), ConfigError> {
        let (c, beta, r) = (self.c()?, self.beta()?, self.r()?);
        Parameters::new(c, beta, r, 1.0).map_err(|e| ConfigError(e.to_string()))?;
        Ok((c, beta, r))
    }

    pub fn initial(&self) -> Result<State, ConfigError> {
        let u = Self::need(self.initial_u, "initial_u")?;
        let v = Self::need(self.initial_v, "initial_v")?;
        State::new(u, v).map_err(|e| ConfigError(e.to_string()))
    }

    /// (n, transient) with n > transient.
    pub fn horizon(&self) -> Result<(usize, usize), ConfigError> {
        let n = self.n.unwrap_or(DEFAULT_N);
        let transient = self.transient.unwrap_or_else(|| default_transient(n));
        if n <= transient {
            return err(format!("n = {n} must exceed transient = {transient}"));
        }
        Ok((n, transient))
    }

    pub fn search_interval(&self) -> Result<(f64, f64), ConfigError> {
        let lo = Self::need(self.search_min, "search_min")?;
        let hi = Self::need(self.search_max, "search_max")?;
        if !(lo < hi) {
            return err(format!("search interval [{lo}, {hi}] is empty"));
        }
        Ok((lo, hi))
    }

    /// θ_min, θ_min + h, … up to θ_max, each rounded to 12 decimals.
    pub fn theta_grid(&self) -> Result<Vec<f64>, ConfigError> {
        let lo = Self::need(self.theta_min, "theta_min")?;
        let hi = Self::need(self.theta_max, "theta_max")?;
        let h = Self::need(self.theta_step, "theta_step")?;
        if !(h > 0.0) {
            return err(format!("theta_step must be positive, got {h}"));
        }
        if hi < lo {
            return err(format!("theta_max {hi} is below theta_min {lo}"));
        }
        let count = ((hi - lo) / h + 1e-9).floor() as usize + 1;
        Ok((0..count)
            .map(|i| ((lo + i as f64 * h) * 1e12).round() / 1e12)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file_text() {
        let cfg = RunConfig::from_text("# example\nc = 1\nbeta=4\nr=10/9\ntheta = 4/9\nsearch-min=0.1\n").unwrap();
        assert_eq!(cfg.c, Some(1.0));
        assert_eq!(cfg.r, Some(10.0 / 9.0));
        assert_eq!(cfg.theta, Some(4.0 / 9.0));
        assert_eq!(cfg.search_min, Some(0.1));
        assert!(cfg.search_interval().is_err());
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(RunConfig::from_text("c 1").is_err());
        assert!(RunConfig::from_text("gamma=1").is_err());
        assert!(RunConfig::from_text("c=abc").is_err());
        assert!(RunConfig::from_text("n=-3").is_err());
        assert!(RunConfig::from_text("c=1/0").is_err());
    }

    #[test]
    fn horizon_defaults() {
        let mut cfg = RunConfig::default();
        assert_eq!(cfg.horizon().unwrap(), (10_000, 5_000));
        cfg.n = Some(1);
        assert_eq!(cfg.horizon().unwrap(), (1, 0));
        cfg.transient = Some(1);
        assert!(cfg.horizon().is_err());
    }

    #[test]
    fn grid() {
        let cfg = RunConfig::from_text("theta_min=0.40\ntheta_max=0.46\ntheta_step=0.01").unwrap();
        let g = cfg.theta_grid().unwrap();
        assert_eq!(g, vec![0.40, 0.41, 0.42, 0.43, 0.44, 0.45, 0.46]);
        let one = RunConfig::from_text("theta_min=4/9\ntheta_max=4/9\ntheta_step=0.1").unwrap();
        assert_eq!(one.theta_grid().unwrap().len(), 1);
        assert!(RunConfig::from_text("theta_min=0\ntheta_max=1\ntheta_step=0").unwrap().theta_grid().is_err());
    }
}
