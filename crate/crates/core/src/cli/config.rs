//! Density expressions and the sweep configuration file.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{input_err, Error, Result};

/// A density as a function of `n`: `c`, `n^b` or `c*n^b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PRule {
    pub coefficient: f64,
    pub exponent: Option<f64>,
}

impl PRule {
    pub fn at(&self, n: u32) -> f64 {
        match self.exponent {
            None => self.coefficient,
            Some(b) => self.coefficient * (n as f64).powf(b),
        }
    }
}

fn parse_float(s: &str, whole: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| input_err!("bad density expression {whole:?}: {s:?} is not a number"))
}

impl FromStr for PRule {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let (coef, power) = match t.split_once("n^") {
            None => return Ok(Self { coefficient: parse_float(t, text)?, exponent: None }),
            Some((head, tail)) => {
                let head = head.trim();
                let coef = match head.strip_suffix('*') {
                    Some(c) => parse_float(c, text)?,
                    None if head.is_empty() => 1.0,
                    None => return Err(input_err!("bad density expression {text:?}: expected <float>*n^<float>")),
                };
                (coef, parse_float(tail, text)?)
            }
        };
        Ok(Self { coefficient: coef, exponent: Some(power) })
    }
}

impl fmt::Display for PRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            None => write!(f, "{}", self.coefficient),
            Some(b) if self.coefficient == 1.0 => write!(f, "n^{b}"),
            Some(b) => write!(f, "{}*n^{b}", self.coefficient),
        }
    }
}

/// `sweep` settings, read from a TOML file. Command-line flags override
/// the file.
///
/// ```toml
/// d = 2
/// r = 2                     # or: thresholds = [2, 3]
/// n_list = [64, 128, 256]
/// p = "n^-1.7"              # optional: estimate θ at this density
/// trials = 1000
/// seed = 7
/// fit = true
/// csv = "sweep.csv"         # optional per-n table
/// json = "fit.json"         # optional copy of the JSON record
/// ```
#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub d: Option<usize>,
    pub r: Option<u32>,
    pub thresholds: Option<Vec<u32>>,
    pub n_list: Option<Vec<u32>>,
    pub p: Option<String>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub fit: Option<bool>,
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| input_err!("sweep config: {e}"))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: SweepConfig) -> Self {
        Self {
            d: over.d.or(self.d),
            r: over.r.or(self.r),
            thresholds: over.thresholds.or(self.thresholds),
            n_list: over.n_list.or(self.n_list),
            p: over.p.or(self.p),
            trials: over.trials.or(self.trials),
            seed: over.seed.or(self.seed),
            fit: over.fit.or(self.fit),
            csv: over.csv.or(self.csv),
            json: over.json.or(self.json),
        }
    }

    /// Checks required fields and invariants.
    pub fn validate(&self) -> Result<()> {
        let n_list = self.n_list.as_ref().ok_or_else(|| input_err!("sweep needs n_list"))?;
        if n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(input_err!("n_list must be non-empty and strictly ascending"));
        }
        if self.d.is_none() {
            return Err(input_err!("sweep needs d"));
        }
        if self.r.is_some() == self.thresholds.is_some() {
            return Err(input_err!("sweep needs exactly one of r and thresholds"));
        }
        if self.trials.is_some_and(|t| t == 0) {
            return Err(input_err!("trials must be at least 1"));
        }
        if let Some(p) = &self.p {
            p.parse::<PRule>()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_grammar() {
        assert_eq!("0.25".parse::<PRule>().unwrap(), PRule { coefficient: 0.25, exponent: None });
        assert_eq!("n^-1.7".parse::<PRule>().unwrap(), PRule { coefficient: 1.0, exponent: Some(-1.7) });
        let r: PRule = "0.5*n^-1.5".parse().unwrap();
        assert_eq!(r, PRule { coefficient: 0.5, exponent: Some(-1.5) });
        assert!((r.at(64) - 0.5 / 512.0).abs() < 1e-15);
        for bad in ["", "n^", "2n^-1", "x", "0.5*m^2", "n^abc", "1e999"] {
            assert!(bad.parse::<PRule>().is_err(), "{bad}");
        }
        assert_eq!("0.5*n^-1.5".parse::<PRule>().unwrap().to_string(), "0.5*n^-1.5");
    }

    #[test]
    fn config_file() {
        let text = "d = 2\nr = 2\nn_list = [64, 128, 256]\ntrials = 100\nseed = 3\nfit = true\n# note\n";
        let cfg = SweepConfig::parse(text).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.n_list, Some(vec![64, 128, 256]));
        let cfg = cfg.overlay(SweepConfig { trials: Some(5), ..Default::default() });
        assert_eq!(cfg.trials, Some(5));
        assert!(SweepConfig::parse("bogus = 1").is_err());
        let bad = SweepConfig::parse("d = 2\nr = 2\nn_list = [64, 32]").unwrap();
        assert!(bad.validate().is_err());
        let both = SweepConfig::parse("d = 2\nr = 2\nthresholds = [2, 2]\nn_list = [8, 16, 32]").unwrap();
        assert!(both.validate().is_err());
    }
}
