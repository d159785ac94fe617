//! Run configuration, read from TOML.
//!
//! ```toml
//! [bounds]
//! grid = [100, 1000]          # conductor bounds for the census, strictly increasing
//! max_cubic_disc = 1000       # cubic enumeration cap; the pair census needs it >= max(grid)
//! kummer_radius = 1           # optional; omitted means the per-field default radius
//!
//! [constants]
//! appendix_c = "1/2"          # optional calibrated constant for the θ_{M,2} bound
//! dh_bracket = ["1/5", "8/25"]
//! wild_cap_quartic = "4478976" # optional overrides of the discriminant-bound constants
//!
//! [modes]
//! ingest = "strict"           # or "lenient"
//! index_policy = "skip"       # or "strict"
//! workers = 1
//!
//! [output]
//! dir = "out"
//! tables = ["data/quartic_sample.csv", "data/quintic_sample.jsonl"]
//! ```

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::census::{IndexPolicy, IngestMode, WildCaps};
use crate::exactnum::Rational;
use crate::quadchar::MAX_RADIUS;

/// Largest grid point and cubic cap accepted.
pub const MAX_GRID: u64 = 1_000_000;
pub const MAX_CUBIC_DISC: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {0}: {1}")]
    Io(PathBuf, String),
    #[error("invalid config: {0}")]
    Parse(String),
    #[error("config value out of range: {0}")]
    Range(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    pub grid: Vec<u64>,
    pub max_cubic_disc: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kummer_radius: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constants {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub appendix_c: Option<String>,
    pub dh_bracket: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wild_cap_quartic: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wild_cap_quintic: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Modes {
    pub ingest: IngestMode,
    pub index_policy: IndexPolicy,
    pub workers: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    pub dir: PathBuf,
    #[serde(default)]
    pub tables: Vec<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub bounds: Bounds,
    pub constants: Constants,
    pub modes: Modes,
    pub output: Output,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            bounds: Bounds { grid: vec![100, 1000, 10_000], max_cubic_disc: 10_000, kummer_radius: None },
            constants: Constants {
                appendix_c: None,
                dh_bracket: ["1/5".into(), "8/25".into()],
                wild_cap_quartic: None,
                wild_cap_quintic: None,
            },
            modes: Modes { ingest: IngestMode::Strict, index_policy: IndexPolicy::Skip, workers: 1 },
            output: Output { dir: PathBuf::from("out"), tables: Vec::new() },
        }
    }
}

fn parse_rational(field: &str, s: &str) -> Result<Rational, ConfigError> {
    s.trim().parse::<Rational>().map_err(|e| ConfigError::Parse(format!("{field} = {s:?}: {e}")))
}

fn parse_int(field: &str, s: &str) -> Result<BigInt, ConfigError> {
    s.trim().parse::<BigInt>().map_err(|e| ConfigError::Parse(format!("{field} = {s:?}: {e}")))
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let c: Config = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.to_path_buf(), e.to_string()))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// SHA-256 of the canonical TOML serialization.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_toml().as_bytes()))
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let g = &self.bounds.grid;
        if g.is_empty() || g.windows(2).any(|w| w[0] >= w[1]) || g[0] == 0 {
            return Err(ConfigError::Range("grid must be positive and strictly increasing".into()));
        }
        if *g.last().unwrap() > MAX_GRID {
            return Err(ConfigError::Range(format!("grid exceeds {MAX_GRID}")));
        }
        if self.bounds.max_cubic_disc > MAX_CUBIC_DISC {
            return Err(ConfigError::Range(format!("max_cubic_disc exceeds {MAX_CUBIC_DISC}")));
        }
        if let Some(r) = self.bounds.kummer_radius {
            if r == 0 || r > MAX_RADIUS {
                return Err(ConfigError::Range(format!("kummer_radius must lie in 1..={MAX_RADIUS}")));
            }
        }
        if self.modes.workers == 0 || self.modes.workers > 256 {
            return Err(ConfigError::Range("workers must lie in 1..=256".into()));
        }
        let [lo, hi] = self.dh_bracket()?;
        if lo > hi {
            return Err(ConfigError::Range("dh_bracket is reversed".into()));
        }
        self.appendix_c()?;
        self.wild_caps()?;
        Ok(())
    }

    pub fn appendix_c(&self) -> Result<Option<Rational>, ConfigError> {
        self.constants.appendix_c.as_deref().map(|s| parse_rational("appendix_c", s)).transpose()
    }

    pub fn dh_bracket(&self) -> Result<[Rational; 2], ConfigError> {
        let [a, b] = &self.constants.dh_bracket;
        Ok([parse_rational("dh_bracket", a)?, parse_rational("dh_bracket", b)?])
    }

    pub fn wild_caps(&self) -> Result<WildCaps, ConfigError> {
        let mut caps = WildCaps::default();
        if let Some(s) = &self.constants.wild_cap_quartic {
            caps.quartic = parse_int("wild_cap_quartic", s)?;
        }
        if let Some(s) = &self.constants.wild_cap_quintic {
            caps.quintic = parse_int("wild_cap_quintic", s)?;
        }
        if caps.quartic < BigInt::from(1) || caps.quintic < BigInt::from(1) {
            return Err(ConfigError::Range("wild caps must be positive".into()));
        }
        Ok(caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_hash() {
        let c = Config::default();
        let back = Config::from_toml(&c.to_toml()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.hash(), c.hash());
        let mut d = c.clone();
        d.bounds.kummer_radius = Some(2);
        assert_ne!(d.hash(), c.hash());
        assert_eq!(Config::from_toml(&d.to_toml()).unwrap(), d);
    }

    #[test]
    fn rejects_bad_values() {
        let mut c = Config::default();
        c.bounds.grid = vec![100, 10];
        assert!(matches!(c.validate(), Err(ConfigError::Range(_))));
        let mut c = Config::default();
        c.bounds.kummer_radius = Some(MAX_RADIUS + 1);
        assert!(c.validate().is_err());
        assert!(matches!(Config::from_toml("[bounds]\ngrid = [1]\n"), Err(ConfigError::Parse(_))));
        let text = Config::default().to_toml().replace("workers = 1", "workers = 1\nspeed = 3");
        assert!(matches!(Config::from_toml(&text), Err(ConfigError::Parse(_))));
    }
}
