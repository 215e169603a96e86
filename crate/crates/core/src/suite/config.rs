//! Campaign configuration: a flat TOML file, overridable field by field.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::sampling::{DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::topology::mesh::MAX_LEVEL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    #[serde(alias = "markdown")]
    Md,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "md" | "markdown" => Ok(ReportFormat::Md),
            _ => Err(Error::Usage(format!(
                "unknown report format `{s}` (expected json or md)"
            ))),
        }
    }
}

/// Names accepted by [`crate::suite::run_suite`].
pub const SUITES: [&str; 7] = [
    "massive",
    "massless",
    "splitting",
    "topology",
    "gauge",
    "infrastructure",
    "all",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suite: String,
    /// Massive spins (non-negative integers).
    pub spins: Vec<f64>,
    /// Massless helicities, each in `{±1, ±2}`.
    pub helicities: Vec<i32>,
    pub mass: f64,
    /// Sample points per commutator check.
    pub samples: usize,
    pub mesh_level: u32,
    pub seed: u64,
    /// Randomized candidates per internal-triple certificate.
    pub nogo_trials: usize,
    /// Fuzzed operator triples for the Jacobi check.
    pub fuzz_triples: usize,
    /// Tolerance per check tag, replacing the built-in value.
    pub tolerances: BTreeMap<String, f64>,
    pub format: ReportFormat,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: "all".into(),
            spins: vec![0.0, 1.0, 2.0],
            helicities: vec![-2, -1, 1, 2],
            mass: 1.0,
            samples: DEFAULT_SAMPLES,
            mesh_level: 4,
            seed: DEFAULT_SEED,
            nogo_trials: 10_000,
            fuzz_triples: 100,
            tolerances: BTreeMap::new(),
            format: ReportFormat::Json,
        }
    }
}

impl SuiteConfig {
    pub fn named(suite: &str) -> Self {
        SuiteConfig {
            suite: suite.into(),
            ..Self::default()
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: SuiteConfig =
            toml::from_str(text).map_err(|e| Error::Usage(format!("config: {e}")))?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Usage(format!("config: {e}")))
    }

    pub fn validate(&self) -> Result<()> {
        if !SUITES.contains(&self.suite.as_str()) {
            return Err(Error::Usage(format!(
                "unknown suite `{}` (expected one of {})",
                self.suite,
                SUITES.join(", ")
            )));
        }
        if self.samples < 10 {
            return Err(Error::Usage(format!(
                "samples must be at least 10, got {}",
                self.samples
            )));
        }
        if self.mesh_level > MAX_LEVEL {
            return Err(Error::Usage(format!(
                "mesh level {} exceeds {MAX_LEVEL}",
                self.mesh_level
            )));
        }
        for &s in &self.spins {
            if !(0.0..=10.0).contains(&s) || s.fract() != 0.0 {
                return Err(Error::Usage(format!(
                    "spin {s} is not an integer in [0, 10]"
                )));
            }
        }
        for &h in &self.helicities {
            if h == 0 || h.abs() > 2 {
                return Err(Error::Usage(format!("helicity {h} is not one of ±1, ±2")));
            }
        }
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return Err(Error::Usage(format!(
                "mass must be positive, got {}",
                self.mass
            )));
        }
        if self.nogo_trials == 0 || self.fuzz_triples == 0 {
            return Err(Error::Usage("trial counts must be positive".into()));
        }
        for (tag, t) in &self.tolerances {
            if !(*t > 0.0) || !t.is_finite() {
                return Err(Error::Usage(format!(
                    "tolerance for `{tag}` must be positive, got {t}"
                )));
            }
        }
        Ok(())
    }
}
