//! `config.json`: the problem blocks plus grid, certificate, solver, sweep
//! and output settings.

use std::path::{Path, PathBuf};

use pxbiharm::config::{NonlinearityConfig, PotentialConfig, ProblemSpec};
use pxbiharm::profile::Profile;
use pxbiharm::{Domain, SolverOptions};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema: u32,
    pub domain: Domain,
    #[serde(default = "default_grid_n")]
    pub grid_n: usize,
    pub exponent: Profile,
    pub potential: PotentialConfig,
    pub nonlinearity: NonlinearityConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub certificate: CertificateConfig,
    #[serde(default)]
    pub solver: SolverOptions,
    #[serde(default)]
    pub sweep: SweepConfig,
    #[serde(default)]
    pub spaces: SpacesConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn default_grid_n() -> usize {
    201
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CertificateConfig {
    pub r: f64,
    /// Fixed `h`; when absent, `h` is scanned.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    /// Points of the `h` scan.
    pub h_scan: usize,
    /// Use the one-dimensional fourth-order theorem.
    pub dim1: bool,
    /// `l` of the one-dimensional theorem; scanned with `h` when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
}

impl Default for CertificateConfig {
    fn default() -> Self {
        CertificateConfig { r: 1.0, h: None, h_scan: 41, dim1: false, l: None, nu: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub m: usize,
    /// Interval to straddle; the certified interval when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { m: 7, interval: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpacesConfig {
    pub cases: usize,
}

impl Default for SpacesConfig {
    fn default() -> Self {
        SpacesConfig { cases: 50 }
    }
}

/// File outputs; relative paths resolve against the config file's directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub solutions: PathBuf,
    pub sweep: PathBuf,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { solutions: "solutions.csv".into(), sweep: "sweep.csv".into() }
    }
}

/// Command-line overrides.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub lambda: Option<f64>,
    pub seed: Option<u64>,
    pub grid_n: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path, overrides: Overrides) -> Result<(Self, PathBuf), CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        let mut cfg: RunConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        if let Some(l) = overrides.lambda {
            cfg.lambda = Some(l);
        }
        if let Some(s) = overrides.seed {
            cfg.solver.seed = s;
        }
        if let Some(n) = overrides.grid_n {
            cfg.grid_n = n;
        }
        cfg.validate()?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((cfg, base))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Invalid(m));
        if self.schema != SCHEMA_VERSION {
            return bad(format!("schema {} is not supported (expected {SCHEMA_VERSION})", self.schema));
        }
        if self.grid_n < 5 {
            return bad(format!("grid_n = {} must be at least 5", self.grid_n));
        }
        let c = &self.certificate;
        if !(c.r > 0.0 && c.r.is_finite()) {
            return bad(format!("certificate.r = {} must be positive", c.r));
        }
        for (name, v) in [("h", c.h), ("l", c.l)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return bad(format!("certificate.{name} = {v} must be positive"));
                }
            }
        }
        if c.h_scan < 2 {
            return bad("certificate.h_scan must be at least 2".into());
        }
        let s = &self.solver;
        if !(s.tol > 0.0) || s.max_iter == 0 || s.k_max == 0 || !(s.delta_dist > 0.0) {
            return bad("solver: tol, max_iter, k_max and delta_dist must be positive".into());
        }
        if self.sweep.m < 2 {
            return bad(format!("sweep.m = {} must be at least 2", self.sweep.m));
        }
        if let Some([lo, hi]) = self.sweep.interval {
            if !(lo > 0.0 && hi > lo && hi.is_finite()) {
                return bad(format!("sweep.interval [{lo}, {hi}] must satisfy 0 < lo < hi"));
            }
        }
        if self.spaces.cases == 0 {
            return bad("spaces.cases must be positive".into());
        }
        Ok(())
    }

    pub fn problem(&self) -> ProblemSpec {
        ProblemSpec {
            domain: self.domain,
            exponent: self.exponent.clone(),
            potential: self.potential.clone(),
            nonlinearity: self.nonlinearity.clone(),
        }
    }
}
