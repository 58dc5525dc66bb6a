use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::seed::AprioriParams;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("cannot parse config: {0}")]
    Parse(#[from] toml::de::Error),
}

/// Every tunable of a proof run.
///
/// The TOML form uses exactly these field names; unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofConfig {
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    pub delta_alpha: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub n_time: u32,
    pub i0: u32,
    pub j0: u32,
    pub n_period: u32,
    pub n_prune: u32,
    pub n_floquet: u32,
    pub m_floquet: u32,
    /// Cap on worklist pushes per subinterval.
    #[serde(default = "default_max_pushes")]
    pub max_pushes: u64,
    /// Wall-clock cap per subinterval in seconds; 0 disables it.
    #[serde(default)]
    pub wall_budget_seconds: f64,
}

fn default_max_pushes() -> u64 {
    1_000_000
}

impl ProofConfig {
    /// The three standard parameter rows, keyed 1 to 3; also shipped as `configs/row{1,2,3}.toml`.
    pub fn table_row(row: u32) -> ProofConfig {
        let (alpha_lo, alpha_hi, delta_alpha, n_time, eps1) = match row {
            1 => (1.90, 1.96, 0.01, 128, 0.02),
            2 => (1.96, 2.10, 0.01, 64, 0.05),
            3 => (2.10, 6.00, 0.1, 32, 0.05),
            _ => panic!("rows are numbered 1 to 3"),
        };
        ProofConfig {
            alpha_lo,
            alpha_hi,
            delta_alpha,
            eps1,
            eps2: 0.25,
            n_time,
            i0: 2,
            j0: 20,
            n_period: 10,
            n_prune: 4,
            n_floquet: 20,
            m_floquet: 5,
            max_pushes: default_max_pushes(),
            wall_budget_seconds: 0.0,
        }
    }

    /// Same parameters over a different `α` range.
    pub fn with_range(mut self, lo: f64, hi: f64) -> ProofConfig {
        self.alpha_lo = lo;
        self.alpha_hi = hi;
        self
    }

    pub fn apriori(&self) -> AprioriParams {
        AprioriParams {
            i0: self.i0,
            j0: self.j0,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: &str| Err(ConfigError::Invalid(m.to_string()));
        if !(self.alpha_lo > FRAC_PI_2) {
            return bad("alpha_lo must exceed pi/2");
        }
        if !(self.alpha_hi >= self.alpha_lo) || !self.alpha_hi.is_finite() {
            return bad("alpha_hi must be finite and at least alpha_lo");
        }
        if !(self.delta_alpha > 0.0) {
            return bad("delta_alpha must be positive");
        }
        if !(self.eps1 > 0.0 && self.eps2 > 0.0) {
            return bad("eps1 and eps2 must be positive");
        }
        let counts = [
            ("n_time", self.n_time),
            ("i0", self.i0),
            ("j0", self.j0),
            ("n_period", self.n_period),
            ("n_prune", self.n_prune),
            ("n_floquet", self.n_floquet),
            ("m_floquet", self.m_floquet),
        ];
        for (name, v) in counts {
            if v == 0 {
                return Err(ConfigError::Invalid(format!("{name} must be positive")));
            }
        }
        if self.n_time > 1 << 16 {
            return bad("n_time is unreasonably large");
        }
        if self.max_pushes == 0 {
            return bad("max_pushes must be positive");
        }
        if !(self.wall_budget_seconds >= 0.0) {
            return bad("wall_budget_seconds must be nonnegative");
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<ProofConfig, ConfigError> {
        let cfg: ProofConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("flat config serializes")
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}
