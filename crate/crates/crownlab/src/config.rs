//! Run configuration: seed, tolerances and sample counts, loadable from
//! TOML with the `CROWNLAB_SEED` environment override.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub algebraic: f64,
    pub eigen: f64,
    pub quadrature: f64,
    pub kms: f64,
    pub deficit: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { algebraic: 1e-12, eigen: 1e-9, quadrature: 1e-10, kms: 1e-6, deficit: 0.05 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SampleCounts {
    pub euler_classify: usize,
    pub crown_membership: usize,
    pub cr2_points: usize,
    pub cr2_grid: usize,
    pub hardy_norms: usize,
    pub kms_vectors: usize,
    pub strip_bound: usize,
    pub envelope_bound: usize,
    pub hardy_bound_pairs: usize,
    pub rs_rank: usize,
    pub regnet_cosets: usize,
}

impl Default for SampleCounts {
    fn default() -> Self {
        SampleCounts {
            euler_classify: 10_000,
            crown_membership: 100_000,
            cr2_points: 10_000,
            cr2_grid: 101,
            hardy_norms: 100,
            kms_vectors: 20,
            strip_bound: 10_000,
            envelope_bound: 10_000,
            hardy_bound_pairs: 20,
            rs_rank: 64,
            regnet_cosets: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub output_dir: String,
    pub tolerances: Tolerances,
    pub samples: SampleCounts,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            output_dir: ".".into(),
            tolerances: Tolerances::default(),
            samples: SampleCounts::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(s).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    /// Apply the `CROWNLAB_SEED` override when present.
    pub fn with_env_seed(mut self) -> Result<Self> {
        if let Ok(s) = std::env::var("CROWNLAB_SEED") {
            self.seed = s
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::ConfigInvalid(format!("CROWNLAB_SEED `{s}` is not a u64")))?;
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.tolerances;
        for (name, v) in [
            ("algebraic", t.algebraic),
            ("eigen", t.eigen),
            ("quadrature", t.quadrature),
            ("kms", t.kms),
            ("deficit", t.deficit),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::ConfigInvalid(format!("tolerance `{name}` must be positive")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn toml_roundtrip_and_partial_override() {
        let cfg = RunConfig::from_toml_str("seed = 7\n[tolerances]\nkms = 1e-7\n").unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.tolerances.kms, 1e-7);
        assert_eq!(cfg.tolerances.deficit, 0.05);
        let text = toml::to_string(&cfg).unwrap();
        let back = RunConfig::from_toml_str(&text).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn rejects_bad_tolerances_and_unknown_keys() {
        assert!(RunConfig::from_toml_str("[tolerances]\nkms = -1.0\n").is_err());
        assert!(RunConfig::from_toml_str("nonsense_key = 3\n").is_err());
        assert!(RunConfig::from_toml_str("seed = \"x\"\n").is_err());
    }
}
