//! Experiment configuration files.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::qas::{QasConfig, RunIdentity};
use crate::qcore::{derive_seed, sample_hs_random_state, DensityMatrix};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetSpec {
    /// Hilbert–Schmidt random two-qubit state from this sampler seed.
    Sampler { seed: u64 },
    /// State JSON file; relative paths resolve against the config file.
    File { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Seeds {
    pub agent_init: u64,
    pub policy: u64,
}

impl Seeds {
    pub fn from_base(seed: u64) -> Self {
        Self {
            agent_init: seed,
            policy: derive_seed(seed, 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub state_id: String,
    pub target: TargetSpec,
    pub seeds: Seeds,
    pub search: QasConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(state_id: impl Into<String>, target: TargetSpec, seeds: Seeds, search: QasConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            state_id: state_id.into(),
            target,
            seeds,
            search,
            output_dir: None,
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let cfg: ExperimentConfig = serde_json::from_str(&text).map_err(|e| CliError::Malformed {
            path: path.to_path_buf(),
            line: e.line(),
            message: e.to_string(),
        })?;
        if cfg.schema_version != SCHEMA_VERSION {
            return Err(CliError::Malformed {
                path: path.to_path_buf(),
                line: 1,
                message: format!("unsupported schema_version {}", cfg.schema_version),
            });
        }
        let mut cfg = cfg;
        // Store the state path absolutely so the echoed config works from
        // any directory.
        if let TargetSpec::File { path: p } = &cfg.target {
            let joined = path.parent().unwrap_or(Path::new(".")).join(p);
            let resolved = std::fs::canonicalize(&joined).unwrap_or(joined);
            cfg.target = TargetSpec::File { path: resolved };
        }
        cfg.search.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn identity(&self) -> RunIdentity {
        RunIdentity {
            state_id: self.state_id.clone(),
            agent_seed: self.seeds.agent_init,
            policy_seed: self.seeds.policy,
        }
    }

    pub fn target_state(&self) -> Result<DensityMatrix, CliError> {
        match &self.target {
            TargetSpec::Sampler { seed } => Ok(sample_hs_random_state(2, *seed)),
            TargetSpec::File { path } => load_state(path),
        }
    }
}

pub fn load_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed {
        path: path.to_path_buf(),
        line: e.line(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let cfg = ExperimentConfig::new(
            "s7",
            TargetSpec::Sampler { seed: 7 },
            Seeds::from_base(3),
            QasConfig::default(),
        );
        let back: ExperimentConfig = serde_json::from_str(&cfg.to_json()).unwrap();
        assert_eq!(back, cfg);
        assert!(cfg.to_json().contains("\"kind\": \"sampler\""));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let mut v: serde_json::Value = serde_json::from_str(
            &ExperimentConfig::new(
                "s",
                TargetSpec::Sampler { seed: 1 },
                Seeds::from_base(1),
                QasConfig::default(),
            )
            .to_json(),
        )
        .unwrap();
        v["search"]["zta"] = serde_json::json!(0.1);
        assert!(serde_json::from_value::<ExperimentConfig>(v).is_err());
    }
}
