//! The RL-VQSD loop: environment, reward, episodes and experiments.

pub mod env;
pub mod episode;
pub mod experiment;

pub use env::{EnvState, StepOutcome};
pub use episode::{circuit_metrics, run_episode, CircuitMetrics, EpisodeRecord};
pub use experiment::{
    new_agent, run_experiment, run_experiment_with, DirSink, EpisodeSink, ExperimentSummary, ResourceAverages,
    RunIdentity, SummaryBuilder,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agent::{AgentConfig, AgentError};
use crate::ansatz::AnsatzError;
use crate::qcore::QError;
use crate::vqsd::{VqsdError, ZETA_SLACK};

#[derive(Debug, Error)]
pub enum QasError {
    #[error(transparent)]
    Agent(#[from] AgentError),
    #[error(transparent)]
    Vqsd(#[from] VqsdError),
    #[error(transparent)]
    Ansatz(#[from] AnsatzError),
    #[error(transparent)]
    Quantum(#[from] QError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl QasError {
    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Self::Io {
            context: context.into(),
            source,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QasConfig {
    /// Total episodes `E_tot`.
    pub episodes: u64,
    pub zeta: f64,
    pub r_success: f64,
    pub d_max: usize,
    pub ee_theta: f64,
    /// Optimizer evaluations per agent step.
    pub budget: usize,
    pub checkpoint_every: u64,
    pub agent: AgentConfig,
}

impl Default for QasConfig {
    fn default() -> Self {
        Self {
            episodes: 10000,
            zeta: crate::vqsd::DEFAULT_ZETA,
            r_success: 5.0,
            d_max: 40,
            ee_theta: 0.0,
            budget: crate::vqsd::DEFAULT_BUDGET,
            checkpoint_every: 500,
            agent: AgentConfig::default(),
        }
    }
}

impl QasConfig {
    pub fn validate(&self) -> Result<(), QasError> {
        let bad = |m: &str| Err(QasError::Config(m.into()));
        if !(self.zeta > 0.0 && self.zeta < 1.0) {
            return bad("zeta must lie in (0, 1)");
        }
        if !self.r_success.is_finite() {
            return bad("r_success must be finite");
        }
        if self.d_max == 0 || self.d_max > 200 {
            return bad("d_max must lie in [1, 200]");
        }
        if !(0.0..=crate::ansatz::ee::EE_THETA_MAX).contains(&self.ee_theta) {
            return bad("ee_theta must lie in [0, 0.5]");
        }
        if self.budget == 0 {
            return bad("budget must be at least 1");
        }
        if self.checkpoint_every == 0 {
            return bad("checkpoint_every must be at least 1");
        }
        self.agent.validate()?;
        Ok(())
    }
}

/// `+r_success` below `ζ + 1e-5`, otherwise `−ln(cost − ζ)`.
pub fn reward(cost: f64, zeta: f64, r_success: f64) -> f64 {
    if cost < zeta + ZETA_SLACK {
        r_success
    } else {
        -(cost - zeta).ln()
    }
}
