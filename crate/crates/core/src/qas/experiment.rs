//! Multi-episode experiments with streamed logs, summaries and checkpoints.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::env::EnvState;
use super::episode::{run_episode, EpisodeRecord};
use super::{QasConfig, QasError};
use crate::agent::{save_checkpoint, DdqnAgent};
use crate::ansatz::{n_actions, observation_len};
use crate::qcore::DensityMatrix;

/// Successes whose resources enter the summary averages.
pub const FIRST_SUCCESSES: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunIdentity {
    pub state_id: String,
    pub agent_seed: u64,
    pub policy_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceAverages {
    pub n: usize,
    pub depth: f64,
    pub total_gates: f64,
    pub one_qubit_gates: f64,
    pub two_qubit_gates: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub state_id: String,
    pub agent_seed: u64,
    pub ee_theta: f64,
    pub e_tot: u64,
    pub e_s: u64,
    pub total_reward: f64,
    pub best_cost: Option<f64>,
    pub first_success_episode: Option<u64>,
    /// Averages over the first successes (at most 100).
    pub first_successes: Option<ResourceAverages>,
    pub config: serde_json::Value,
    pub code_version: String,
}

/// Folds episode records into a summary; can be primed from an existing log
/// when resuming.
#[derive(Debug, Clone)]
pub struct SummaryBuilder {
    e_tot: u64,
    e_s: u64,
    total_reward: f64,
    best_cost: Option<f64>,
    first_success: Option<u64>,
    sums: [f64; 4],
    n_first: usize,
}

impl Default for SummaryBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl SummaryBuilder {
    pub fn new() -> Self {
        Self {
            e_tot: 0,
            e_s: 0,
            total_reward: 0.0,
            best_cost: None,
            first_success: None,
            sums: [0.0; 4],
            n_first: 0,
        }
    }

    pub fn push(&mut self, r: &EpisodeRecord) {
        self.e_tot += 1;
        self.total_reward += r.total_reward();
        self.best_cost = Some(self.best_cost.map_or(r.final_cost, |b| b.min(r.final_cost)));
        if r.success {
            self.e_s += 1;
            self.first_success.get_or_insert(r.episode);
            if self.n_first < FIRST_SUCCESSES {
                let res = &r.resources;
                self.sums[0] += res.depth as f64;
                self.sums[1] += res.total_gates() as f64;
                self.sums[2] += res.one_qubit_gates as f64;
                self.sums[3] += res.two_qubit_gates as f64;
                self.n_first += 1;
            }
        }
    }

    pub fn e_tot(&self) -> u64 {
        self.e_tot
    }

    pub fn finish(&self, id: &RunIdentity, ee_theta: f64, config: serde_json::Value) -> ExperimentSummary {
        let n = self.n_first as f64;
        ExperimentSummary {
            state_id: id.state_id.clone(),
            agent_seed: id.agent_seed,
            ee_theta,
            e_tot: self.e_tot,
            e_s: self.e_s,
            total_reward: self.total_reward,
            best_cost: self.best_cost,
            first_success_episode: self.first_success,
            first_successes: (self.n_first > 0).then(|| ResourceAverages {
                n: self.n_first,
                depth: self.sums[0] / n,
                total_gates: self.sums[1] / n,
                one_qubit_gates: self.sums[2] / n,
                two_qubit_gates: self.sums[3] / n,
            }),
            config,
            code_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Receives records as they are produced and agent snapshots at checkpoint
/// boundaries.
pub trait EpisodeSink {
    fn record(&mut self, r: &EpisodeRecord) -> Result<(), QasError>;

    fn checkpoint(&mut self, _agent: &DdqnAgent, _episodes_done: u64, _final: bool) -> Result<(), QasError> {
        Ok(())
    }
}

impl EpisodeSink for Vec<EpisodeRecord> {
    fn record(&mut self, r: &EpisodeRecord) -> Result<(), QasError> {
        self.push(r.clone());
        Ok(())
    }
}

/// Writes `episodes.jsonl` and `checkpoints/` under one directory.
pub struct DirSink {
    dir: PathBuf,
    log: BufWriter<File>,
}

pub const EPISODE_LOG: &str = "episodes.jsonl";
pub const CHECKPOINT_DIR: &str = "checkpoints";

impl DirSink {
    /// Creates the directory; `append` keeps an existing log for resumed runs.
    pub fn create(dir: &Path, append: bool) -> Result<Self, QasError> {
        fs::create_dir_all(dir.join(CHECKPOINT_DIR)).map_err(|e| QasError::io(dir.display().to_string(), e))?;
        let path = dir.join(EPISODE_LOG);
        let file = fs::OpenOptions::new()
            .create(true)
            .write(true)
            .append(append)
            .truncate(!append)
            .open(&path)
            .map_err(|e| QasError::io(path.display().to_string(), e))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            log: BufWriter::new(file),
        })
    }

    pub fn checkpoint_path(dir: &Path, episodes_done: u64, final_: bool) -> PathBuf {
        let name = if final_ {
            "agent_final.bin".to_string()
        } else {
            format!("agent_ep{episodes_done:06}.bin")
        };
        dir.join(CHECKPOINT_DIR).join(name)
    }
}

impl EpisodeSink for DirSink {
    fn record(&mut self, r: &EpisodeRecord) -> Result<(), QasError> {
        let line = serde_json::to_string(r).map_err(|e| QasError::Config(e.to_string()))?;
        writeln!(self.log, "{line}").map_err(|e| QasError::io(EPISODE_LOG, e))
    }

    fn checkpoint(&mut self, agent: &DdqnAgent, episodes_done: u64, final_: bool) -> Result<(), QasError> {
        self.log.flush().map_err(|e| QasError::io(EPISODE_LOG, e))?;
        let path = Self::checkpoint_path(&self.dir, episodes_done, final_);
        save_checkpoint(agent, &path, serde_json::json!({ "episodes_done": episodes_done }))?;
        Ok(())
    }
}

pub fn new_agent(cfg: &QasConfig, id: &RunIdentity) -> Result<DdqnAgent, QasError> {
    Ok(DdqnAgent::new(
        observation_len(2, cfg.d_max),
        n_actions(2),
        cfg.agent.clone(),
        id.agent_seed,
        id.policy_seed,
    )?)
}

/// Fresh agent, `cfg.episodes` episodes.
pub fn run_experiment(
    cfg: &QasConfig,
    rho: &DensityMatrix,
    id: &RunIdentity,
    sink: &mut dyn EpisodeSink,
) -> Result<ExperimentSummary, QasError> {
    cfg.validate()?;
    let mut agent = new_agent(cfg, id)?;
    let summary = run_experiment_with(cfg, rho, id, &mut agent, 0, SummaryBuilder::new(), sink)?;
    Ok(summary)
}

/// Continues an experiment with an existing agent, numbering episodes from
/// `start_episode` and folding into `builder`.
pub fn run_experiment_with(
    cfg: &QasConfig,
    rho: &DensityMatrix,
    id: &RunIdentity,
    agent: &mut DdqnAgent,
    start_episode: u64,
    mut builder: SummaryBuilder,
    sink: &mut dyn EpisodeSink,
) -> Result<ExperimentSummary, QasError> {
    cfg.validate()?;
    let mut env = EnvState::new(rho.clone(), cfg.ee_theta)?;
    for ep in start_episode..cfg.episodes {
        let r = run_episode(&mut env, agent, cfg, ep, &id.state_id, id.agent_seed)?;
        builder.push(&r);
        sink.record(&r)?;
        let done = ep + 1;
        if done % cfg.checkpoint_every == 0 && done < cfg.episodes {
            sink.checkpoint(agent, done, false)?;
        }
    }
    sink.checkpoint(agent, cfg.episodes.max(start_episode), true)?;
    let config = serde_json::to_value(cfg).map_err(|e| QasError::Config(e.to_string()))?;
    Ok(builder.finish(id, cfg.ee_theta, config))
}
