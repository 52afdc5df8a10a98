//! One episode of the search loop and its log record.

use serde::{Deserialize, Serialize};

use super::env::EnvState;
use super::{QasConfig, QasError};
use crate::agent::{DdqnAgent, Transition};
use crate::ansatz::{Circuit, ResourceCount};
use crate::qcore::{apply_unitary, concurrence_mixed, concurrence_pure, conditional_entropy, DensityMatrix, PureState};
use crate::vqsd::eigen_readout;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeRecord {
    pub episode: u64,
    pub state_id: String,
    pub agent_seed: u64,
    pub ee_theta: f64,
    pub success: bool,
    pub final_cost: f64,
    pub circuit: Circuit,
    pub resources: ResourceCount,
    pub rewards: Vec<f64>,
    /// Cost after each step's optimisation, before any success polish.
    pub costs: Vec<f64>,
    /// Concurrence of the state fed to the circuit.
    pub concurrence_input: f64,
    /// Concurrence of `U|00>`.
    pub concurrence_of_ansatz: f64,
    /// Concurrence of `UρU†` before dephasing.
    pub concurrence_evolved: f64,
    /// `[S(q0|q1), S(q1|q0)]` of the input state.
    pub cond_entropy_input: [f64; 2],
    /// `[S(q0|q1), S(q1|q0)]` of `UρU†`.
    pub cond_entropy_evolved: [f64; 2],
    pub inferred_eigenvalues: Vec<f64>,
}

impl EpisodeRecord {
    pub fn total_reward(&self) -> f64 {
        self.rewards.iter().sum()
    }
}

/// Metrics derived from a finished circuit acting on `rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitMetrics {
    pub concurrence_input: f64,
    pub concurrence_of_ansatz: f64,
    pub concurrence_evolved: f64,
    pub cond_entropy_input: [f64; 2],
    pub cond_entropy_evolved: [f64; 2],
    pub inferred_eigenvalues: Vec<f64>,
}

pub fn circuit_metrics(rho: &DensityMatrix, c: &Circuit) -> Result<CircuitMetrics, QasError> {
    let u = c.to_unitary()?;
    let evolved = apply_unitary(rho, &u)?;
    let on_zero = PureState::basis(2, 0).evolve(&u)?;
    let pair = |r: &DensityMatrix| -> Result<[f64; 2], QasError> {
        Ok([conditional_entropy(r, 0)?, conditional_entropy(r, 1)?])
    };
    Ok(CircuitMetrics {
        concurrence_input: concurrence_mixed(rho)?,
        concurrence_of_ansatz: concurrence_pure(&on_zero)?,
        concurrence_evolved: concurrence_mixed(&evolved)?,
        cond_entropy_input: pair(rho)?,
        cond_entropy_evolved: pair(&evolved)?,
        inferred_eigenvalues: eigen_readout(rho, c)?.eigenvalues,
    })
}

/// Runs one episode from a reset environment, training the agent online.
pub fn run_episode(
    env: &mut EnvState,
    agent: &mut DdqnAgent,
    cfg: &QasConfig,
    episode: u64,
    state_id: &str,
    agent_seed: u64,
) -> Result<EpisodeRecord, QasError> {
    env.reset()?;
    let mut rewards = Vec::new();
    let mut costs = Vec::new();
    let success = loop {
        let obs = env.observation(cfg.d_max)?;
        let action = agent.act(&obs)?;
        let out = env.step(action, cfg)?;
        let next_obs = env.observation(cfg.d_max)?;
        agent.observe(Transition {
            obs,
            action,
            reward: out.reward,
            next_obs,
            terminal: out.terminal,
        })?;
        rewards.push(out.reward);
        costs.push(out.cost);
        if out.terminal {
            break out.success;
        }
    };
    let m = circuit_metrics(&env.effective_rho, &env.circuit)?;
    Ok(EpisodeRecord {
        episode,
        state_id: state_id.to_string(),
        agent_seed,
        ee_theta: env.ee_theta,
        success,
        final_cost: env.cost_now,
        resources: env.circuit.resources(),
        circuit: env.circuit.clone(),
        rewards,
        costs,
        concurrence_input: m.concurrence_input,
        concurrence_of_ansatz: m.concurrence_of_ansatz,
        concurrence_evolved: m.concurrence_evolved,
        cond_entropy_input: m.cond_entropy_input,
        cond_entropy_evolved: m.cond_entropy_evolved,
        inferred_eigenvalues: m.inferred_eigenvalues,
    })
}
