//! Double deep-Q learning: networks, ADAM, replay, ε-greedy policy,
//! checkpoints and a toy-MDP harness.

pub mod adam;
pub mod checkpoint;
pub mod dqn;
pub mod network;
pub mod replay;
pub mod schedule;
pub mod toy;

pub use adam::{AdamParams, AdamState};
pub use checkpoint::{load_checkpoint, save_checkpoint, sidecar_path, Sidecar};
pub use dqn::{argmax, ddqn_update, select_action, sync_target, td_loss_and_grads, td_targets, AgentConfig, DdqnAgent};
pub use network::{Gradients, Layer, QNetwork};
pub use replay::{ReplayBuffer, Transition};
pub use schedule::EpsilonSchedule;
pub use toy::{toy_config, train_toy_mdp, ToyMdp, ToyReport};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AgentError {
    #[error("input has length {found}, network expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bad network shape: {0}")]
    BadShape(String),
    #[error("checkpoint layer sizes {found:?} do not match expected {expected:?}")]
    ShapeMismatch { expected: Vec<usize>, found: Vec<usize> },
    #[error("invalid agent config: {0}")]
    BadConfig(String),
    #[error("action {0} outside the network's output range")]
    BadAction(usize),
    #[error("update batch is empty")]
    EmptyBatch,
    #[error("non-finite TD loss at update {update}: {detail}")]
    NonFiniteLoss { update: u64, detail: String },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
