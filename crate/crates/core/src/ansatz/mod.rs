//! Circuits, the RL action space, observation encoding and the
//! entanglement-enhancing block.

pub mod actions;
pub mod circuit;
pub mod ee;
pub mod encoding;

pub use actions::{action_index, action_space, append_action, n_actions, Action};
pub use circuit::{Circuit, GateKind, GateOp, ResourceCount};
pub use ee::build_ee_block;
pub use encoding::{decode, encode, observation_len, Observation};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnsatzError {
    #[error("action index {0} is outside the action space")]
    BadAction(usize),
    #[error("circuit has {expected} parameters, {found} supplied")]
    UnboundParams { expected: usize, found: usize },
    #[error("circuit with {ops} ops exceeds the encoding depth {d_max}")]
    TooDeep { ops: usize, d_max: usize },
    #[error("gate cannot be encoded: {0}")]
    NotEncodable(String),
    #[error("EE block parameter {0} outside [0, 0.5]")]
    OutOfRange(f64),
    #[error("invalid gate: {0}")]
    InvalidOp(String),
}
