//! Fixed-length one-hot encoding of a circuit's gate sequence.
//!
//! Slot `d` holds a one-hot block over the action space for the `d`-th gate;
//! unused slots stay zero. Parameters are not encoded.

use super::actions::{action_index, action_space, n_actions, Action};
use super::circuit::Circuit;
use super::AnsatzError;

#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub d_max: usize,
    pub n_actions: usize,
    pub values: Vec<f64>,
}

impl Observation {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

pub fn observation_len(n_qubits: usize, d_max: usize) -> usize {
    d_max * n_actions(n_qubits)
}

pub fn encode(c: &Circuit, d_max: usize) -> Result<Observation, AnsatzError> {
    if c.len() > d_max {
        return Err(AnsatzError::TooDeep { ops: c.len(), d_max });
    }
    let na = n_actions(c.n_qubits());
    let mut values = vec![0.0; d_max * na];
    for (slot, op) in c.ops().iter().enumerate() {
        let idx = action_index(c.n_qubits(), op.kind, &op.qubits)
            .ok_or_else(|| AnsatzError::NotEncodable(format!("{:?} on {:?}", op.kind, op.qubits)))?;
        values[slot * na + idx] = 1.0;
    }
    Ok(Observation {
        d_max,
        n_actions: na,
        values,
    })
}

/// Recovers the gate sequence from an observation.
pub fn decode(obs: &Observation, n_qubits: usize) -> Result<Vec<Action>, AnsatzError> {
    let space = action_space(n_qubits);
    if space.len() != obs.n_actions || obs.values.len() != obs.d_max * obs.n_actions {
        return Err(AnsatzError::NotEncodable(
            "observation shape does not match the action space".into(),
        ));
    }
    let mut out = Vec::new();
    let mut ended = false;
    for block in obs.values.chunks(obs.n_actions) {
        let hot: Vec<usize> = block
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0.0)
            .map(|(i, _)| i)
            .collect();
        match hot.as_slice() {
            [] => ended = true,
            [i] if !ended && block[*i] == 1.0 => out.push(space[*i]),
            _ => return Err(AnsatzError::NotEncodable("malformed one-hot block".into())),
        }
    }
    Ok(out)
}
