//! The discrete action space: one rotation per (axis, qubit) and one CX per
//! ordered qubit pair.

use serde::{Deserialize, Serialize};

use super::circuit::{Circuit, GateKind};
use super::AnsatzError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    Rotation { kind: GateKind, qubit: usize },
    Cx { control: usize, target: usize },
}

impl Action {
    pub fn kind(&self) -> GateKind {
        match *self {
            Action::Rotation { kind, .. } => kind,
            Action::Cx { .. } => GateKind::CX,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Action::Rotation { qubit, .. } => vec![qubit],
            Action::Cx { control, target } => vec![control, target],
        }
    }
}

/// `[RX(q0), RY(q0), RZ(q0), RX(q1), ..., CX(0→1), CX(0→2), ..., CX(1→0), ...]`.
pub fn action_space(n_qubits: usize) -> Vec<Action> {
    let mut out = Vec::with_capacity(3 * n_qubits + n_qubits * n_qubits.saturating_sub(1));
    for qubit in 0..n_qubits {
        for kind in [GateKind::RX, GateKind::RY, GateKind::RZ] {
            out.push(Action::Rotation { kind, qubit });
        }
    }
    for control in 0..n_qubits {
        for target in 0..n_qubits {
            if control != target {
                out.push(Action::Cx { control, target });
            }
        }
    }
    out
}

pub fn n_actions(n_qubits: usize) -> usize {
    3 * n_qubits + n_qubits * n_qubits.saturating_sub(1)
}

/// Position of a gate in the action space, if it is one of the searchable gates.
pub fn action_index(n_qubits: usize, kind: GateKind, qubits: &[usize]) -> Option<usize> {
    match (kind, qubits) {
        (GateKind::RX | GateKind::RY | GateKind::RZ, &[q]) if q < n_qubits => {
            let axis = match kind {
                GateKind::RX => 0,
                GateKind::RY => 1,
                _ => 2,
            };
            Some(3 * q + axis)
        }
        (GateKind::CX, &[c, t]) if c < n_qubits && t < n_qubits && c != t => {
            let within = if t < c { t } else { t - 1 };
            Some(3 * n_qubits + c * (n_qubits - 1) + within)
        }
        _ => None,
    }
}

impl Circuit {
    /// Appends the gate for `action`; new rotations start at angle 0.
    pub fn push_action(&mut self, action: usize) -> Result<(), AnsatzError> {
        let space = action_space(self.n_qubits());
        let a = *space.get(action).ok_or(AnsatzError::BadAction(action))?;
        let param = a.kind().is_parametric().then_some(0.0);
        self.push(a.kind(), &a.qubits(), param)
    }
}

/// Functional form of [`Circuit::push_action`].
pub fn append_action(c: &Circuit, action: usize) -> Result<Circuit, AnsatzError> {
    let mut out = c.clone();
    out.push_action(action)?;
    Ok(out)
}
