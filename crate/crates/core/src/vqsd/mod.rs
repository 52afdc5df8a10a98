//! Variational state diagonalization: the purity-gap cost, parameter
//! training and spectrum readout.

pub mod cost;
pub mod optimizer;
pub mod readout;

pub use cost::{cost, cost_for_unitary, CostEvaluator};
pub use optimizer::{Minimum, NelderMead};
pub use readout::{eigen_readout, eigen_readout_unitary, EigenReadout};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ansatz::{AnsatzError, Circuit};
use crate::qcore::{DensityMatrix, QError};

/// Default evaluation budget for one parameter optimisation.
pub const DEFAULT_BUDGET: usize = 300;
/// Default success threshold on the cost.
pub const DEFAULT_ZETA: f64 = 1e-4;
/// Slack added to the threshold when accepting a circuit.
pub const ZETA_SLACK: f64 = 1e-5;

#[derive(Debug, Error)]
pub enum VqsdError {
    #[error("state has dimension {state} but circuit acts on dimension {circuit}")]
    DimensionMismatch { state: usize, circuit: usize },
    #[error(transparent)]
    Ansatz(#[from] AnsatzError),
    #[error(transparent)]
    Quantum(#[from] QError),
    #[error("cost evaluation produced a non-finite value")]
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub cost: f64,
    pub params_opt: Vec<f64>,
    pub evals_used: usize,
}

/// Trains the circuit parameters with Nelder–Mead, starting from
/// `warm_start` (or the circuit's current parameters). The result is never
/// worse than the starting point.
pub fn optimize_params(
    rho: &DensityMatrix,
    c: &Circuit,
    budget: usize,
    warm_start: Option<&[f64]>,
) -> Result<CostReport, VqsdError> {
    optimize_with(&NelderMead::default(), rho, c, budget, warm_start)
}

pub fn optimize_with(
    nm: &NelderMead,
    rho: &DensityMatrix,
    c: &Circuit,
    budget: usize,
    warm_start: Option<&[f64]>,
) -> Result<CostReport, VqsdError> {
    let eval = CostEvaluator::new(rho, c)?;
    let x0 = warm_start.unwrap_or(c.params());
    if x0.len() != c.n_params() {
        return Err(AnsatzError::UnboundParams {
            expected: c.n_params(),
            found: x0.len(),
        }
        .into());
    }
    // Parameter count is checked above, so evaluation cannot fail.
    let m = nm.minimize(|x| eval.eval(x).unwrap_or(f64::INFINITY), x0, budget);
    if !m.f.is_finite() {
        return Err(VqsdError::NonFinite);
    }
    Ok(CostReport {
        cost: m.f,
        params_opt: m.x,
        evals_used: m.evals,
    })
}

/// Whether a cost counts as a successful diagonalization at threshold `zeta`.
pub fn is_admissible(cost: f64, zeta: f64) -> bool {
    cost < zeta + ZETA_SLACK
}
