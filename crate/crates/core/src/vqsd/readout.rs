//! Eigenvalue and eigenvector estimates from a trained diagonalizing circuit.

use serde::{Deserialize, Serialize};

use super::cost::rotated_diagonal;
use super::VqsdError;
use crate::ansatz::Circuit;
use crate::qcore::{ComplexMatrix, DensityMatrix, PureState};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenReadout {
    /// Inferred eigenvalues, non-increasing.
    pub eigenvalues: Vec<f64>,
    /// Computational-basis label each eigenvalue was read from.
    pub bitstrings: Vec<String>,
    #[serde(skip)]
    pub eigenvectors: Vec<PureState>,
}

/// Reads the diagonal of `UρU†` as the spectrum; the eigenvector for label
/// `b` is `U†|b>`. Equal values keep bitstring order.
pub fn eigen_readout(rho: &DensityMatrix, c: &Circuit) -> Result<EigenReadout, VqsdError> {
    if rho.dim() != c.dim() {
        return Err(VqsdError::DimensionMismatch {
            state: rho.dim(),
            circuit: c.dim(),
        });
    }
    eigen_readout_unitary(rho, &c.to_unitary()?)
}

/// Readout for an explicit unitary.
pub fn eigen_readout_unitary(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<EigenReadout, VqsdError> {
    let d = rho.dim();
    if u.rows() != d || u.cols() != d {
        return Err(VqsdError::DimensionMismatch {
            state: d,
            circuit: u.rows(),
        });
    }
    let diag: Vec<f64> = rotated_diagonal(rho, u.as_slice(), d)
        .into_iter()
        .map(|p| p.clamp(0.0, 1.0))
        .collect();
    let mut order: Vec<usize> = (0..d).collect();
    // Stable sort keeps ascending bitstrings among exact ties.
    order.sort_by(|&a, &b| diag[b].total_cmp(&diag[a]));
    let u_dag = u.adjoint();
    let n = rho.n_qubits();
    let mut eigenvectors = Vec::with_capacity(d);
    for &b in &order {
        eigenvectors.push(PureState::normalized(u_dag.column(b))?);
    }
    Ok(EigenReadout {
        eigenvalues: order.iter().map(|&b| diag[b]).collect(),
        bitstrings: order.iter().map(|&b| format!("{b:0n$b}")).collect(),
        eigenvectors,
    })
}
