//! Purity-gap cost: `Tr ρ² − Tr Z(UρU†)²`, with `Z` the full dephasing
//! channel. Zero exactly when `UρU†` is diagonal.

use num_complex::Complex64;

use super::VqsdError;
use crate::ansatz::Circuit;
use crate::qcore::{purity, ComplexMatrix, DensityMatrix};

pub fn cost(rho: &DensityMatrix, c: &Circuit) -> Result<f64, VqsdError> {
    CostEvaluator::new(rho, c)?.eval(c.params())
}

/// Cost for an explicit unitary rather than a circuit.
pub fn cost_for_unitary(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<f64, VqsdError> {
    if u.rows() != rho.dim() || u.cols() != rho.dim() {
        return Err(VqsdError::DimensionMismatch {
            state: rho.dim(),
            circuit: u.rows(),
        });
    }
    let diag = rotated_diagonal(rho, u.as_slice(), rho.dim());
    Ok((purity(rho) - diag.iter().map(|p| p * p).sum::<f64>()).max(0.0))
}

/// Reusable cost evaluator for one (state, circuit structure) pair.
pub struct CostEvaluator<'a> {
    rho: &'a DensityMatrix,
    circuit: &'a Circuit,
    purity: f64,
}

impl<'a> CostEvaluator<'a> {
    pub fn new(rho: &'a DensityMatrix, circuit: &'a Circuit) -> Result<Self, VqsdError> {
        if rho.dim() != circuit.dim() {
            return Err(VqsdError::DimensionMismatch {
                state: rho.dim(),
                circuit: circuit.dim(),
            });
        }
        Ok(Self {
            rho,
            circuit,
            purity: purity(rho),
        })
    }

    pub fn n_params(&self) -> usize {
        self.circuit.n_params()
    }

    pub fn eval(&self, params: &[f64]) -> Result<f64, VqsdError> {
        let u = self.circuit.unitary_with(params)?;
        let diag = rotated_diagonal(self.rho, u.as_slice(), self.rho.dim());
        let dephased: f64 = diag.iter().map(|p| p * p).sum();
        Ok((self.purity - dephased).max(0.0))
    }
}

/// Diagonal of `U ρ U†` from a row-major `U`.
pub(crate) fn rotated_diagonal(rho: &DensityMatrix, u: &[Complex64], d: usize) -> Vec<f64> {
    let m = rho.matrix().as_slice();
    (0..d)
        .map(|b| {
            let row = &u[b * d..(b + 1) * d];
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..d {
                let mut inner = Complex64::new(0.0, 0.0);
                for j in 0..d {
                    inner += m[i * d + j] * row[j].conj();
                }
                acc += row[i] * inner;
            }
            acc.re
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::{Circuit, GateKind};
    use crate::qcore::{apply_unitary, dephase, sample_hs_random_state, PureState};

    #[test]
    fn diagonal_state_costs_nothing() {
        let rho = DensityMatrix::diagonal(&[0.4, 0.3, 0.2, 0.1]).unwrap();
        assert_eq!(cost(&rho, &Circuit::new(2)).unwrap(), 0.0);
    }

    #[test]
    fn bell_state_costs_half() {
        let rho = DensityMatrix::from_pure(&PureState::bell_phi_plus());
        assert!((cost(&rho, &Circuit::new(2)).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn agrees_with_explicit_channel() {
        let rho = sample_hs_random_state(2, 11);
        let mut c = Circuit::new(2);
        c.push(GateKind::RY, &[0], Some(0.3)).unwrap();
        c.push(GateKind::CX, &[0, 1], None).unwrap();
        c.push(GateKind::RX, &[1], Some(-1.2)).unwrap();
        let u = c.to_unitary().unwrap();
        let evolved = apply_unitary(&rho, &u).unwrap();
        let explicit = purity(&rho) - purity(&dephase(&evolved));
        assert!((cost(&rho, &c).unwrap() - explicit).abs() < 1e-14);
    }

    #[test]
    fn trailing_rz_leaves_cost_unchanged() {
        let rho = sample_hs_random_state(2, 12);
        let mut c = Circuit::new(2);
        c.push(GateKind::RY, &[1], Some(0.7)).unwrap();
        c.push(GateKind::CX, &[1, 0], None).unwrap();
        let before = cost(&rho, &c).unwrap();
        c.push(GateKind::RZ, &[0], Some(1.1)).unwrap();
        assert!((cost(&rho, &c).unwrap() - before).abs() < 1e-14);
    }

    #[test]
    fn dimension_mismatch() {
        let rho = sample_hs_random_state(1, 1);
        assert!(matches!(
            cost(&rho, &Circuit::new(2)),
            Err(VqsdError::DimensionMismatch { .. })
        ));
    }
}
