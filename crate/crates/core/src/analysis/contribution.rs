//! Relative contribution of each qubit, measured by conditional entropy.

use serde::Serialize;

use super::csv::{fmt_num, Table};
use super::AnalysisError;
use crate::qas::EpisodeRecord;
use crate::qcore::{concurrence_mixed, conditional_entropy, DensityMatrix};

/// `(Δ, Δ_c)` for the change `ρ → ρ′`:
/// `Δ = [S(q0|q1)′ − S(q0|q1)] − [S(q1|q0)′ − S(q1|q0)]`, `Δ_c = C(ρ) − C(ρ′)`.
pub fn delta_contribution(rho: &DensityMatrix, rho_prime: &DensityMatrix) -> Result<(f64, f64), AnalysisError> {
    for s in [rho, rho_prime] {
        if s.n_qubits() != 2 {
            return Err(AnalysisError::BadArgument("contribution needs two-qubit states".into()));
        }
    }
    let before = [conditional_entropy(rho, 0)?, conditional_entropy(rho, 1)?];
    let after = [conditional_entropy(rho_prime, 0)?, conditional_entropy(rho_prime, 1)?];
    let delta = delta_from_entropies(before, after);
    let delta_c = concurrence_mixed(rho)? - concurrence_mixed(rho_prime)?;
    Ok((delta, delta_c))
}

pub fn delta_from_entropies(before: [f64; 2], after: [f64; 2]) -> f64 {
    (after[0] - before[0]) - (after[1] - before[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContributionPoint {
    pub delta_c: f64,
    pub delta: f64,
}

/// One point per successful episode, from the logged entropies.
pub fn contribution_points(records: &[EpisodeRecord]) -> Vec<ContributionPoint> {
    records
        .iter()
        .filter(|r| r.success)
        .map(|r| ContributionPoint {
            delta_c: r.concurrence_input - r.concurrence_evolved,
            delta: delta_from_entropies(r.cond_entropy_input, r.cond_entropy_evolved),
        })
        .collect()
}

/// `(Σ|Δ| over Δ < 0, Σ|Δ| over Δ > 0)`.
pub fn cumulative_weight(points: &[ContributionPoint]) -> (f64, f64) {
    let neg = points.iter().filter(|p| p.delta < 0.0).map(|p| -p.delta).sum();
    let pos = points.iter().filter(|p| p.delta > 0.0).map(|p| p.delta).sum();
    (neg, pos)
}

pub fn contribution_table(points: &[ContributionPoint]) -> Table {
    let mut t = Table::new(&["delta_c", "delta"]);
    for p in points {
        t.push(vec![fmt_num(p.delta_c), fmt_num(p.delta)]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{sample_hs_random_state, PureState};

    #[test]
    fn identical_states() {
        let rho = sample_hs_random_state(2, 1);
        assert_eq!(delta_contribution(&rho, &rho).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn mixed_to_bell() {
        let (d, dc) = delta_contribution(
            &DensityMatrix::maximally_mixed(2),
            &DensityMatrix::from_pure(&PureState::bell_phi_plus()),
        )
        .unwrap();
        assert!(d.abs() < 1e-12);
        assert!((dc + 1.0).abs() < 1e-12);
    }

    #[test]
    fn swapping_qubits_negates_delta() {
        let a = sample_hs_random_state(2, 2);
        let b = sample_hs_random_state(2, 3);
        let (d, _) = delta_contribution(&a, &b).unwrap();
        let (ds, _) = delta_contribution(&a.swap_qubits(), &b.swap_qubits()).unwrap();
        assert!((d + ds).abs() < 1e-12);
        assert!(d.abs() > 1e-6);
    }

    #[test]
    fn weights() {
        let pts: Vec<ContributionPoint> = [-0.2, 0.3, -0.1]
            .iter()
            .map(|&delta| ContributionPoint { delta_c: 0.0, delta })
            .collect();
        let (n, p) = cumulative_weight(&pts);
        assert!((n - 0.3).abs() < 1e-15 && (p - 0.3).abs() < 1e-15);
        assert_eq!(
            cumulative_weight(&[ContributionPoint {
                delta_c: 1.0,
                delta: 0.0
            }]),
            (0.0, 0.0)
        );
    }
}
