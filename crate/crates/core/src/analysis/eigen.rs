//! Per-state eigenvalue medians and the correlation between the qubits'
//! conditional entropies across admissible ansatzes.

use std::collections::BTreeMap;

use serde::Serialize;

use super::csv::{fmt_num, fmt_opt, Table};
use super::stats::{median, pcc, strength_label};
use super::AnalysisError;
use crate::qas::EpisodeRecord;

/// Per-ansatz outputs used by the study.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnsatzOutcome {
    pub cond_entropy: [f64; 2],
    pub eigenvalues: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenCorrelation {
    pub state_id: String,
    pub n_ansatz: usize,
    /// Median inferred eigenvalue per rank, largest first.
    pub median_eigenvalues: Vec<f64>,
    /// `None` when either entropy vector is constant.
    pub pcc: Option<f64>,
}

pub const MIN_ANSATZES: usize = 3;

pub fn correlate_outcomes(state_id: &str, outcomes: &[AnsatzOutcome]) -> Result<EigenCorrelation, AnalysisError> {
    if outcomes.len() < MIN_ANSATZES {
        return Err(AnalysisError::InsufficientAnsatzes {
            state: state_id.to_string(),
            found: outcomes.len(),
        });
    }
    let s0: Vec<f64> = outcomes.iter().map(|o| o.cond_entropy[0]).collect();
    let s1: Vec<f64> = outcomes.iter().map(|o| o.cond_entropy[1]).collect();
    let ranks = outcomes[0].eigenvalues.len();
    let median_eigenvalues = (0..ranks)
        .map(|k| median(&outcomes.iter().map(|o| o.eigenvalues[k]).collect::<Vec<_>>()))
        .collect();
    let pcc = match pcc(&s0, &s1) {
        Ok(r) => Some(r),
        Err(AnalysisError::ZeroVariance) => None,
        Err(e) => return Err(e),
    };
    Ok(EigenCorrelation {
        state_id: state_id.to_string(),
        n_ansatz: outcomes.len(),
        median_eigenvalues,
        pcc,
    })
}

/// Groups successful episodes by state, keeps one outcome per distinct
/// circuit structure, and correlates. States with too few ansatzes are
/// returned separately.
pub fn eigenvalue_correlation_study(records: &[EpisodeRecord]) -> (Vec<EigenCorrelation>, Vec<AnalysisError>) {
    let mut by_state: BTreeMap<&str, Vec<&EpisodeRecord>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.success) {
        by_state.entry(&r.state_id).or_default().push(r);
    }
    let mut ok = Vec::new();
    let mut skipped = Vec::new();
    for (state, mut recs) in by_state {
        recs.sort_by_key(|r| (r.agent_seed, r.episode));
        let mut seen = std::collections::BTreeSet::new();
        let outcomes: Vec<AnsatzOutcome> = recs
            .into_iter()
            .filter(|r| seen.insert(structure_key(r)))
            .map(|r| AnsatzOutcome {
                cond_entropy: r.cond_entropy_evolved,
                eigenvalues: r.inferred_eigenvalues.clone(),
            })
            .collect();
        match correlate_outcomes(state, &outcomes) {
            Ok(c) => ok.push(c),
            Err(e) => skipped.push(e),
        }
    }
    (ok, skipped)
}

fn structure_key(r: &EpisodeRecord) -> Vec<(String, Vec<usize>)> {
    r.circuit
        .ops()
        .iter()
        .map(|op| (format!("{:?}", op.kind), op.qubits.clone()))
        .collect()
}

pub fn eigen_table(rows: &[EigenCorrelation]) -> Table {
    let mut t = Table::new(&["state_id", "rank", "median_eigenvalue", "pcc", "label", "n_ansatz"]);
    for r in rows {
        for (k, v) in r.median_eigenvalues.iter().enumerate() {
            t.push(vec![
                r.state_id.clone(),
                (k + 1).to_string(),
                fmt_num(*v),
                fmt_opt(r.pcc),
                r.pcc.map(strength_label).unwrap_or("undefined").to_string(),
                r.n_ansatz.to_string(),
            ]);
        }
    }
    t
}
