//! Post-hoc studies over episode logs and random-state ensembles, with CSV
//! writers.

pub mod bounds;
pub mod contribution;
pub mod csv;
pub mod eigen;
pub mod ensemble;
pub mod eta;
pub mod resources;
pub mod stats;

pub use bounds::{bounds_table, extract_concurrence_bounds, BoundsRecord, BoundsReport, MeanStd, SeedBounds};
pub use contribution::{
    contribution_points, contribution_table, cumulative_weight, delta_contribution, ContributionPoint,
};
pub use csv::{fmt_num, Table};
pub use eigen::{correlate_outcomes, eigen_table, eigenvalue_correlation_study, AnsatzOutcome, EigenCorrelation};
pub use ensemble::{ensemble_row, ensemble_study, ensemble_table, summarize_ensemble, EnsembleRow, EnsembleSummary};
pub use eta::{eta_scan, eta_table, k_grid, BoundPoint, EtaRow, EtaScan, IntervalStatus};
pub use resources::{resource_stats, resources_table, ResourceSummary, StateResources};
pub use stats::{mean, median, pcc, spearman, std_dev, strength_label};

use thiserror::Error;

use crate::qcore::QError;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("vectors have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("correlation undefined: zero variance")]
    ZeroVariance,
    #[error("not enough data points ({0})")]
    InsufficientData(usize),
    #[error("state {state} has {found} admissible ansatzes, at least 3 needed")]
    InsufficientAnsatzes { state: String, found: usize },
    #[error("no successful episodes")]
    NoSuccesses,
    #[error("{0}")]
    BadArgument(String),
    #[error(transparent)]
    Quantum(#[from] QError),
}

/// Bound points for the η scan from a bounds report (evolved-state bounds).
pub fn bound_points(report: &BoundsReport) -> Vec<BoundPoint> {
    report
        .records
        .iter()
        .map(|r| BoundPoint {
            x: r.input_concurrence,
            upper: r.max_evolved.mean,
            lower: r.min_evolved.mean,
        })
        .collect()
}
