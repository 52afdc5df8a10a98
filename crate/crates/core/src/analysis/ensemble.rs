//! Random-state ensemble: concurrence, spectrum and conditional-entropy
//! asymmetry.

use serde::Serialize;

use super::csv::{fmt_num, Table};
use super::stats::{mean, spearman};
use super::AnalysisError;
use crate::qcore::{
    concurrence_mixed, hermitian_eigenvalues, partial_trace, sample_hs_with_rng, seeded_rng, von_neumann_entropy,
    DensityMatrix,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnsembleRow {
    pub concurrence: f64,
    /// Descending.
    pub eigenvalues: [f64; 4],
    /// `S(q0|q1) − S(q1|q0)`.
    pub delta_s: f64,
}

pub fn ensemble_row(rho: &DensityMatrix) -> Result<EnsembleRow, AnalysisError> {
    if rho.n_qubits() != 2 {
        return Err(AnalysisError::BadArgument("ensemble rows need two-qubit states".into()));
    }
    let ev = hermitian_eigenvalues(rho.matrix())?;
    // S(q0|q1) − S(q1|q0) = S(q0) − S(q1); the joint entropy cancels.
    let s_q0 = von_neumann_entropy(&partial_trace(rho, &[0])?);
    let s_q1 = von_neumann_entropy(&partial_trace(rho, &[1])?);
    Ok(EnsembleRow {
        concurrence: concurrence_mixed(rho)?,
        eigenvalues: [ev[0], ev[1], ev[2], ev[3]],
        delta_s: s_q0 - s_q1,
    })
}

/// `n` Hilbert–Schmidt random two-qubit states drawn from one stream.
pub fn ensemble_study(n: usize, seed: u64) -> Result<Vec<EnsembleRow>, AnalysisError> {
    let mut rng = seeded_rng(seed);
    (0..n).map(|_| ensemble_row(&sample_hs_with_rng(2, &mut rng))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleSummary {
    pub n: usize,
    pub spearman_concurrence_lambda_max: Option<f64>,
    /// Five equal-width concurrence bins over `[0, max concurrence]`.
    pub bin_edges: Vec<f64>,
    pub bin_counts: Vec<usize>,
    pub bin_mean_abs_delta_s: Vec<Option<f64>>,
    pub fraction_above_0_6: f64,
    /// Mean |ΔS| over the lowest and highest tenth of samples by concurrence.
    pub bottom_decile_mean_abs_delta_s: f64,
    pub top_decile_mean_abs_delta_s: f64,
}

pub const N_BINS: usize = 5;

pub fn summarize_ensemble(rows: &[EnsembleRow]) -> Result<EnsembleSummary, AnalysisError> {
    if rows.is_empty() {
        return Err(AnalysisError::InsufficientData(0));
    }
    let c: Vec<f64> = rows.iter().map(|r| r.concurrence).collect();
    let lmax: Vec<f64> = rows.iter().map(|r| r.eigenvalues[0]).collect();
    let spearman_concurrence_lambda_max = spearman(&c, &lmax).ok();

    let c_max = c.iter().copied().fold(0.0, f64::max);
    let width = c_max / N_BINS as f64;
    let bin_edges: Vec<f64> = (0..=N_BINS).map(|b| b as f64 * width).collect();
    let mut sums = [0.0; N_BINS];
    let mut counts = vec![0usize; N_BINS];
    for r in rows {
        let b = if width > 0.0 {
            ((r.concurrence / width) as usize).min(N_BINS - 1)
        } else {
            0
        };
        sums[b] += r.delta_s.abs();
        counts[b] += 1;
    }
    let bin_mean_abs_delta_s = sums
        .iter()
        .zip(&counts)
        .map(|(&s, &n)| (n > 0).then(|| s / n as f64))
        .collect();

    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| c[a].total_cmp(&c[b]));
    let tenth = (rows.len() / 10).max(1);
    let abs_ds = |idx: &[usize]| mean(&idx.iter().map(|&i| rows[i].delta_s.abs()).collect::<Vec<_>>());

    Ok(EnsembleSummary {
        n: rows.len(),
        spearman_concurrence_lambda_max,
        bin_edges,
        bin_counts: counts,
        bin_mean_abs_delta_s,
        fraction_above_0_6: c.iter().filter(|&&x| x > 0.6).count() as f64 / rows.len() as f64,
        bottom_decile_mean_abs_delta_s: abs_ds(&order[..tenth]),
        top_decile_mean_abs_delta_s: abs_ds(&order[rows.len() - tenth..]),
    })
}

pub fn ensemble_table(rows: &[EnsembleRow]) -> Table {
    let mut t = Table::new(&["concurrence", "lambda_1", "lambda_2", "lambda_3", "lambda_4", "delta_s"]);
    for r in rows {
        let mut row = vec![fmt_num(r.concurrence)];
        row.extend(r.eigenvalues.iter().map(|&v| fmt_num(v)));
        row.push(fmt_num(r.delta_s));
        t.push(row);
    }
    t
}
