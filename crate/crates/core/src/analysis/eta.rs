//! Scan for the point where the correlation between upper and lower
//! concurrence bounds changes sign.

use serde::Serialize;

use super::csv::{fmt_num, fmt_opt, Table};
use super::stats::pcc;
use super::AnalysisError;

/// `(input concurrence, upper bound, lower bound)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundPoint {
    pub x: f64,
    pub upper: f64,
    pub lower: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum IntervalStatus {
    Ok,
    InsufficientData,
    ZeroVariance,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaRow {
    pub k: f64,
    pub n_ik: usize,
    pub n_kj: usize,
    pub pcc_ik: Option<f64>,
    pub pcc_kj: Option<f64>,
    pub status_ik: IntervalStatus,
    pub status_kj: IntervalStatus,
}

impl EtaRow {
    /// `w·PCC_ik + (1−w)·PCC_kj`. Only `w ∈ {0, 1}` is an established
    /// reading; intermediate weights are experimental.
    pub fn eta(&self, w: f64) -> Option<f64> {
        if w == 1.0 {
            return self.pcc_ik;
        }
        if w == 0.0 {
            return self.pcc_kj;
        }
        Some(w * self.pcc_ik? + (1.0 - w) * self.pcc_kj?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaScan {
    /// Range `[i, j]` of input concurrence covered by the data.
    pub i: f64,
    pub j: f64,
    pub rows: Vec<EtaRow>,
    /// First sign change of `PCC_kj`, linearly interpolated.
    pub k_star: Option<f64>,
}

pub const MIN_POINTS: usize = 3;

/// `k_min, k_min + step, …` up to `k_max` (inclusive, with a little slack
/// for round-off).
pub fn k_grid(k_min: f64, k_max: f64, step: f64) -> Result<Vec<f64>, AnalysisError> {
    if step.is_nan() || step <= 0.0 || !k_min.is_finite() || !k_max.is_finite() || k_max < k_min {
        return Err(AnalysisError::BadArgument(format!(
            "k grid [{k_min}, {k_max}] step {step}"
        )));
    }
    let n = ((k_max - k_min) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|m| k_min + m as f64 * step).collect())
}

fn interval_pcc(points: &[&BoundPoint]) -> (Option<f64>, IntervalStatus) {
    if points.len() < MIN_POINTS {
        return (None, IntervalStatus::InsufficientData);
    }
    let u: Vec<f64> = points.iter().map(|p| p.upper).collect();
    let l: Vec<f64> = points.iter().map(|p| p.lower).collect();
    match pcc(&u, &l) {
        Ok(r) => (Some(r), IntervalStatus::Ok),
        Err(_) => (None, IntervalStatus::ZeroVariance),
    }
}

pub fn eta_scan(points: &[BoundPoint], grid: &[f64]) -> Result<EtaScan, AnalysisError> {
    if points.is_empty() {
        return Err(AnalysisError::InsufficientData(0));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(AnalysisError::BadArgument("k grid must be strictly increasing".into()));
    }
    let i = points.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let j = points.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let rows: Vec<EtaRow> = grid
        .iter()
        .map(|&k| {
            let left: Vec<&BoundPoint> = points.iter().filter(|p| p.x < k).collect();
            let right: Vec<&BoundPoint> = points.iter().filter(|p| p.x >= k).collect();
            let (pcc_ik, status_ik) = interval_pcc(&left);
            let (pcc_kj, status_kj) = interval_pcc(&right);
            EtaRow {
                k,
                n_ik: left.len(),
                n_kj: right.len(),
                pcc_ik,
                pcc_kj,
                status_ik,
                status_kj,
            }
        })
        .collect();
    let k_star = crossing(&rows);
    Ok(EtaScan { i, j, rows, k_star })
}

fn crossing(rows: &[EtaRow]) -> Option<f64> {
    let valid: Vec<(f64, f64)> = rows.iter().filter_map(|r| r.pcc_kj.map(|p| (r.k, p))).collect();
    for w in valid.windows(2) {
        let ((k0, p0), (k1, p1)) = (w[0], w[1]);
        if p0 == 0.0 {
            return Some(k0);
        }
        if p0.signum() != p1.signum() && p1 != 0.0 {
            return Some(k0 + (k1 - k0) * p0 / (p0 - p1));
        }
        if p1 == 0.0 {
            return Some(k1);
        }
    }
    None
}

pub fn eta_table(scan: &EtaScan) -> Table {
    let mut t = Table::new(&["k", "n_ik", "n_kj", "pcc_ik", "pcc_kj", "eta_w1", "eta_w0", "status"]);
    for r in &scan.rows {
        let status = match (&r.status_ik, &r.status_kj) {
            (IntervalStatus::Ok, IntervalStatus::Ok) => "ok".to_string(),
            (a, b) => format!("{a:?}/{b:?}"),
        };
        t.push(vec![
            fmt_num(r.k),
            r.n_ik.to_string(),
            r.n_kj.to_string(),
            fmt_opt(r.pcc_ik),
            fmt_opt(r.pcc_kj),
            fmt_opt(r.eta(1.0)),
            fmt_opt(r.eta(0.0)),
            status,
        ]);
    }
    t
}
