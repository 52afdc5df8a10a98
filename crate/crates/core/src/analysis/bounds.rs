//! Upper and lower concurrence bounds over admissible ansatzes.

use std::collections::BTreeMap;

use serde::Serialize;

use super::csv::{fmt_num, Table};
use super::stats::{mean, std_dev};
use crate::qas::EpisodeRecord;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

impl MeanStd {
    pub fn of(x: &[f64]) -> Self {
        Self {
            mean: mean(x),
            std: std_dev(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedBounds {
    pub agent_seed: u64,
    pub n_success: usize,
    pub max_evolved: f64,
    pub min_evolved: f64,
    pub max_ansatz: f64,
    pub min_ansatz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsRecord {
    pub state_id: String,
    pub input_concurrence: f64,
    pub seeds: Vec<SeedBounds>,
    pub max_evolved: MeanStd,
    pub min_evolved: MeanStd,
    pub max_ansatz: MeanStd,
    pub min_ansatz: MeanStd,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub records: Vec<BoundsRecord>,
    /// `(state, seed)` groups without a single success.
    pub no_successes: Vec<(String, u64)>,
}

fn extremes(v: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    (v.clone().fold(f64::MIN, f64::max), v.fold(f64::MAX, f64::min))
}

/// Per state: the extreme concurrences over successful episodes of each
/// agent seed, then mean and spread across seeds. Independent of record
/// order.
pub fn extract_concurrence_bounds(records: &[EpisodeRecord]) -> BoundsReport {
    let mut groups: BTreeMap<&str, BTreeMap<u64, Vec<&EpisodeRecord>>> = BTreeMap::new();
    for r in records {
        groups
            .entry(&r.state_id)
            .or_default()
            .entry(r.agent_seed)
            .or_default()
            .push(r);
    }
    let mut out = Vec::new();
    let mut no_successes = Vec::new();
    for (state, seeds) in groups {
        let input_concurrence = seeds
            .values()
            .flatten()
            .map(|r| r.concurrence_input)
            .fold(f64::NAN, f64::min);
        let mut per_seed = Vec::new();
        for (seed, recs) in seeds {
            let ok: Vec<&&EpisodeRecord> = recs.iter().filter(|r| r.success).collect();
            if ok.is_empty() {
                no_successes.push((state.to_string(), seed));
                continue;
            }
            let (max_evolved, min_evolved) = extremes(ok.iter().map(|r| r.concurrence_evolved));
            let (max_ansatz, min_ansatz) = extremes(ok.iter().map(|r| r.concurrence_of_ansatz));
            per_seed.push(SeedBounds {
                agent_seed: seed,
                n_success: ok.len(),
                max_evolved,
                min_evolved,
                max_ansatz,
                min_ansatz,
            });
        }
        if per_seed.is_empty() {
            continue;
        }
        let col = |f: fn(&SeedBounds) -> f64| MeanStd::of(&per_seed.iter().map(f).collect::<Vec<_>>());
        out.push(BoundsRecord {
            state_id: state.to_string(),
            input_concurrence,
            max_evolved: col(|s| s.max_evolved),
            min_evolved: col(|s| s.min_evolved),
            max_ansatz: col(|s| s.max_ansatz),
            min_ansatz: col(|s| s.min_ansatz),
            seeds: per_seed,
        });
    }
    BoundsReport {
        records: out,
        no_successes,
    }
}

pub fn bounds_table(report: &BoundsReport) -> Table {
    let mut t = Table::new(&[
        "state_id",
        "input_concurrence",
        "n_seeds",
        "max_evolved_mean",
        "max_evolved_std",
        "min_evolved_mean",
        "min_evolved_std",
        "max_ansatz_mean",
        "max_ansatz_std",
        "min_ansatz_mean",
        "min_ansatz_std",
    ]);
    for r in &report.records {
        t.push(vec![
            r.state_id.clone(),
            fmt_num(r.input_concurrence),
            r.seeds.len().to_string(),
            fmt_num(r.max_evolved.mean),
            fmt_num(r.max_evolved.std),
            fmt_num(r.min_evolved.mean),
            fmt_num(r.min_evolved.std),
            fmt_num(r.max_ansatz.mean),
            fmt_num(r.max_ansatz.std),
            fmt_num(r.min_ansatz.mean),
            fmt_num(r.min_ansatz.std),
        ]);
    }
    t
}
