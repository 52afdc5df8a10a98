//! Gate counts of the highest- and lowest-concurrence admissible ansatzes.

use std::collections::BTreeMap;

use serde::Serialize;

use super::csv::{fmt_num, Table};
use super::AnalysisError;
use crate::ansatz::ResourceCount;
use crate::qas::EpisodeRecord;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateResources {
    pub state_id: String,
    pub max_concurrence: f64,
    pub at_max: ResourceCount,
    pub min_concurrence: f64,
    pub at_min: ResourceCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResourceMeans {
    pub depth: f64,
    pub total_gates: f64,
    pub one_qubit_gates: f64,
    pub two_qubit_gates: f64,
}

impl ResourceMeans {
    fn of<'a>(items: impl Iterator<Item = &'a ResourceCount>) -> Self {
        let v: Vec<&ResourceCount> = items.collect();
        let n = v.len() as f64;
        let avg = |f: fn(&ResourceCount) -> usize| v.iter().map(|r| f(r) as f64).sum::<f64>() / n;
        Self {
            depth: avg(|r| r.depth),
            total_gates: avg(|r| r.total_gates()),
            one_qubit_gates: avg(|r| r.one_qubit_gates),
            two_qubit_gates: avg(|r| r.two_qubit_gates),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResourceSummary {
    pub per_state: Vec<StateResources>,
    pub mean_at_max: ResourceMeans,
    pub mean_at_min: ResourceMeans,
}

/// Uses evolved-state concurrence; ties go to the earliest episode.
pub fn resource_stats(records: &[EpisodeRecord]) -> Result<ResourceSummary, AnalysisError> {
    let mut by_state: BTreeMap<&str, Vec<&EpisodeRecord>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.success) {
        by_state.entry(&r.state_id).or_default().push(r);
    }
    if by_state.is_empty() {
        return Err(AnalysisError::NoSuccesses);
    }
    let per_state: Vec<StateResources> = by_state
        .into_iter()
        .map(|(state, mut recs)| {
            recs.sort_by_key(|r| (r.agent_seed, r.episode));
            let mut hi = recs[0];
            let mut lo = recs[0];
            for r in &recs[1..] {
                if r.concurrence_evolved > hi.concurrence_evolved {
                    hi = r;
                }
                if r.concurrence_evolved < lo.concurrence_evolved {
                    lo = r;
                }
            }
            StateResources {
                state_id: state.to_string(),
                max_concurrence: hi.concurrence_evolved,
                at_max: hi.resources,
                min_concurrence: lo.concurrence_evolved,
                at_min: lo.resources,
            }
        })
        .collect();
    Ok(ResourceSummary {
        mean_at_max: ResourceMeans::of(per_state.iter().map(|s| &s.at_max)),
        mean_at_min: ResourceMeans::of(per_state.iter().map(|s| &s.at_min)),
        per_state,
    })
}

pub fn resources_table(s: &ResourceSummary) -> Table {
    let mut t = Table::new(&[
        "state_id",
        "bound",
        "concurrence",
        "depth",
        "total_gates",
        "one_qubit_gates",
        "two_qubit_gates",
    ]);
    for st in &s.per_state {
        for (bound, c, r) in [
            ("max", st.max_concurrence, st.at_max),
            ("min", st.min_concurrence, st.at_min),
        ] {
            t.push(vec![
                st.state_id.clone(),
                bound.into(),
                fmt_num(c),
                r.depth.to_string(),
                r.total_gates().to_string(),
                r.one_qubit_gates.to_string(),
                r.two_qubit_gates.to_string(),
            ]);
        }
    }
    for (bound, m) in [("mean_max", s.mean_at_max), ("mean_min", s.mean_at_min)] {
        t.push(vec![
            "all".into(),
            bound.into(),
            String::new(),
            fmt_num(m.depth),
            fmt_num(m.total_gates),
            fmt_num(m.one_qubit_gates),
            fmt_num(m.two_qubit_gates),
        ]);
    }
    t
}
