//! Scripted studies named after the tables and figures they mirror.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;

use super::commands::{analyze, ensure_dir, train_config, write_json, write_table, AnalyzeOptions};
use super::config::{ExperimentConfig, Seeds, TargetSpec};
use super::{CliError, Scale, Study};
use crate::agent::AgentConfig;
use crate::analysis::{fmt_num, Table};
use crate::ansatz::build_ee_block;
use crate::qas::{ExperimentSummary, QasConfig};
use crate::qcore::{concurrence_mixed, concurrence_pure, derive_seed, sample_hs_random_state, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Recipe {
    Table1,
    Fig2,
    Fig4,
    Table2,
    Fig6,
    Fig7,
    Fig1,
}

impl Recipe {
    pub fn name(self) -> &'static str {
        match self {
            Recipe::Table1 => "table1",
            Recipe::Fig2 => "fig2",
            Recipe::Fig4 => "fig4",
            Recipe::Table2 => "table2",
            Recipe::Fig6 => "fig6",
            Recipe::Fig7 => "fig7",
            Recipe::Fig1 => "fig1",
        }
    }

    fn artifact(self) -> &'static str {
        match self {
            Recipe::Table1 => "concurrence bounds per state across agent seeds",
            Recipe::Fig2 => "correlation of upper and lower concurrence bounds, eta scan",
            Recipe::Fig4 => "concurrence of the entanglement-enhancing block versus theta",
            Recipe::Table2 => "default versus enhanced input block",
            Recipe::Fig6 => "per-qubit contribution versus change in concurrence",
            Recipe::Fig7 => "median eigenvalues and conditional-entropy correlation",
            Recipe::Fig1 => "random-state ensemble",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub recipe: Recipe,
    pub artifact: String,
    pub scale: Scale,
    pub seed: u64,
    pub code_version: String,
    /// True only for `full`; smaller scales must not be read as reproductions.
    pub full_scale: bool,
    pub outputs: Vec<String>,
    pub runs: Vec<String>,
    pub caveats: Vec<String>,
}

/// Search settings per scale. Smoke and desk runs use a 2×64 network and
/// ζ = 1e-3 so they finish on a laptop CPU.
pub fn search_config(scale: Scale, episodes: u64) -> QasConfig {
    match scale {
        Scale::Full => QasConfig {
            episodes,
            ..QasConfig::default()
        },
        Scale::Smoke | Scale::Desk => QasConfig {
            episodes,
            zeta: 1e-3,
            agent: AgentConfig {
                hidden: vec![64, 64],
                ..AgentConfig::default()
            },
            ..QasConfig::default()
        },
    }
}

struct Sweep {
    states: usize,
    seeds: usize,
    episodes: u64,
}

fn sweep_size(recipe: Recipe, scale: Scale) -> Sweep {
    let (states, seeds, episodes) = match (recipe, scale) {
        (_, Scale::Smoke) => (3, 2, 60),
        (Recipe::Table1, Scale::Desk) => (9, 3, 300),
        (Recipe::Table1, Scale::Full) => (9, 5, 10000),
        (Recipe::Fig2, Scale::Desk) => (25, 1, 300),
        (Recipe::Fig2, Scale::Full) => (30, 5, 10000),
        (Recipe::Fig6, Scale::Desk) => (9, 1, 500),
        (Recipe::Fig6, Scale::Full) => (25, 5, 10000),
        (Recipe::Fig7, Scale::Desk) => (10, 1, 500),
        (Recipe::Fig7, Scale::Full) => (35, 5, 10000),
        _ => (1, 1, 1),
    };
    Sweep {
        states,
        seeds,
        episodes,
    }
}

/// First sampler seed at or after `start` whose state has concurrence
/// below 0.05.
pub fn low_concurrence_target(start: u64) -> u64 {
    (start..)
        .find(|&s| concurrence_mixed(&sample_hs_random_state(2, s)).is_ok_and(|c| c < 0.05))
        .expect("low-concurrence states are common")
}

/// Seeds for the `j`-th paired run: agent `base + j`, policy `base + 1000 + j`.
pub fn paired_seeds(base: u64, j: u64) -> Seeds {
    Seeds {
        agent_init: base + j,
        policy: base + 1000 + j,
    }
}

/// Paired-run settings per scale: `(episodes, seed pairs)`.
pub fn paired_size(scale: Scale) -> (u64, u64) {
    match scale {
        Scale::Smoke => (200, 1),
        Scale::Desk => (500, 3),
        Scale::Full => (10000, 3),
    }
}

fn run_sweep(recipe: Recipe, scale: Scale, dir: &Path, seed: u64) -> Result<Vec<PathBuf>, CliError> {
    let sw = sweep_size(recipe, scale);
    let mut runs = Vec::new();
    for i in 0..sw.states as u64 {
        let sampler = derive_seed(seed, i);
        for j in 0..sw.seeds as u64 {
            let run_dir = dir.join("runs").join(format!("state{i:02}_seed{j}"));
            let mut cfg = ExperimentConfig::new(
                format!("state{i:02}"),
                TargetSpec::Sampler { seed: sampler },
                Seeds::from_base(derive_seed(seed, 10_000 + j)),
                search_config(scale, sw.episodes),
            );
            cfg.output_dir = Some(run_dir.clone());
            train_config(&cfg, None)?;
            runs.push(run_dir);
        }
    }
    Ok(runs)
}

fn rel(base: &Path, p: &Path) -> String {
    p.strip_prefix(base).unwrap_or(p).display().to_string()
}

pub fn reproduce(recipe: Recipe, scale: Scale, out: &Path, seed: u64) -> Result<(), CliError> {
    let dir = out.join(recipe.name());
    ensure_dir(&dir)?;
    let mut caveats = Vec::new();
    let mut outputs = Vec::new();
    let mut runs = Vec::new();
    if scale != Scale::Full {
        caveats.push(format!(
            "{scale:?} scale: fewer states, seeds and episodes than the full study, a 2x64 network and zeta = 1e-3; \
             numbers are qualitative only"
        ));
    }
    let opts = AnalyzeOptions {
        k_min: 0.05,
        k_max: 0.6,
        k_step: 0.005,
        count: 0,
        seed,
    };
    match recipe {
        Recipe::Fig4 => {
            let mut t = Table::new(&["theta", "concurrence"]);
            let zero = PureState::basis(2, 0);
            for n in 0..=100 {
                let theta = n as f64 * 0.005;
                let u = build_ee_block(theta)
                    .and_then(|c| c.to_unitary())
                    .map_err(|e| CliError::Numeric(e.to_string()))?;
                let psi = zero.evolve(&u).map_err(|e| CliError::Numeric(e.to_string()))?;
                let c = concurrence_pure(&psi).map_err(|e| CliError::Numeric(e.to_string()))?;
                t.push(vec![fmt_num(theta), fmt_num(c)]);
            }
            write_table(&dir.join("fig4_ee_concurrence.csv"), &t)?;
            outputs.push("fig4_ee_concurrence.csv".into());
            caveats.clear();
        }
        Recipe::Fig1 => {
            let count = if scale == Scale::Smoke { 10_000 } else { 100_000 };
            analyze(Study::Ensemble, &[], &dir, &AnalyzeOptions { count, ..opts })?;
            outputs.extend(["fig1_ensemble.csv".into(), "ensemble_summary.json".into()]);
            if scale == Scale::Smoke {
                caveats.push("10000 samples instead of 100000".into());
            } else {
                caveats.clear();
            }
        }
        Recipe::Table2 => {
            let (episodes, seeds) = paired_size(scale);
            let target = low_concurrence_target(seed);
            let mut t = Table::new(&[
                "agent_seed",
                "ee_theta",
                "e_tot",
                "e_s",
                "total_reward",
                "avg_depth",
                "avg_gates",
            ]);
            let mut ratios = Table::new(&["agent_seed", "success_ratio", "reward_ratio"]);
            for j in 0..seeds {
                let mut pair: Vec<ExperimentSummary> = Vec::new();
                for theta in [0.0, 0.5] {
                    let run_dir = dir.join("runs").join(format!("seed{j}_theta{theta}"));
                    let mut cfg = ExperimentConfig::new(
                        format!("sampler-{target}"),
                        TargetSpec::Sampler { seed: target },
                        paired_seeds(seed, j),
                        QasConfig {
                            ee_theta: theta,
                            ..search_config(scale, episodes)
                        },
                    );
                    cfg.output_dir = Some(run_dir.clone());
                    let s = train_config(&cfg, None)?;
                    let avg = s.first_successes.as_ref();
                    t.push(vec![
                        s.agent_seed.to_string(),
                        fmt_num(theta),
                        s.e_tot.to_string(),
                        s.e_s.to_string(),
                        fmt_num(s.total_reward),
                        avg.map(|a| fmt_num(a.depth)).unwrap_or_default(),
                        avg.map(|a| fmt_num(a.total_gates)).unwrap_or_default(),
                    ]);
                    runs.push(rel(&dir, &run_dir));
                    pair.push(s);
                }
                let ratio = |a: f64, b: f64| if b != 0.0 { fmt_num(a / b) } else { String::new() };
                ratios.push(vec![
                    pair[0].agent_seed.to_string(),
                    ratio(pair[1].e_s as f64, pair[0].e_s as f64),
                    ratio(pair[1].total_reward, pair[0].total_reward),
                ]);
            }
            write_table(&dir.join("table2.csv"), &t)?;
            write_table(&dir.join("table2_ratios.csv"), &ratios)?;
            outputs.extend(["table2.csv".into(), "table2_ratios.csv".into()]);
            caveats.push(format!(
                "target: sampler seed {target}, the first with concurrence below 0.05"
            ));
        }
        Recipe::Table1 | Recipe::Fig2 | Recipe::Fig6 | Recipe::Fig7 => {
            let run_dirs = run_sweep(recipe, scale, &dir, seed)?;
            runs.extend(run_dirs.iter().map(|r| rel(&dir, r)));
            let studies: &[(Study, &str)] = match recipe {
                Recipe::Table1 => &[(Study::Bounds, "bounds.csv"), (Study::Resources, "resources.csv")],
                Recipe::Fig2 => &[(Study::Bounds, "bounds.csv"), (Study::EtaScan, "eta_scan.csv")],
                Recipe::Fig6 => &[(Study::Contribution, "fig6_contribution.csv")],
                _ => &[(Study::EigenCorrelation, "fig7_eigen_correlation.csv")],
            };
            for (study, file) in studies {
                analyze(*study, &run_dirs, &dir, &opts)?;
                outputs.push(file.to_string());
            }
        }
    }
    let manifest = Manifest {
        recipe,
        artifact: recipe.artifact().into(),
        scale,
        seed,
        code_version: env!("CARGO_PKG_VERSION").into(),
        full_scale: scale == Scale::Full,
        outputs,
        runs,
        caveats,
    };
    write_json(&dir.join("manifest.json"), &manifest)?;
    println!("{}: wrote {}", recipe.name(), dir.join("manifest.json").display());
    Ok(())
}
