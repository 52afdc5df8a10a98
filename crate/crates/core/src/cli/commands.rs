//! `sample`, `train` and `analyze`.

use std::fs;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use super::config::{ExperimentConfig, Seeds, TargetSpec};
use super::{CliError, Study};
use crate::agent::load_checkpoint;
use crate::analysis::{
    bound_points, bounds_table, contribution_points, contribution_table, cumulative_weight, eigen_table,
    eigenvalue_correlation_study, ensemble_study, ensemble_table, eta_scan, eta_table, extract_concurrence_bounds,
    k_grid, resource_stats, resources_table, summarize_ensemble, Table,
};
use crate::ansatz::{n_actions, observation_len};
use crate::qas::experiment::EPISODE_LOG;
use crate::qas::{
    run_experiment, run_experiment_with, DirSink, EpisodeRecord, ExperimentSummary, QasConfig, SummaryBuilder,
};
use crate::qcore::sample_hs_random_state;

pub const SUMMARY_FILE: &str = "summary.json";
pub const CONFIG_FILE: &str = "config.json";

pub(crate) fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub(crate) fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Numeric(e.to_string()))?;
    s.push('\n');
    write_text(path, &s)
}

pub(crate) fn write_table(path: &Path, t: &Table) -> Result<(), CliError> {
    t.write(path).map_err(|e| CliError::io(path, e))
}

/// One JSON state file per sampler seed `seed, seed+1, …`, or the ensemble CSV.
pub fn sample(out: &Path, seed: u64, qubits: usize, count: usize, ensemble: bool) -> Result<(), CliError> {
    if qubits == 0 || qubits > 4 {
        return Err(CliError::Usage("--qubits must lie in 1..=4".into()));
    }
    if count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    ensure_dir(out)?;
    if ensemble {
        if qubits != 2 {
            return Err(CliError::Usage("--ensemble needs --qubits 2".into()));
        }
        let rows = ensemble_study(count, seed)?;
        let path = out.join("fig1_ensemble.csv");
        write_table(&path, &ensemble_table(&rows))?;
        println!("wrote {} ({} rows)", path.display(), rows.len());
        return Ok(());
    }
    for i in 0..count as u64 {
        let s = seed.wrapping_add(i);
        let rho = sample_hs_random_state(qubits, s);
        let path = out.join(format!("state_q{qubits}_seed{s}.json"));
        write_json(&path, &rho)?;
    }
    println!("wrote {count} state file(s) to {}", out.display());
    Ok(())
}

#[derive(Debug, Clone, Default)]
pub struct TrainOptions {
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub ee_theta: Option<f64>,
    pub episodes: Option<u64>,
    pub resume: Option<PathBuf>,
    pub print_config: Option<PathBuf>,
}

pub fn effective_config(opts: &TrainOptions) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &opts.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => {
            let s = opts.seed.unwrap_or(0);
            ExperimentConfig::new(
                format!("sampler-{s}"),
                TargetSpec::Sampler { seed: s },
                Seeds::from_base(s),
                QasConfig::default(),
            )
        }
    };
    if let (Some(s), Some(_)) = (opts.seed, &opts.config) {
        cfg.seeds = Seeds::from_base(s);
    }
    if let Some(t) = opts.ee_theta {
        cfg.search.ee_theta = t;
    }
    if let Some(n) = opts.episodes {
        cfg.search.episodes = n;
    }
    if let Some(o) = &opts.out {
        cfg.output_dir = Some(o.clone());
    }
    cfg.search.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(cfg)
}

pub fn train(opts: &TrainOptions) -> Result<(), CliError> {
    let cfg = effective_config(opts)?;
    if let Some(p) = &opts.print_config {
        return write_text(p, &(cfg.to_json() + "\n"));
    }
    let summary = train_config(&cfg, opts.resume.as_deref())?;
    println!(
        "{}: E_tot {} E_s {} total reward {:.6}",
        summary.state_id, summary.e_tot, summary.e_s, summary.total_reward
    );
    Ok(())
}

/// Runs (or resumes) the experiment into the config's output directory.
pub fn train_config(cfg: &ExperimentConfig, resume: Option<&Path>) -> Result<ExperimentSummary, CliError> {
    let out = cfg.output_dir.clone().unwrap_or_else(|| PathBuf::from("."));
    ensure_dir(&out)?;
    let rho = cfg.target_state()?;
    // The echo leaves out the output directory so runs in different places
    // produce identical files.
    let echo = ExperimentConfig {
        output_dir: None,
        ..cfg.clone()
    };
    write_text(&out.join(CONFIG_FILE), &(echo.to_json() + "\n"))?;
    let id = cfg.identity();
    let result = match resume {
        None => {
            let mut sink = DirSink::create(&out, false)?;
            run_experiment(&cfg.search, &rho, &id, &mut sink)
        }
        Some(ckpt) => {
            let sizes = cfg
                .search
                .agent
                .layer_sizes(observation_len(2, cfg.search.d_max), n_actions(2));
            let (mut agent, side) =
                load_checkpoint(ckpt, &sizes).map_err(|e| CliError::Usage(format!("{}: {e}", ckpt.display())))?;
            let done = side.extra["episodes_done"]
                .as_u64()
                .ok_or_else(|| CliError::Usage("checkpoint sidecar lacks episodes_done".into()))?;
            let log = out.join(EPISODE_LOG);
            let records = read_log(&log)?;
            if (records.len() as u64) < done {
                return Err(CliError::Usage(format!(
                    "{} holds {} episodes, checkpoint expects {done}",
                    log.display(),
                    records.len()
                )));
            }
            let kept = &records[..done as usize];
            let mut text = String::new();
            let mut builder = SummaryBuilder::new();
            for r in kept {
                builder.push(r);
                text.push_str(&serde_json::to_string(r).map_err(|e| CliError::Numeric(e.to_string()))?);
                text.push('\n');
            }
            write_text(&log, &text)?;
            let mut sink = DirSink::create(&out, true)?;
            run_experiment_with(&cfg.search, &rho, &id, &mut agent, done, builder, &mut sink)
        }
    };
    let mut summary = match result {
        Ok(s) => s,
        Err(e) => {
            let err = CliError::from(e);
            let logged = read_log(&out.join(EPISODE_LOG)).map(|r| r.len()).unwrap_or(0);
            let partial = serde_json::json!({
                "status": "aborted",
                "error": err.to_string(),
                "episodes_logged": logged,
            });
            write_json(&out.join("partial_manifest.json"), &partial)?;
            return Err(err);
        }
    };
    summary.config = serde_json::to_value(&echo).map_err(|e| CliError::Numeric(e.to_string()))?;
    write_json(&out.join(SUMMARY_FILE), &summary)?;
    Ok(summary)
}

/// Parses a JSONL episode log, citing the first bad line.
pub fn read_log(path: &Path) -> Result<Vec<EpisodeRecord>, CliError> {
    let f = fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let r: EpisodeRecord = serde_json::from_str(&line).map_err(|e| CliError::Malformed {
            path: path.to_path_buf(),
            line: i + 1,
            message: e.to_string(),
        })?;
        out.push(r);
    }
    Ok(out)
}

/// Accepts run directories (reads their `episodes.jsonl`) and log files.
pub fn read_logs(paths: &[PathBuf]) -> Result<Vec<EpisodeRecord>, CliError> {
    let mut all = Vec::new();
    for p in paths {
        let file = if p.is_dir() { p.join(EPISODE_LOG) } else { p.clone() };
        all.extend(read_log(&file)?);
    }
    Ok(all)
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub k_min: f64,
    pub k_max: f64,
    pub k_step: f64,
    pub count: usize,
    pub seed: u64,
}

pub fn analyze(study: Study, logs: &[PathBuf], out: &Path, opts: &AnalyzeOptions) -> Result<(), CliError> {
    ensure_dir(out)?;
    if study == Study::Ensemble {
        let rows = ensemble_study(opts.count, opts.seed)?;
        write_table(&out.join("fig1_ensemble.csv"), &ensemble_table(&rows))?;
        let summary = summarize_ensemble(&rows)?;
        write_json(
            &out.join("ensemble_summary.json"),
            &serde_json::json!({ "seed": opts.seed, "summary": summary }),
        )?;
        println!(
            "ensemble: n {} spearman(C, lambda_max) {:?} fraction C>0.6 {}",
            summary.n, summary.spearman_concurrence_lambda_max, summary.fraction_above_0_6
        );
        return Ok(());
    }
    if logs.is_empty() {
        return Err(CliError::Usage("no episode logs given".into()));
    }
    let records = read_logs(logs)?;
    match study {
        Study::Bounds => {
            let report = extract_concurrence_bounds(&records);
            for (s, seed) in &report.no_successes {
                eprintln!("no successes: state {s} seed {seed}");
            }
            write_table(&out.join("bounds.csv"), &bounds_table(&report))?;
            println!("bounds: {} state(s)", report.records.len());
        }
        Study::EtaScan => {
            let report = extract_concurrence_bounds(&records);
            let grid = k_grid(opts.k_min, opts.k_max, opts.k_step)?;
            let scan = eta_scan(&bound_points(&report), &grid)?;
            write_table(&out.join("eta_scan.csv"), &eta_table(&scan))?;
            match scan.k_star {
                Some(k) => println!("eta scan: {} k values, crossing k* = {k}", scan.rows.len()),
                None => println!("eta scan: {} k values, no sign change of PCC_kj", scan.rows.len()),
            }
        }
        Study::Contribution => {
            let pts = contribution_points(&records);
            write_table(&out.join("fig6_contribution.csv"), &contribution_table(&pts))?;
            let (neg, pos) = cumulative_weight(&pts);
            println!(
                "contribution: {} points, cumulative weight delta<0 {neg}, delta>0 {pos}",
                pts.len()
            );
        }
        Study::EigenCorrelation => {
            let (rows, skipped) = eigenvalue_correlation_study(&records);
            for e in &skipped {
                eprintln!("skipped: {e}");
            }
            write_table(&out.join("fig7_eigen_correlation.csv"), &eigen_table(&rows))?;
            println!("eigen correlation: {} state(s)", rows.len());
        }
        Study::Resources => {
            let s = resource_stats(&records)?;
            write_table(&out.join("resources.csv"), &resources_table(&s))?;
            println!(
                "resources: mean depth at max {} at min {}",
                s.mean_at_max.depth, s.mean_at_min.depth
            );
        }
        Study::Ensemble => unreachable!("handled above"),
    }
    Ok(())
}
