//! Acceptance suite: one PASS/FAIL line per criterion. Runs as a plain
//! binary (`harness = false`) so the lines always reach the terminal.

mod common;

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use common::{circuit_unitary, cost_oracle, pure_concurrence_oracle, sample_std, trace_power};
use rlvqsd::agent::{td_loss_and_grads, toy_config, train_toy_mdp, QNetwork, ToyMdp, Transition};
use rlvqsd::analysis::{
    bound_points, cumulative_weight, eigenvalue_correlation_study, ensemble_study, eta_scan,
    extract_concurrence_bounds, k_grid, summarize_ensemble, BoundPoint, ContributionPoint,
};
use rlvqsd::ansatz::{build_ee_block, Circuit, GateKind};
use rlvqsd::cli::recipes::{low_concurrence_target, paired_seeds, search_config};
use rlvqsd::cli::Scale;
use rlvqsd::qas::{run_experiment, EpisodeRecord, RunIdentity};
use rlvqsd::qcore::{
    concurrence_mixed, concurrence_pure, conditional_entropy, haar_pure_state, hermitian_eig, sample_hs_random_state,
    sample_hs_with_rng, seeded_rng, ComplexMatrix, DensityMatrix, PureState,
};
use rlvqsd::vqsd::{cost_for_unitary, eigen_readout_unitary, ZETA_SLACK};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_s: u64) -> bool {
    elapsed <= Duration::from_secs(limit_s)
}

fn criterion_1() -> Verdict {
    let t0 = Instant::now();
    let mut rng = seeded_rng(1);
    let mut worst_pm = 0.0f64;
    let mut worst_formula = 0.0f64;
    for _ in 0..1000 {
        let psi = haar_pure_state(2, &mut rng);
        let cp = concurrence_pure(&psi).unwrap();
        let cm = concurrence_mixed(&DensityMatrix::from_pure(&psi)).unwrap();
        worst_pm = worst_pm.max((cp - cm).abs());
        worst_formula = worst_formula.max((cp - pure_concurrence_oracle(psi.amplitudes())).abs());
    }
    let bell = DensityMatrix::from_pure(&PureState::bell_phi_plus());
    let s_bell = [
        conditional_entropy(&bell, 0).unwrap(),
        conditional_entropy(&bell, 1).unwrap(),
    ];
    let bell_err = s_bell.iter().map(|s| (s + 1.0).abs()).fold(0.0, f64::max);

    let phi = ComplexMatrix::outer(
        PureState::bell_phi_plus().amplitudes(),
        PureState::bell_phi_plus().amplitudes(),
    );
    let mut worst_werner = 0.0f64;
    for k in 0..50 {
        let p = k as f64 / 49.0;
        let m = &phi.scale_real(p) + &ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
        let c = concurrence_mixed(&DensityMatrix::new(m).unwrap()).unwrap();
        worst_werner = worst_werner.max((c - (0.0f64).max((3.0 * p - 1.0) / 2.0)).abs());
    }
    let el = t0.elapsed();
    verdict(
        worst_pm < 1e-8 && worst_formula < 1e-8 && bell_err < 1e-10 && worst_werner < 1e-8 && within(el, 10),
        format!(
            "pure/mixed {worst_pm:.1e}, pure/formula {worst_formula:.1e}, Bell S {bell_err:.1e}, Werner {worst_werner:.1e}, {:.2}s",
            el.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Verdict {
    let t0 = Instant::now();
    let mut rng = seeded_rng(2);
    let mut worst_cost = 0.0f64;
    let mut worst_spec = 0.0f64;
    for _ in 0..100 {
        let rho = sample_hs_with_rng(2, &mut rng);
        let spec = hermitian_eig(rho.matrix()).unwrap();
        // Rows of V† are eigenvectors, so V† ρ V is diagonal.
        let u = spec.eigenvectors.adjoint();
        let c = cost_for_unitary(&rho, &u).unwrap();
        worst_cost = worst_cost.max(c).max(cost_oracle(&rho, &u).abs());
        let read = eigen_readout_unitary(&rho, &u).unwrap();
        // Power sums pin the spectrum independently of the eigensolver.
        for k in 1..=4 {
            let from_readout: f64 = read.eigenvalues.iter().map(|l| l.powi(k as i32)).sum();
            worst_spec = worst_spec.max((from_readout - trace_power(rho.matrix(), k)).abs());
        }
        for (a, b) in read.eigenvalues.iter().zip(&spec.eigenvalues) {
            worst_spec = worst_spec.max((a - b).abs());
        }
    }
    let el = t0.elapsed();
    verdict(
        worst_cost < 1e-10 && worst_spec < 1e-8 && within(el, 5),
        format!(
            "max cost {worst_cost:.1e}, spectrum error {worst_spec:.1e}, {:.2}s",
            el.as_secs_f64()
        ),
    )
}

fn value_iteration(mdp: &ToyMdp, gamma: f64) -> Vec<usize> {
    let q = |v: &[f64], s: usize| -> Vec<f64> {
        mdp.transitions[s]
            .iter()
            .map(|o| o.reward + if o.terminal { 0.0 } else { gamma * v[o.next] })
            .collect()
    };
    let mut v = vec![0.0; mdp.n_states];
    for _ in 0..500 {
        v = (0..mdp.n_states)
            .map(|s| q(&v, s).into_iter().fold(f64::MIN, f64::max))
            .collect();
    }
    (0..mdp.n_states)
        .map(|s| {
            let qs = q(&v, s);
            (0..qs.len()).fold(0, |best, a| if qs[a] > qs[best] { a } else { best })
        })
        .collect()
}

fn param(net: &mut QNetwork, layer: usize, bias: bool, i: usize) -> &mut f64 {
    let l = &mut net.layers_mut()[layer];
    if bias {
        &mut l.b[i]
    } else {
        &mut l.w[i]
    }
}

fn fd_gradient_error() -> f64 {
    let mut rng = seeded_rng(3);
    let online = QNetwork::new(&[3, 5, 4, 2], &mut rng).unwrap();
    let target = QNetwork::new(&[3, 5, 4, 2], &mut rng).unwrap();
    let batch: Vec<Transition> = (0..6)
        .map(|i| Transition {
            obs: (0..3).map(|_| rng.random_range(-1.0..1.0)).collect(),
            action: i % 2,
            reward: rng.random_range(-1.0..1.0),
            next_obs: (0..3).map(|_| rng.random_range(-1.0..1.0)).collect(),
            terminal: i == 5,
        })
        .collect();
    let refs: Vec<&Transition> = batch.iter().collect();
    let (_, grads) = td_loss_and_grads(&online, &target, &refs, 0.9).unwrap();
    let loss_at = |net: &QNetwork| td_loss_and_grads(net, &target, &refs, 0.9).unwrap().0;
    let h = 1e-5;
    let mut worst = 0.0f64;
    for (l, (dw, db)) in grads.layers.iter().enumerate() {
        for (is_bias, analytic) in [(false, dw), (true, db)] {
            for (i, &g) in analytic.iter().enumerate() {
                let mut plus = online.clone();
                let mut minus = online.clone();
                *param(&mut plus, l, is_bias, i) += h;
                *param(&mut minus, l, is_bias, i) -= h;
                let fd = (loss_at(&plus) - loss_at(&minus)) / (2.0 * h);
                let rel = (g - fd).abs() / g.abs().max(fd.abs()).max(1e-6);
                worst = worst.max(rel);
            }
        }
    }
    worst
}

fn criterion_3() -> Verdict {
    let t0 = Instant::now();
    let fd = fd_gradient_error();
    let mdp = ToyMdp::chain(4);
    let cfg = toy_config();
    let optimal = value_iteration(&mdp, cfg.gamma);
    let mut matched = 0;
    let mut at = Vec::new();
    for seed in 0..3 {
        let r = train_toy_mdp(&mdp, cfg.clone(), seed, 20000, Some(&optimal)).unwrap();
        if let Some(s) = r.matched_at {
            matched += 1;
            at.push(s);
        }
    }
    let el = t0.elapsed();
    verdict(
        fd <= 1e-4 && matched == 3 && within(el, 60),
        format!(
            "FD relative error {fd:.1e}; optimal policy {optimal:?} matched by {matched}/3 seeds at steps {at:?}; {:.1}s",
            el.as_secs_f64()
        ),
    )
}

/// Recomputes a logged success from its circuit with the reference gates.
fn revalidate(rho: &DensityMatrix, r: &EpisodeRecord, zeta: f64) -> bool {
    let u = circuit_unitary(&r.circuit);
    cost_oracle(rho, &u) < zeta + ZETA_SLACK
}

/// Points mirrored below 0.3 and tracking above it. The mirrored points sit
/// at the extremes so any one of them outweighs the tracking cluster.
fn planted_bounds(planted: f64) -> Vec<BoundPoint> {
    let mut pts = Vec::new();
    for i in 0..50 {
        let upper = (i % 2) as f64;
        pts.push(BoundPoint {
            x: planted - 0.2475 + 0.005 * i as f64,
            upper,
            lower: 1.0 - upper,
        });
    }
    for i in 0..30 {
        let upper = 0.4 + 0.02 * ((i * 7) % 11) as f64;
        pts.push(BoundPoint {
            x: planted + 0.0025 + 0.01 * i as f64,
            upper,
            lower: upper - 0.2,
        });
    }
    pts
}

fn eta_constructed() -> (bool, String) {
    let planted = 0.3;
    let pts = planted_bounds(planted);
    let grid = k_grid(0.05, 0.6, 0.005).unwrap();
    let scan = eta_scan(&pts, &grid).unwrap();
    let at = |k: f64| scan.rows.iter().find(|r| (r.k - k).abs() < 1e-9).unwrap();
    let row = at(planted);
    let ok_pcc =
        row.pcc_ik.is_some_and(|p| (p + 1.0).abs() < 1e-10) && row.pcc_kj.is_some_and(|p| (p - 1.0).abs() < 1e-10);
    let ok_cross = scan.k_star.is_some_and(|k| (k - planted).abs() <= 0.005 + 1e-12);
    (
        ok_pcc && ok_cross && grid.len() == 111,
        format!(
            "eta scan: PCC_ik {:?}, PCC_kj {:?}, k* {:?}",
            row.pcc_ik, row.pcc_kj, scan.k_star
        ),
    )
}

fn criterion_4() -> Verdict {
    let t0 = Instant::now();
    let cfg = search_config(Scale::Desk, 1500);
    assert_eq!((cfg.zeta, cfg.d_max, cfg.budget), (1e-3, 40, 300));
    let mut runs_ok = 0;
    let mut invalid = 0;
    let mut notes = Vec::new();
    for s in 0..5u64 {
        let rho = sample_hs_random_state(2, s);
        let id = RunIdentity {
            state_id: format!("state{s}"),
            agent_seed: s,
            policy_seed: 1000 + s,
        };
        let mut log: Vec<EpisodeRecord> = Vec::new();
        let summary = run_experiment(&cfg, &rho, &id, &mut log).unwrap();
        let successes: Vec<&EpisodeRecord> = log.iter().filter(|r| r.success).collect();
        invalid += successes.iter().filter(|r| !revalidate(&rho, r, cfg.zeta)).count();
        if !successes.is_empty() {
            runs_ok += 1;
        }
        notes.push(format!("{}:{}", id.state_id, summary.e_s));
    }
    let (eta_ok, eta_note) = eta_constructed();
    let el = t0.elapsed();
    verdict(
        runs_ok >= 4 && invalid == 0 && eta_ok && within(el, 1800),
        format!(
            "{runs_ok}/5 runs with successes [{}], {invalid} failed re-validation; {eta_note}; {:.0}s",
            notes.join(" "),
            el.as_secs_f64()
        ),
    )
}

fn criterion_5() -> Verdict {
    let t0 = Instant::now();
    let zero = PureState::basis(2, 0);
    let conc = |theta: f64| {
        let u = build_ee_block(theta).unwrap().to_unitary().unwrap();
        concurrence_pure(&zero.evolve(&u).unwrap()).unwrap()
    };
    let grid: Vec<f64> = (0..=100).map(|i| conc(i as f64 * 0.005)).collect();
    let monotone = grid.windows(2).all(|w| w[1] >= w[0] - 1e-12);
    let id_err = build_ee_block(0.0)
        .unwrap()
        .to_unitary()
        .unwrap()
        .max_abs_diff(&ComplexMatrix::identity(4));
    // Reference: (H⊗I)·CRX(π)·(H⊗I)|00> with the reference gates.
    let mut reference = Circuit::new(2);
    reference.push(GateKind::H, &[0], None).unwrap();
    reference
        .push(GateKind::CRX, &[0, 1], Some(std::f64::consts::PI))
        .unwrap();
    reference.push(GateKind::H, &[0], None).unwrap();
    let amp = circuit_unitary(&reference).mul_vec(zero.amplitudes());
    let ref_half = pure_concurrence_oracle(&amp);
    let el = t0.elapsed();
    verdict(
        grid[0].abs() < 1e-9
            && (grid[100] - 1.0).abs() < 1e-9
            && (ref_half - 1.0).abs() < 1e-9
            && monotone
            && id_err < 1e-10
            && within(el, 1),
        format!(
            "C(0) {:.1e}, C(0.5) {:.12}, monotone {monotone}, identity error {id_err:.1e}, {:.3}s",
            grid[0],
            grid[100],
            el.as_secs_f64()
        ),
    )
}

fn criterion_6() -> Verdict {
    let t0 = Instant::now();
    let target = low_concurrence_target(0);
    let rho = sample_hs_random_state(2, target);
    let c_in = concurrence_mixed(&rho).unwrap();
    let mut wins = 0;
    let mut pairs = Vec::new();
    for j in 0..3 {
        let seeds = paired_seeds(0, j);
        let id = RunIdentity {
            state_id: format!("sampler-{target}"),
            agent_seed: seeds.agent_init,
            policy_seed: seeds.policy,
        };
        let mut counts = [0u64; 2];
        for (arm, theta) in [0.0, 0.5].into_iter().enumerate() {
            let mut cfg = search_config(Scale::Desk, 500);
            cfg.ee_theta = theta;
            let mut log: Vec<EpisodeRecord> = Vec::new();
            counts[arm] = run_experiment(&cfg, &rho, &id, &mut log).unwrap().e_s;
        }
        if counts[1] >= counts[0] {
            wins += 1;
        }
        pairs.push(format!("{}vs{}", counts[1], counts[0]));
    }
    let el = t0.elapsed();
    verdict(
        wins >= 2 && within(el, 1200),
        format!(
            "target seed {target} (C = {c_in:.3}); theta 0.5 vs 0 successes [{}]; {wins}/3 pairs; {:.0}s",
            pairs.join(" "),
            el.as_secs_f64()
        ),
    )
}

/// P(C > 0.6) for two-qubit Hilbert–Schmidt states, from a 400k-sample
/// Monte-Carlo run made before the library existed.
const ORACLE_P_ABOVE_0_6: f64 = 0.0011025;

fn criterion_7() -> Verdict {
    let t0 = Instant::now();
    let n = 100_000;
    let rows = ensemble_study(n, 0).unwrap();
    let s = summarize_ensemble(&rows).unwrap();
    let rho_s = s.spearman_concurrence_lambda_max.unwrap_or(f64::NAN);
    let bins: Vec<f64> = s.bin_mean_abs_delta_s.iter().map(|b| b.unwrap_or(f64::NAN)).collect();
    let decreasing = bins.windows(2).all(|w| w[1] < w[0]);
    let se = (ORACLE_P_ABOVE_0_6 * (1.0 - ORACLE_P_ABOVE_0_6) / n as f64).sqrt();
    let limit = ORACLE_P_ABOVE_0_6 + 3.0 * se;
    let el = t0.elapsed();
    verdict(
        rho_s > 0.0 && decreasing && s.fraction_above_0_6 < limit && within(el, 120),
        format!(
            "Spearman {rho_s:.3}; mean |dS| by quintile {:?}; P(C>0.6) {:.5} < {limit:.5}; {:.1}s",
            bins.iter().map(|b| format!("{b:.4}")).collect::<Vec<_>>(),
            s.fraction_above_0_6,
            el.as_secs_f64()
        ),
    )
}

/// Reference bounds per state: `(max mean, max std, min mean, min std)` over five seeds.
const REFERENCE_BOUNDS: [[f64; 4]; 9] = [
    [0.874, 0.002, 0.183, 0.004],
    [0.849, 0.002, 0.108, 0.028],
    [0.975, 0.001, 0.084, 0.006],
    [0.936, 0.002, 0.118, 0.009],
    [0.880, 0.001, 0.188, 0.013],
    [0.911, 0.003, 0.156, 0.024],
    [0.933, 0.001, 0.235, 0.013],
    [0.928, 0.005, 0.208, 0.013],
    [0.831, 0.011, 0.302, 0.010],
];

fn record(state: usize, seed: u64, episode: u64, c_evolved: f64, success: bool) -> EpisodeRecord {
    EpisodeRecord {
        episode,
        state_id: format!("state{}", state + 1),
        agent_seed: seed,
        ee_theta: 0.0,
        success,
        final_cost: if success { 0.0 } else { 0.5 },
        circuit: Circuit::new(2),
        resources: Default::default(),
        rewards: vec![],
        costs: vec![],
        concurrence_input: 0.1 * state as f64,
        concurrence_of_ansatz: 0.0,
        concurrence_evolved: c_evolved,
        cond_entropy_input: [0.0, 0.0],
        cond_entropy_evolved: [0.0, 0.0],
        inferred_eigenvalues: vec![0.25; 4],
    }
}

/// Five per-seed values with the given mean and sample standard deviation.
fn five_values(mean: f64, std: f64) -> [f64; 5] {
    let z = [-2.0, -1.0, 0.0, 1.0, 2.0];
    z.map(|zi| mean + std * zi / 2.5f64.sqrt())
}

fn criterion_8() -> Verdict {
    let mut recs = Vec::new();
    for (s, row) in REFERENCE_BOUNDS.iter().enumerate() {
        let maxes = five_values(row[0], row[1]);
        let mins = five_values(row[2], row[3]);
        for seed in 0..5u64 {
            let mid = 0.5 * (maxes[seed as usize] + mins[seed as usize]);
            recs.push(record(s, seed, 0, mid, true));
            recs.push(record(s, seed, 1, maxes[seed as usize], true));
            recs.push(record(s, seed, 2, 0.99, false));
            recs.push(record(s, seed, 3, mins[seed as usize], true));
        }
    }
    recs.reverse();
    let report = extract_concurrence_bounds(&recs);
    let mut worst = 0.0f64;
    for (s, row) in REFERENCE_BOUNDS.iter().enumerate() {
        let r = &report.records[s];
        assert_eq!(r.state_id, format!("state{}", s + 1));
        let seeds_max: Vec<f64> = r.seeds.iter().map(|x| x.max_evolved).collect();
        for (got, want) in [
            (r.max_evolved.mean, row[0]),
            (r.max_evolved.std, row[1]),
            (r.min_evolved.mean, row[2]),
            (r.min_evolved.std, row[3]),
            (sample_std(&seeds_max), row[1]),
        ] {
            worst = worst.max((got - want).abs());
        }
    }
    let points = bound_points(&report);

    // Signed weights: Σ|Δ| split by sign.
    let cw_points: Vec<ContributionPoint> = [-0.5, -0.25, 0.0, 0.125, 0.75]
        .iter()
        .map(|&d| ContributionPoint { delta_c: 0.1, delta: d })
        .collect();
    let (neg, pos) = cumulative_weight(&cw_points);
    let cw_ok = (neg - 0.75).abs() < 1e-15 && (pos - 0.875).abs() < 1e-15;

    // Entropy pairs on a line give PCC = +1 and −1.
    let mut eig_recs = Vec::new();
    let kinds = [GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::CX];
    for (state, slope) in [("plus", 2.0), ("minus", -0.5)] {
        for (i, &kind) in kinds.iter().enumerate() {
            let mut r = record(0, 0, i as u64, 0.5, true);
            r.state_id = state.into();
            let mut c = Circuit::new(2);
            let q: &[usize] = if kind == GateKind::CX { &[0, 1] } else { &[1] };
            c.push(kinds[i], q, kinds[i].is_parametric().then_some(0.1)).unwrap();
            r.circuit = c;
            let x = 0.1 * i as f64 - 0.2;
            r.cond_entropy_evolved = [x, slope * x + 0.3];
            r.inferred_eigenvalues = vec![0.4 + 0.01 * i as f64, 0.3, 0.2, 0.1 - 0.01 * i as f64];
            eig_recs.push(r);
        }
    }
    let (corr, skipped) = eigenvalue_correlation_study(&eig_recs);
    let pcc_of = |name: &str| corr.iter().find(|c| c.state_id == name).and_then(|c| c.pcc);
    let eig_ok = skipped.is_empty()
        && pcc_of("plus").is_some_and(|p| (p - 1.0).abs() < 1e-10)
        && pcc_of("minus").is_some_and(|p| (p + 1.0).abs() < 1e-10);

    verdict(
        worst <= 1e-12 && points.len() == 9 && cw_ok && eig_ok,
        format!(
            "bounds max deviation {worst:.1e} over 9 states; cumulative weight ({neg}, {pos}); PCC {:?}/{:?}",
            pcc_of("plus"),
            pcc_of("minus")
        ),
    )
}

fn run_cli(args: &[&str]) -> i32 {
    rlvqsd::cli::run(std::iter::once("rlvqsd").chain(args.iter().copied()))
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).unwrap().display().to_string();
                out.push((rel, std::fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

fn criterion_9() -> Verdict {
    let tmp = tempfile::tempdir().unwrap();
    let cfg_path = tmp.path().join("cfg.json");
    std::fs::write(
        &cfg_path,
        r#"{"schema_version":1,"state_id":"s5","target":{"kind":"sampler","seed":5},
            "seeds":{"agent_init":3,"policy":4},
            "search":{"episodes":40,"zeta":1e-3,"checkpoint_every":20,"agent":{"hidden":[32,32],"learning_starts":64}}}"#,
    )
    .unwrap();
    let mut snapshots = Vec::new();
    let mut codes = Vec::new();
    for run in ["a", "b"] {
        let out = tmp.path().join(run);
        let o = out.to_str().unwrap();
        let train_dir = out.join("train");
        let t = train_dir.to_str().unwrap();
        codes.push(run_cli(&["--out", t, "train", "--config", cfg_path.to_str().unwrap()]));
        for study in ["bounds", "eta-scan", "contribution", "eigen-correlation", "resources"] {
            let dest = out.join(study);
            codes.push(run_cli(&["--out", dest.to_str().unwrap(), "analyze", study, t]));
        }
        codes.push(run_cli(&["--out", o, "--seed", "9", "sample", "--count", "3"]));
        codes.push(run_cli(&[
            "--out",
            &format!("{o}/ens"),
            "--seed",
            "9",
            "sample",
            "--ensemble",
            "--count",
            "500",
        ]));
        codes.push(run_cli(&["--out", o, "reproduce", "fig4"]));
        snapshots.push(dir_bytes(&out));
    }
    // Analyses that need more successes than a 40-episode run yields may
    // exit with a numeric error; they must do so identically.
    let codes_match = codes[..codes.len() / 2] == codes[codes.len() / 2..];
    let checked: Vec<&str> = snapshots[0]
        .iter()
        .filter(|(name, _)| name.ends_with(".jsonl") || name.ends_with(".csv") || name.ends_with(".json"))
        .map(|(name, _)| name.as_str())
        .collect();
    let identical = snapshots[0] == snapshots[1];
    verdict(
        identical && codes_match && codes[0] == 0 && checked.len() >= 8,
        format!(
            "{} files compared, identical {identical}, exit codes {:?}",
            checked.len(),
            &codes[..codes.len() / 2]
        ),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Verdict);
    let criteria: [Criterion; 9] = [
        ("quantum-information identities", criterion_1),
        ("cost function oracle", criterion_2),
        ("DDQN correctness", criterion_3),
        ("desk-scale search", criterion_4),
        ("entanglement-enhancing block", criterion_5),
        ("enhancement direction", criterion_6),
        ("random-state ensemble", criterion_7),
        ("analysis fixtures", criterion_8),
        ("determinism", criterion_9),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != i + 1) {
            continue;
        }
        let v = f();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {} ({name}): {}", i + 1, v.detail);
        if !v.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
