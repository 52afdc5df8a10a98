//! Post-hoc studies over a small multi-seed search: concurrence bounds,
//! qubit contributions and eigenvalue/entropy correlation.
//!
//!     cargo run --release --example analysis -- [episodes]

use rlvqsd::agent::AgentConfig;
use rlvqsd::analysis::{
    contribution_points, cumulative_weight, eigenvalue_correlation_study, extract_concurrence_bounds,
};
use rlvqsd::qas::{run_experiment, EpisodeRecord, QasConfig, RunIdentity};
use rlvqsd::qcore::sample_hs_random_state;

fn main() {
    let episodes: u64 = std::env::args().nth(1).map_or(80, |s| s.parse().unwrap());
    let cfg = QasConfig {
        episodes,
        zeta: 1e-3,
        agent: AgentConfig {
            hidden: vec![64, 64],
            ..AgentConfig::default()
        },
        ..QasConfig::default()
    };
    let mut log: Vec<EpisodeRecord> = Vec::new();
    for state in 0..2u64 {
        let rho = sample_hs_random_state(2, state + 1);
        for seed in 0..2 {
            let id = RunIdentity {
                state_id: format!("hs{}", state + 1),
                agent_seed: seed,
                policy_seed: 1000 + seed,
            };
            run_experiment(&cfg, &rho, &id, &mut log).unwrap();
        }
    }

    let bounds = extract_concurrence_bounds(&log);
    for r in &bounds.records {
        println!(
            "{}: input C {:.3}, max {:.3} ± {:.3}, min {:.3} ± {:.3}",
            r.state_id,
            r.input_concurrence,
            r.max_evolved.mean,
            r.max_evolved.std,
            r.min_evolved.mean,
            r.min_evolved.std
        );
    }
    let (neg, pos) = cumulative_weight(&contribution_points(&log));
    println!("cumulative contribution weight: {neg:.3} (q1 favoured) vs {pos:.3} (q0 favoured)");
    let (corr, skipped) = eigenvalue_correlation_study(&log);
    for c in corr {
        println!(
            "{}: {} ansatzes, median spectrum {:.4?}, PCC {:?}",
            c.state_id, c.n_ansatz, c.median_eigenvalues, c.pcc
        );
    }
    for e in skipped {
        println!("skipped: {e}");
    }
}
