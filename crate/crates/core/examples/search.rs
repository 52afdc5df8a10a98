//! Reinforcement-learning search for a diagonalizing circuit.
//!
//!     cargo run --release --example search -- [state seed] [episodes] [theta]

use rlvqsd::agent::AgentConfig;
use rlvqsd::qas::{run_experiment, EpisodeRecord, QasConfig, RunIdentity};
use rlvqsd::qcore::{concurrence_mixed, sample_hs_random_state};

fn main() {
    let mut args = std::env::args().skip(1);
    let state: u64 = args.next().map_or(0, |s| s.parse().unwrap());
    let episodes: u64 = args.next().map_or(150, |s| s.parse().unwrap());
    let theta: f64 = args.next().map_or(0.0, |s| s.parse().unwrap());

    let rho = sample_hs_random_state(2, state);
    let cfg = QasConfig {
        episodes,
        zeta: 1e-3,
        ee_theta: theta,
        agent: AgentConfig {
            hidden: vec![64, 64],
            ..AgentConfig::default()
        },
        ..QasConfig::default()
    };
    let id = RunIdentity {
        state_id: format!("hs{state}"),
        agent_seed: 0,
        policy_seed: 1000,
    };
    let mut log: Vec<EpisodeRecord> = Vec::new();
    let summary = run_experiment(&cfg, &rho, &id, &mut log).unwrap();

    println!("target C = {:.4}, theta = {theta}", concurrence_mixed(&rho).unwrap());
    println!(
        "{} of {} episodes found an admissible circuit",
        summary.e_s, summary.e_tot
    );
    if let Some(best) = log
        .iter()
        .filter(|r| r.success)
        .min_by_key(|r| r.resources.total_gates())
    {
        let gates: Vec<String> = best
            .circuit
            .ops()
            .iter()
            .map(|op| format!("{:?}{:?}", op.kind, op.qubits))
            .collect();
        println!("shortest: {} (cost {:.2e})", gates.join(" "), best.final_cost);
        println!("inferred spectrum {:.5?}", best.inferred_eigenvalues);
    }
}
