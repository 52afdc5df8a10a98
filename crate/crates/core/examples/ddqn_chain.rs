//! The double-DQN learner on a four-state chain, where walking right to
//! the end is optimal.
//!
//!     cargo run --example ddqn_chain -- [seed]

use rlvqsd::agent::{toy_config, train_toy_mdp, ToyMdp};

fn main() {
    let seed: u64 = std::env::args().nth(1).map_or(0, |s| s.parse().unwrap());
    let mdp = ToyMdp::chain(4);
    let optimal = vec![1; 4];
    let report = train_toy_mdp(&mdp, toy_config(), seed, 20000, Some(&optimal)).unwrap();
    for (step, loss) in report.learning_curve.iter().step_by(2) {
        println!("step {step:>5}  mean TD loss {loss:.5}");
    }
    match report.matched_at {
        Some(s) => println!("greedy policy {:?} is optimal after {s} steps", report.greedy_policy),
        None => println!("not optimal after {} steps: {:?}", report.steps, report.greedy_policy),
    }
}
