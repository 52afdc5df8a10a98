//! Save an agent mid-training and restore it.
//!
//!     cargo run --example checkpoint

use rlvqsd::agent::{load_checkpoint, save_checkpoint, AgentConfig, DdqnAgent, Transition};

fn main() {
    let config = AgentConfig {
        hidden: vec![16, 16],
        learning_starts: 32,
        batch_size: 16,
        ..AgentConfig::default()
    };
    let mut agent = DdqnAgent::new(4, 3, config, 7, 8).unwrap();
    for step in 0..200 {
        let obs = vec![(step % 4) as f64, 1.0, 0.0, -1.0];
        let action = agent.act(&obs).unwrap();
        let reward = if action == step % 3 { 1.0 } else { 0.0 };
        agent
            .observe(Transition {
                obs: obs.clone(),
                action,
                reward,
                next_obs: obs,
                terminal: true,
            })
            .unwrap();
    }

    let dir = std::env::temp_dir().join("rlvqsd-checkpoint-example");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("agent.bin");
    save_checkpoint(&agent, &path, serde_json::json!({ "note": "example" })).unwrap();
    let sizes = agent.online.sizes();
    let (restored, sidecar) = load_checkpoint(&path, &sizes).unwrap();
    println!("saved after {} steps and {} updates", sidecar.steps, sidecar.updates);
    let probe = [0.0, 1.0, 0.0, -1.0];
    println!(
        "greedy action before {} / after {}",
        agent.greedy(&probe).unwrap(),
        restored.greedy(&probe).unwrap()
    );
}
