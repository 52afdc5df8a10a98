//! Small deterministic MDPs for checking the learner end to end.

use serde::Serialize;

use super::dqn::{AgentConfig, DdqnAgent};
use super::replay::Transition;
use super::AgentError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome {
    pub next: usize,
    pub reward: f64,
    pub terminal: bool,
}

#[derive(Debug, Clone)]
pub struct ToyMdp {
    pub n_states: usize,
    pub n_actions: usize,
    pub start: usize,
    /// Steps before an episode is cut off (not treated as terminal).
    pub episode_cap: usize,
    /// `transitions[s][a]`.
    pub transitions: Vec<Vec<Outcome>>,
}

impl ToyMdp {
    /// Action 0 steps back (staying put at state 0), action 1 advances.
    /// Advancing from the last state pays 1 and ends the episode.
    pub fn chain(n_states: usize) -> Self {
        let transitions = (0..n_states)
            .map(|s| {
                let back = Outcome {
                    next: s.saturating_sub(1),
                    reward: 0.0,
                    terminal: false,
                };
                let advance = if s + 1 == n_states {
                    Outcome {
                        next: s,
                        reward: 1.0,
                        terminal: true,
                    }
                } else {
                    Outcome {
                        next: s + 1,
                        reward: 0.0,
                        terminal: false,
                    }
                };
                vec![back, advance]
            })
            .collect();
        Self {
            n_states,
            n_actions: 2,
            start: 0,
            episode_cap: 4 * n_states,
            transitions,
        }
    }

    /// One state; every action ends the episode with its reward.
    pub fn bandit(rewards: &[f64]) -> Self {
        Self {
            n_states: 1,
            n_actions: rewards.len(),
            start: 0,
            episode_cap: 1,
            transitions: vec![rewards
                .iter()
                .map(|&r| Outcome {
                    next: 0,
                    reward: r,
                    terminal: true,
                })
                .collect()],
        }
    }

    pub fn observation(&self, s: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.n_states];
        v[s] = 1.0;
        v
    }
}

/// Harness defaults: a small network and fast exploration decay.
pub fn toy_config() -> AgentConfig {
    AgentConfig {
        hidden: vec![32, 32],
        learning_rate: 1e-3,
        buffer_capacity: 5000,
        epsilon_decay: 0.999,
        batch_size: 32,
        target_sync: 100,
        learning_starts: 200,
        ..Default::default()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ToyReport {
    pub greedy_policy: Vec<usize>,
    pub steps: usize,
    /// First check at which the greedy policy equalled `optimal`.
    pub matched_at: Option<usize>,
    /// `(step, mean loss since the previous check)`, once updates have begun.
    pub learning_curve: Vec<(usize, f64)>,
}

const CHECK_EVERY: usize = 50;

pub fn greedy_policy(agent: &DdqnAgent, mdp: &ToyMdp) -> Result<Vec<usize>, AgentError> {
    (0..mdp.n_states).map(|s| agent.greedy(&mdp.observation(s))).collect()
}

/// Trains a fresh agent for up to `max_steps` environment steps. When
/// `optimal` is given, stops as soon as the greedy policy matches it.
pub fn train_toy_mdp(
    mdp: &ToyMdp,
    config: AgentConfig,
    seed: u64,
    max_steps: usize,
    optimal: Option<&[usize]>,
) -> Result<ToyReport, AgentError> {
    let mut agent = DdqnAgent::new(mdp.n_states, mdp.n_actions, config, seed, seed.wrapping_add(1))?;
    let mut state = mdp.start;
    let mut t_episode = 0;
    let mut curve = Vec::new();
    let mut losses = (0.0, 0usize);
    let mut matched_at = None;
    let mut steps = 0;
    while steps < max_steps {
        let obs = mdp.observation(state);
        let a = agent.act(&obs)?;
        let out = mdp.transitions[state][a];
        if let Some(l) = agent.observe(Transition {
            obs,
            action: a,
            reward: out.reward,
            next_obs: mdp.observation(out.next),
            terminal: out.terminal,
        })? {
            losses.0 += l;
            losses.1 += 1;
        }
        steps += 1;
        t_episode += 1;
        if out.terminal || t_episode >= mdp.episode_cap {
            state = mdp.start;
            t_episode = 0;
        } else {
            state = out.next;
        }
        if steps % CHECK_EVERY == 0 {
            if losses.1 > 0 {
                curve.push((steps, losses.0 / losses.1 as f64));
            }
            losses = (0.0, 0);
            if let Some(opt) = optimal {
                if greedy_policy(&agent, mdp)? == opt {
                    matched_at = Some(steps);
                    break;
                }
            }
        }
    }
    Ok(ToyReport {
        greedy_policy: greedy_policy(&agent, mdp)?,
        steps,
        matched_at,
        learning_curve: curve,
    })
}
