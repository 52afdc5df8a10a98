//! ε-greedy action selection and the double-DQN update.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::adam::{AdamParams, AdamState};
use super::network::{Gradients, QNetwork};
use super::replay::{ReplayBuffer, Transition};
use super::schedule::EpsilonSchedule;
use super::AgentError;
use crate::qcore::{derive_seed, seeded_rng, QRng};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AgentConfig {
    pub hidden: Vec<usize>,
    pub learning_rate: f64,
    pub adam_beta1: f64,
    pub adam_beta2: f64,
    pub adam_eps: f64,
    pub buffer_capacity: usize,
    pub epsilon_start: f64,
    pub epsilon_decay: f64,
    pub epsilon_min: f64,
    pub gamma: f64,
    pub batch_size: usize,
    /// Online updates between target-network copies.
    pub target_sync: u64,
    /// Buffered transitions required before the first update.
    pub learning_starts: usize,
}

impl Default for AgentConfig {
    fn default() -> Self {
        Self {
            hidden: vec![1000; 5],
            learning_rate: 1e-4,
            adam_beta1: 0.9,
            adam_beta2: 0.999,
            adam_eps: 1e-8,
            buffer_capacity: 15000,
            epsilon_start: 1.0,
            epsilon_decay: 0.99995,
            epsilon_min: 0.05,
            gamma: 0.88,
            batch_size: 64,
            target_sync: 500,
            learning_starts: 1000,
        }
    }
}

impl AgentConfig {
    pub fn layer_sizes(&self, obs_dim: usize, n_actions: usize) -> Vec<usize> {
        let mut s = vec![obs_dim];
        s.extend(&self.hidden);
        s.push(n_actions);
        s
    }

    pub fn adam(&self) -> AdamParams {
        AdamParams {
            lr: self.learning_rate,
            beta1: self.adam_beta1,
            beta2: self.adam_beta2,
            eps: self.adam_eps,
        }
    }

    pub fn epsilon(&self) -> EpsilonSchedule {
        EpsilonSchedule::new(self.epsilon_start, self.epsilon_decay, self.epsilon_min)
    }

    pub fn validate(&self) -> Result<(), AgentError> {
        let bad = |m: &str| Err(AgentError::BadConfig(m.into()));
        if self.hidden.contains(&0) {
            return bad("hidden layer of width 0");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad("learning_rate must be positive");
        }
        if !(0.0..1.0).contains(&self.adam_beta1) || !(0.0..1.0).contains(&self.adam_beta2) {
            return bad("adam betas must lie in [0, 1)");
        }
        if self.adam_eps <= 0.0 {
            return bad("adam_eps must be positive");
        }
        if self.buffer_capacity == 0 || self.batch_size == 0 || self.target_sync == 0 {
            return bad("buffer_capacity, batch_size and target_sync must be positive");
        }
        if !(0.0..=1.0).contains(&self.epsilon_min)
            || !(0.0..=1.0).contains(&self.epsilon_start)
            || !(0.0..=1.0).contains(&self.epsilon_decay)
        {
            return bad("epsilon parameters must lie in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.gamma) {
            return bad("gamma must lie in [0, 1]");
        }
        Ok(())
    }
}

/// Index of the largest value; the lowest index wins ties.
pub fn argmax(q: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in q.iter().enumerate() {
        if v > q[best] {
            best = i;
        }
    }
    best
}

pub fn select_action(net: &QNetwork, obs: &[f64], eps: &EpsilonSchedule, rng: &mut QRng) -> Result<usize, AgentError> {
    let q = net.forward(obs)?;
    // Draw the exploration coin unconditionally so the stream does not
    // depend on network outputs.
    let explore = rng.random::<f64>() < eps.value;
    let random = rng.random_range(0..q.len());
    Ok(if explore { random } else { argmax(&q) })
}

/// Double-DQN targets: the online net picks the next action, the target net
/// scores it. Terminal transitions use the bare reward.
pub fn td_targets(
    online_next: &[f64],
    target_next: &[f64],
    n_actions: usize,
    rewards: &[f64],
    terminal: &[bool],
    gamma: f64,
) -> Vec<f64> {
    rewards
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            if terminal[i] {
                return r;
            }
            let row = i * n_actions..(i + 1) * n_actions;
            let a = argmax(&online_next[row.clone()]);
            r + gamma * target_next[row][a]
        })
        .collect()
}

struct Batch {
    obs: Vec<f64>,
    next_obs: Vec<f64>,
    actions: Vec<usize>,
    rewards: Vec<f64>,
    terminal: Vec<bool>,
}

fn stack(batch: &[&Transition], dim: usize) -> Result<Batch, AgentError> {
    let mut b = Batch {
        obs: Vec::with_capacity(batch.len() * dim),
        next_obs: Vec::with_capacity(batch.len() * dim),
        actions: Vec::with_capacity(batch.len()),
        rewards: Vec::with_capacity(batch.len()),
        terminal: Vec::with_capacity(batch.len()),
    };
    for t in batch {
        if t.obs.len() != dim || t.next_obs.len() != dim {
            return Err(AgentError::DimensionMismatch {
                expected: dim,
                found: if t.obs.len() != dim {
                    t.obs.len()
                } else {
                    t.next_obs.len()
                },
            });
        }
        b.obs.extend_from_slice(&t.obs);
        b.next_obs.extend_from_slice(&t.next_obs);
        b.actions.push(t.action);
        b.rewards.push(t.reward);
        b.terminal.push(t.terminal);
    }
    Ok(b)
}

/// Mean-squared TD error and its gradient w.r.t. the online weights.
pub fn td_loss_and_grads(
    online: &QNetwork,
    target: &QNetwork,
    batch: &[&Transition],
    gamma: f64,
) -> Result<(f64, Gradients), AgentError> {
    if batch.is_empty() {
        return Err(AgentError::EmptyBatch);
    }
    let n = batch.len();
    let na = online.output_dim();
    let b = stack(batch, online.input_dim())?;
    if let Some(&a) = b.actions.iter().find(|&&a| a >= na) {
        return Err(AgentError::BadAction(a));
    }
    let online_next = online.forward_batch(&b.next_obs, n)?;
    let target_next = target.forward_batch(&b.next_obs, n)?;
    let y = td_targets(&online_next, &target_next, na, &b.rewards, &b.terminal, gamma);

    let acts = online.activations(&b.obs, n);
    let q = &acts[acts.len() - 1];
    let mut d_out = vec![0.0; n * na];
    let mut loss = 0.0;
    for i in 0..n {
        let err = q[i * na + b.actions[i]] - y[i];
        loss += err * err;
        d_out[i * na + b.actions[i]] = 2.0 * err / n as f64;
    }
    loss /= n as f64;
    Ok((loss, online.backward(&acts, d_out, n)))
}

/// One ADAM step on the TD loss. Returns the pre-update loss.
pub fn ddqn_update(
    online: &mut QNetwork,
    target: &QNetwork,
    batch: &[&Transition],
    adam: &mut AdamState,
    gamma: f64,
) -> Result<f64, AgentError> {
    let (loss, grads) = td_loss_and_grads(online, target, batch, gamma)?;
    if !loss.is_finite() {
        let q: Vec<String> = batch.iter().map(|t| format!("a={} r={}", t.action, t.reward)).collect();
        return Err(AgentError::NonFiniteLoss {
            update: adam.step_count() + 1,
            detail: q.join("; "),
        });
    }
    adam.apply(online, &grads);
    Ok(loss)
}

pub fn sync_target(online: &QNetwork, target: &mut QNetwork) {
    target.copy_from(online);
}

/// Online and target networks, replay memory, ε schedule and the policy RNG.
#[derive(Debug, Clone)]
pub struct DdqnAgent {
    pub config: AgentConfig,
    pub online: QNetwork,
    pub target: QNetwork,
    pub adam: AdamState,
    pub buffer: ReplayBuffer,
    pub epsilon: EpsilonSchedule,
    rng: QRng,
    steps: u64,
    updates: u64,
}

impl DdqnAgent {
    /// Weights come from `init_seed`; exploration and replay sampling from
    /// `policy_seed`.
    pub fn new(
        obs_dim: usize,
        n_actions: usize,
        config: AgentConfig,
        init_seed: u64,
        policy_seed: u64,
    ) -> Result<Self, AgentError> {
        config.validate()?;
        let mut init_rng = seeded_rng(derive_seed(init_seed, 0x4e4e));
        let online = QNetwork::new(&config.layer_sizes(obs_dim, n_actions), &mut init_rng)?;
        Ok(Self::with_network(online, config, policy_seed))
    }

    pub fn with_network(online: QNetwork, config: AgentConfig, policy_seed: u64) -> Self {
        let target = online.clone();
        let adam = AdamState::new(&online, config.adam());
        Self {
            buffer: ReplayBuffer::new(config.buffer_capacity),
            epsilon: config.epsilon(),
            rng: seeded_rng(derive_seed(policy_seed, 0x5eed)),
            online,
            target,
            adam,
            config,
            steps: 0,
            updates: 0,
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn updates(&self) -> u64 {
        self.updates
    }

    pub(crate) fn rng(&self) -> &QRng {
        &self.rng
    }

    pub(crate) fn set_rng(&mut self, rng: QRng) {
        self.rng = rng;
    }

    pub(crate) fn set_counters(&mut self, steps: u64, updates: u64) {
        self.steps = steps;
        self.updates = updates;
    }

    pub fn act(&mut self, obs: &[f64]) -> Result<usize, AgentError> {
        select_action(&self.online, obs, &self.epsilon, &mut self.rng)
    }

    pub fn greedy(&self, obs: &[f64]) -> Result<usize, AgentError> {
        Ok(argmax(&self.online.forward(obs)?))
    }

    /// Stores a transition, decays ε and runs one update once the buffer
    /// is warm. Returns the update's loss, if any.
    pub fn observe(&mut self, t: Transition) -> Result<Option<f64>, AgentError> {
        self.buffer.push(t);
        self.steps += 1;
        self.epsilon.step();
        if self.buffer.len() < self.config.learning_starts.max(1) {
            return Ok(None);
        }
        let batch = self.buffer.sample(self.config.batch_size, &mut self.rng);
        let loss = ddqn_update(
            &mut self.online,
            &self.target,
            &batch,
            &mut self.adam,
            self.config.gamma,
        )?;
        self.updates += 1;
        if self.updates.is_multiple_of(self.config.target_sync) {
            sync_target(&self.online, &mut self.target);
        }
        Ok(Some(loss))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agent::network::Layer;

    fn constant_net(out: Vec<f64>, n_in: usize) -> QNetwork {
        let n_out = out.len();
        QNetwork::from_layers(vec![Layer {
            n_in,
            n_out,
            w: vec![0.0; n_in * n_out],
            b: out,
        }])
        .unwrap()
    }

    #[test]
    fn ties_pick_lowest_index() {
        let net = constant_net(vec![0.0, 2.0, 1.0, 2.0], 3);
        let mut rng = seeded_rng(0);
        let a = select_action(&net, &[1.0, 0.0, 0.0], &EpsilonSchedule::fixed(0.0), &mut rng).unwrap();
        assert_eq!(a, 1);
    }

    #[test]
    fn uniform_when_epsilon_is_one() {
        let net = constant_net(vec![0.0; 8], 2);
        let mut rng = seeded_rng(4);
        let mut counts = [0usize; 8];
        for _ in 0..10000 {
            counts[select_action(&net, &[0.0, 0.0], &EpsilonSchedule::fixed(1.0), &mut rng).unwrap()] += 1;
        }
        let e = 10000.0 / 8.0;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
        // χ²(7) upper 0.001 quantile.
        assert!(chi2 < 24.322, "chi2 {chi2} counts {counts:?}");
    }

    #[test]
    fn greedy_dominates_at_low_epsilon() {
        let mut out = vec![0.0; 8];
        out[7] = 1.0;
        let net = constant_net(out, 2);
        let mut rng = seeded_rng(5);
        let hits = (0..10000)
            .filter(|_| select_action(&net, &[0.0, 0.0], &EpsilonSchedule::fixed(0.05), &mut rng).unwrap() == 7)
            .count();
        assert!(hits >= 9300, "{hits}");
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let net = constant_net(vec![0.0; 8], 2);
        let mut rng = seeded_rng(0);
        assert!(matches!(
            select_action(&net, &[0.0; 3], &EpsilonSchedule::fixed(0.0), &mut rng),
            Err(AgentError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn targets_use_online_argmax_and_target_value() {
        // Online prefers action 0, target would prefer action 1.
        let online_next = [1.0, 0.0];
        let target_next = [10.0, 100.0];
        let y = td_targets(&online_next, &target_next, 2, &[1.0], &[false], 0.5);
        assert_eq!(y, vec![1.0 + 0.5 * 10.0]);
        let y = td_targets(&online_next, &target_next, 2, &[1.0], &[true], 0.5);
        assert_eq!(y, vec![1.0]);
        let y = td_targets(&online_next, &target_next, 2, &[3.0], &[false], 0.0);
        assert_eq!(y, vec![3.0]);
    }

    #[test]
    fn terminal_loss_is_squared_error() {
        let net = constant_net(vec![1.5, -2.0], 1);
        let t = Transition {
            obs: vec![0.0],
            action: 1,
            reward: 5.0,
            next_obs: vec![0.0],
            terminal: true,
        };
        let (loss, _) = td_loss_and_grads(&net, &net, &[&t], 0.88).unwrap();
        assert_eq!(loss, 49.0);
    }

    #[test]
    fn sync_copies_exactly_and_is_idempotent() {
        let mut agent = DdqnAgent::new(
            4,
            3,
            AgentConfig {
                hidden: vec![8],
                learning_starts: 1,
                batch_size: 2,
                learning_rate: 1e-2,
                ..Default::default()
            },
            1,
            2,
        )
        .unwrap();
        for i in 0..5 {
            agent
                .observe(Transition {
                    obs: vec![i as f64, 1.0, 0.0, 0.0],
                    action: i % 3,
                    reward: 1.0,
                    next_obs: vec![0.0, 0.0, 1.0, i as f64],
                    terminal: false,
                })
                .unwrap();
        }
        let x = [0.3, -0.2, 0.9, 1.1];
        assert_ne!(agent.online.forward(&x).unwrap(), agent.target.forward(&x).unwrap());
        let mut target = agent.target.clone();
        sync_target(&agent.online, &mut target);
        assert_eq!(agent.online.forward(&x).unwrap(), target.forward(&x).unwrap());
        let once = target.clone();
        sync_target(&agent.online, &mut target);
        assert_eq!(once, target);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = seeded_rng(17);
        let online = QNetwork::new(&[3, 6, 5, 4], &mut rng).unwrap();
        let target = QNetwork::new(&[3, 6, 5, 4], &mut rng).unwrap();
        let batch: Vec<Transition> = (0..5)
            .map(|i| Transition {
                obs: (0..3).map(|_| rng.random_range(-1.0..1.0)).collect(),
                action: i % 4,
                reward: rng.random_range(-1.0..1.0),
                next_obs: (0..3).map(|_| rng.random_range(-1.0..1.0)).collect(),
                terminal: i == 2,
            })
            .collect();
        let refs: Vec<&Transition> = batch.iter().collect();
        let (_, grads) = td_loss_and_grads(&online, &target, &refs, 0.9).unwrap();
        let h = 1e-5;
        for li in 0..online.layers().len() {
            let n_w = online.layers()[li].w.len();
            for k in 0..n_w + online.layers()[li].b.len() {
                let loss_at = |delta: f64| {
                    let mut net = online.clone();
                    let l = &mut net.layers_mut()[li];
                    if k < n_w {
                        l.w[k] += delta;
                    } else {
                        l.b[k - n_w] += delta;
                    }
                    // The target values stay fixed while probing the online net.
                    td_loss_and_grads(&net, &target, &refs, 0.9).map(|(l, _)| l).unwrap()
                };
                let fd = (loss_at(h) - loss_at(-h)) / (2.0 * h);
                let g = if k < n_w {
                    grads.layers[li].0[k]
                } else {
                    grads.layers[li].1[k - n_w]
                };
                let scale = g.abs().max(fd.abs()).max(1e-6);
                assert!((g - fd).abs() / scale < 1e-4, "layer {li} index {k}: {g} vs {fd}");
            }
        }
    }
}
