//! ADAM with bias-corrected moments.

use serde::{Deserialize, Serialize};

use super::network::{Gradients, QNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdamParams {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl Default for AdamParams {
    fn default() -> Self {
        Self {
            lr: 1e-4,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AdamState {
    pub params: AdamParams,
    step: u64,
    m: Vec<(Vec<f64>, Vec<f64>)>,
    v: Vec<(Vec<f64>, Vec<f64>)>,
}

impl AdamState {
    pub fn new(net: &QNetwork, params: AdamParams) -> Self {
        let zeros: Vec<(Vec<f64>, Vec<f64>)> = net
            .layers()
            .iter()
            .map(|l| (vec![0.0; l.w.len()], vec![0.0; l.b.len()]))
            .collect();
        Self {
            params,
            step: 0,
            m: zeros.clone(),
            v: zeros,
        }
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    pub fn apply(&mut self, net: &mut QNetwork, grads: &Gradients) {
        self.step += 1;
        let p = self.params;
        let t = self.step as i32;
        let c1 = 1.0 - p.beta1.powi(t);
        let c2 = 1.0 - p.beta2.powi(t);
        for (i, layer) in net.layers_mut().iter_mut().enumerate() {
            let (gw, gb) = &grads.layers[i];
            let (mw, mb) = &mut self.m[i];
            let (vw, vb) = &mut self.v[i];
            update(&mut layer.w, gw, mw, vw, p, c1, c2);
            update(&mut layer.b, gb, mb, vb, p, c1, c2);
        }
    }
}

fn update(x: &mut [f64], g: &[f64], m: &mut [f64], v: &mut [f64], p: AdamParams, c1: f64, c2: f64) {
    for i in 0..x.len() {
        m[i] = p.beta1 * m[i] + (1.0 - p.beta1) * g[i];
        v[i] = p.beta2 * v[i] + (1.0 - p.beta2) * g[i] * g[i];
        x[i] -= p.lr * (m[i] / c1) / ((v[i] / c2).sqrt() + p.eps);
    }
}
