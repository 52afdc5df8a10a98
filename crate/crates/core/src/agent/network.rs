//! Fully connected Q-network: ReLU hidden layers, linear output.

use rand::Rng;

use super::AgentError;
use crate::qcore::QRng;

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub n_in: usize,
    pub n_out: usize,
    /// Row-major `n_out × n_in`.
    pub w: Vec<f64>,
    pub b: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QNetwork {
    layers: Vec<Layer>,
}

/// Per-layer `(dW, db)` in the same layout as the weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub layers: Vec<(Vec<f64>, Vec<f64>)>,
}

/// `C (m×n) = A (m×k) · B (k×n) + beta·C` with arbitrary strides on A and B.
#[allow(clippy::too_many_arguments)]
pub(crate) fn gemm(
    m: usize,
    k: usize,
    n: usize,
    a: &[f64],
    rsa: usize,
    csa: usize,
    b: &[f64],
    rsb: usize,
    csb: usize,
    beta: f64,
    c: &mut [f64],
) {
    assert!(c.len() >= m * n);
    // SAFETY: the strides and sizes describe sub-slices of `a`, `b`, `c`
    // as asserted by the callers' shape bookkeeping.
    unsafe {
        matrixmultiply::dgemm(
            m,
            k,
            n,
            1.0,
            a.as_ptr(),
            rsa as isize,
            csa as isize,
            b.as_ptr(),
            rsb as isize,
            csb as isize,
            beta,
            c.as_mut_ptr(),
            n as isize,
            1,
        );
    }
}

impl QNetwork {
    /// Uniform fan-in initialisation: weights and biases drawn from
    /// `U(-1/√n_in, 1/√n_in)`.
    pub fn new(sizes: &[usize], rng: &mut QRng) -> Result<Self, AgentError> {
        if sizes.len() < 2 || sizes.contains(&0) {
            return Err(AgentError::BadShape(format!("layer sizes {sizes:?}")));
        }
        let layers = sizes
            .windows(2)
            .map(|w| {
                let (n_in, n_out) = (w[0], w[1]);
                let bound = 1.0 / (n_in as f64).sqrt();
                Layer {
                    n_in,
                    n_out,
                    w: (0..n_in * n_out).map(|_| rng.random_range(-bound..bound)).collect(),
                    b: (0..n_out).map(|_| rng.random_range(-bound..bound)).collect(),
                }
            })
            .collect();
        Ok(Self { layers })
    }

    pub fn from_layers(layers: Vec<Layer>) -> Result<Self, AgentError> {
        if layers.is_empty() {
            return Err(AgentError::BadShape("no layers".into()));
        }
        for (i, l) in layers.iter().enumerate() {
            if l.w.len() != l.n_in * l.n_out || l.b.len() != l.n_out {
                return Err(AgentError::BadShape(format!("layer {i} storage")));
            }
            if i > 0 && layers[i - 1].n_out != l.n_in {
                return Err(AgentError::BadShape(format!("layer {i} does not chain")));
            }
        }
        Ok(Self { layers })
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![self.layers[0].n_in];
        s.extend(self.layers.iter().map(|l| l.n_out));
        s
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].n_in
    }

    pub fn output_dim(&self) -> usize {
        self.layers[self.layers.len() - 1].n_out
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layers_mut(&mut self) -> &mut [Layer] {
        &mut self.layers
    }

    pub fn n_params(&self) -> usize {
        self.layers.iter().map(|l| l.w.len() + l.b.len()).sum()
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>, AgentError> {
        self.forward_batch(x, 1)
    }

    /// Row-major `batch × input_dim` in, `batch × output_dim` out.
    pub fn forward_batch(&self, x: &[f64], batch: usize) -> Result<Vec<f64>, AgentError> {
        self.check_input(x, batch)?;
        Ok(self.activations(x, batch).pop().expect("at least one layer"))
    }

    fn check_input(&self, x: &[f64], batch: usize) -> Result<(), AgentError> {
        if x.len() != batch * self.input_dim() {
            return Err(AgentError::DimensionMismatch {
                expected: batch * self.input_dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Input followed by each layer's output (post-activation).
    pub(crate) fn activations(&self, x: &[f64], batch: usize) -> Vec<Vec<f64>> {
        let mut acts = Vec::with_capacity(self.layers.len() + 1);
        acts.push(x.to_vec());
        let last = self.layers.len() - 1;
        for (i, l) in self.layers.iter().enumerate() {
            let mut out = Vec::with_capacity(batch * l.n_out);
            for _ in 0..batch {
                out.extend_from_slice(&l.b);
            }
            let input = &acts[i];
            gemm(batch, l.n_in, l.n_out, input, l.n_in, 1, &l.w, 1, l.n_in, 1.0, &mut out);
            if i < last {
                for v in &mut out {
                    *v = v.max(0.0);
                }
            }
            acts.push(out);
        }
        acts
    }

    /// Backpropagates `d_out` (gradient w.r.t. the linear output) through
    /// cached activations.
    pub(crate) fn backward(&self, acts: &[Vec<f64>], d_out: Vec<f64>, batch: usize) -> Gradients {
        let mut grads = vec![(Vec::new(), Vec::new()); self.layers.len()];
        let mut delta = d_out;
        for i in (0..self.layers.len()).rev() {
            let l = &self.layers[i];
            let input = &acts[i];
            let mut dw = vec![0.0; l.n_out * l.n_in];
            gemm(
                l.n_out, batch, l.n_in, &delta, 1, l.n_out, input, l.n_in, 1, 0.0, &mut dw,
            );
            let mut db = vec![0.0; l.n_out];
            for row in delta.chunks(l.n_out) {
                for (d, v) in db.iter_mut().zip(row) {
                    *d += v;
                }
            }
            if i > 0 {
                let mut d_in = vec![0.0; batch * l.n_in];
                gemm(
                    batch, l.n_out, l.n_in, &delta, l.n_out, 1, &l.w, l.n_in, 1, 0.0, &mut d_in,
                );
                for (d, &a) in d_in.iter_mut().zip(input) {
                    if a <= 0.0 {
                        *d = 0.0;
                    }
                }
                delta = d_in;
            }
            grads[i] = (dw, db);
        }
        Gradients { layers: grads }
    }

    /// Exact copy of `other`'s weights; shapes must agree.
    pub fn copy_from(&mut self, other: &QNetwork) {
        assert_eq!(self.sizes(), other.sizes(), "copy between differently shaped networks");
        self.layers.clone_from(&other.layers);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::seeded_rng;

    #[test]
    fn shapes_chain() {
        let net = QNetwork::new(&[5, 7, 3], &mut seeded_rng(1)).unwrap();
        assert_eq!(net.sizes(), vec![5, 7, 3]);
        assert_eq!(net.n_params(), 5 * 7 + 7 + 7 * 3 + 3);
        let out = net.forward(&[0.0; 5]).unwrap();
        assert!(out.iter().all(|v| v.is_finite()));
        assert!(net.forward(&[0.0; 4]).is_err());
    }

    #[test]
    fn batch_matches_single_rows() {
        let net = QNetwork::new(&[4, 6, 6, 2], &mut seeded_rng(2)).unwrap();
        let xs: Vec<f64> = (0..12).map(|i| (i as f64 * 0.37).sin()).collect();
        let batch = net.forward_batch(&xs, 3).unwrap();
        for r in 0..3 {
            let single = net.forward(&xs[r * 4..(r + 1) * 4]).unwrap();
            for j in 0..2 {
                assert!((single[j] - batch[r * 2 + j]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn hand_computed_forward() {
        let net = QNetwork::from_layers(vec![
            Layer {
                n_in: 2,
                n_out: 2,
                w: vec![1.0, -1.0, 0.5, 0.5],
                b: vec![0.0, -1.0],
            },
            Layer {
                n_in: 2,
                n_out: 1,
                w: vec![2.0, 3.0],
                b: vec![0.25],
            },
        ])
        .unwrap();
        // hidden = relu([1 - 2, 0.5 + 1 - 1]) = [0, 0.5]; out = 1.5 + 0.25
        assert_eq!(net.forward(&[1.0, 2.0]).unwrap(), vec![1.75]);
    }
}
