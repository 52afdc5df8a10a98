//! Random states: Hilbert–Schmidt mixed states via the Ginibre ensemble and
//! Haar-random pure states.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;
use super::rng::{seeded_rng, QRng};
use super::state::{DensityMatrix, PureState};

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `G G† / Tr(G G†)` with `G` a square Ginibre matrix of side `2^n`.
pub fn sample_hs_with_rng<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> DensityMatrix {
    assert!(n_qubits >= 1, "need at least one qubit");
    let d = 1usize << n_qubits;
    let g = ComplexMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    DensityMatrix::from_trusted(w.scale_real(1.0 / tr))
}

/// Deterministic for a given seed.
pub fn sample_hs_random_state(n_qubits: usize, seed: u64) -> DensityMatrix {
    let mut rng: QRng = seeded_rng(seed);
    sample_hs_with_rng(n_qubits, &mut rng)
}

/// Haar-random pure state: a normalized complex Gaussian vector.
pub fn haar_pure_state<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> PureState {
    let d = 1usize << n_qubits;
    let v = (0..d).map(|_| complex_gaussian(rng)).collect();
    PureState::normalized(v).expect("gaussian vector is nonzero almost surely")
}
