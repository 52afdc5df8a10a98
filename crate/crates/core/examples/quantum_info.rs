//! Random two-qubit states and their entanglement measures.
//!
//!     cargo run --example quantum_info -- [seed]

use rlvqsd::qcore::{
    concurrence_mixed, conditional_entropy, hermitian_eigenvalues, purity, sample_hs_random_state, DensityMatrix,
    PureState,
};

fn report(name: &str, rho: &DensityMatrix) {
    let ev = hermitian_eigenvalues(rho.matrix()).unwrap();
    println!(
        "{name:>10}  C = {:.4}  purity = {:.4}  S(q0|q1) = {:+.4}  S(q1|q0) = {:+.4}  spectrum = {:.4?}",
        concurrence_mixed(rho).unwrap(),
        purity(rho),
        conditional_entropy(rho, 0).unwrap(),
        conditional_entropy(rho, 1).unwrap(),
        ev
    );
}

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .map_or(0, |s| s.parse().expect("seed must be an integer"));
    report("bell", &DensityMatrix::from_pure(&PureState::bell_phi_plus()));
    report("mixed", &DensityMatrix::maximally_mixed(2));
    for s in seed..seed + 5 {
        report(&format!("hs#{s}"), &sample_hs_random_state(2, s));
    }
}
