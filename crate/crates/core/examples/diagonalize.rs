//! Diagonalize one random state with a fixed layered ansatz, then read off
//! the spectrum and compare it with the exact eigenvalues.
//!
//!     cargo run --example diagonalize -- [seed] [layers]

use rlvqsd::ansatz::{Circuit, GateKind};
use rlvqsd::qcore::{hermitian_eigenvalues, sample_hs_random_state};
use rlvqsd::vqsd::{cost, eigen_readout, optimize_params};

fn layered(layers: usize) -> Circuit {
    let mut c = Circuit::new(2);
    for _ in 0..layers {
        for q in 0..2 {
            c.push(GateKind::RY, &[q], Some(0.1)).unwrap();
            c.push(GateKind::RZ, &[q], Some(0.1)).unwrap();
        }
        c.push(GateKind::CX, &[0, 1], None).unwrap();
    }
    for q in 0..2 {
        c.push(GateKind::RY, &[q], Some(0.1)).unwrap();
    }
    c
}

fn main() {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map_or(3, |s| s.parse().unwrap());
    let layers: usize = args.next().map_or(3, |s| s.parse().unwrap());
    let rho = sample_hs_random_state(2, seed);
    let mut c = layered(layers);
    println!(
        "{} gates, {} parameters, initial cost {:.3e}",
        c.len(),
        c.n_params(),
        cost(&rho, &c).unwrap()
    );

    // Warm-started rounds, like the search environment does step by step.
    for round in 0..3 {
        let rep = optimize_params(&rho, &c, 2000, Some(c.params())).unwrap();
        c.set_params(&rep.params_opt).unwrap();
        println!(
            "round {round}: cost {:.3e} after {} evaluations",
            rep.cost, rep.evals_used
        );
    }

    let read = eigen_readout(&rho, &c).unwrap();
    let exact = hermitian_eigenvalues(rho.matrix()).unwrap();
    for (k, (got, want)) in read.eigenvalues.iter().zip(&exact).enumerate() {
        println!(
            "lambda_{k}: inferred {got:.6}  exact {want:.6}  |{}>",
            read.bitstrings[k]
        );
    }
}
