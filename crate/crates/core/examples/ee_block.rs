//! Concurrence produced by the entanglement-enhancing prefix on |00>.
//!
//!     cargo run --example ee_block

use rlvqsd::ansatz::build_ee_block;
use rlvqsd::qcore::{concurrence_pure, PureState};

fn main() {
    let zero = PureState::basis(2, 0);
    for i in 0..=10 {
        let theta = 0.05 * i as f64;
        let u = build_ee_block(theta).unwrap().to_unitary().unwrap();
        let c = concurrence_pure(&zero.evolve(&u).unwrap()).unwrap();
        println!(
            "theta {theta:.2}  C {c:.4}  {}",
            "#".repeat((c * 40.0).round() as usize)
        );
    }
}
