//! Statistics of Hilbert–Schmidt random two-qubit states.
//!
//!     cargo run --release --example ensemble -- [samples] [seed]

use rlvqsd::analysis::{ensemble_study, summarize_ensemble};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(20000, |s| s.parse().unwrap());
    let seed: u64 = args.next().map_or(0, |s| s.parse().unwrap());
    let rows = ensemble_study(n, seed).unwrap();
    let s = summarize_ensemble(&rows).unwrap();
    println!("n = {}", s.n);
    println!(
        "Spearman(C, lambda_max) = {:.3}",
        s.spearman_concurrence_lambda_max.unwrap_or(f64::NAN)
    );
    println!("P(C > 0.6) = {:.5}", s.fraction_above_0_6);
    for b in 0..s.bin_counts.len() {
        println!(
            "C in [{:.3}, {:.3}): {:>6} states, mean |S(q0|q1) - S(q1|q0)| = {:.4}",
            s.bin_edges[b],
            s.bin_edges[b + 1],
            s.bin_counts[b],
            s.bin_mean_abs_delta_s[b].unwrap_or(f64::NAN)
        );
    }
}
