//! Reference computations for the integration tests. Everything here is
//! written directly from textbook formulas and shares no code with the
//! library beyond the plain matrix container.

#![allow(dead_code)]

use num_complex::Complex64;
use rlvqsd::ansatz::{Circuit, GateKind};
use rlvqsd::qcore::{ComplexMatrix, DensityMatrix};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn one_qubit(kind: GateKind, theta: f64) -> ComplexMatrix {
    let (s, co) = ((theta / 2.0).sin(), (theta / 2.0).cos());
    let rows = match kind {
        GateKind::RX => vec![vec![c(co, 0.0), c(0.0, -s)], vec![c(0.0, -s), c(co, 0.0)]],
        GateKind::RY => vec![vec![c(co, 0.0), c(-s, 0.0)], vec![c(s, 0.0), c(co, 0.0)]],
        GateKind::RZ => vec![vec![c(co, -s), c(0.0, 0.0)], vec![c(0.0, 0.0), c(co, s)]],
        GateKind::H => {
            let h = 0.5f64.sqrt();
            vec![vec![c(h, 0.0), c(h, 0.0)], vec![c(h, 0.0), c(-h, 0.0)]]
        }
        _ => panic!("not a one-qubit gate: {kind:?}"),
    };
    ComplexMatrix::from_rows(&rows)
}

/// Two-qubit gate matrix with qubit 0 as the most significant bit.
pub fn gate_unitary(kind: GateKind, qubits: &[usize], theta: f64) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    match kind {
        GateKind::CX | GateKind::CRX => {
            let inner = if kind == GateKind::CX {
                ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
            } else {
                one_qubit(GateKind::RX, theta)
            };
            // |0><0| ⊗ I + |1><1| ⊗ G, with the factors ordered by qubit.
            let p0 = ComplexMatrix::diag_real(&[1.0, 0.0]);
            let p1 = ComplexMatrix::diag_real(&[0.0, 1.0]);
            let (a, b) = if qubits[0] == 0 {
                (p0.kron(&id), p1.kron(&inner))
            } else {
                (id.kron(&p0), inner.kron(&p1))
            };
            &a + &b
        }
        _ => {
            let g = one_qubit(kind, theta);
            if qubits[0] == 0 {
                g.kron(&id)
            } else {
                id.kron(&g)
            }
        }
    }
}

/// Product of gate matrices, first gate rightmost.
pub fn circuit_unitary(circ: &Circuit) -> ComplexMatrix {
    assert_eq!(circ.n_qubits(), 2);
    let mut u = ComplexMatrix::identity(4);
    for op in circ.ops() {
        let theta = op.param_slot.map_or(0.0, |s| circ.params()[s]);
        u = &gate_unitary(op.kind, &op.qubits, theta) * &u;
    }
    u
}

/// `Tr ρ² − Σ_b ⟨b|UρU†|b⟩²`.
pub fn cost_oracle(rho: &DensityMatrix, u: &ComplexMatrix) -> f64 {
    let m = rho.matrix();
    let evolved = &(u * m) * &u.adjoint();
    let purity: f64 = (m * m).trace().re;
    let diag: f64 = (0..evolved.rows()).map(|i| evolved[(i, i)].re.powi(2)).sum();
    purity - diag
}

/// `2|ad − bc|` for `a|00> + b|01> + c|10> + d|11>`.
pub fn pure_concurrence_oracle(amp: &[Complex64]) -> f64 {
    2.0 * (amp[0] * amp[3] - amp[1] * amp[2]).norm()
}

/// `Tr ρ^k` by repeated multiplication.
pub fn trace_power(m: &ComplexMatrix, k: u32) -> f64 {
    let mut p = m.clone();
    for _ in 1..k {
        p = &p * m;
    }
    p.trace().re
}

/// Sample standard deviation, written out.
pub fn sample_std(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    (x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}
