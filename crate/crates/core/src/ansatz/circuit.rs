//! Gate lists, their unitaries, and resource counts.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::AnsatzError;
use crate::qcore::matrix::{ComplexMatrix, C0};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    RX,
    RY,
    RZ,
    CX,
    /// Hadamard. Only appears in fixed prefix blocks.
    H,
    /// Controlled RX. Only appears in fixed prefix blocks.
    CRX,
}

impl GateKind {
    pub fn is_parametric(self) -> bool {
        matches!(self, GateKind::RX | GateKind::RY | GateKind::RZ | GateKind::CRX)
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::CX | GateKind::CRX => 2,
            _ => 1,
        }
    }
}

/// One gate. For two-qubit gates `qubits` is `[control, target]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub param_slot: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<GateOp>,
    params: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ResourceCount {
    pub one_qubit_gates: usize,
    pub two_qubit_gates: usize,
    pub depth: usize,
}

impl ResourceCount {
    pub fn total_gates(&self) -> usize {
        self.one_qubit_gates + self.two_qubit_gates
    }
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        assert!(n_qubits >= 1, "a circuit needs at least one qubit");
        Self {
            n_qubits,
            ops: Vec::new(),
            params: Vec::new(),
        }
    }

    /// Appends a gate. Parametric gates take a fresh parameter slot.
    pub fn push(&mut self, kind: GateKind, qubits: &[usize], param: Option<f64>) -> Result<(), AnsatzError> {
        if qubits.len() != kind.arity() {
            return Err(AnsatzError::InvalidOp(format!(
                "{kind:?} acts on {} qubit(s)",
                kind.arity()
            )));
        }
        if let Some(&q) = qubits.iter().find(|&&q| q >= self.n_qubits) {
            return Err(AnsatzError::InvalidOp(format!("qubit {q} out of range")));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(AnsatzError::InvalidOp("control and target must differ".into()));
        }
        let param_slot = match (kind.is_parametric(), param) {
            (true, Some(theta)) => {
                self.params.push(theta);
                Some(self.params.len() - 1)
            }
            (true, None) => return Err(AnsatzError::InvalidOp(format!("{kind:?} needs a parameter"))),
            (false, Some(_)) => return Err(AnsatzError::InvalidOp(format!("{kind:?} takes no parameter"))),
            (false, None) => None,
        };
        self.ops.push(GateOp {
            kind,
            qubits: qubits.to_vec(),
            param_slot,
        });
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn n_params(&self) -> usize {
        self.params.len()
    }

    pub fn set_params(&mut self, params: &[f64]) -> Result<(), AnsatzError> {
        if params.len() != self.params.len() {
            return Err(AnsatzError::UnboundParams {
                expected: self.params.len(),
                found: params.len(),
            });
        }
        self.params.copy_from_slice(params);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// Unitary at the stored parameters; the first op acts first.
    pub fn to_unitary(&self) -> Result<ComplexMatrix, AnsatzError> {
        self.unitary_with(&self.params)
    }

    /// Unitary at an explicit parameter vector.
    pub fn unitary_with(&self, params: &[f64]) -> Result<ComplexMatrix, AnsatzError> {
        if params.len() != self.params.len() {
            return Err(AnsatzError::UnboundParams {
                expected: self.params.len(),
                found: params.len(),
            });
        }
        let mut u = ComplexMatrix::identity(self.dim());
        for op in &self.ops {
            let theta = op.param_slot.map_or(0.0, |s| params[s]);
            apply_gate_left(&mut u, self.n_qubits, op, theta);
        }
        Ok(u)
    }

    pub fn resources(&self) -> ResourceCount {
        let mut front = vec![0usize; self.n_qubits];
        let mut rc = ResourceCount::default();
        for op in &self.ops {
            if op.qubits.len() == 1 {
                rc.one_qubit_gates += 1;
            } else {
                rc.two_qubit_gates += 1;
            }
            let level = op.qubits.iter().map(|&q| front[q]).max().unwrap_or(0) + 1;
            for &q in &op.qubits {
                front[q] = level;
            }
        }
        rc.depth = front.into_iter().max().unwrap_or(0);
        rc
    }
}

pub fn rotation_matrix(kind: GateKind, theta: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    let re = |x: f64| Complex64::new(x, 0.0);
    match kind {
        GateKind::RX | GateKind::CRX => [[re(c), Complex64::new(0.0, -s)], [Complex64::new(0.0, -s), re(c)]],
        GateKind::RY => [[re(c), re(-s)], [re(s), re(c)]],
        GateKind::RZ => [[Complex64::new(c, -s), C0], [C0, Complex64::new(c, s)]],
        GateKind::H => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            [[re(h), re(h)], [re(h), re(-h)]]
        }
        GateKind::CX => panic!("CX is not a single-qubit rotation"),
    }
}

/// `u <- G u` for one gate on an `n`-qubit register.
pub(crate) fn apply_gate_left(u: &mut ComplexMatrix, n_qubits: usize, op: &GateOp, theta: f64) {
    let d = 1usize << n_qubits;
    let cols = u.cols();
    let data = u.as_mut_slice();
    match op.kind {
        GateKind::CX => {
            let cbit = 1 << (n_qubits - 1 - op.qubits[0]);
            let tbit = 1 << (n_qubits - 1 - op.qubits[1]);
            for i in 0..d {
                if i & cbit != 0 && i & tbit == 0 {
                    let j = i | tbit;
                    for k in 0..cols {
                        data.swap(i * cols + k, j * cols + k);
                    }
                }
            }
        }
        GateKind::CRX => {
            let g = rotation_matrix(GateKind::RX, theta);
            let cbit = 1 << (n_qubits - 1 - op.qubits[0]);
            let tbit = 1 << (n_qubits - 1 - op.qubits[1]);
            for i in 0..d {
                if i & cbit != 0 && i & tbit == 0 {
                    mix_rows(data, cols, i, i | tbit, &g);
                }
            }
        }
        kind => {
            let g = rotation_matrix(kind, theta);
            let bit = 1 << (n_qubits - 1 - op.qubits[0]);
            for i in 0..d {
                if i & bit == 0 {
                    mix_rows(data, cols, i, i | bit, &g);
                }
            }
        }
    }
}

#[inline]
fn mix_rows(data: &mut [Complex64], cols: usize, i0: usize, i1: usize, g: &[[Complex64; 2]; 2]) {
    for k in 0..cols {
        let a = data[i0 * cols + k];
        let b = data[i1 * cols + k];
        data[i0 * cols + k] = g[0][0] * a + g[0][1] * b;
        data[i1 * cols + k] = g[1][0] * a + g[1][1] * b;
    }
}

#[derive(Serialize, Deserialize)]
struct OpRecord {
    kind: GateKind,
    qubits: Vec<usize>,
    param: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct CircuitRecord {
    n_qubits: usize,
    ops: Vec<OpRecord>,
}

impl Serialize for Circuit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let ops = self
            .ops
            .iter()
            .map(|op| OpRecord {
                kind: op.kind,
                qubits: op.qubits.clone(),
                param: op.param_slot.map(|k| self.params[k]),
            })
            .collect();
        CircuitRecord {
            n_qubits: self.n_qubits,
            ops,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Circuit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rec = CircuitRecord::deserialize(d)?;
        if rec.n_qubits == 0 {
            return Err(D::Error::custom("n_qubits must be positive"));
        }
        let mut c = Circuit::new(rec.n_qubits);
        for op in rec.ops {
            c.push(op.kind, &op.qubits, op.param).map_err(D::Error::custom)?;
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::matrix::{paulis, C1, CI};
    use std::f64::consts::PI;

    fn x_on_q0() -> ComplexMatrix {
        paulis::x().kron(&ComplexMatrix::identity(2))
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::new(2);
        assert_eq!(c.to_unitary().unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn rx_pi_is_minus_i_x() {
        // exp(-iπX/2) = cos(π/2) I - i sin(π/2) X = -iX
        let mut c = Circuit::new(2);
        c.push(GateKind::RX, &[0], Some(PI)).unwrap();
        let u = c.to_unitary().unwrap();
        assert!(u.max_abs_diff(&x_on_q0().scale(-CI)) < 1e-15);
    }

    #[test]
    fn rz_then_ry_is_hadamard_up_to_phase() {
        // RY(π/2)·RZ(π) = (1/√2)[[1,-1],[1,1]] · [[-i, 0],[0, i]] = -i H,
        // so RZ is the first op.
        let mut c = Circuit::new(1);
        c.push(GateKind::RZ, &[0], Some(PI)).unwrap();
        c.push(GateKind::RY, &[0], Some(PI / 2.0)).unwrap();
        let u = c.to_unitary().unwrap();
        assert!(u.max_abs_diff(&paulis::hadamard().scale(-CI)) < 1e-15);
    }

    #[test]
    fn cx_matrix() {
        let mut c = Circuit::new(2);
        c.push(GateKind::CX, &[0, 1], None).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ]);
        assert_eq!(c.to_unitary().unwrap(), expected);

        let mut r = Circuit::new(2);
        r.push(GateKind::CX, &[1, 0], None).unwrap();
        let rev = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
        ]);
        assert_eq!(r.to_unitary().unwrap(), rev);
    }

    #[test]
    fn first_op_acts_first() {
        // RY(π/2) on q0 then CX(0→1) takes |00> to a Bell state.
        let mut c = Circuit::new(2);
        c.push(GateKind::RY, &[0], Some(PI / 2.0)).unwrap();
        c.push(GateKind::CX, &[0, 1], None).unwrap();
        let out = c.to_unitary().unwrap().mul_vec(&[C1, C0, C0, C0]);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out[0].re - h).abs() < 1e-15 && (out[3].re - h).abs() < 1e-15);
        assert!(out[1].norm() < 1e-15 && out[2].norm() < 1e-15);
    }

    #[test]
    fn unbound_params() {
        let mut c = Circuit::new(2);
        c.push(GateKind::RZ, &[1], Some(0.0)).unwrap();
        assert!(matches!(c.unitary_with(&[]), Err(AnsatzError::UnboundParams { .. })));
        assert!(c.set_params(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn push_validation() {
        let mut c = Circuit::new(2);
        assert!(c.push(GateKind::CX, &[0, 0], None).is_err());
        assert!(c.push(GateKind::RX, &[2], Some(0.0)).is_err());
        assert!(c.push(GateKind::RX, &[0], None).is_err());
        assert!(c.push(GateKind::CX, &[0, 1], Some(1.0)).is_err());
        assert!(c.is_empty());
    }

    #[test]
    fn resource_examples() {
        assert_eq!(Circuit::new(2).resources(), ResourceCount::default());

        let mut c = Circuit::new(2);
        c.push(GateKind::RX, &[0], Some(0.0)).unwrap();
        c.push(GateKind::RY, &[1], Some(0.0)).unwrap();
        assert_eq!(
            c.resources(),
            ResourceCount {
                one_qubit_gates: 2,
                two_qubit_gates: 0,
                depth: 1
            }
        );

        let mut c = Circuit::new(2);
        c.push(GateKind::RX, &[0], Some(0.0)).unwrap();
        c.push(GateKind::CX, &[0, 1], None).unwrap();
        c.push(GateKind::RZ, &[1], Some(0.0)).unwrap();
        assert_eq!(
            c.resources(),
            ResourceCount {
                one_qubit_gates: 2,
                two_qubit_gates: 1,
                depth: 3
            }
        );
    }

    #[test]
    fn json_shape() {
        let mut c = Circuit::new(2);
        c.push(GateKind::RX, &[0], Some(0.5)).unwrap();
        c.push(GateKind::CX, &[1, 0], None).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"n_qubits":2,"ops":[{"kind":"RX","qubits":[0],"param":0.5},{"kind":"CX","qubits":[1,0],"param":null}]}"#
        );
        let back: Circuit = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
