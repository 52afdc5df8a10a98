//! Channels, entropies and entanglement measures.

use num_complex::Complex64;

use super::eig::{hermitian_eig, hermitian_eigenvalues};
use super::matrix::{paulis, ComplexMatrix, C0};
use super::state::{DensityMatrix, PureState};
use super::QError;

const UNITARY_TOL: f64 = 1e-10;

/// `U ρ U†`.
pub fn apply_unitary(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<DensityMatrix, QError> {
    if !u.is_square() || u.rows() != rho.dim() {
        return Err(QError::DimensionMismatch {
            expected: rho.dim(),
            found: u.rows(),
        });
    }
    if !u.is_unitary(UNITARY_TOL) {
        return Err(QError::NonUnitary);
    }
    Ok(conjugate(rho, u))
}

/// Conjugation without the unitarity check, for callers that build `u` from
/// gates.
pub(crate) fn conjugate(rho: &DensityMatrix, u: &ComplexMatrix) -> DensityMatrix {
    let out = &(u * rho.matrix()) * &u.adjoint();
    DensityMatrix::from_trusted(out)
}

/// Full dephasing in the computational basis: keeps only the diagonal.
pub fn dephase(rho: &DensityMatrix) -> DensityMatrix {
    let d = rho.dim();
    let m = rho.matrix();
    DensityMatrix::from_trusted(ComplexMatrix::from_fn(d, d, |i, j| {
        if i == j {
            Complex64::new(m[(i, i)].re, 0.0)
        } else {
            C0
        }
    }))
}

/// `Tr ρ²`, computed as the squared Frobenius norm of a Hermitian matrix.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix().as_slice().iter().map(|z| z.norm_sqr()).sum()
}

/// Reduced state on the qubits in `keep` (in ascending qubit order).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix, QError> {
    let n = rho.n_qubits();
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(QError::BadIndex("keep set is empty".into()));
    }
    if let Some(&q) = keep.iter().find(|&&q| q >= n) {
        return Err(QError::BadIndex(format!("qubit {q} out of range for {n} qubits")));
    }
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let bit = |q: usize| n - 1 - q;
    let compose = |kept_bits: usize, traced_bits: usize| -> usize {
        let mut idx = 0usize;
        for (pos, &q) in keep.iter().enumerate() {
            let b = (kept_bits >> (keep.len() - 1 - pos)) & 1;
            idx |= b << bit(q);
        }
        for (pos, &q) in traced.iter().enumerate() {
            let b = (traced_bits >> (traced.len() - 1 - pos)) & 1;
            idx |= b << bit(q);
        }
        idx
    };
    let dk = 1usize << keep.len();
    let dt = 1usize << traced.len();
    let m = rho.matrix();
    let out = ComplexMatrix::from_fn(dk, dk, |i, j| (0..dt).map(|t| m[(compose(i, t), compose(j, t))]).sum());
    Ok(DensityMatrix::from_trusted(out))
}

/// Shannon entropy in bits of a probability vector, with `0 log 0 = 0`.
pub fn shannon_entropy_bits(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

/// `-Σ λ log₂ λ`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let ev = hermitian_eigenvalues(rho.matrix()).expect("density matrices are small and Hermitian");
    shannon_entropy_bits(&ev)
}

/// `S(ρ) − S(Tr_target ρ)`: the entropy of qubit `target` conditioned on the
/// rest. For two qubits `conditional_entropy(ρ, 0)` is `S_{q0|q1}`.
pub fn conditional_entropy(rho: &DensityMatrix, target: usize) -> Result<f64, QError> {
    let n = rho.n_qubits();
    if target >= n {
        return Err(QError::BadIndex(format!("qubit {target} out of range for {n} qubits")));
    }
    if n == 1 {
        return Ok(von_neumann_entropy(rho));
    }
    let rest: Vec<usize> = (0..n).filter(|&q| q != target).collect();
    let marginal = partial_trace(rho, &rest)?;
    Ok(von_neumann_entropy(rho) - von_neumann_entropy(&marginal))
}

fn require_two_qubits(n: usize) -> Result<(), QError> {
    if n != 2 {
        return Err(QError::QubitCount { expected: 2, found: n });
    }
    Ok(())
}

/// Eigenvalues of ρ below this are treated as exact zeros in the concurrence.
const RANK_TOL: f64 = 1e-14;

/// Wootters concurrence of a two-qubit mixed state.
///
/// The λ's (square roots of the spectrum of `ρ ρ̃`) are computed as the
/// singular values of `τ_ij = w_iᵀ (σy⊗σy) w_j`, where `w_i = √p_i v_i` runs
/// over the eigen-decomposition of ρ restricted to its numerical support.
/// Taking square roots of round-off eigenvalues would otherwise cost ~1e-8
/// accuracy on rank-deficient states.
pub fn concurrence_mixed(rho: &DensityMatrix) -> Result<f64, QError> {
    require_two_qubits(rho.n_qubits())?;
    let yy = paulis::y().kron(&paulis::y());
    let spec = hermitian_eig(rho.matrix())?;
    let w: Vec<Vec<Complex64>> = spec
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > RANK_TOL)
        .map(|(k, &p)| spec.eigenvector(k).into_iter().map(|z| z * p.sqrt()).collect())
        .collect();
    let r = w.len();
    let tau = ComplexMatrix::from_fn(r, r, |i, j| {
        let yw = yy.mul_vec(&w[j]);
        w[i].iter().zip(&yw).map(|(a, b)| a * b).sum()
    });
    let gram = &tau.adjoint() * &tau;
    let gram = ComplexMatrix::from_fn(r, r, |i, j| 0.5 * (gram[(i, j)] + gram[(j, i)].conj()));
    let mut l: Vec<f64> = hermitian_eigenvalues(&gram)?
        .iter()
        .map(|&x| x.max(0.0).sqrt())
        .collect();
    l.resize(4, 0.0);
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

/// Pure-state concurrence `√(2(1 − Tr ρ_A²))`.
pub fn concurrence_pure(psi: &PureState) -> Result<f64, QError> {
    require_two_qubits(psi.n_qubits())?;
    let rho = DensityMatrix::from_pure(psi);
    let rho_a = partial_trace(&rho, &[0])?;
    Ok((2.0 * (1.0 - purity(&rho_a))).max(0.0).sqrt().min(1.0))
}
