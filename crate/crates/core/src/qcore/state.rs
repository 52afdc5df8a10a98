//! Density matrices and pure states.
//!
//! Qubit 0 is the most significant bit of the basis index, so the two-qubit
//! basis runs |q0 q1> = |00>, |01>, |10>, |11> and `A ⊗ B` puts `A` on qubit 0.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::eig::hermitian_eig;
use super::matrix::{ComplexMatrix, C0, C1};
use super::QError;

pub const TRACE_TOL: f64 = 1e-10;
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Negative eigenvalues below this are rejected outright.
pub const PSD_REJECT: f64 = 1e-8;
/// Negative eigenvalues between `-PSD_REJECT` and `-PSD_SLACK` get clamped.
pub const PSD_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates a candidate state: Hermitian, unit trace, positive
    /// semidefinite up to a small slack. Slightly negative spectra are
    /// projected back onto the PSD cone.
    pub fn new(mat: ComplexMatrix) -> Result<Self, QError> {
        let n_qubits = qubits_for_dim(mat.rows())?;
        if !mat.is_square() {
            return Err(QError::DimensionMismatch {
                expected: mat.rows(),
                found: mat.cols(),
            });
        }
        if !mat.is_hermitian(HERMITIAN_TOL) {
            return Err(QError::NonHermitian);
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(QError::InvalidState(format!("trace {tr} is not 1")));
        }
        let spec = hermitian_eig(&mat)?;
        let min = spec.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -PSD_REJECT {
            return Err(QError::InvalidState(format!(
                "not positive semidefinite (min eigenvalue {min:e})"
            )));
        }
        if min < -PSD_SLACK {
            let clamped = spec.map_eigenvalues(|x| x.max(0.0));
            let t = clamped.trace().re;
            return Ok(Self {
                n_qubits,
                mat: clamped.scale_real(1.0 / t),
            });
        }
        Ok(Self { n_qubits, mat })
    }

    /// Wraps a matrix produced by a trace- and positivity-preserving map of
    /// an already valid state.
    pub(crate) fn from_trusted(mat: ComplexMatrix) -> Self {
        let n_qubits = qubits_for_dim(mat.rows()).expect("trusted state must have 2^n rows");
        Self { n_qubits, mat }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self::from_trusted(ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()))
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        Self::from_pure(&PureState::basis(n_qubits, index))
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let d = 1usize << n_qubits;
        Self::from_trusted(ComplexMatrix::identity(d).scale_real(1.0 / d as f64))
    }

    /// Diagonal state from a probability vector.
    pub fn diagonal(probs: &[f64]) -> Result<Self, QError> {
        Self::new(ComplexMatrix::diag_real(probs))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Real parts of the diagonal, i.e. computational-basis probabilities.
    pub fn populations(&self) -> Vec<f64> {
        self.mat.diagonal().iter().map(|z| z.re).collect()
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        Self::from_trusted(self.mat.kron(&other.mat))
    }

    /// Swaps the two qubits of a two-qubit state.
    pub fn swap_qubits(&self) -> DensityMatrix {
        assert_eq!(self.n_qubits, 2, "swap_qubits is defined for two qubits");
        let perm = [0usize, 2, 1, 3];
        Self::from_trusted(ComplexMatrix::from_fn(4, 4, |i, j| self.mat[(perm[i], perm[j])]))
    }
}

fn qubits_for_dim(d: usize) -> Result<usize, QError> {
    if d == 0 || !d.is_power_of_two() {
        return Err(QError::InvalidState(format!("dimension {d} is not a power of two")));
    }
    Ok(d.trailing_zeros() as usize)
}

#[derive(Serialize, Deserialize)]
struct StateFile {
    n_qubits: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let d = self.dim();
        let matrix = (0..d)
            .map(|i| (0..d).map(|j| [self.mat[(i, j)].re, self.mat[(i, j)].im]).collect())
            .collect();
        StateFile {
            n_qubits: self.n_qubits,
            matrix,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let f = StateFile::deserialize(d)?;
        let rows: Vec<Vec<Complex64>> = f
            .matrix
            .iter()
            .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(D::Error::custom("state matrix must be square"));
        }
        let rho = DensityMatrix::new(ComplexMatrix::from_rows(&rows)).map_err(D::Error::custom)?;
        if rho.n_qubits != f.n_qubits {
            return Err(D::Error::custom(format!(
                "n_qubits {} does not match a {}x{} matrix",
                f.n_qubits,
                rho.dim(),
                rho.dim()
            )));
        }
        Ok(rho)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, QError> {
        let n_qubits = qubits_for_dim(amplitudes.len())?;
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > TRACE_TOL {
            return Err(QError::InvalidState(format!("squared norm {norm} is not 1")));
        }
        Ok(Self { n_qubits, amplitudes })
    }

    /// Normalizes `amplitudes`; fails only for the zero vector or a bad length.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self, QError> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(QError::InvalidState("zero vector".into()));
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Self::new(amplitudes)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let d = 1usize << n_qubits;
        assert!(index < d, "basis index out of range");
        let mut amplitudes = vec![C0; d];
        amplitudes[index] = C1;
        Self { n_qubits, amplitudes }
    }

    /// (|00> + |11>)/√2
    pub fn bell_phi_plus() -> Self {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            n_qubits: 2,
            amplitudes: vec![s, C0, C0, s],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn evolve(&self, u: &ComplexMatrix) -> Result<PureState, QError> {
        if u.cols() != self.amplitudes.len() || !u.is_square() {
            return Err(QError::DimensionMismatch {
                expected: self.amplitudes.len(),
                found: u.cols(),
            });
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            amplitudes: u.mul_vec(&self.amplitudes),
        })
    }
}
