//! Small dense complex linear algebra and quantum-information primitives.

pub mod eig;
pub mod info;
pub mod matrix;
pub mod rng;
pub mod sample;
pub mod state;

pub use eig::{hermitian_eig, hermitian_eigenvalues, Spectrum};
pub use info::{
    apply_unitary, concurrence_mixed, concurrence_pure, conditional_entropy, dephase, partial_trace, purity,
    von_neumann_entropy,
};
pub use matrix::ComplexMatrix;
pub use rng::{derive_seed, seeded_rng, QRng};
pub use sample::{haar_pure_state, sample_hs_random_state, sample_hs_with_rng};
pub use state::{DensityMatrix, PureState};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QError {
    #[error("matrix is not Hermitian")]
    NonHermitian,
    #[error("matrix is not unitary")]
    NonUnitary,
    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix dimension {0} exceeds the dense solver limit")]
    TooLarge(usize),
    #[error("bad qubit index: {0}")]
    BadIndex(String),
    #[error("expected a {expected}-qubit state, found {found} qubits")]
    QubitCount { expected: usize, found: usize },
    #[error("invalid state: {0}")]
    InvalidState(String),
}
