//! Cyclic Jacobi eigensolver for small Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` and then applies
//! the classical real Jacobi rotation, so the accumulated transform stays
//! unitary. Eigenvalues come back sorted non-increasing.

use std::cmp::Ordering;

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, C0};
use super::QError;

pub const MAX_SWEEPS: usize = 200;
const MAX_DIM: usize = 16;
const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues (descending) with eigenvectors stored as matching columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * v[(j, k)].conj() * self.eigenvalues[k]).sum()
        })
    }

    /// Applies `f` to the eigenvalues and rebuilds the operator.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let mapped = Spectrum {
            eigenvalues: self.eigenvalues.iter().map(|&x| f(x)).collect(),
            eigenvectors: self.eigenvectors.clone(),
        };
        mapped.reconstruct()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }
}

pub fn hermitian_eig(m: &ComplexMatrix) -> Result<Spectrum, QError> {
    if !m.is_square() {
        return Err(QError::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let n = m.rows();
    if n > MAX_DIM {
        return Err(QError::TooLarge(n));
    }
    if !m.is_hermitian(HERMITIAN_TOL) {
        return Err(QError::NonHermitian);
    }

    // Work on the exactly-Hermitian part so round-off in the input does not
    // leak into the rotation angles.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()));
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut converged = n <= 1;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > 1e-15 * scale {
        return Err(QError::NoConvergence(MAX_SWEEPS));
    }

    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n).map(|k| (a[(k, k)].re, normalize_phase(v.column(k)))).collect();
    pairs.sort_by(compare_pairs);

    let eigenvalues = pairs.iter().map(|p| p.0).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| pairs[k].1[i]);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>, QError> {
    hermitian_eig(m).map(|s| s.eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag < 1e-300 {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // J = [[c, s e^{iφ}], [-s e^{-iφ}, c]] acting on (p, q); A <- J† A J.
    let s_ph = phase * s;
    let s_ph_conj = s_ph.conj();
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * s_ph_conj;
        a[(k, q)] = akp * s_ph + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * s_ph;
        a[(q, k)] = apk * s_ph_conj + aqk * c;
    }
    a[(p, q)] = C0;
    a[(q, p)] = C0;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s_ph_conj;
        v[(k, q)] = vkp * s_ph + vkq * c;
    }
}

/// Rotates a vector so its first non-negligible component is real positive.
fn normalize_phase(mut x: Vec<Complex64>) -> Vec<Complex64> {
    if let Some(lead) = x.iter().find(|z| z.norm() > 1e-12).copied() {
        let ph = lead.conj() / lead.norm();
        for z in &mut x {
            *z *= ph;
        }
    }
    x
}

const TIE_TOL: f64 = 1e-12;

fn compare_pairs(x: &(f64, Vec<Complex64>), y: &(f64, Vec<Complex64>)) -> Ordering {
    if (x.0 - y.0).abs() > TIE_TOL {
        return y.0.partial_cmp(&x.0).unwrap_or(Ordering::Equal);
    }
    // Degenerate: order by the eigenvectors' components, largest leading
    // component first.
    for (a, b) in x.1.iter().zip(&y.1) {
        let ord =
            b.re.partial_cmp(&a.re)
                .unwrap_or(Ordering::Equal)
                .then(b.im.partial_cmp(&a.im).unwrap_or(Ordering::Equal));
        if ord != Ordering::Equal && ((a.re - b.re).abs() > TIE_TOL || (a.im - b.im).abs() > TIE_TOL) {
            return ord;
        }
    }
    Ordering::Equal
}
