//! Dense complex eigensolver: balancing, Householder reduction to upper
//! Hessenberg form, and single-shift QR iteration with deflation, plus an
//! independent residual check against the tridiagonal source matrix.
//!
//! The chains handled here are complex symmetric but not Hermitian and
//! not normal, so the full non-symmetric machinery is used. Matrices stay
//! small (a few hundred sites at most) and everything runs in ordinary
//! `f64` complex arithmetic.

mod hessenberg;
mod qr;
mod validate;

pub use hessenberg::hessenberg_reduce;
pub use qr::qr_eigenvalues;
pub use validate::{tridiag_det, validate_spectrum};

use crate::matrix::CMatrix;
use crate::model::Hamiltonian;
use num_complex::Complex64;
use std::cmp::Ordering;

/// Eigenvalues of one matrix together with solver diagnostics.
#[derive(Clone, Debug)]
pub struct EigenReport {
    /// All eigenvalues, counted with multiplicity, sorted by (re, im).
    pub values: Vec<Complex64>,
    /// Total QR sweeps spent.
    pub iterations: usize,
    /// Largest residual from [`validate_spectrum`]; `None` when the
    /// report was produced without a source Hamiltonian to check against.
    pub max_residual: Option<f64>,
    /// False when the iteration cap was hit; the values are then only
    /// best-effort estimates and downstream consumers must reject them.
    pub converged: bool,
}

/// Canonical eigenvalue ordering: ascending real part, then imaginary.
pub fn sort_canonical(values: &mut [Complex64]) {
    values.sort_by(|a, b| cmp_canonical(*a, *b));
}

pub(crate) fn cmp_canonical(a: Complex64, b: Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Balance a square matrix by diagonal similarity with power-of-two
/// scale factors so that row and column norms are roughly equal
/// (Parlett-Reinsch). Returns the balanced matrix and the diagonal of
/// the similarity transform. Powers of two keep every scaling exact,
/// so the spectrum is preserved bit-for-bit up to the usual eigenvalue
/// sensitivity.
pub fn balance(m: &CMatrix) -> (CMatrix, Vec<f64>) {
    let n = m.dim();
    let mut a = m.clone();
    let mut d = vec![1.0f64; n];
    const RADIX: f64 = 2.0;

    let mut settled = false;
    while !settled {
        settled = true;
        for i in 0..n {
            let mut col: f64 = (0..n).filter(|&j| j != i).map(|j| a[(j, i)].norm()).sum();
            let mut row: f64 = (0..n).filter(|&j| j != i).map(|j| a[(i, j)].norm()).sum();
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let total = col + row;
            let mut factor = 1.0;
            while col < row / RADIX {
                col *= RADIX;
                row /= RADIX;
                factor *= RADIX;
            }
            while col >= row * RADIX {
                col /= RADIX;
                row *= RADIX;
                factor /= RADIX;
            }
            if col + row < 0.95 * total {
                settled = false;
                d[i] *= factor;
                for j in 0..n {
                    a[(i, j)] /= factor;
                }
                for j in 0..n {
                    a[(j, i)] *= factor;
                }
            }
        }
    }
    (a, d)
}

/// Full spectrum of a chain Hamiltonian: balance, reduce to Hessenberg
/// form, run shifted QR, then attach the independent residual of the
/// computed values against the original tridiagonal matrix.
pub fn eigenvalues(h: &Hamiltonian) -> EigenReport {
    let (balanced, _) = balance(h.matrix());
    let hess = hessenberg_reduce(&balanced);
    let mut report = qr_eigenvalues(&hess);
    if report.converged {
        report.max_residual = Some(validate_spectrum(h, &report.values));
    }
    report
}
