//! Non-Hermitian coupled-cavity chains with balanced gain and loss.
//!
//! The crate builds SSH-type tight-binding chains whose couplings
//! alternate as `1 -+ delta*cos(Phi)` and whose on-site terms place a
//! balanced loss/gain pair according to one of four layouts, computes
//! their full complex spectra with an in-crate dense eigensolver,
//! classifies the spectra into the usual PT vocabulary (real, purely
//! imaginary, quartets, unbroken vs broken phase, zero modes), and
//! locates the symmetry-breaking thresholds kappa_c and the quartet
//! collapse thresholds kappa_c' on parameter grids.
//!
//! Modules follow the pipeline:
//!
//! - [`model`]: chain parameters and Hamiltonian construction
//! - [`eigen`]: balancing, Hessenberg reduction, shifted QR, residuals
//! - [`classify`]: per-eigenvalue classes, phases, pairing structure
//! - [`sweep`]: parameter grids, bisection threshold finders

pub mod classify;
pub mod eigen;
pub mod matrix;
pub mod model;
pub mod sweep;

pub use classify::{classify_spectrum, count_zero_modes, pairing_structure, EigClass, Phase, Spectrum};
pub use eigen::{balance, eigenvalues, hessenberg_reduce, qr_eigenvalues, validate_spectrum, EigenReport};
pub use matrix::CMatrix;
pub use model::{build_hamiltonian, coupling_strengths, pt_residual, GainLossLayout, Hamiltonian, ModelError, ModelParams};
