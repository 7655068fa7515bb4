//! Householder reduction of a dense complex matrix to upper Hessenberg
//! form. Only the reduced matrix is needed for eigenvalues, so the
//! unitary factor is never accumulated.

use crate::matrix::CMatrix;
use num_complex::Complex64;

/// Reduce to upper Hessenberg form by a unitary similarity transform.
/// Entries below the first subdiagonal of the result are exactly zero;
/// the spectrum and trace are preserved up to roundoff.
///
/// Columns that are already in Hessenberg form are skipped, so a
/// tridiagonal input comes back unchanged.
pub fn hessenberg_reduce(m: &CMatrix) -> CMatrix {
    let n = m.dim();
    let mut a = m.clone();

    for k in 0..n.saturating_sub(2) {
        let tail_sq: f64 = (k + 2..n).map(|i| a[(i, k)].norm_sqr()).sum();
        if tail_sq == 0.0 {
            continue;
        }

        // Householder vector v = x + sigma*e1 for x = a[k+1.., k], with
        // sigma = phase(x0)*||x||, so the reflector sends x to -sigma*e1.
        let x0 = a[(k + 1, k)];
        let xnorm = (x0.norm_sqr() + tail_sq).sqrt();
        let sigma = if x0.norm() == 0.0 {
            Complex64::new(xnorm, 0.0)
        } else {
            x0 / x0.norm() * xnorm
        };

        let len = n - (k + 1);
        let mut w: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        w[0] += sigma;
        let wnorm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut w {
            *z /= wnorm;
        }

        // Left: A[k+1.., k+1..] -= 2 w (w^H A); the pivot column is set
        // analytically below instead of being recomputed.
        for j in k + 1..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in 0..len {
                dot += w[i].conj() * a[(k + 1 + i, j)];
            }
            let t = 2.0 * dot;
            for i in 0..len {
                let upd = t * w[i];
                a[(k + 1 + i, j)] -= upd;
            }
        }

        // Right: A[.., k+1..] -= 2 (A w) w^H.
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for j in 0..len {
                dot += a[(i, k + 1 + j)] * w[j];
            }
            let t = 2.0 * dot;
            for j in 0..len {
                let upd = t * w[j].conj();
                a[(i, k + 1 + j)] -= upd;
            }
        }

        a[(k + 1, k)] = -sigma;
        for i in k + 2..n {
            a[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    a
}
