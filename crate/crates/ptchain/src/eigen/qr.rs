//! Single-shift QR iteration with deflation for complex upper
//! Hessenberg matrices, in the style of LAPACK's zlahqr: Wilkinson
//! shifts, implicit bulge chasing with complex Givens rotations, an
//! exceptional shift every ten stalled sweeps, and a hard cap of 30*N
//! sweeps overall.

use super::{cmp_canonical, EigenReport};
use crate::matrix::CMatrix;
use num_complex::Complex64;

/// Deflation threshold scale: unit roundoff times a fixed safety factor.
const DEFLATE_UNIT: f64 = 2.0 * f64::EPSILON;
/// Exceptional-shift cadence for stalled windows.
const EXCEPTIONAL_EVERY: usize = 10;
/// Total sweep budget per matrix, in units of the dimension.
const MAX_SWEEPS_PER_DIM: usize = 30;

/// Eigenvalues of a 2x2 block, larger-magnitude root from the quadratic
/// formula with a cancellation-safe sign choice, the other from the
/// determinant.
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let mid = (a + d) * 0.5;
    let p = (a - d) * 0.5;
    let mut disc = (p * p + b * c).sqrt();
    if (mid.conj() * disc).re < 0.0 {
        disc = -disc;
    }
    let r1 = mid + disc;
    let r2 = if r1.norm() > 0.0 { (a * d - b * c) / r1 } else { mid - disc };
    (r1, r2)
}

/// Complex Givens rotation G = [[c, s], [-conj(s), c]] with real c >= 0
/// such that G * (f, g)^T = (r, 0)^T.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    if g.norm() == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if f.norm() == 0.0 {
        return (0.0, g.conj() / g.norm());
    }
    let fa = f.norm();
    let d = (f.norm_sqr() + g.norm_sqr()).sqrt();
    let c = fa / d;
    let s = (f / fa) * (g.conj() / d);
    (c, s)
}

/// One implicit single-shift QR sweep on the window [lo, hi].
///
/// Updates are restricted to the window: the similarity only mixes rows
/// and columns inside it, which leaves the spectra of all deflated
/// blocks untouched while avoiding work on stale coupling blocks.
fn sweep(a: &mut CMatrix, lo: usize, hi: usize, shift: Complex64) {
    for k in lo..hi {
        let (f, g) = if k == lo {
            (a[(lo, lo)] - shift, a[(lo + 1, lo)])
        } else {
            (a[(k, k - 1)], a[(k + 1, k - 1)])
        };
        let (c, s) = givens(f, g);
        let sc = s.conj();

        // Rows k, k+1 from the bulge column onward.
        let jstart = if k > lo { k - 1 } else { lo };
        for j in jstart..=hi {
            let x = a[(k, j)];
            let y = a[(k + 1, j)];
            a[(k, j)] = c * x + s * y;
            a[(k + 1, j)] = -sc * x + c * y;
        }
        // Columns k, k+1 down to the next bulge row.
        let iend = (k + 2).min(hi);
        for i in lo..=iend {
            let x = a[(i, k)];
            let y = a[(i, k + 1)];
            a[(i, k)] = c * x + sc * y;
            a[(i, k + 1)] = -s * x + c * y;
        }
        if k > lo {
            // The eliminated bulge entry is zero by construction.
            a[(k + 1, k - 1)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// All eigenvalues of an upper Hessenberg complex matrix.
///
/// Deflation zeroes subdiagonal entries with
/// `|h(i+1,i)| <= u * (|h(i,i)| + |h(i+1,i+1)|)` (with a matrix-scale
/// floor when both diagonal entries vanish). Non-convergence is reported
/// through `converged = false`, never by panicking; the values are then
/// the current best estimates padded from the unfinished diagonal.
pub fn qr_eigenvalues(h: &CMatrix) -> EigenReport {
    let n = h.dim();
    debug_assert!(h.below_hessenberg_max() == 0.0, "input must be upper Hessenberg");

    let mut values: Vec<Complex64> = Vec::with_capacity(n);
    let mut iterations = 0usize;
    let mut converged = true;

    if n == 0 {
        return EigenReport { values, iterations, max_residual: None, converged };
    }

    let mut a = h.clone();
    let scale = a.max_abs();
    let budget = MAX_SWEEPS_PER_DIM * n;
    let zero = Complex64::new(0.0, 0.0);

    let mut hi = n - 1;
    let mut stall = 0usize;

    'outer: loop {
        // Kill negligible subdiagonals in the live region.
        for i in 1..=hi {
            let sub = a[(i, i - 1)];
            if sub == zero {
                continue;
            }
            let mut tst = a[(i - 1, i - 1)].norm() + a[(i, i)].norm();
            if tst == 0.0 {
                tst = scale;
            }
            if sub.norm() <= DEFLATE_UNIT * tst {
                a[(i, i - 1)] = zero;
            }
        }

        // Peel off converged 1x1 and 2x2 trailing blocks.
        loop {
            if hi == 0 {
                values.push(a[(0, 0)]);
                break 'outer;
            }
            if a[(hi, hi - 1)] == zero {
                values.push(a[(hi, hi)]);
                hi -= 1;
                stall = 0;
                continue;
            }
            if hi == 1 || a[(hi - 1, hi - 2)] == zero {
                let (r1, r2) = eig2(a[(hi - 1, hi - 1)], a[(hi - 1, hi)], a[(hi, hi - 1)], a[(hi, hi)]);
                values.push(r1);
                values.push(r2);
                stall = 0;
                if hi == 1 {
                    break 'outer;
                }
                hi -= 2;
                continue;
            }
            break;
        }

        if iterations >= budget {
            // Cap hit: surface the live diagonal as the best estimate.
            converged = false;
            for i in 0..=hi {
                values.push(a[(i, i)]);
            }
            break;
        }

        // Unreduced window [lo, hi].
        let mut lo = hi;
        while lo > 0 && a[(lo, lo - 1)] != zero {
            lo -= 1;
        }

        iterations += 1;
        stall += 1;
        let shift = if stall % EXCEPTIONAL_EVERY == 0 {
            a[(hi, hi)] + 0.75 * a[(hi, hi - 1)].norm()
        } else {
            let (r1, r2) = eig2(a[(hi - 1, hi - 1)], a[(hi - 1, hi)], a[(hi, hi - 1)], a[(hi, hi)]);
            let target = a[(hi, hi)];
            if (r1 - target).norm() <= (r2 - target).norm() {
                r1
            } else {
                r2
            }
        };
        sweep(&mut a, lo, hi, shift);
    }

    values.sort_by(|x, y| cmp_canonical(*x, *y));
    EigenReport { values, iterations, max_residual: None, converged }
}
