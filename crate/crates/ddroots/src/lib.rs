//! Extended-precision reference roots for small eigenproblems.
//!
//! This crate provides an eigenvalue path that shares no code with an
//! iterative eigensolver: characteristic polynomial coefficients are
//! accumulated in double-double arithmetic (either by the tridiagonal
//! three-term determinant recurrence or by Faddeev-LeVerrier for a dense
//! matrix), then all roots are found simultaneously with the
//! Durand-Kerner iteration, still in double-double precision. For
//! matrices up to dimension ~8 the returned roots are accurate to well
//! below 1e-12 absolute, which makes them usable as ground truth when
//! testing a double-precision solver at 1e-9.

pub mod dd;

use dd::Dd;
use num_complex::Complex64;

/// Complex number with double-double real and imaginary parts.
#[derive(Clone, Copy, Debug)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: Cdd = Cdd { re: Dd::ONE, im: Dd::ZERO };

    pub fn from_c64(z: Complex64) -> Cdd {
        Cdd { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(self, r: Cdd) -> Cdd {
        Cdd { re: self.re.add(r.re), im: self.im.add(r.im) }
    }

    pub fn sub(self, r: Cdd) -> Cdd {
        Cdd { re: self.re.sub(r.re), im: self.im.sub(r.im) }
    }

    pub fn neg(self) -> Cdd {
        Cdd { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(self, r: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(r.re).sub(self.im.mul(r.im)),
            im: self.re.mul(r.im).add(self.im.mul(r.re)),
        }
    }

    pub fn div(self, r: Cdd) -> Cdd {
        let den = r.re.mul(r.re).add(r.im.mul(r.im));
        let nre = self.re.mul(r.re).add(self.im.mul(r.im));
        let nim = self.im.mul(r.re).sub(self.re.mul(r.im));
        Cdd { re: nre.div(den), im: nim.div(den) }
    }

    /// |z|^2 in double-double.
    pub fn abs_sq(self) -> Dd {
        self.re.mul(self.re).add(self.im.mul(self.im))
    }

    /// |z| as f64, adequate for convergence checks and sorting.
    pub fn abs_f64(self) -> f64 {
        self.abs_sq().to_f64().sqrt()
    }
}

/// Monic characteristic polynomial `det(lambda*I - T)` of a symmetric
/// tridiagonal matrix with diagonal `diag` and off-diagonal `off`
/// (`off[k]` couples sites k and k+1). Coefficients ascending in degree.
///
/// Uses the three-term determinant recurrence
/// `p_k = (lambda - d_k) p_{k-1} - e_{k-1}^2 p_{k-2}`.
pub fn charpoly_tridiag(diag: &[Complex64], off: &[Complex64]) -> Vec<Cdd> {
    let n = diag.len();
    assert!(n >= 1, "empty matrix");
    assert_eq!(off.len(), n - 1, "off-diagonal length mismatch");

    let mut p_prev: Vec<Cdd> = vec![Cdd::ONE]; // p_0 = 1
    let mut p_cur: Vec<Cdd> = vec![Cdd::from_c64(diag[0]).neg(), Cdd::ONE]; // lambda - d_1

    for k in 1..n {
        let d = Cdd::from_c64(diag[k]);
        let e = Cdd::from_c64(off[k - 1]);
        let e2 = e.mul(e);
        // next = (lambda - d) * p_cur - e^2 * p_prev
        let mut next = vec![Cdd::ZERO; p_cur.len() + 1];
        for (i, &c) in p_cur.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(d.mul(c));
        }
        for (i, &c) in p_prev.iter().enumerate() {
            next[i] = next[i].sub(e2.mul(c));
        }
        p_prev = p_cur;
        p_cur = next;
    }
    p_cur
}

/// Monic characteristic polynomial `det(lambda*I - A)` of a dense complex
/// matrix (row-major, n x n) via the Faddeev-LeVerrier recursion carried
/// out in double-double arithmetic. Coefficients ascending in degree.
pub fn charpoly_general(a: &[Complex64], n: usize) -> Vec<Cdd> {
    assert_eq!(a.len(), n * n, "matrix shape mismatch");
    let lift: Vec<Cdd> = a.iter().map(|&z| Cdd::from_c64(z)).collect();

    let mut coeffs = vec![Cdd::ZERO; n + 1];
    coeffs[n] = Cdd::ONE;

    // m holds M_k; starts as M_1 = A.
    let mut m = lift.clone();
    for k in 1..=n {
        if k > 1 {
            // m <- A * (m + c_{n-k+1} I)
            let c = coeffs[n - k + 1];
            let mut shifted = m.clone();
            for i in 0..n {
                shifted[i * n + i] = shifted[i * n + i].add(c);
            }
            let mut prod = vec![Cdd::ZERO; n * n];
            for i in 0..n {
                for l in 0..n {
                    let ail = lift[i * n + l];
                    for j in 0..n {
                        prod[i * n + j] = prod[i * n + j].add(ail.mul(shifted[l * n + j]));
                    }
                }
            }
            m = prod;
        }
        let mut tr = Cdd::ZERO;
        for i in 0..n {
            tr = tr.add(m[i * n + i]);
        }
        let kk = Cdd { re: Dd::from_f64(k as f64), im: Dd::ZERO };
        coeffs[n - k] = tr.div(kk).neg();
    }
    coeffs
}

/// All roots of a polynomial (coefficients ascending, any nonzero leading
/// coefficient) by simultaneous Durand-Kerner iteration in double-double
/// precision. Returns roots sorted by (re, im) together with the final
/// maximum update size, which bounds the residual error of the iteration.
pub fn durand_kerner(coeffs: &[Cdd]) -> (Vec<Complex64>, f64) {
    let deg = coeffs.len() - 1;
    assert!(deg >= 1, "constant polynomial has no roots");

    // Normalize to monic.
    let lead = coeffs[deg];
    assert!(lead.abs_f64() > 0.0, "zero leading coefficient");
    let monic: Vec<Cdd> = coeffs.iter().map(|&c| c.div(lead)).collect();

    // Cauchy bound on root magnitudes.
    let radius = 1.0 + monic[..deg].iter().map(|c| c.abs_f64()).fold(0.0, f64::max);

    // Initial guesses on a circle with quasi-random angles; the irrational
    // stride avoids accidentally matching the +-conjugate symmetries the
    // target polynomials tend to have.
    let golden = 0.618_033_988_749_895_f64;
    let mut z: Vec<Cdd> = (0..deg)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * ((i as f64 * golden).fract()) + 0.4;
            Cdd::from_c64(Complex64::from_polar(radius, theta))
        })
        .collect();

    let eval = |p: &[Cdd], x: Cdd| -> Cdd {
        let mut acc = Cdd::ZERO;
        for &c in p.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    };

    let tol = 1e-26 * (1.0 + radius);
    let mut max_step = f64::INFINITY;
    for _ in 0..500 {
        max_step = 0.0;
        for i in 0..deg {
            let mut den = Cdd::ONE;
            for j in 0..deg {
                if j != i {
                    den = den.mul(z[i].sub(z[j]));
                }
            }
            if den.abs_f64() == 0.0 {
                // Coincident guesses: nudge and retry next sweep.
                z[i] = z[i].add(Cdd::from_c64(Complex64::new(1e-20, 2e-20)));
                max_step = f64::INFINITY;
                continue;
            }
            let w = eval(&monic, z[i]).div(den);
            z[i] = z[i].sub(w);
            max_step = max_step.max(w.abs_f64());
        }
        if max_step <= tol {
            break;
        }
    }

    let mut roots: Vec<Complex64> = z.into_iter().map(Cdd::to_c64).collect();
    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    (roots, max_step)
}

/// Reference eigenvalues of a symmetric tridiagonal complex matrix,
/// sorted by (re, im).
pub fn tridiag_eigenvalues(diag: &[Complex64], off: &[Complex64]) -> Vec<Complex64> {
    durand_kerner(&charpoly_tridiag(diag, off)).0
}

/// Reference eigenvalues of a dense complex matrix (row-major), sorted
/// by (re, im). Intended for n <= 8.
pub fn dense_eigenvalues(a: &[Complex64], n: usize) -> Vec<Complex64> {
    durand_kerner(&charpoly_general(a, n)).0
}
