//! Dense square complex matrix storage used by the eigensolver.

use num_complex::Complex64;
use std::ops::{Index, IndexMut};

/// Row-major dense square matrix of `Complex64`.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> CMatrix {
        CMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> CMatrix {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major slice of length `n*n`.
    pub fn from_rows(n: usize, data: &[Complex64]) -> CMatrix {
        assert_eq!(data.len(), n * n, "row data must have n*n entries");
        CMatrix { n, data: data.to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> CMatrix {
        CMatrix { n: self.n, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute row sum (the induced infinity norm).
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Largest magnitude below the first subdiagonal; zero for an
    /// upper-Hessenberg matrix.
    pub fn below_hessenberg_max(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 2..self.n {
            for j in 0..i - 1 {
                worst = worst.max(self[(i, j)].norm());
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut m = CMatrix::zeros(3);
        m[(0, 1)] = Complex64::new(2.0, -1.0);
        m[(2, 0)] = Complex64::new(0.0, 3.0);
        assert_eq!(m.dim(), 3);
        assert_eq!(m.max_abs(), 3.0);
        assert_eq!(m.below_hessenberg_max(), 3.0);
        assert_eq!(m.conj()[(0, 1)], Complex64::new(2.0, 1.0));
        assert_eq!(CMatrix::identity(3).trace(), Complex64::new(3.0, 0.0));
    }
}
