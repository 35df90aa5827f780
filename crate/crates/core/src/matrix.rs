//! Dense square complex matrices.
//!
//! [`Matrix`] is the input type for every solver. Real matrices are the
//! special case where every imaginary part is exactly zero; the flag is
//! computed once at construction. [`HermitianMatrix`] is only ever built
//! through symmetrizing constructors so the stored entries equal their own
//! conjugate transpose bit for bit.

use faer::Mat;
use num_complex::Complex64;

use crate::error::{NumradError, Result};

/// Dense `n x n` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    data: Mat<Complex64>,
    is_real: bool,
}

impl Matrix {
    /// Builds a matrix from row-major entries.
    pub fn from_row_major(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(NumradError::InvalidMatrix(
                "dimension must be at least 1".into(),
            ));
        }
        if entries.len() != n * n {
            return Err(NumradError::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        if let Some(bad) = entries
            .iter()
            .find(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(NumradError::InvalidMatrix(format!(
                "non-finite entry {bad}"
            )));
        }
        let data = Mat::from_fn(n, n, |i, j| entries[i * n + j]);
        Ok(Self::from_faer_unchecked(data))
    }

    /// Builds a real matrix from row-major entries.
    pub fn from_real_row_major(n: usize, entries: &[f64]) -> Result<Self> {
        Self::from_row_major(n, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        if n == 0 {
            return Err(NumradError::InvalidMatrix(
                "dimension must be at least 1".into(),
            ));
        }
        let data = Mat::from_fn(n, n, f);
        let finite = (0..n)
            .all(|j| (0..n).all(|i| data[(i, j)].re.is_finite() && data[(i, j)].im.is_finite()));
        if !finite {
            return Err(NumradError::InvalidMatrix("non-finite entry".into()));
        }
        Ok(Self::from_faer_unchecked(data))
    }

    pub fn from_faer(data: Mat<Complex64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(NumradError::DimensionMismatch {
                expected: data.nrows(),
                got: data.ncols(),
            });
        }
        let n = data.nrows();
        Self::from_fn(n, |i, j| data[(i, j)])
    }

    fn from_faer_unchecked(data: Mat<Complex64>) -> Self {
        let n = data.nrows();
        let is_real = (0..n).all(|j| (0..n).all(|i| data[(i, j)].im == 0.0));
        Self { data, is_real }
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| Complex64::new(0.0, 0.0))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| {
            Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
        })
    }

    pub fn diagonal(diag: &[Complex64]) -> Result<Self> {
        let n = diag.len();
        Self::from_fn(n, |i, j| {
            if i == j {
                diag[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// The `n x n` nilpotent shift: ones on the superdiagonal.
    pub fn shift(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| {
            Complex64::new(if j == i + 1 { 1.0 } else { 0.0 }, 0.0)
        })
    }

    pub fn n(&self) -> usize {
        self.data.nrows()
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[(i, j)]
    }

    pub fn as_faer(&self) -> &Mat<Complex64> {
        &self.data
    }

    pub fn to_row_major(&self) -> Vec<Complex64> {
        let n = self.n();
        (0..n * n).map(|k| self.data[(k / n, k % n)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.n();
        Self::from_faer_unchecked(Mat::from_fn(n, n, |i, j| self.data[(j, i)].conj()))
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        let n = self.n();
        Self::from_faer_unchecked(Mat::from_fn(n, n, |i, j| alpha * self.data[(i, j)]))
    }

    /// `U^* A U` for a square `u` of matching size.
    pub fn unitary_similarity(&self, u: &Mat<Complex64>) -> Result<Self> {
        if u.nrows() != self.n() || u.ncols() != self.n() {
            return Err(NumradError::DimensionMismatch {
                expected: self.n(),
                got: u.nrows(),
            });
        }
        let prod = u.adjoint() * &self.data * u;
        Ok(Self::from_faer_unchecked(prod))
    }

    /// Largest absolute entry modulus.
    pub fn max_abs(&self) -> f64 {
        let n = self.n();
        let mut m = 0.0f64;
        for j in 0..n {
            for i in 0..n {
                m = m.max(self.data[(i, j)].norm());
            }
        }
        m
    }
}

/// Hermitian `m x m` matrix; stored entries satisfy `M[i][j] == conj(M[j][i])` exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    data: Mat<Complex64>,
}

impl HermitianMatrix {
    /// Symmetrizes `raw` into `(raw + raw^*) / 2`.
    pub fn symmetrize(raw: &Mat<Complex64>) -> Self {
        let m = raw.nrows();
        let mut data = Mat::<Complex64>::zeros(m, m);
        for j in 0..m {
            for i in 0..=j {
                let v = (raw[(i, j)] + raw[(j, i)].conj()) * 0.5;
                if i == j {
                    data[(i, i)] = Complex64::new(v.re, 0.0);
                } else {
                    data[(i, j)] = v;
                    data[(j, i)] = v.conj();
                }
            }
        }
        Self { data }
    }

    /// Builds from a closure evaluated on the upper triangle only; the lower
    /// triangle is filled by conjugation and the diagonal made real.
    pub fn from_upper(m: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Mat::<Complex64>::zeros(m, m);
        for j in 0..m {
            for i in 0..=j {
                let v = f(i, j);
                if i == j {
                    data[(i, i)] = Complex64::new(v.re, 0.0);
                } else {
                    data[(i, j)] = v;
                    data[(j, i)] = v.conj();
                }
            }
        }
        Self { data }
    }

    pub fn zeros(m: usize) -> Self {
        Self {
            data: Mat::zeros(m, m),
        }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[(i, j)]
    }

    pub fn as_faer(&self) -> &Mat<Complex64> {
        &self.data
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        let m = self.dim();
        (0..m).all(|j| (0..m).all(|i| self.data[(i, j)].im == 0.0))
    }

    /// Exact conjugate-transpose equality.
    pub fn is_exactly_hermitian(&self) -> bool {
        let m = self.dim();
        (0..m).all(|j| (0..m).all(|i| self.data[(i, j)] == self.data[(j, i)].conj()))
    }
}
