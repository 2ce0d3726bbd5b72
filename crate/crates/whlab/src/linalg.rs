//! Dense complex matrices and vectors used as carriers for operators and states.
//!
//! Everything here is a thin layer over [`ndarray`] with `Complex64` entries.
//! Dimensions are small (a few hundred at most), so all storage is dense and
//! all products are naive `O(n^3)`.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// A dense square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    mat: Array2<C64>,
}

impl Operator {
    /// Wrap a square matrix, rejecting non-square shapes and non-finite entries.
    pub fn new(mat: Array2<C64>) -> Result<Self> {
        let (r, c) = mat.dim();
        if r != c {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: c,
            });
        }
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntry("operator"));
        }
        Ok(Self { mat })
    }

    pub(crate) fn from_mat(mat: Array2<C64>) -> Self {
        debug_assert_eq!(mat.nrows(), mat.ncols());
        Self { mat }
    }

    /// The identity on a `dim`-dimensional space.
    pub fn identity(dim: usize) -> Self {
        Self::from_mat(Array2::eye(dim))
    }

    /// Diagonal operator with real entries.
    pub fn from_diag_re(diag: &[f64]) -> Self {
        let mut mat = Array2::zeros((diag.len(), diag.len()));
        for (n, &x) in diag.iter().enumerate() {
            mat[(n, n)] = C64::new(x, 0.0);
        }
        Self::from_mat(mat)
    }

    /// Diagonal operator with complex entries.
    pub fn from_diag(diag: &[C64]) -> Self {
        let mut mat = Array2::zeros((diag.len(), diag.len()));
        for (n, &z) in diag.iter().enumerate() {
            mat[(n, n)] = z;
        }
        Self::from_mat(mat)
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Borrow the underlying matrix.
    pub fn matrix(&self) -> &Array2<C64> {
        &self.mat
    }

    /// Conjugate transpose. Entrywise exact.
    pub fn adjoint(&self) -> Self {
        let n = self.dim();
        let mut out = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self.mat[(j, i)].conj();
            }
        }
        Self::from_mat(out)
    }

    /// Matrix product `self * rhs`.
    ///
    /// Naive triple loop on purpose: gemm kernels may fuse multiply-adds,
    /// which destroys the exact zeros the shift-structured operators rely on.
    pub fn dot(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "operator dimensions differ");
        let n = self.dim();
        let mut out = Array2::zeros((n, n));
        for i in 0..n {
            for k in 0..n {
                let a = self.mat[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs.mat[(k, j)];
                }
            }
        }
        Self::from_mat(out)
    }

    /// Commutator `[self, rhs] = self*rhs - rhs*self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.dot(rhs).sub(&rhs.dot(self))
    }

    /// Exact `k`-th matrix power by repeated multiplication.
    pub fn matrix_power(&self, k: usize) -> Self {
        let mut out = Self::identity(self.dim());
        for _ in 0..k {
            out = out.dot(self);
        }
        out
    }

    /// Entrywise difference `self - rhs`.
    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "operator dimensions differ");
        Self::from_mat(&self.mat - &rhs.mat)
    }

    /// Entrywise sum `self + rhs`.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "operator dimensions differ");
        Self::from_mat(&self.mat + &rhs.mat)
    }

    /// Scale every entry by `c`.
    pub fn scale(&self, c: C64) -> Self {
        Self::from_mat(self.mat.mapv(|z| z * c))
    }

    /// Apply to a state vector.
    pub fn apply(&self, v: &StateVector) -> StateVector {
        assert_eq!(self.dim(), v.dim(), "operator/state dimensions differ");
        let n = self.dim();
        let mut out = Array1::zeros(n);
        for i in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..n {
                let a = self.mat[(i, j)];
                if a != C64::new(0.0, 0.0) {
                    acc += a * v.amplitudes()[j];
                }
            }
            out[i] = acc;
        }
        StateVector::from_vec_raw(out)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from `rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.sub(rhs).max_abs()
    }

    /// Largest entry modulus over the leading `k x k` block.
    ///
    /// Used to restrict checks to the interior of a truncated space.
    pub fn max_abs_leading(&self, k: usize) -> f64 {
        let mut m = 0.0f64;
        for i in 0..k.min(self.dim()) {
            for j in 0..k.min(self.dim()) {
                m = m.max(self.mat[(i, j)].norm());
            }
        }
        m
    }
}

/// A dense complex vector on a Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amp: Array1<C64>,
}

impl StateVector {
    /// Wrap a complex vector, rejecting non-finite entries.
    pub fn new(amp: Array1<C64>) -> Result<Self> {
        if amp.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntry("state vector"));
        }
        Ok(Self { amp })
    }

    pub(crate) fn from_vec_raw(amp: Array1<C64>) -> Self {
        Self { amp }
    }

    /// Build from a plain `Vec`.
    pub fn from_vec(amp: Vec<C64>) -> Result<Self> {
        Self::new(Array1::from_vec(amp))
    }

    /// The `n`-th canonical basis vector on a `dim`-dimensional space.
    pub fn basis(dim: usize, n: usize) -> Self {
        let mut amp = Array1::zeros(dim);
        amp[n] = C64::new(1.0, 0.0);
        Self { amp }
    }

    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amp
    }

    /// Inner product, conjugate-linear in `self`.
    pub fn inner(&self, rhs: &Self) -> C64 {
        assert_eq!(self.dim(), rhs.dim(), "state dimensions differ");
        self.amp
            .iter()
            .zip(rhs.amp.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Entrywise difference.
    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "state dimensions differ");
        Self::from_vec_raw(&self.amp - &rhs.amp)
    }

    /// Scale every amplitude by `c`.
    pub fn scale(&self, c: C64) -> Self {
        Self::from_vec_raw(self.amp.mapv(|z| z * c))
    }

    /// Largest amplitude modulus.
    pub fn max_abs(&self) -> f64 {
        self.amp.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Norm of the difference restricted to components `0..k`.
    pub fn norm_diff_leading(&self, rhs: &Self, k: usize) -> f64 {
        self.amp
            .iter()
            .zip(rhs.amp.iter())
            .take(k)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}
