//! Arithmetic in the truncated polynomial ring `C[theta] / (theta^dim)`.
//!
//! A single commuting generator `theta` with `theta^dim = 0` is all that is
//! needed to give the annihilation operator an eigenvector in finite
//! dimension: multiplication by `theta` pushes every power up by one and the
//! truncation absorbs the top term.

use num_complex::Complex64 as C64;

/// An element `sum_k c_k theta^k`, `k = 0 .. dim-1`, of the truncated ring.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannElement {
    coeffs: Vec<C64>,
}

impl GrassmannElement {
    /// The zero element of the ring of order `dim`.
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "ring order must be positive");
        Self {
            coeffs: vec![C64::new(0.0, 0.0); dim],
        }
    }

    /// The unit element.
    pub fn one(dim: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[0] = C64::new(1.0, 0.0);
        e
    }

    /// The generator `theta` (zero when `dim == 1`, since then `theta = 0`).
    pub fn theta(dim: usize) -> Self {
        let mut e = Self::zero(dim);
        if dim > 1 {
            e.coeffs[1] = C64::new(1.0, 0.0);
        }
        e
    }

    /// A single monomial `c theta^k`; powers at or above `dim` truncate to zero.
    pub fn monomial(dim: usize, k: usize, c: C64) -> Self {
        let mut e = Self::zero(dim);
        if k < dim {
            e.coeffs[k] = c;
        }
        e
    }

    pub fn from_coeffs(coeffs: Vec<C64>) -> Self {
        assert!(!coeffs.is_empty(), "ring order must be positive");
        Self { coeffs }
    }

    /// Ring order (nilpotency index of `theta`).
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "ring orders differ");
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "ring orders differ");
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Truncating product: the convolution is cut at `theta^dim = 0`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "ring orders differ");
        let dim = self.dim();
        let mut coeffs = vec![C64::new(0.0, 0.0); dim];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j < dim {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self { coeffs }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficientwise deviation from `rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.sub(rhs).max_abs()
    }
}
