//! Mutually unbiased bases from quantized phase states.
//!
//! Fixing the phase reference at `phi = -pi (d-1) a / d` for
//! `a = 0 .. d-1` turns the unitary-phase eigenstates into quadratic
//! discrete Fourier transforms
//!
//! ```text
//! |a m>_n = (1/sqrt(d)) exp(i pi n (d-n) a / d + 2 pi i n m / d)
//! ```
//!
//! (`a = 0` is the ordinary DFT). For prime `d` these `d` bases plus the
//! canonical basis form a complete set of `d+1` mutually unbiased bases:
//! every cross-basis overlap has modulus `1/sqrt(d)`.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::StateVector;

/// The quantized phase reference `phi = -pi (d-1) a / d`.
pub fn quantize_phi(d: usize, a: usize) -> Result<f64> {
    check_indices(d, a)?;
    Ok(-PI * ((d - 1) * a) as f64 / d as f64)
}

fn check_indices(d: usize, a: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "dimension must be at least 2, got {d}"
        )));
    }
    if a >= d {
        return Err(Error::IndexOutOfRange { index: a, dim: d });
    }
    Ok(())
}

/// One quadratic-DFT basis: `d` orthonormal vectors indexed by `m`.
///
/// Half-integer powers of the root of unity are evaluated as
/// `exp(i pi n (d-n) a / d)`, which removes the branch ambiguity for even `d`.
#[derive(Debug, Clone)]
pub struct QuantizedBasis {
    pub a: usize,
    pub d: usize,
    vectors: Vec<StateVector>,
}

impl QuantizedBasis {
    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }
}

/// Build the quantized basis with quantization index `a`.
pub fn quantized_basis(d: usize, a: usize) -> Result<QuantizedBasis> {
    check_indices(d, a)?;
    let norm = 1.0 / (d as f64).sqrt();
    let vectors = (0..d)
        .map(|m| {
            let amps: Vec<C64> = (0..d)
                .map(|n| {
                    let quad = PI * (n * (d - n) * a) as f64 / d as f64;
                    let lin = TAU * (n * m) as f64 / d as f64;
                    C64::cis(quad + lin) * norm
                })
                .collect();
            StateVector::from_vec_raw(amps.into())
        })
        .collect();
    Ok(QuantizedBasis { a, d, vectors })
}

/// The canonical (number) basis as a vector family.
pub fn canonical_basis(d: usize) -> Vec<StateVector> {
    (0..d).map(|n| StateVector::basis(d, n)).collect()
}

/// Max over vector pairs of `| |<u|v>| - 1/sqrt(d) |`.
pub fn unbiasedness(basis_a: &[StateVector], basis_b: &[StateVector]) -> Result<f64> {
    let d = basis_a.first().map(StateVector::dim).unwrap_or(0);
    if basis_b.first().map(StateVector::dim).unwrap_or(0) != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: basis_b.first().map(StateVector::dim).unwrap_or(0),
        });
    }
    let target = 1.0 / (d as f64).sqrt();
    let devs = exec::map_slice(basis_a, |u| {
        basis_b
            .iter()
            .map(|v| (u.inner(v).norm() - target).abs())
            .fold(0.0, f64::max)
    });
    Ok(devs.into_iter().fold(0.0, f64::max))
}

/// All cross overlap moduli `|<u_i|v_j>|` between two vector families.
pub fn overlap_moduli(basis_a: &[StateVector], basis_b: &[StateVector]) -> Array2<f64> {
    let rows = basis_a.len();
    let cols = basis_b.len();
    let mut out = Array2::zeros((rows, cols));
    for (i, u) in basis_a.iter().enumerate() {
        for (j, v) in basis_b.iter().enumerate() {
            out[(i, j)] = u.inner(v).norm();
        }
    }
    out
}

/// Primality by trial division; dimensions here are tiny.
pub fn is_prime(d: usize) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= d {
        if d.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Certification of the full `d+1`-family: the `d` quantized bases plus the
/// canonical one.
#[derive(Debug, Clone)]
pub struct MubReport {
    pub d: usize,
    pub prime: bool,
    /// `pair_deviations[(i, j)]` for `i < j` is the unbiasedness deviation of
    /// basis pair `(i, j)`; bases `0..d` are the quantized ones, basis `d` is
    /// canonical. Symmetric, zero diagonal.
    pub pair_deviations: Array2<f64>,
    /// True iff `d` is prime and every pair deviation is below tolerance.
    pub complete: bool,
}

impl MubReport {
    /// Largest deviation over all unordered basis pairs.
    pub fn worst_pair(&self) -> f64 {
        self.pair_deviations.iter().copied().fold(0.0, f64::max)
    }

    /// Number of bases in the family.
    pub fn family_size(&self) -> usize {
        self.pair_deviations.nrows()
    }
}

/// Build all `d+1` bases and evaluate every unordered pair.
///
/// For non-prime `d` the deviations are still recorded (some pairs degrade),
/// but completeness is never asserted.
pub fn complete_mub_set(d: usize, tol: f64) -> Result<MubReport> {
    check_indices(d, 0)?;
    let mut bases: Vec<Vec<StateVector>> = (0..d)
        .map(|a| quantized_basis(d, a).map(|b| b.vectors))
        .collect::<Result<_>>()?;
    bases.push(canonical_basis(d));
    let nb = bases.len();

    let pairs: Vec<(usize, usize)> = (0..nb)
        .flat_map(|i| (i + 1..nb).map(move |j| (i, j)))
        .collect();
    let devs = exec::map_slice(&pairs, |&(i, j)| {
        unbiasedness(&bases[i], &bases[j]).expect("equal dims")
    });

    let mut pair_deviations = Array2::zeros((nb, nb));
    for (&(i, j), &dev) in pairs.iter().zip(devs.iter()) {
        pair_deviations[(i, j)] = dev;
        pair_deviations[(j, i)] = dev;
    }
    let prime = is_prime(d);
    let complete = prime && devs.iter().all(|&dev| dev < tol);
    Ok(MubReport {
        d,
        prime,
        pair_deviations,
        complete,
    })
}
