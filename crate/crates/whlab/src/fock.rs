//! Deformed oscillator algebras and their number-basis matrix representations.
//!
//! An algebra instance is fixed by `r` real deformation parameters
//! `kappa_1 .. kappa_r` and a phase reference `phi`. Its structure function
//!
//! ```text
//! F(n) = n * prod_i (1 + kappa_i * (n - 1))
//! ```
//!
//! controls everything: the commutator `[a-, a+] = F(N+1) - F(N)`, the
//! Hamiltonian `H = a+ a- = F(N)`, and the representation dimension. With all
//! `kappa_i >= 0` the representation is infinite-dimensional (realized here on
//! a numerical truncation of order `s`); with `kappa_1 < 0` and `-1/kappa_1` a
//! positive integer it is finite with `d = 1 - 1/kappa_1`, and the ladder
//! operators are nilpotent of order exactly `d`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::Operator;
use crate::report::{VerificationReport, PROV_DEFINING};

/// Relative tolerance for snapping `-1/kappa_1` to an integer.
pub const DIMENSION_SNAP_TOL: f64 = 1e-12;

/// Representation dimension implied by the deformation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

/// Deformation parameters `{kappa_i}` plus the phase reference `phi`.
///
/// Construction validates the sign pattern and, in the finite case, snaps
/// `kappa_1` to `-1/(d-1)` so that `F(d) = 0` holds exactly in floating point.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraParams {
    kappas: Vec<f64>,
    phi: f64,
    /// `d - 1` in the finite case; lets `structure_function` evaluate the
    /// first factor as `(d - n)/(d - 1)`, which vanishes exactly at `n = d`.
    finite_m: Option<usize>,
}

impl AlgebraParams {
    /// Validate and build. Admissible sign patterns: all `kappa_i >= 0`
    /// (infinite case), or `kappa_1 < 0` with `kappa_i >= 0` for `i >= 2` and
    /// `-1/kappa_1` a positive integer (finite case).
    pub fn new(kappas: Vec<f64>, phi: f64) -> Result<Self> {
        if kappas.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one kappa is required".into(),
            ));
        }
        if kappas.iter().any(|k| !k.is_finite()) || !phi.is_finite() {
            return Err(Error::NonFiniteEntry("algebra parameters"));
        }
        if kappas.iter().skip(1).any(|&k| k < 0.0) {
            return Err(Error::InvalidSignPattern(kappas));
        }
        if kappas[0] >= 0.0 {
            return Ok(Self {
                kappas,
                phi,
                finite_m: None,
            });
        }
        // Finite case: -1/kappa_1 must be a positive integer within tolerance.
        let inv = -1.0 / kappas[0];
        let m = inv.round();
        if m < 1.0 || (inv - m).abs() > DIMENSION_SNAP_TOL * m {
            return Err(Error::NonIntegerDimension(inv));
        }
        let mut kappas = kappas;
        kappas[0] = -1.0 / m;
        Ok(Self {
            kappas,
            phi,
            finite_m: Some(m as usize),
        })
    }

    /// Same parameters with a different phase reference.
    pub fn with_phi(&self, phi: f64) -> Self {
        Self {
            kappas: self.kappas.clone(),
            phi,
            finite_m: self.finite_m,
        }
    }

    pub fn kappas(&self) -> &[f64] {
        &self.kappas
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Number of deformation parameters.
    pub fn r(&self) -> usize {
        self.kappas.len()
    }

    /// `F(n) = n * prod_i (1 + kappa_i (n-1))`, with `F(0) = 0`.
    ///
    /// In the finite case the first factor is evaluated as
    /// `(d - n)/(d - 1)`, which is the same number but gives `F(d) = 0`
    /// exactly and `F(n) > 0` exactly for `1 <= n <= d-1`.
    pub fn structure_function(&self, n: usize) -> f64 {
        let nf = n as f64;
        let mut v = nf;
        match self.finite_m {
            Some(m) => {
                v *= (m as f64 - (nf - 1.0)) / m as f64;
                for &k in &self.kappas[1..] {
                    v *= 1.0 + k * (nf - 1.0);
                }
            }
            None => {
                for &k in &self.kappas {
                    v *= 1.0 + k * (nf - 1.0);
                }
            }
        }
        v
    }

    /// Representation dimension: `Infinite` when all `kappa_i >= 0`,
    /// else `Finite(1 - 1/kappa_1)`.
    pub fn dimension(&self) -> Dimension {
        match self.finite_m {
            Some(m) => Dimension::Finite(m + 1),
            None => Dimension::Infinite,
        }
    }
}

/// Whether a space is the exact finite representation or a numerical
/// truncation of an infinite one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    Finite,
    Truncated,
}

/// A number-basis space of dimension `size`, labeled `n = 0 .. size-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    kind: SpaceKind,
    size: usize,
}

impl FockSpace {
    /// The exact finite space of the parameters. Fails if the algebra is
    /// infinite-dimensional.
    pub fn finite(params: &AlgebraParams) -> Result<Self> {
        match params.dimension() {
            Dimension::Finite(d) => Ok(Self {
                kind: SpaceKind::Finite,
                size: d,
            }),
            Dimension::Infinite => Err(Error::InvalidArgument(
                "parameters define an infinite-dimensional algebra; use a truncated space".into(),
            )),
        }
    }

    /// A truncation of order `s >= 2` of an infinite-dimensional algebra.
    pub fn truncated(params: &AlgebraParams, s: usize) -> Result<Self> {
        match params.dimension() {
            Dimension::Infinite => {
                if s < 2 {
                    return Err(Error::InvalidArgument(format!(
                        "truncation order must be at least 2, got {s}"
                    )));
                }
                Ok(Self {
                    kind: SpaceKind::Truncated,
                    size: s,
                })
            }
            Dimension::Finite(d) => Err(Error::DimensionMismatch {
                expected: d,
                found: s,
            }),
        }
    }

    /// The natural space for the parameters: the exact finite one when the
    /// dimension is finite (in which case `size_or_trunc` must match it),
    /// otherwise the truncation of order `size_or_trunc`.
    pub fn for_params(params: &AlgebraParams, size_or_trunc: usize) -> Result<Self> {
        match params.dimension() {
            Dimension::Finite(d) => {
                if size_or_trunc != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: size_or_trunc,
                    });
                }
                Ok(Self {
                    kind: SpaceKind::Finite,
                    size: d,
                })
            }
            Dimension::Infinite => Self::truncated(params, size_or_trunc),
        }
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Basis labels `0..size`.
    pub fn labels(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn is_finite(&self) -> bool {
        self.kind == SpaceKind::Finite
    }
}

/// Panic unless `space` could have been built from `params`: sizes are part
/// of the representation contract, not a recoverable input.
fn assert_space(params: &AlgebraParams, space: &FockSpace) {
    match (params.dimension(), space.kind()) {
        (Dimension::Finite(d), SpaceKind::Finite) => {
            assert_eq!(
                d,
                space.size(),
                "finite space size does not match the algebra dimension"
            )
        }
        (Dimension::Infinite, SpaceKind::Truncated) => {}
        (dim, kind) => panic!("space kind {kind:?} does not match algebra dimension {dim:?}"),
    }
}

/// The representation matrices `(a-, a+, N)` on `space`.
///
/// `a-` has entries `sqrt(F(n)) e^{+i[F(n)-F(n-1)] phi}` at `(n-1, n)`;
/// `a+` is its exact conjugate transpose; `N` is `diag(0..size-1)`.
/// On a truncated space the top level is edge-truncated: `a+ |s-1> = 0`.
pub fn build_ladder_ops(
    params: &AlgebraParams,
    space: &FockSpace,
) -> (Operator, Operator, Operator) {
    assert_space(params, space);
    let size = space.size();
    let mut am = ndarray::Array2::<C64>::zeros((size, size));
    let mut f_prev = 0.0;
    for n in 1..size {
        let f = params.structure_function(n);
        let phase = C64::cis((f - f_prev) * params.phi());
        am[(n - 1, n)] = phase * f.sqrt();
        f_prev = f;
    }
    let am = Operator::from_mat(am);
    let ap = am.adjoint();
    let number = Operator::from_diag_re(&(0..size).map(|n| n as f64).collect::<Vec<_>>());
    (am, ap, number)
}

/// The Hamiltonian `H = F(N)` as a diagonal matrix.
pub fn hamiltonian(params: &AlgebraParams, space: &FockSpace) -> Operator {
    assert_space(params, space);
    let diag: Vec<f64> = space
        .labels()
        .map(|n| params.structure_function(n))
        .collect();
    Operator::from_diag_re(&diag)
}

/// Certify the defining relations of the algebra on `space`.
///
/// Checks `[a-, a+] = F(N+1) - F(N)` (interior only on a truncated space),
/// `[N, a±] = ±a±`, `a+ a- = F(N)`, and adjointness; in the finite case also
/// the top-level annihilation `a+ |d-1> = 0` and the exact nilpotency
/// `(a±)^d = 0`.
pub fn verify_algebra(params: &AlgebraParams, space: &FockSpace, tol: f64) -> VerificationReport {
    let size = space.size();
    let (am, ap, number) = build_ladder_ops(params, space);
    let mut report = VerificationReport::new();

    // [a-, a+] - (F(N+1) - F(N)); on a truncated space the top level is an
    // edge artifact, so restrict to the leading (size-1) x (size-1) block.
    let target: Vec<f64> = space
        .labels()
        .map(|n| params.structure_function(n + 1) - params.structure_function(n))
        .collect();
    let comm_dev = am.commutator(&ap).sub(&Operator::from_diag_re(&target));
    let dev = match space.kind() {
        SpaceKind::Finite => comm_dev.max_abs(),
        SpaceKind::Truncated => comm_dev.max_abs_leading(size - 1),
    };
    report.push("algebra/commutator ladder", dev, tol, PROV_DEFINING);

    let dev = number.commutator(&ap).sub(&ap).max_abs();
    report.push("algebra/commutator number raise", dev, tol, PROV_DEFINING);
    let dev = number.commutator(&am).add(&am).max_abs();
    report.push("algebra/commutator number lower", dev, tol, PROV_DEFINING);

    let h = hamiltonian(params, space);
    report.push(
        "algebra/hamiltonian product",
        ap.dot(&am).max_abs_diff(&h),
        tol,
        PROV_DEFINING,
    );

    report.push(
        "algebra/adjointness",
        ap.max_abs_diff(&am.adjoint()),
        tol,
        PROV_DEFINING,
    );

    if space.is_finite() {
        let d = size;
        let top_col = (0..d)
            .map(|r| ap.matrix()[(r, d - 1)].norm())
            .fold(0.0, f64::max);
        report.push("algebra/top level annihilated", top_col, tol, PROV_DEFINING);
        report.push(
            "algebra/nilpotency lower",
            am.matrix_power(d).max_abs(),
            tol,
            PROV_DEFINING,
        );
        report.push(
            "algebra/nilpotency raise",
            ap.matrix_power(d).max_abs(),
            tol,
            PROV_DEFINING,
        );
    }

    report
}

/// Lie-algebra class of a one-parameter instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraClass {
    /// `kappa = 0`: the ordinary oscillator algebra.
    H4,
    /// `kappa > 0`: positive discrete series, Bargmann index `k = 1/(2 kappa)`.
    Su11,
    /// `kappa < 0`: spin `j = -1/(2 kappa)`, dimension `d = 2j + 1`.
    Su2,
}

/// Classification of a one-parameter algebra by the sign of `kappa`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub label: AlgebraClass,
    /// Bargmann index, present iff `label == Su11`.
    pub bargmann_k: Option<f64>,
    /// Spin label, present iff `label == Su2`.
    pub spin_j: Option<f64>,
    pub dimension: Dimension,
}

/// Classify a one-parameter algebra. Errors with `NotSingleParameter` for `r > 1`.
pub fn classify(params: &AlgebraParams) -> Result<ClassificationReport> {
    if params.r() != 1 {
        return Err(Error::NotSingleParameter(params.r()));
    }
    let kappa = params.kappas()[0];
    let dimension = params.dimension();
    let report = if kappa == 0.0 {
        ClassificationReport {
            label: AlgebraClass::H4,
            bargmann_k: None,
            spin_j: None,
            dimension,
        }
    } else if kappa > 0.0 {
        ClassificationReport {
            label: AlgebraClass::Su11,
            bargmann_k: Some(1.0 / (2.0 * kappa)),
            spin_j: None,
            dimension,
        }
    } else {
        let j = -1.0 / (2.0 * kappa);
        // Cross-check d = 2j + 1 against the snapped dimension.
        if let Dimension::Finite(d) = dimension {
            debug_assert!((2.0 * j + 1.0 - d as f64).abs() < 1e-9);
        }
        ClassificationReport {
            label: AlgebraClass::Su2,
            bargmann_k: None,
            spin_j: Some(j),
            dimension,
        }
    };
    Ok(report)
}

/// Parameters of the quadratic Hamiltonian `H0 = a/2 N(N-1) + b N`.
///
/// The optional fields select one of the named potential cases:
/// `u, v` the Poschl-Teller well (`a = 1`, `2b = u + v + 1`, `u, v > 1`) and
/// `ell` the Morse well (`a = -1`, `2b = ell - 1`, `ell >= 2`, dimension `ell`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H0Params {
    pub a: f64,
    pub b: f64,
    pub u: Option<f64>,
    pub v: Option<f64>,
    pub ell: Option<usize>,
}

impl H0Params {
    /// Free choice of `a` and `b > 0` with no named case.
    pub fn general(a: f64, b: f64) -> Self {
        Self {
            a,
            b,
            u: None,
            v: None,
            ell: None,
        }
    }

    /// The oscillator case `a = 0`, `b = 1`.
    pub fn oscillator() -> Self {
        Self::general(0.0, 1.0)
    }

    /// The Poschl-Teller case `a = 1`, `2b = u + v + 1`.
    pub fn poschl_teller(u: f64, v: f64) -> Self {
        Self {
            a: 1.0,
            b: (u + v + 1.0) / 2.0,
            u: Some(u),
            v: Some(v),
            ell: None,
        }
    }

    /// The Morse case `a = -1`, `2b = ell - 1`.
    pub fn morse(ell: usize) -> Self {
        Self {
            a: -1.0,
            b: (ell as f64 - 1.0) / 2.0,
            u: None,
            v: None,
            ell: Some(ell),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.b <= 0.0 || self.b.is_nan() {
            return Err(Error::InvalidCase(format!(
                "b must be positive, got {}",
                self.b
            )));
        }
        if self.ell.is_some() && (self.u.is_some() || self.v.is_some()) {
            return Err(Error::InvalidCase("ell excludes u, v".into()));
        }
        if let Some(ell) = self.ell {
            if ell < 2 {
                return Err(Error::InvalidCase(format!(
                    "ell must be at least 2, got {ell}"
                )));
            }
            if self.a != -1.0 {
                return Err(Error::InvalidCase(format!(
                    "Morse case requires a = -1, got {}",
                    self.a
                )));
            }
            let expect = (ell as f64 - 1.0) / 2.0;
            if (self.b - expect).abs() > 1e-12 * expect.max(1.0) {
                return Err(Error::InvalidCase(format!(
                    "Morse case requires 2b = ell - 1, got b = {}",
                    self.b
                )));
            }
        }
        match (self.u, self.v) {
            (Some(u), Some(v)) => {
                if u <= 1.0 || v <= 1.0 {
                    return Err(Error::InvalidCase(format!(
                        "Poschl-Teller requires u, v > 1, got {u}, {v}"
                    )));
                }
                if self.a != 1.0 {
                    return Err(Error::InvalidCase(format!(
                        "Poschl-Teller requires a = 1, got {}",
                        self.a
                    )));
                }
                let expect = (u + v + 1.0) / 2.0;
                if (self.b - expect).abs() > 1e-12 * expect.max(1.0) {
                    return Err(Error::InvalidCase(format!(
                        "Poschl-Teller requires 2b = u + v + 1, got b = {}",
                        self.b
                    )));
                }
            }
            (None, None) => {}
            _ => return Err(Error::InvalidCase("u and v must be given together".into())),
        }
        Ok(())
    }
}

/// Convert `H0 = a/2 N(N-1) + b N` into algebra parameters `kappa = a/(2b)`
/// and the diagonal `H0` matrix.
///
/// The matrix lives on the exact finite space when `kappa < 0` (the Morse
/// case yields dimension `ell`); otherwise on a truncation of order `trunc`.
/// Satisfies `H0 = b F(N)` entrywise up to rounding.
pub fn h0_from_ab(h0: &H0Params, trunc: usize) -> Result<(AlgebraParams, Operator)> {
    h0.validate()?;
    let kappa = h0.a / (2.0 * h0.b);
    let params = AlgebraParams::new(vec![kappa], 0.0)?;
    let space = match params.dimension() {
        Dimension::Finite(d) => {
            if let Some(ell) = h0.ell {
                debug_assert_eq!(d, ell);
            }
            FockSpace::finite(&params)?
        }
        Dimension::Infinite => FockSpace::truncated(&params, trunc)?,
    };
    let diag: Vec<f64> = space
        .labels()
        .map(|n| {
            let nf = n as f64;
            0.5 * h0.a * nf * (nf - 1.0) + h0.b * nf
        })
        .collect();
    Ok((params, Operator::from_diag_re(&diag)))
}
