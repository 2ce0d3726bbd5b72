//! The two-degree-of-freedom deformation on a triangular two-mode space.
//!
//! The defining relations couple the modes through the total number:
//! `[a_i-, a_i+] = I + kappa (N_1 + N_2 + N_i)`, same-sign ladder operators
//! of different modes commute, `[N_i, a_j±] = ±delta_ij a_i±`, and the mixed
//! double commutators `[a_i±, [a_i±, a_j∓]] = 0` close the algebra. The
//! representation used here acts on labels `(n1, n2)` with
//!
//! ```text
//! a_i- |n1, n2> = sqrt(n_i (1 + kappa (n1+n2-1))) |.., n_i - 1, ..>
//! ```
//!
//! which is a derived ansatz, not an imported formula; its only claim to
//! correctness is [`verify_two_mode_algebra`] passing. For `kappa < 0` with
//! `-1/kappa = jmax` integral, the factor vanishes exactly on creation out of
//! `n1 + n2 = jmax`, so the triangle `n1 + n2 <= jmax` is invariant; for
//! `kappa >= 0` the triangle is a numerical cutoff and relations are checked
//! on its interior.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::Operator;
use crate::report::{VerificationReport, PROV_DEFINING, PROV_DERIVED};

/// Snap tolerance for `-1/kappa` in the finite two-mode case.
const JMAX_SNAP_TOL: f64 = 1e-12;

/// Whether the triangle is the exact invariant subspace or a cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoModeKind {
    FiniteTriangular,
    TruncatedTriangular,
}

/// The triangular label set `{(n1, n2) : n1 + n2 <= jmax}` in lexicographic
/// order (`n1` major, `n2` minor).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeSpace {
    kind: TwoModeKind,
    jmax: usize,
    labels: Vec<(usize, usize)>,
}

impl TwoModeSpace {
    /// The exact finite triangle for `kappa < 0` with `-1/kappa` a positive
    /// integer (which becomes `jmax`).
    pub fn finite(kappa: f64) -> Result<Self> {
        if kappa >= 0.0 {
            return Err(Error::InvalidArgument(
                "a finite two-mode space requires kappa < 0".into(),
            ));
        }
        let inv = -1.0 / kappa;
        let j = inv.round();
        if j < 1.0 || (inv - j).abs() > JMAX_SNAP_TOL * j {
            return Err(Error::NonIntegerDimension(inv));
        }
        Ok(Self::build(TwoModeKind::FiniteTriangular, j as usize))
    }

    /// A cutoff triangle of side `jmax`.
    pub fn truncated(jmax: usize) -> Result<Self> {
        if jmax < 1 {
            return Err(Error::InvalidArgument("jmax must be at least 1".into()));
        }
        Ok(Self::build(TwoModeKind::TruncatedTriangular, jmax))
    }

    fn build(kind: TwoModeKind, jmax: usize) -> Self {
        let labels = (0..=jmax)
            .flat_map(|n1| (0..=jmax - n1).map(move |n2| (n1, n2)))
            .collect();
        Self { kind, jmax, labels }
    }

    pub fn kind(&self) -> TwoModeKind {
        self.kind
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    /// Position of a label in the lexicographic order.
    pub fn index_of(&self, n1: usize, n2: usize) -> Option<usize> {
        if n1 + n2 > self.jmax {
            return None;
        }
        // labels with first coordinate < n1 count sum_{k<n1} (jmax+1-k)
        let before: usize = (0..n1).map(|k| self.jmax + 1 - k).sum();
        Some(before + n2)
    }
}

/// The six representation matrices on a [`TwoModeSpace`].
#[derive(Debug, Clone)]
pub struct TwoModeOps {
    pub a1_minus: Operator,
    pub a1_plus: Operator,
    pub a2_minus: Operator,
    pub a2_plus: Operator,
    pub n1: Operator,
    pub n2: Operator,
}

/// Structure factor `1 + kappa (n1 + n2 - 1)`, evaluated exactly in the
/// finite case as `(jmax - (n1 + n2 - 1)) / jmax`.
fn mode_factor(kappa: f64, finite_jmax: Option<usize>, total: usize) -> f64 {
    match finite_jmax {
        Some(j) => (j as f64 - (total as f64 - 1.0)) / j as f64,
        None => 1.0 + kappa * (total as f64 - 1.0),
    }
}

/// Build the two-mode ladder and number operators for `kappa` on `space`.
///
/// Errors with `InvalidTruncation` if the structure factor goes negative
/// anywhere inside the triangle (a cutoff too large for a negative
/// non-integer `kappa`).
pub fn build_two_mode_ops(kappa: f64, space: &TwoModeSpace) -> Result<TwoModeOps> {
    let finite_jmax = match space.kind() {
        TwoModeKind::FiniteTriangular => {
            let inv = -1.0 / kappa;
            let j = inv.round();
            if kappa >= 0.0 || (inv - j).abs() > JMAX_SNAP_TOL * j || j as usize != space.jmax() {
                return Err(Error::InvalidArgument(format!(
                    "finite triangular space of side {} does not match kappa = {kappa}",
                    space.jmax()
                )));
            }
            Some(space.jmax())
        }
        TwoModeKind::TruncatedTriangular => None,
    };

    let size = space.size();
    let mut a1m = Array2::<C64>::zeros((size, size));
    let mut a2m = Array2::<C64>::zeros((size, size));
    for (col, &(n1, n2)) in space.labels().iter().enumerate() {
        let f = mode_factor(kappa, finite_jmax, n1 + n2);
        if f < 0.0 {
            return Err(Error::InvalidTruncation(format!("label ({n1}, {n2})")));
        }
        if n1 > 0 {
            let row = space.index_of(n1 - 1, n2).expect("inside triangle");
            a1m[(row, col)] = C64::new((n1 as f64 * f).sqrt(), 0.0);
        }
        if n2 > 0 {
            let row = space.index_of(n1, n2 - 1).expect("inside triangle");
            a2m[(row, col)] = C64::new((n2 as f64 * f).sqrt(), 0.0);
        }
    }
    let a1_minus = Operator::from_mat(a1m);
    let a2_minus = Operator::from_mat(a2m);
    let a1_plus = a1_minus.adjoint();
    let a2_plus = a2_minus.adjoint();
    let n1 = Operator::from_diag_re(
        &space
            .labels()
            .iter()
            .map(|&(n1, _)| n1 as f64)
            .collect::<Vec<_>>(),
    );
    let n2 = Operator::from_diag_re(
        &space
            .labels()
            .iter()
            .map(|&(_, n2)| n2 as f64)
            .collect::<Vec<_>>(),
    );
    Ok(TwoModeOps {
        a1_minus,
        a1_plus,
        a2_minus,
        a2_plus,
        n1,
        n2,
    })
}

/// Largest entry modulus over rows and columns whose labels satisfy
/// `n1 + n2 <= max_total`.
fn max_abs_on_interior(op: &Operator, space: &TwoModeSpace, max_total: usize) -> f64 {
    let keep: Vec<usize> = space
        .labels()
        .iter()
        .enumerate()
        .filter(|(_, &(n1, n2))| n1 + n2 <= max_total)
        .map(|(i, _)| i)
        .collect();
    let mut worst = 0.0f64;
    for &i in &keep {
        for &j in &keep {
            worst = worst.max(op.matrix()[(i, j)].norm());
        }
    }
    worst
}

/// Certify all defining relations of the two-mode algebra.
///
/// On a finite triangle every relation is checked on the full space; on a
/// cutoff triangle the checks are restricted to labels with
/// `n1 + n2 <= jmax - 2`, since each relation applies at most two ladder
/// steps.
pub fn verify_two_mode_algebra(
    ops: &TwoModeOps,
    space: &TwoModeSpace,
    kappa: f64,
    tol: f64,
) -> VerificationReport {
    let size = space.size();
    let identity = Operator::identity(size);
    let max_total = match space.kind() {
        TwoModeKind::FiniteTriangular => space.jmax(),
        TwoModeKind::TruncatedTriangular => space.jmax().saturating_sub(2),
    };
    let TwoModeOps {
        a1_minus,
        a1_plus,
        a2_minus,
        a2_plus,
        n1,
        n2,
    } = ops;

    let total_plus = |ni: &Operator| identity.add(&n1.add(n2).add(ni).scale(C64::new(kappa, 0.0)));

    // (name, deviation operator, provenance) triples evaluated independently
    type Check<'a> = Box<dyn Fn() -> Operator + Sync + Send + 'a>;
    let checks: Vec<(&str, Check<'_>, &str)> = vec![
        (
            "twomode/commutator ladder mode1",
            Box::new(|| a1_minus.commutator(a1_plus).sub(&total_plus(n1))),
            PROV_DEFINING,
        ),
        (
            "twomode/commutator ladder mode2",
            Box::new(|| a2_minus.commutator(a2_plus).sub(&total_plus(n2))),
            PROV_DEFINING,
        ),
        (
            "twomode/cross lowering commute",
            Box::new(|| a1_minus.commutator(a2_minus)),
            PROV_DEFINING,
        ),
        (
            "twomode/cross raising commute",
            Box::new(|| a1_plus.commutator(a2_plus)),
            PROV_DEFINING,
        ),
        (
            "twomode/number raise mode1",
            Box::new(|| n1.commutator(a1_plus).sub(a1_plus)),
            PROV_DEFINING,
        ),
        (
            "twomode/number lower mode1",
            Box::new(|| n1.commutator(a1_minus).add(a1_minus)),
            PROV_DEFINING,
        ),
        (
            "twomode/number raise mode2",
            Box::new(|| n2.commutator(a2_plus).sub(a2_plus)),
            PROV_DEFINING,
        ),
        (
            "twomode/number lower mode2",
            Box::new(|| n2.commutator(a2_minus).add(a2_minus)),
            PROV_DEFINING,
        ),
        (
            "twomode/number cross raise mode1",
            Box::new(|| n1.commutator(a2_plus)),
            PROV_DEFINING,
        ),
        (
            "twomode/number cross lower mode1",
            Box::new(|| n1.commutator(a2_minus)),
            PROV_DEFINING,
        ),
        (
            "twomode/number cross raise mode2",
            Box::new(|| n2.commutator(a1_plus)),
            PROV_DEFINING,
        ),
        (
            "twomode/number cross lower mode2",
            Box::new(|| n2.commutator(a1_minus)),
            PROV_DEFINING,
        ),
        (
            "twomode/trilinear raise1 lower2",
            Box::new(|| a1_plus.commutator(&a1_plus.commutator(a2_minus))),
            PROV_DEFINING,
        ),
        (
            "twomode/trilinear lower1 raise2",
            Box::new(|| a1_minus.commutator(&a1_minus.commutator(a2_plus))),
            PROV_DEFINING,
        ),
        (
            "twomode/trilinear raise2 lower1",
            Box::new(|| a2_plus.commutator(&a2_plus.commutator(a1_minus))),
            PROV_DEFINING,
        ),
        (
            "twomode/trilinear lower2 raise1",
            Box::new(|| a2_minus.commutator(&a2_minus.commutator(a1_plus))),
            PROV_DEFINING,
        ),
        (
            "twomode/adjointness mode1",
            Box::new(|| a1_plus.sub(&a1_minus.adjoint())),
            PROV_DEFINING,
        ),
        (
            "twomode/adjointness mode2",
            Box::new(|| a2_plus.sub(&a2_minus.adjoint())),
            PROV_DEFINING,
        ),
    ];

    let devs = exec::map_slice(&checks, |(_, make, _)| {
        max_abs_on_interior(&make(), space, max_total)
    });

    let mut report = VerificationReport::new();
    for ((name, _, prov), dev) in checks.iter().zip(devs) {
        report.push(*name, dev, tol, prov);
    }

    if space.kind() == TwoModeKind::FiniteTriangular {
        // creation out of the edge n1 + n2 = jmax must vanish exactly
        let edge: Vec<usize> = space
            .labels()
            .iter()
            .enumerate()
            .filter(|(_, &(n1, n2))| n1 + n2 == space.jmax())
            .map(|(i, _)| i)
            .collect();
        let mut worst = 0.0f64;
        for &col in &edge {
            for row in 0..size {
                worst = worst.max(a1_plus.matrix()[(row, col)].norm());
                worst = worst.max(a2_plus.matrix()[(row, col)].norm());
            }
        }
        report.push("twomode/boundary annihilation", worst, tol, PROV_DERIVED);
    }

    report
}

/// Lie-algebra class of the two-mode deformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoModeClass {
    /// `kappa = 0`: two independent oscillator algebras.
    H4TensorH4,
    /// `kappa > 0`.
    Su21,
    /// `kappa < 0`.
    Su3,
}

/// Classify the two-mode algebra by the sign of `kappa`.
pub fn classify_two_mode(kappa: f64) -> TwoModeClass {
    if kappa == 0.0 {
        TwoModeClass::H4TensorH4
    } else if kappa > 0.0 {
        TwoModeClass::Su21
    } else {
        TwoModeClass::Su3
    }
}
