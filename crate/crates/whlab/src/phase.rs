//! Phase operators and phase states.
//!
//! The defining relation is the polar-like decomposition `a- = E sqrt(F(N))`.
//! On a truncated infinite space `E` is the nonunitary one-sided shift
//! ([`build_shift_phase_op`]); on any space it can be completed to a unitary
//! by wrapping the lost top level back to the bottom with a compensating
//! phase ([`build_unitary_phase_op`]). Each form comes with an explicit
//! eigenstate family, constructed in closed form rather than through an
//! eigensolver, plus a polynomial operator `G` whose eigenstates weight the
//! number basis by `1/sqrt(F(n)!)`.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::exec;
use crate::fock::{AlgebraParams, FockSpace, SpaceKind};
use crate::linalg::{Operator, StateVector};

/// `F(n)! = F(1) F(2) ... F(n)`, with `F(0)! = 1`.
///
/// In the finite case this is meaningful for `n <= d-1`; beyond that the
/// factor `F(d) = 0` zeroes the product.
pub fn factorial_f(params: &AlgebraParams, n: usize) -> f64 {
    (1..=n).map(|k| params.structure_function(k)).product()
}

/// The nonunitary shift phase operator on a truncated space:
/// `E|n> = e^{+i[F(n)-F(n-1)] phi} |n-1>`, `E|0> = 0`.
///
/// Satisfies `a- = E sqrt(F(N))` entrywise and the defect identities
/// `E^dag E = I - |0><0|`, `E E^dag = I - |s-1><s-1|`.
pub fn build_shift_phase_op(params: &AlgebraParams, space: &FockSpace) -> Result<Operator> {
    if space.kind() != SpaceKind::Truncated {
        return Err(Error::InvalidArgument(
            "shift phase operator requires a truncated space; use the unitary form on a finite space"
                .into(),
        ));
    }
    Ok(shift_matrix(params, space.size(), None))
}

/// The unitary phase operator on a space of size `D`:
/// the same shift with the wrap entry `E|0> = e^{-i F(D-1) phi} |D-1>`.
///
/// Unitary to machine precision, satisfies `a- = E sqrt(F(N))` (the wrap
/// column is annihilated by `sqrt(F(0)) = 0`), and its eigenvectors are the
/// [`m_phase_state`] family with eigenvalues `e^{2 pi i m / D}`.
pub fn build_unitary_phase_op(params: &AlgebraParams, space: &FockSpace) -> Operator {
    let d = space.size();
    let wrap = C64::cis(-params.structure_function(d - 1) * params.phi());
    shift_matrix(params, d, Some(wrap))
}

fn shift_matrix(params: &AlgebraParams, size: usize, wrap: Option<C64>) -> Operator {
    let mut mat = Array2::<C64>::zeros((size, size));
    let mut f_prev = 0.0;
    for n in 1..size {
        let f = params.structure_function(n);
        mat[(n - 1, n)] = C64::cis((f - f_prev) * params.phi());
        f_prev = f;
    }
    if let Some(w) = wrap {
        mat[(size - 1, 0)] = w;
    }
    Operator::from_mat(mat)
}

/// Eigenstate of the shift phase operator at angle `theta`:
/// amplitudes `e^{-i F(n) phi} e^{i n theta}`, unnormalized.
#[derive(Debug, Clone)]
pub struct PhaseStateTheta {
    pub phi: f64,
    pub theta: f64,
    pub vector: StateVector,
}

/// Truncation of the continuous phase state at `space.size()` terms.
pub fn theta_phase_state(params: &AlgebraParams, theta: f64, space: &FockSpace) -> PhaseStateTheta {
    let amps: Vec<C64> = space
        .labels()
        .map(|n| C64::cis(-params.structure_function(n) * params.phi() + n as f64 * theta))
        .collect();
    PhaseStateTheta {
        phi: params.phi(),
        theta,
        vector: StateVector::from_vec_raw(amps.into()),
    }
}

/// Eigenstate of the unitary phase operator: amplitudes
/// `(1/sqrt(D)) e^{i[-F(n) phi + 2 pi m n / D]}`, unit norm.
#[derive(Debug, Clone)]
pub struct PhaseStateM {
    pub phi: f64,
    pub m: usize,
    pub vector: StateVector,
}

/// The `m`-th eigenstate of [`build_unitary_phase_op`], `0 <= m < D`.
pub fn m_phase_state(params: &AlgebraParams, m: usize, space: &FockSpace) -> Result<PhaseStateM> {
    let d = space.size();
    if m >= d {
        return Err(Error::IndexOutOfRange { index: m, dim: d });
    }
    let norm = 1.0 / (d as f64).sqrt();
    let amps: Vec<C64> = space
        .labels()
        .map(|n| {
            let angle =
                -params.structure_function(n) * params.phi() + TAU * (m * n) as f64 / d as f64;
            C64::cis(angle) * norm
        })
        .collect();
    Ok(PhaseStateM {
        phi: params.phi(),
        m,
        vector: StateVector::from_vec_raw(amps.into()),
    })
}

/// The polynomial phase operator `G = a- + (a+)^{d-1} / F(d-1)!` on a finite
/// space. The power term has exactly one nonzero entry, at `(d-1, 0)`.
pub fn build_g_op(params: &AlgebraParams, space: &FockSpace) -> Result<Operator> {
    if !space.is_finite() {
        return Err(Error::InvalidArgument(
            "the G operator is defined on finite spaces only".into(),
        ));
    }
    let d = space.size();
    let (am, ap, _) = crate::fock::build_ladder_ops(params, space);
    let scale = C64::new(1.0 / factorial_f(params, d - 1), 0.0);
    Ok(am.add(&ap.matrix_power(d - 1).scale(scale)))
}

/// Eigenstate of the `G` operator: amplitudes proportional to
/// `(1/sqrt(F(n)!)) e^{i[-F(n) phi + 2 pi mu n / d]}`, normalized by `c0`.
#[derive(Debug, Clone)]
pub struct PhaseStateMu {
    pub phi: f64,
    pub mu: usize,
    /// Per-state normalization `(sum_n 1/F(n)!)^{-1/2}`.
    pub c0: f64,
    pub vector: StateVector,
}

/// The `mu`-th eigenstate of [`build_g_op`], `0 <= mu < d`, unit norm under
/// the recorded `c0`.
pub fn mu_phase_state(
    params: &AlgebraParams,
    mu: usize,
    space: &FockSpace,
) -> Result<PhaseStateMu> {
    if !space.is_finite() {
        return Err(Error::InvalidArgument(
            "mu phase states are defined on finite spaces only".into(),
        ));
    }
    let d = space.size();
    if mu >= d {
        return Err(Error::IndexOutOfRange { index: mu, dim: d });
    }
    let weights: Vec<f64> = (0..d).map(|n| 1.0 / factorial_f(params, n)).collect();
    let c0 = weights.iter().sum::<f64>().powf(-0.5);
    let amps: Vec<C64> = space
        .labels()
        .map(|n| {
            let angle =
                -params.structure_function(n) * params.phi() + TAU * (mu * n) as f64 / d as f64;
            C64::cis(angle) * (c0 * weights[n].sqrt())
        })
        .collect();
    Ok(PhaseStateMu {
        phi: params.phi(),
        mu,
        c0,
        vector: StateVector::from_vec_raw(amps.into()),
    })
}

/// Time evolution under `H = F(N)`: `U(t) = diag(e^{-i F(n) t})`.
///
/// Maps every phase-state family member at reference `phi` to the member at
/// `phi + t` with the same discrete label.
pub fn time_evolution(params: &AlgebraParams, space: &FockSpace, t: f64) -> Operator {
    let diag: Vec<C64> = space
        .labels()
        .map(|n| C64::cis(-params.structure_function(n) * t))
        .collect();
    Operator::from_diag(&diag)
}

/// Quadrature check of the continuous closure relation
/// `integral over theta of |phi,theta><phi,theta| = 2 pi I` on a truncated
/// space. Composite trapezoid on `grid_points` uniform nodes over
/// `[-pi, pi]`, both endpoints included; the integrand entries are
/// trigonometric polynomials of degree `<= s-1`, so any grid with at least
/// `2s+1` nodes integrates them exactly up to rounding.
///
/// Returns the largest entrywise deviation from `2 pi I`.
pub fn closure_theta(params: &AlgebraParams, space: &FockSpace, grid_points: usize) -> Result<f64> {
    let s = space.size();
    let required = 2 * s + 1;
    if grid_points < required {
        return Err(Error::InsufficientGrid {
            got: grid_points,
            required,
        });
    }
    let intervals = grid_points - 1;
    let h = TAU / intervals as f64;
    let thetas: Vec<f64> = (0..grid_points)
        .map(|g| -PI + TAU * g as f64 / intervals as f64)
        .collect();
    let amps: Vec<StateVector> = thetas
        .iter()
        .map(|&th| theta_phase_state(params, th, space).vector)
        .collect();
    let weights: Vec<f64> = (0..grid_points)
        .map(|g| if g == 0 || g == intervals { 0.5 * h } else { h })
        .collect();

    // Row-parallel, sequential over the grid within a row: deterministic.
    let row_devs = exec::map_range(s, |j| {
        let mut worst = 0.0f64;
        for k in 0..s {
            let mut acc = C64::new(0.0, 0.0);
            for (g, amp) in amps.iter().enumerate() {
                acc += amp.amplitudes()[j] * amp.amplitudes()[k].conj() * weights[g];
            }
            let target = if j == k {
                C64::new(TAU, 0.0)
            } else {
                C64::new(0.0, 0.0)
            };
            worst = worst.max((acc - target).norm());
        }
        worst
    });
    Ok(row_devs.into_iter().fold(0.0, f64::max))
}

/// Deviation of the discrete closure relation
/// `sum_m |phi,m><phi,m| = I` from the identity.
pub fn closure_m(params: &AlgebraParams, space: &FockSpace) -> f64 {
    let d = space.size();
    let states: Vec<StateVector> = (0..d)
        .map(|m| m_phase_state(params, m, space).expect("m < d").vector)
        .collect();
    let row_devs = exec::map_range(d, |j| {
        let mut worst = 0.0f64;
        for k in 0..d {
            let mut acc = C64::new(0.0, 0.0);
            for st in &states {
                acc += st.amplitudes()[j] * st.amplitudes()[k].conj();
            }
            let target = if j == k {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            };
            worst = worst.max((acc - target).norm());
        }
        worst
    });
    row_devs.into_iter().fold(0.0, f64::max)
}

/// Largest deviation of the Gram matrix of `states` from the identity.
pub fn gram_deviation(states: &[StateVector]) -> f64 {
    let rows = exec::map_range(states.len(), |j| {
        states
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let target = if j == k { 1.0 } else { 0.0 };
                (states[j].inner(b) - C64::new(target, 0.0)).norm()
            })
            .fold(0.0, f64::max)
    });
    rows.into_iter().fold(0.0, f64::max)
}

/// `|| op v - lambda v ||`, the eigen-residual of `v` under `op`.
pub fn eigen_residual(op: &Operator, v: &StateVector, lambda: C64) -> f64 {
    op.apply(v).sub(&v.scale(lambda)).norm()
}
