//! Coherent states of type I (Klauder-Perelomov) and type II (Barut-Girardello).
//!
//! Type I expands `exp(z a+)|0>` in the number basis with coefficients
//! `sqrt(F(n)!)/n! z^n e^{-i F(n) phi}`; on a truncated infinite space it
//! exists only for `r = 1`, and for `kappa > 0` only inside the disc
//! `|z| < 1/sqrt(kappa)` (the term-ratio limit of the series). Type II is the
//! eigenvector of `a-` with coefficients `1/sqrt(F(n)!) z^n e^{-i F(n) phi}`;
//! it exists for any `r` on a truncated space, for no complex `z != 0` in
//! finite dimension (`a-` is nilpotent there), and reappears in finite
//! dimension once `z` is traded for a nilpotent variable `theta` with
//! `theta^dim = 0`.
//!
//! States are kept unnormalized, exactly as their series definitions; norms
//! and truncation tails are reported separately.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fock::{build_ladder_ops, AlgebraParams, FockSpace, SpaceKind};
use crate::grassmann::GrassmannElement;
use crate::linalg::{Operator, StateVector};
use crate::phase::factorial_f;

/// Which coherent-state family a vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherentFlavor {
    /// Klauder-Perelomov: `exp(z a+)|0>`.
    TypeI,
    /// Barut-Girardello: eigenvector of `a-`.
    TypeII,
}

/// An (unnormalized) coherent state on a Fock space.
#[derive(Debug, Clone)]
pub struct CoherentState {
    pub flavor: CoherentFlavor,
    pub z: C64,
    pub phi: f64,
    pub space: FockSpace,
    pub vector: StateVector,
    /// Upper estimate for the norm of the omitted series tail; zero on a
    /// finite space, infinite when no geometric bound applies.
    pub tail_bound: f64,
}

impl CoherentState {
    /// Norm of the stored (unnormalized) vector.
    pub fn norm(&self) -> f64 {
        self.vector.norm()
    }
}

fn series_state(
    flavor: CoherentFlavor,
    params: &AlgebraParams,
    z: C64,
    space: &FockSpace,
    tail_eps: f64,
) -> CoherentState {
    let size = space.size();
    let mut amps = vec![C64::new(0.0, 0.0); size];
    let mut term = C64::new(1.0, 0.0);
    let mut norm_sq = 0.0f64;
    let mut next = size; // first omitted index
    let mut stopped = false;
    for (n, amp) in amps.iter_mut().enumerate() {
        if n > 0 {
            term *= step_factor(flavor, params, z, n);
        }
        if n > 0 && tail_eps > 0.0 && term.norm() < tail_eps * norm_sq.sqrt() {
            next = n;
            stopped = true;
            break;
        }
        *amp = term * C64::cis(-params.structure_function(n) * params.phi());
        norm_sq += term.norm_sqr();
    }
    let tail_bound = if space.is_finite() {
        0.0
    } else {
        // `term` is the first omitted term when stopped early, otherwise the
        // last included one
        let t_next = if stopped {
            term.norm()
        } else {
            (term * step_factor(flavor, params, z, next)).norm()
        };
        geometric_tail(flavor, params, z, next, t_next)
    };
    CoherentState {
        flavor,
        z,
        phi: params.phi(),
        space: *space,
        vector: StateVector::from_vec_raw(amps.into()),
        tail_bound,
    }
}

/// Multiplier taking the series term at `n-1` to the term at `n`.
fn step_factor(flavor: CoherentFlavor, params: &AlgebraParams, z: C64, n: usize) -> C64 {
    let f = params.structure_function(n);
    match flavor {
        CoherentFlavor::TypeI => z * (f.sqrt() / n as f64),
        CoherentFlavor::TypeII => z / f.sqrt(),
    }
}

/// Geometric bound on `sum_{k >= next} |t_k|` given `t_next = |t_{next}|`.
fn geometric_tail(
    flavor: CoherentFlavor,
    params: &AlgebraParams,
    z: C64,
    next: usize,
    t_next: f64,
) -> f64 {
    if t_next == 0.0 {
        return 0.0;
    }
    let ratio_at = |n: usize| step_factor(flavor, params, z, n + 1).norm();
    let rho = match flavor {
        // the term ratio tends to |z| sqrt(kappa); it approaches the limit
        // monotonically from one side, so the sup is at `next` or at infinity
        CoherentFlavor::TypeI => {
            let kappa = params.kappas()[0];
            ratio_at(next).max(z.norm() * kappa.max(0.0).sqrt())
        }
        // F is nondecreasing on admissible truncated parameters, so the term
        // ratio is largest at `next`
        CoherentFlavor::TypeII => ratio_at(next),
    };
    if rho >= 1.0 {
        f64::INFINITY
    } else {
        t_next / (1.0 - rho)
    }
}

/// Type-I (Klauder-Perelomov) coherent state.
///
/// Finite space: defined for any `r` and any `z`. Truncated space: requires
/// `r = 1`, and `|z| < 1/sqrt(kappa)` when `kappa > 0`.
pub fn kp_state(
    params: &AlgebraParams,
    z: C64,
    space: &FockSpace,
    tail_eps: f64,
) -> Result<CoherentState> {
    if space.kind() == SpaceKind::Truncated {
        if params.r() != 1 {
            return Err(Error::TypeIUndefined(params.r()));
        }
        let kappa = params.kappas()[0];
        if kappa > 0.0 {
            let radius = 1.0 / kappa.sqrt();
            if z.norm() >= radius {
                return Err(Error::OutsideDomain {
                    z_abs: z.norm(),
                    radius,
                });
            }
        }
    }
    Ok(series_state(
        CoherentFlavor::TypeI,
        params,
        z,
        space,
        tail_eps,
    ))
}

/// Residual of the identity `|z, phi> = exp(z a+) |0>`.
///
/// The right-hand side is evaluated through the representation matrix: the
/// exponential series applied to `|0>` terminates exactly because `a+` is
/// nilpotent on any finite or truncated space. On a truncated space the
/// comparison is restricted to components `0 .. s-2`.
pub fn kp_exponential_check(params: &AlgebraParams, z: C64, space: &FockSpace) -> Result<f64> {
    let state = kp_state(params, z, space, 0.0)?;
    let size = space.size();
    let (_, ap, _) = build_ladder_ops(params, space);
    let mut acc = StateVector::basis(size, 0);
    let mut w = acc.clone();
    for k in 1..=size {
        w = ap.apply(&w).scale(z / k as f64);
        if w.max_abs() == 0.0 {
            break;
        }
        acc = StateVector::from_vec_raw(acc.amplitudes() + w.amplitudes());
    }
    let residual = match space.kind() {
        SpaceKind::Finite => state.vector.sub(&acc).norm(),
        SpaceKind::Truncated => state.vector.norm_diff_leading(&acc, size - 1),
    };
    Ok(residual)
}

/// Type-II (Barut-Girardello) coherent state.
///
/// Exists on truncated spaces for any `r` and any `z`. On a finite space only
/// `z = 0` is admissible (the vacuum); any other complex `z` is rejected.
pub fn bg_state(
    params: &AlgebraParams,
    z: C64,
    space: &FockSpace,
    tail_eps: f64,
) -> Result<CoherentState> {
    if space.is_finite() && z.norm() != 0.0 {
        return Err(Error::BgFiniteComplexUndefined(space.size()));
    }
    Ok(series_state(
        CoherentFlavor::TypeII,
        params,
        z,
        space,
        tail_eps,
    ))
}

/// Residual of the eigen-relation `a- |z, phi> = z |z, phi>` on components
/// `0 .. s-2`, normalized by the state norm.
pub fn bg_eigen_check(params: &AlgebraParams, state: &CoherentState, z: C64) -> f64 {
    let space = state.space;
    let (am, _, _) = build_ladder_ops(params, &space);
    let lhs = am.apply(&state.vector);
    let rhs = state.vector.scale(z);
    lhs.norm_diff_leading(&rhs, space.size().saturating_sub(1)) / state.vector.norm()
}

/// Certificate that `a-` has no eigenvector with eigenvalue `z != 0` on a
/// finite space.
#[derive(Debug, Clone)]
pub struct NonexistenceCertificate {
    /// `max |((a-)^d)_{ij}|`; zero exactly, since `a-` is nilpotent of order `d`.
    pub nilpotency_deviation: f64,
    /// Dimension of the kernel of `a-` (the vacuum line).
    pub null_space_dim: usize,
    /// Smallest certified lower bound, over the random draws, of
    /// `min_{|v|=1} ||(a- - z)v||`.
    pub min_residual_bound: f64,
    /// Number of random `z` draws.
    pub draws: usize,
}

/// Certify the finite-dimensional nonexistence of Barut-Girardello states.
///
/// Shows `(a-)^d = 0` exactly (so `0` is the only eigenvalue), counts the
/// kernel, and for `draws` random `z` with `1 <= |z| <= 2` bounds
/// `min_{|v|=1} ||(a- - z)v||` from below by `1 / ||(a- - zI)^{-1}||_F`,
/// computable by back substitution because `a- - zI` is upper bidiagonal.
pub fn bg_finite_nonexistence(
    params: &AlgebraParams,
    space: &FockSpace,
    seed: u64,
    draws: usize,
) -> Result<NonexistenceCertificate> {
    if !space.is_finite() {
        return Err(Error::InvalidArgument(
            "nonexistence certificate requires a finite space".into(),
        ));
    }
    let d = space.size();
    let (am, _, _) = build_ladder_ops(params, space);
    let nilpotency_deviation = am.matrix_power(d).max_abs();

    // a- is upper bidiagonal; its rank is the number of nonzero
    // superdiagonal entries.
    let rank = (1..d)
        .filter(|&n| am.matrix()[(n - 1, n)].norm() > 0.0)
        .count();
    let null_space_dim = d - rank;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_residual_bound = f64::INFINITY;
    for _ in 0..draws {
        let radius = rng.gen_range(1.0..2.0);
        let angle = rng.gen_range(-PI..PI);
        let z = C64::from_polar(radius, angle);
        min_residual_bound = min_residual_bound.min(sigma_min_lower_bound(&am, z));
    }
    Ok(NonexistenceCertificate {
        nilpotency_deviation,
        null_space_dim,
        min_residual_bound,
        draws,
    })
}

/// Lower bound `1 / ||(a- - zI)^{-1}||_F <= sigma_min(a- - zI)`.
fn sigma_min_lower_bound(am: &Operator, z: C64) -> f64 {
    let d = am.dim();
    let mut frob_sq = 0.0f64;
    // solve (a- - zI) x = e_j by back substitution, column by column
    for j in 0..d {
        let mut x = vec![C64::new(0.0, 0.0); d];
        for n in (0..=j).rev() {
            let rhs = if n == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            };
            let upper = if n + 1 < d {
                am.matrix()[(n, n + 1)] * x[n + 1]
            } else {
                C64::new(0.0, 0.0)
            };
            x[n] = (rhs - upper) / (-z);
        }
        frob_sq += x.iter().map(|c| c.norm_sqr()).sum::<f64>();
    }
    1.0 / frob_sq.sqrt()
}

/// A vector over the Fock basis with coefficients in the truncated ring
/// `C[theta]/(theta^dim)`.
#[derive(Debug, Clone)]
pub struct GrassmannState {
    pub space: FockSpace,
    /// One ring element per Fock label.
    pub entries: Vec<GrassmannElement>,
}

/// The Barut-Girardello state over the nilpotent variable: entry `n` is
/// `(1/sqrt(F(n)!)) e^{-i F(n) phi} theta^n`.
pub fn grassmann_bg_state(params: &AlgebraParams, space: &FockSpace) -> GrassmannState {
    let dim = space.size();
    let entries = space
        .labels()
        .map(|n| {
            let c = C64::cis(-params.structure_function(n) * params.phi())
                / factorial_f(params, n).sqrt();
            GrassmannElement::monomial(dim, n, c)
        })
        .collect();
    GrassmannState {
        space: *space,
        entries,
    }
}

/// Largest coefficientwise deviation of `a- |theta, phi>` from
/// `theta * |theta, phi>`, both evaluated in the ring.
///
/// The top Fock entry is annihilated on the left because `a-` lowers, and on
/// the right because `theta * theta^{dim-1} = 0`; the truncation absorbs it
/// exactly.
pub fn grassmann_eigen_check(params: &AlgebraParams, state: &GrassmannState) -> f64 {
    let dim = state.space.size();
    let theta = GrassmannElement::theta(dim);
    let mut worst = 0.0f64;
    for n in 0..dim {
        let lhs = if n + 1 < dim {
            let f_hi = params.structure_function(n + 1);
            let f_lo = params.structure_function(n);
            let ladder = C64::cis((f_hi - f_lo) * params.phi()) * f_hi.sqrt();
            state.entries[n + 1].scale(ladder)
        } else {
            GrassmannElement::zero(dim)
        };
        let rhs = theta.mul(&state.entries[n]);
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn params(kappas: &[f64], phi: f64) -> AlgebraParams {
        AlgebraParams::new(kappas.to_vec(), phi).unwrap()
    }

    #[test]
    fn kp_vacuum_at_z_zero() {
        let p = params(&[0.0], 0.0);
        let space = FockSpace::truncated(&p, 5).unwrap();
        let st = kp_state(&p, C64::new(0.0, 0.0), &space, 0.0).unwrap();
        assert_eq!(st.vector.amplitudes()[0], C64::new(1.0, 0.0));
        for n in 1..5 {
            assert_eq!(st.vector.amplitudes()[n], C64::new(0.0, 0.0));
        }
    }

    #[test]
    #[allow(clippy::approx_constant)] // frozen five-digit expected values
    fn kp_glauber_amplitudes() {
        let p = params(&[0.0], 0.0);
        let space = FockSpace::truncated(&p, 4).unwrap();
        let st = kp_state(&p, C64::new(1.0, 0.0), &space, 0.0).unwrap();
        let want = [1.0, 1.0, 0.70711, 0.40825];
        for (n, w) in want.iter().enumerate() {
            assert!((st.vector.amplitudes()[n].re - w).abs() < 5e-6);
            assert!(st.vector.amplitudes()[n].im.abs() < 1e-15);
        }
    }

    #[test]
    fn kp_requires_single_parameter_on_truncated() {
        let p = params(&[0.5, 1.0], 0.0);
        let space = FockSpace::truncated(&p, 6).unwrap();
        assert!(matches!(
            kp_state(&p, C64::new(0.1, 0.0), &space, 0.0),
            Err(Error::TypeIUndefined(2))
        ));
        // but any r is fine on a finite space
        let p = params(&[-1.0 / 3.0, 0.25], 0.0);
        let space = FockSpace::finite(&p).unwrap();
        assert!(kp_state(&p, C64::new(0.3, 0.4), &space, 0.0).is_ok());
    }

    #[test]
    fn kp_convergence_domain() {
        let p = params(&[0.25], 0.0);
        let space = FockSpace::truncated(&p, 8).unwrap();
        // radius 1/sqrt(0.25) = 2
        assert!(kp_state(&p, C64::new(1.9, 0.0), &space, 0.0).is_ok());
        assert!(matches!(
            kp_state(&p, C64::new(2.0, 0.0), &space, 0.0),
            Err(Error::OutsideDomain { .. })
        ));
    }

    #[test]
    fn kp_exponential_identity() {
        let p = params(&[-1.0 / 3.0], 1.1);
        let space = FockSpace::finite(&p).unwrap();
        let r = kp_exponential_check(&p, C64::new(0.7, 0.2), &space).unwrap();
        assert!(r < 1e-10, "residual {r}");

        let p = params(&[0.0], 0.0);
        let space = FockSpace::truncated(&p, 20).unwrap();
        let r = kp_exponential_check(&p, C64::new(0.5, 0.0), &space).unwrap();
        assert!(r < 1e-10, "residual {r}");

        let r = kp_exponential_check(&p, C64::new(0.0, 0.0), &space).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    #[allow(clippy::approx_constant)] // frozen five-digit expected values
    fn bg_amplitudes_and_tail() {
        let p = params(&[0.0], 0.0);
        let space = FockSpace::truncated(&p, 4).unwrap();
        let st = bg_state(&p, C64::new(1.0, 0.0), &space, 0.0).unwrap();
        let want = [1.0, 1.0, 0.70711, 0.40825];
        for (n, w) in want.iter().enumerate() {
            assert!((st.vector.amplitudes()[n].re - w).abs() < 5e-6);
        }

        let p = params(&[1.0], 0.0);
        let space = FockSpace::truncated(&p, 3).unwrap();
        let st = bg_state(&p, C64::new(2.0, 0.0), &space, 0.0).unwrap();
        let want = [1.0, 2.0, 2.0];
        for (n, w) in want.iter().enumerate() {
            assert!((st.vector.amplitudes()[n].re - w).abs() < 1e-12);
        }
        assert!(st.tail_bound.is_finite() && st.tail_bound > 0.0);
    }

    #[test]
    fn bg_eigen_relation() {
        let p = params(&[0.0], 0.0);
        let space = FockSpace::truncated(&p, 24).unwrap();
        let z = C64::new(0.0, 0.3);
        let st = bg_state(&p, z, &space, 0.0).unwrap();
        assert!(bg_eigen_check(&p, &st, z) < 1e-10);

        let p = params(&[0.5, 2.0], 0.8);
        let space = FockSpace::truncated(&p, 30).unwrap();
        let z = C64::new(1.5, 0.0);
        let st = bg_state(&p, z, &space, 0.0).unwrap();
        assert!(st.tail_bound < 1e-12);
        assert!(bg_eigen_check(&p, &st, z) < 1e-10);

        let z = C64::new(0.0, 0.0);
        let st = bg_state(&p, z, &space, 0.0).unwrap();
        assert_eq!(bg_eigen_check(&p, &st, z), 0.0);
    }

    #[test]
    fn bg_rejected_in_finite_dimension() {
        let p = params(&[-1.0 / 3.0], 0.0);
        let space = FockSpace::finite(&p).unwrap();
        assert!(matches!(
            bg_state(&p, C64::new(0.5, 0.0), &space, 0.0),
            Err(Error::BgFiniteComplexUndefined(4))
        ));
        // the vacuum is still an eigenvector with eigenvalue zero
        let st = bg_state(&p, C64::new(0.0, 0.0), &space, 0.0).unwrap();
        assert_eq!(st.vector.amplitudes()[0], C64::new(1.0, 0.0));
        assert_eq!(bg_eigen_check(&p, &st, C64::new(0.0, 0.0)), 0.0);
    }

    #[test]
    fn glauber_coincidence_and_divergence() {
        let p = params(&[0.0], 0.6);
        let space = FockSpace::truncated(&p, 16).unwrap();
        let z = C64::new(0.4, -0.3);
        let kp = kp_state(&p, z, &space, 0.0).unwrap();
        let bg = bg_state(&p, z, &space, 0.0).unwrap();
        assert!(kp.vector.sub(&bg.vector).max_abs() < 1e-12);

        let p = params(&[0.5], 0.6);
        let space = FockSpace::truncated(&p, 16).unwrap();
        let z = C64::new(0.5, 0.0);
        let kp = kp_state(&p, z, &space, 0.0).unwrap();
        let bg = bg_state(&p, z, &space, 0.0).unwrap();
        assert!(kp.vector.sub(&bg.vector).max_abs() > 1e-6);
    }

    #[test]
    fn early_stop_controls_tail() {
        let p = params(&[0.0], 0.0);
        let space = FockSpace::truncated(&p, 40).unwrap();
        let st = kp_state(&p, C64::new(0.5, 0.0), &space, 1e-13).unwrap();
        // far components were skipped and the bound is tiny
        assert!(st.tail_bound < 1e-12);
        let full = kp_state(&p, C64::new(0.5, 0.0), &space, 0.0).unwrap();
        assert!(st.vector.sub(&full.vector).norm() < 1e-12);
    }

    #[test]
    fn nonexistence_certificate() {
        let p = params(&[-1.0], 0.0);
        let space = FockSpace::finite(&p).unwrap();
        let cert = bg_finite_nonexistence(&p, &space, 42, 10).unwrap();
        assert_eq!(cert.nilpotency_deviation, 0.0);
        assert_eq!(cert.null_space_dim, 1);
        assert!(cert.min_residual_bound > 1e-3);

        let p = params(&[-1.0 / 3.0], 0.9);
        let space = FockSpace::finite(&p).unwrap();
        let cert = bg_finite_nonexistence(&p, &space, 42, 10).unwrap();
        assert_eq!(cert.nilpotency_deviation, 0.0);
        assert_eq!(cert.null_space_dim, 1);
        assert!(cert.min_residual_bound > 1e-3);
    }

    #[test]
    fn certificate_bound_is_a_true_lower_bound() {
        // cross-check against direct minimization over random unit vectors
        let p = params(&[-0.2], 0.0);
        let space = FockSpace::finite(&p).unwrap();
        let (am, _, _) = build_ladder_ops(&p, &space);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let z = C64::from_polar(rng.gen_range(1.0..2.0), rng.gen_range(-PI..PI));
            let bound = sigma_min_lower_bound(&am, z);
            for _ in 0..200 {
                let v: Vec<C64> = (0..space.size())
                    .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let v = StateVector::from_vec(v).unwrap();
                let nv = v.norm();
                let res = am.apply(&v).sub(&v.scale(z)).norm() / nv;
                assert!(res >= bound * 0.999, "residual {res} below bound {bound}");
            }
        }
    }

    #[test]
    fn grassmann_state_entries() {
        let p = params(&[-1.0], 0.0);
        let space = FockSpace::finite(&p).unwrap();
        let st = grassmann_bg_state(&p, &space);
        assert_eq!(st.entries[0].coeffs()[0], C64::new(1.0, 0.0));
        assert_eq!(st.entries[1].coeffs()[1], C64::new(1.0, 0.0));

        let p = params(&[-1.0 / 3.0], 0.0);
        let space = FockSpace::finite(&p).unwrap();
        let st = grassmann_bg_state(&p, &space);
        // 1/sqrt(F(2)!) = sqrt(3)/2
        assert!((st.entries[2].coeffs()[2].re - 0.866_025_403_784_438_6).abs() < 1e-12);

        let p = params(&[-1.0 / 3.0], 2.4);
        let st = grassmann_bg_state(&p, &space);
        let want = C64::cis(-p.structure_function(2) * 2.4) * 0.866_025_403_784_438_6;
        assert!((st.entries[2].coeffs()[2] - want).norm() < 1e-12);
    }

    #[test]
    fn grassmann_eigen_relation() {
        for (kappas, phi) in [
            (vec![-1.0], 0.0),
            (vec![-1.0 / 3.0], 2.4),
            (vec![-0.2], -1.3),
            (vec![-0.5, 0.75], 0.4),
        ] {
            let p = AlgebraParams::new(kappas, phi).unwrap();
            let space = FockSpace::finite(&p).unwrap();
            let st = grassmann_bg_state(&p, &space);
            let dev = grassmann_eigen_check(&p, &st);
            assert!(dev < 1e-12, "dev = {dev}");
        }

        // the zero state trivially satisfies the relation
        let p = params(&[-1.0], 0.0);
        let space = FockSpace::finite(&p).unwrap();
        let zero = GrassmannState {
            space,
            entries: vec![GrassmannElement::zero(2); 2],
        };
        assert_eq!(grassmann_eigen_check(&p, &zero), 0.0);
    }

    #[test]
    fn grassmann_works_on_truncated_spaces_too() {
        let p = params(&[0.5], 0.7);
        let space = FockSpace::truncated(&p, 6).unwrap();
        let st = grassmann_bg_state(&p, &space);
        assert!(grassmann_eigen_check(&p, &st) < 1e-12);
    }
}
