//! Certification suites: bundles of report items over one configuration.
//!
//! Each suite is a pure function of its inputs (randomized checks draw from a
//! seeded generator), so identical configurations produce identical reports.
//! Tolerances that the contract pins tighter than the configurable default
//! are fixed constants here.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

use crate::coherent::{
    bg_eigen_check, bg_finite_nonexistence, bg_state, grassmann_bg_state, grassmann_eigen_check,
    kp_exponential_check, kp_state,
};
use crate::error::Result;
use crate::fock::{
    build_ladder_ops, classify, verify_algebra, AlgebraParams, Dimension, FockSpace,
};
use crate::linalg::{Operator, StateVector};
use crate::mub::{canonical_basis, complete_mub_set, quantize_phi, quantized_basis, unbiasedness};
use crate::phase::{
    build_g_op, build_shift_phase_op, build_unitary_phase_op, closure_m, closure_theta,
    eigen_residual, gram_deviation, m_phase_state, mu_phase_state, theta_phase_state,
    time_evolution,
};
use crate::report::{VerificationReport, PROV_DEFINING, PROV_DERIVED};
use crate::twomode::{build_two_mode_ops, verify_two_mode_algebra, TwoModeSpace};

/// Unitarity and entrywise-identity checks are pinned at machine-level
/// precision regardless of the configured tolerance.
pub const TIGHT_TOL: f64 = 1e-12;
/// Structural identities that hold up to a single rounding of a unit modulus.
pub const ULP_TOL: f64 = 1e-15;
/// Quadrature closure tolerance.
pub const QUADRATURE_TOL: f64 = 1e-8;
/// Floor for the finite-dimension nonexistence residual bound.
pub const NONEXISTENCE_FLOOR: f64 = 1e-3;
/// Number of random time draws in temporal-stability checks.
pub const TIME_DRAWS: usize = 20;
/// Number of random `z` draws in the nonexistence certificate.
pub const NONEXISTENCE_DRAWS: usize = 10;

/// Defining relations of the one-mode algebra, plus classification
/// consistency for `r = 1`.
pub fn algebra_suite(
    params: &AlgebraParams,
    size_or_trunc: usize,
    tol: f64,
) -> Result<VerificationReport> {
    let space = FockSpace::for_params(params, size_or_trunc)?;
    let mut report = verify_algebra(params, &space, tol);
    if params.r() == 1 {
        let class = classify(params)?;
        if let (Some(j), Dimension::Finite(d)) = (class.spin_j, class.dimension) {
            report.push(
                "algebra/classification dimension consistency",
                (2.0 * j + 1.0 - d as f64).abs(),
                tol,
                PROV_DERIVED,
            );
        }
    }
    Ok(report)
}

/// Phase-operator suite on the space implied by the parameters.
///
/// Finite spaces certify the unitary operator, its eigenstate family, the
/// polynomial operator and its family; truncated spaces certify the shift
/// form, the continuous family, and the quadrature closure, plus the same
/// unitary completion with the dimension replaced by the truncation order.
pub fn phase_suite(
    params: &AlgebraParams,
    size_or_trunc: usize,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport> {
    let space = FockSpace::for_params(params, size_or_trunc)?;
    let d = space.size();
    let mut report = VerificationReport::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let (am, _, _) = build_ladder_ops(params, &space);
    let sqrt_f = Operator::from_diag_re(
        &space
            .labels()
            .map(|n| params.structure_function(n).sqrt())
            .collect::<Vec<_>>(),
    );

    // unitary completion: defined on both kinds of space
    let eu = build_unitary_phase_op(params, &space);
    report.push(
        "phase/unitary operator unitarity",
        eu.adjoint().dot(&eu).max_abs_diff(&Operator::identity(d)),
        TIGHT_TOL,
        PROV_DEFINING,
    );
    report.push(
        "phase/unitary polar decomposition",
        eu.dot(&sqrt_f).max_abs_diff(&am),
        TIGHT_TOL,
        PROV_DEFINING,
    );

    let m_states: Vec<StateVector> = (0..d)
        .map(|m| m_phase_state(params, m, &space).map(|s| s.vector))
        .collect::<Result<_>>()?;
    let eigen_dev = m_states
        .iter()
        .enumerate()
        .map(|(m, v)| eigen_residual(&eu, v, C64::cis(TAU * m as f64 / d as f64)))
        .fold(0.0, f64::max);
    report.push("phase/unitary eigenstates", eigen_dev, tol, PROV_DEFINING);
    report.push(
        "phase/m-state orthonormality",
        gram_deviation(&m_states),
        tol,
        PROV_DEFINING,
    );
    report.push(
        "phase/m-state closure",
        closure_m(params, &space),
        tol,
        PROV_DEFINING,
    );

    let equi_target = 1.0 / (d as f64).sqrt();
    let equi_dev = m_states
        .iter()
        .flat_map(|v| {
            v.amplitudes()
                .iter()
                .map(|z| (z.norm() - equi_target).abs())
        })
        .fold(0.0, f64::max);
    report.push(
        "phase/m-state equiprobability",
        equi_dev,
        tol,
        PROV_DEFINING,
    );

    // temporal stability: U(t) moves the reference phase
    let mut stability = 0.0f64;
    for _ in 0..TIME_DRAWS {
        let t = rng.gen_range(-5.0..5.0);
        let m = rng.gen_range(0..d);
        let u = time_evolution(params, &space, t);
        let moved = m_phase_state(&params.with_phi(params.phi() + t), m, &space)?.vector;
        stability = stability.max(u.apply(&m_states[m]).sub(&moved).norm());
    }
    report.push(
        "phase/m-state temporal stability",
        stability,
        tol,
        PROV_DEFINING,
    );

    if space.is_finite() {
        let g = build_g_op(params, &space)?;
        let mut g_eigen = 0.0f64;
        let mut mu_stability = 0.0f64;
        for mu in 0..d {
            let st = mu_phase_state(params, mu, &space)?;
            g_eigen = g_eigen.max(eigen_residual(
                &g,
                &st.vector,
                C64::cis(TAU * mu as f64 / d as f64),
            ));
            let t = rng.gen_range(-5.0..5.0);
            let u = time_evolution(params, &space, t);
            let moved = mu_phase_state(&params.with_phi(params.phi() + t), mu, &space)?.vector;
            mu_stability = mu_stability.max(u.apply(&st.vector).sub(&moved).norm());
        }
        report.push("phase/g eigenstates", g_eigen, tol, PROV_DEFINING);
        report.push(
            "phase/mu-state temporal stability",
            mu_stability,
            tol,
            PROV_DEFINING,
        );
    } else {
        let e = build_shift_phase_op(params, &space)?;
        report.push(
            "phase/shift polar decomposition",
            e.dot(&sqrt_f).max_abs_diff(&am),
            TIGHT_TOL,
            PROV_DEFINING,
        );

        let mut left = Operator::identity(d).matrix().clone();
        left[(0, 0)] = C64::new(0.0, 0.0);
        report.push(
            "phase/shift defect left",
            e.adjoint().dot(&e).max_abs_diff(&Operator::from_mat(left)),
            ULP_TOL,
            PROV_DEFINING,
        );
        let mut right = Operator::identity(d).matrix().clone();
        right[(d - 1, d - 1)] = C64::new(0.0, 0.0);
        report.push(
            "phase/shift defect right",
            e.dot(&e.adjoint()).max_abs_diff(&Operator::from_mat(right)),
            ULP_TOL,
            PROV_DERIVED,
        );

        let mut theta_eigen = 0.0f64;
        let mut theta_stability = 0.0f64;
        for _ in 0..TIME_DRAWS {
            let theta = rng.gen_range(-PI..PI);
            let st = theta_phase_state(params, theta, &space);
            let dev = e
                .apply(&st.vector)
                .norm_diff_leading(&st.vector.scale(C64::cis(theta)), d - 1);
            theta_eigen = theta_eigen.max(dev);

            let t = rng.gen_range(-5.0..5.0);
            let u = time_evolution(params, &space, t);
            let moved = theta_phase_state(&params.with_phi(params.phi() + t), theta, &space).vector;
            theta_stability = theta_stability.max(u.apply(&st.vector).sub(&moved).norm());
        }
        report.push(
            "phase/theta eigenstates interior",
            theta_eigen,
            tol,
            PROV_DEFINING,
        );
        report.push(
            "phase/theta temporal stability",
            theta_stability,
            tol,
            PROV_DEFINING,
        );

        report.push(
            "phase/theta quadrature closure",
            closure_theta(params, &space, 4 * d)?,
            QUADRATURE_TOL,
            PROV_DEFINING,
        );
    }

    Ok(report)
}

/// Mutually-unbiased-bases suite in dimension `d`.
pub fn mub_suite(d: usize, tol: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let set = complete_mub_set(d, tol)?;

    report.push(
        "mub/family count",
        (set.family_size() as f64 - (d + 1) as f64).abs(),
        0.5,
        PROV_DEFINING,
    );

    let mut gram_worst = 0.0f64;
    for a in 0..d {
        gram_worst = gram_worst.max(gram_deviation(quantized_basis(d, a)?.vectors()));
    }
    report.push(
        "mub/basis orthonormality",
        gram_worst,
        TIGHT_TOL,
        PROV_DERIVED,
    );

    if set.prime {
        report.push(
            "mub/pairwise unbiasedness",
            set.worst_pair(),
            tol,
            PROV_DEFINING,
        );
    }

    // a = 0 reproduces the ordinary discrete Fourier transform
    let b0 = quantized_basis(d, 0)?;
    let norm = 1.0 / (d as f64).sqrt();
    let mut dft_dev = 0.0f64;
    for (m, v) in b0.vectors().iter().enumerate() {
        for n in 0..d {
            let want = C64::cis(TAU * (n * m) as f64 / d as f64) * norm;
            dft_dev = dft_dev.max((v.amplitudes()[n] - want).norm());
        }
    }
    report.push("mub/ordinary dft at a=0", dft_dev, TIGHT_TOL, PROV_DEFINING);

    // canonical basis is unbiased against every quantized basis
    let canon = canonical_basis(d);
    let mut canon_dev = 0.0f64;
    for a in 0..d {
        canon_dev = canon_dev.max(unbiasedness(&canon, quantized_basis(d, a)?.vectors())?);
    }
    if set.prime {
        report.push("mub/canonical unbiasedness", canon_dev, tol, PROV_DEFINING);
    }

    // quantized vectors coincide with phase states at kappa = -1/(d-1)
    let kappa = -1.0 / (d as f64 - 1.0);
    let mut cross_dev = 0.0f64;
    for a in 0..d {
        let params = AlgebraParams::new(vec![kappa], quantize_phi(d, a)?)?;
        let space = FockSpace::finite(&params)?;
        let basis = quantized_basis(d, a)?;
        for m in 0..d {
            let st = m_phase_state(&params, m, &space)?;
            cross_dev = cross_dev.max(st.vector.sub(&basis.vectors()[m]).max_abs());
        }
    }
    report.push(
        "mub/phase state cross-check",
        cross_dev,
        TIGHT_TOL,
        PROV_DERIVED,
    );

    Ok(report)
}

/// Coherent-state suite on the space implied by the parameters.
///
/// `z` seeds a small evaluation grid: the given point plus scaled copies
/// kept inside the type-I convergence domain where that applies.
pub fn coherent_suite(
    params: &AlgebraParams,
    size_or_trunc: usize,
    z: C64,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport> {
    let space = FockSpace::for_params(params, size_or_trunc)?;
    let mut report = VerificationReport::new();

    let z_grid: Vec<C64> = [1.0, 0.6, 0.25]
        .iter()
        .map(|&s| z * s)
        .chain([C64::new(0.0, 0.0)])
        .collect();

    if space.is_finite() {
        let mut kp_dev = 0.0f64;
        for &zk in &z_grid {
            kp_dev = kp_dev.max(kp_exponential_check(params, zk, &space)?);
        }
        report.push(
            "coherent/kp exponential identity",
            kp_dev,
            tol,
            PROV_DEFINING,
        );

        let cert = bg_finite_nonexistence(params, &space, seed, NONEXISTENCE_DRAWS)?;
        report.push(
            "coherent/bg nilpotency",
            cert.nilpotency_deviation,
            tol,
            PROV_DEFINING,
        );
        report.push(
            "coherent/bg kernel dimension",
            (cert.null_space_dim as f64 - 1.0).abs(),
            0.5,
            PROV_DERIVED,
        );
        // pass iff the certified residual floor clears the pinned threshold
        report.push(
            "coherent/bg nonexistence residual floor",
            (NONEXISTENCE_FLOOR - cert.min_residual_bound).max(0.0),
            f64::MIN_POSITIVE,
            PROV_DEFINING,
        );

        let gst = grassmann_bg_state(params, &space);
        report.push(
            "coherent/grassmann eigenstate",
            grassmann_eigen_check(params, &gst),
            TIGHT_TOL,
            PROV_DEFINING,
        );
    } else {
        // type I exists only for r = 1; surface that as a hard error when the
        // caller explicitly asks for it (see the CLI), but inside the bundled
        // suite simply skip the type-I items for r >= 2.
        if params.r() == 1 {
            let kappa = params.kappas()[0];
            let mut kp_dev = 0.0f64;
            for &zk in &z_grid {
                let inside = kappa <= 0.0 || zk.norm() < 0.999 / kappa.sqrt();
                if inside {
                    kp_dev = kp_dev.max(kp_exponential_check(params, zk, &space)?);
                }
            }
            report.push(
                "coherent/kp exponential identity",
                kp_dev,
                tol,
                PROV_DEFINING,
            );
        }

        let mut bg_dev = 0.0f64;
        for &zk in &z_grid {
            let st = bg_state(params, zk, &space, 0.0)?;
            bg_dev = bg_dev.max(bg_eigen_check(params, &st, zk));
        }
        report.push("coherent/bg eigen residual", bg_dev, tol, PROV_DEFINING);

        if params.kappas().iter().all(|&k| k == 0.0) {
            let mut dev = 0.0f64;
            for &zk in &z_grid {
                let kp = kp_state(params, zk, &space, 0.0)?;
                let bg = bg_state(params, zk, &space, 0.0)?;
                dev = dev.max(kp.vector.sub(&bg.vector).max_abs());
            }
            report.push(
                "coherent/glauber coincidence",
                dev,
                TIGHT_TOL,
                PROV_DEFINING,
            );
        }

        let gst = grassmann_bg_state(params, &space);
        report.push(
            "coherent/grassmann eigenstate",
            grassmann_eigen_check(params, &gst),
            TIGHT_TOL,
            PROV_DEFINING,
        );
    }

    Ok(report)
}

/// Two-mode suite: relations on the finite triangle when `kappa < 0` with
/// `-1/kappa` integral, otherwise on the interior of a cutoff of side `jmax`.
pub fn twomode_suite(kappa: f64, jmax: usize, tol: f64) -> Result<VerificationReport> {
    let space = if kappa < 0.0 && {
        let inv = -1.0 / kappa;
        (inv - inv.round()).abs() <= 1e-12 * inv.round()
    } {
        TwoModeSpace::finite(kappa)?
    } else {
        TwoModeSpace::truncated(jmax)?
    };
    let ops = build_two_mode_ops(kappa, &space)?;
    let mut report = verify_two_mode_algebra(&ops, &space, kappa, tol);
    let j = space.jmax();
    let expected = (j + 1) * (j + 2) / 2;
    report.push(
        "twomode/space size",
        (space.size() as f64 - expected as f64).abs(),
        0.5,
        PROV_DERIVED,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_suite_passes_for_spec_kappas() {
        for (kappas, size) in [
            (vec![0.0], 16),
            (vec![0.5], 16),
            (vec![1.0], 16),
            (vec![-1.0], 2),
            (vec![-0.5], 3),
            (vec![-1.0 / 3.0], 4),
            (vec![0.5, 1.0], 16),
            (vec![-1.0 / 3.0, 0.25], 4),
        ] {
            let p = AlgebraParams::new(kappas.clone(), 0.9).unwrap();
            let report = algebra_suite(&p, size, 1e-10).unwrap();
            assert!(report.all_pass(), "kappas {kappas:?}: {report:?}");
        }
    }

    #[test]
    fn phase_suite_passes_finite_and_truncated() {
        let p = AlgebraParams::new(vec![-0.25], 1.9).unwrap();
        let report = phase_suite(&p, 5, 1e-10, 42).unwrap();
        assert!(report.all_pass(), "{report:?}");

        let p = AlgebraParams::new(vec![0.5], -0.7).unwrap();
        let report = phase_suite(&p, 12, 1e-10, 42).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn mub_suite_passes_for_primes() {
        for d in [2, 3, 5, 7] {
            let report = mub_suite(d, 1e-10).unwrap();
            assert!(report.all_pass(), "d = {d}: {report:?}");
        }
        // non-prime: produced, but without the unbiasedness items
        let report = mub_suite(4, 1e-10).unwrap();
        assert!(report.item("mub/pairwise unbiasedness").is_none());
        assert!(report.item("mub/basis orthonormality").unwrap().pass);
    }

    #[test]
    fn coherent_suite_passes() {
        let p = AlgebraParams::new(vec![-1.0 / 3.0], 0.8).unwrap();
        let report = coherent_suite(&p, 4, C64::new(0.7, 0.2), 1e-10, 42).unwrap();
        assert!(report.all_pass(), "{report:?}");

        let p = AlgebraParams::new(vec![0.0], 0.0).unwrap();
        let report = coherent_suite(&p, 24, C64::new(0.5, -0.4), 1e-10, 42).unwrap();
        assert!(report.all_pass(), "{report:?}");

        let p = AlgebraParams::new(vec![0.25], 0.3).unwrap();
        let report = coherent_suite(&p, 32, C64::new(1.2, 0.0), 1e-10, 42).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn twomode_suite_passes() {
        for kappa in [-1.0, -0.5, -1.0 / 3.0] {
            let report = twomode_suite(kappa, 0, 1e-10).unwrap();
            assert!(report.all_pass(), "kappa = {kappa}: {report:?}");
        }
        for kappa in [0.0, 0.5, 1.0] {
            let report = twomode_suite(kappa, 8, 1e-10).unwrap();
            assert!(report.all_pass(), "kappa = {kappa}: {report:?}");
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let p = AlgebraParams::new(vec![-0.25], 1.1).unwrap();
        let a = phase_suite(&p, 5, 1e-10, 42).unwrap();
        let b = phase_suite(&p, 5, 1e-10, 42).unwrap();
        for (x, y) in a.items.iter().zip(b.items.iter()) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.max_deviation.to_bits(), y.max_deviation.to_bits());
        }
    }
}
