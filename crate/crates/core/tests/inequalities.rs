use qudit_extremal::inequalities::{
    f_surface, ln_partition, qubit_f_matrix, sigma_x_bound, sigma_x_default_grid, sigma_x_surface, SurfaceGrid,
};
use qudit_extremal::matrix::{eigenvalues, trace_product};
use qudit_extremal::random;
use qudit_extremal::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_pairs_satisfy_every_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for d in 2..=5 {
        for _ in 0..250 {
            let rho = random::density(d, &mut rng);
            let h = random::hermitian(d, &mut rng);
            let r = check_bounds(&rho, &h).unwrap();
            assert!(r.passes.all(), "d={d}: {r:?}");
            assert!((r.relative_entropy - r.slack).abs() < 1e-9);
            // S + <H> <= ln Tr e^H as written
            assert!(r.entropy + r.energy <= ln_partition(&h, -1.0) + 1e-9);
        }
    }
}

#[test]
fn gibbs_state_is_the_equality_case() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for d in 2..=5 {
        for _ in 0..50 {
            let h = random::hermitian(d, &mut rng);
            let g = gibbs_like(&h);
            let r = check_bounds(&g, &h).unwrap();
            assert!(r.slack.abs() <= 1e-9);
            assert!((r.weighted_lhs - r.weighted_rhs).abs() <= 1e-9 * r.weighted_lhs.abs().max(1.0));

            let rho = random::density(d, &mut rng);
            let r = check_bounds(&rho, &h).unwrap();
            let distance = rho.max_abs_diff(&g);
            assert!(distance > 1e-7 && r.slack > 1e-9, "slack {} at distance {distance}", r.slack);
        }
    }
}

#[test]
fn gibbs_qubit_eigenvalues() {
    let (h0, h1, h2, h3) = (1.0_f64, 2f64.sqrt(), std::f64::consts::E, std::f64::consts::PI);
    let h = (h1 * h1 + h2 * h2 + h3 * h3).sqrt();
    let (e_minus, e_plus) = ((h0 - h) / 2.0, (h0 + h) / 2.0);
    let g = eigenvalues(&gibbs_like(&qubit_hamiltonian(h0, h1, h2, h3)));
    let z = e_minus.exp() + e_plus.exp();
    assert!((g[0] - e_minus.exp() / z).abs() < 1e-14);
    assert!((g[1] - e_plus.exp() / z).abs() < 1e-14);
}

#[test]
fn slack_shift_covariant_and_unitarily_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for d in 2..=5 {
        for _ in 0..40 {
            let rho = random::density(d, &mut rng);
            let h = random::hermitian(d, &mut rng);
            let base = check_bounds(&rho, &h).unwrap().slack;
            let shifted = check_bounds(&rho, &h.shifted(3.7)).unwrap().slack;
            assert!((base - shifted).abs() < 1e-10);
            let u = random::unitary(d, &mut rng);
            let rotated = check_bounds(&rho.conjugate_by(&u), &h.conjugate_by(&u)).unwrap().slack;
            assert!((base - rotated).abs() < 1e-10);
        }
    }
}

#[test]
fn weighted_inequality_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for i in 0..500 {
        let d = 2 + i % 4;
        let rho = random::density(d, &mut rng);
        let h = random::hermitian(d, &mut rng);
        let (lhs, rhs) = weighted_terms(&rho, &h).unwrap();
        assert!(lhs >= rhs - 1e-9);
    }
}

#[test]
fn zero_hamiltonian_slack_is_entropy_deficit() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for d in 2..=5 {
        let rho = random::density(d, &mut rng);
        let r = check_bounds(&rho, &HermitianMatrix::zeros(d)).unwrap();
        assert!((r.slack - ((d as f64).ln() - r.entropy)).abs() < 1e-12);
    }
}

#[test]
fn inadmissible_state_rejected() {
    let rho = HermitianMatrix::from_diagonal(&[1.2, -0.2]);
    assert!(matches!(
        check_bounds(&rho, &HermitianMatrix::zeros(2)),
        Err(Error::Inadmissible { .. })
    ));
    assert!(observable_bound(&rho, &HermitianMatrix::zeros(2)).is_err());
}

#[test]
fn closed_f_matches_matrix_path_on_full_grid() {
    let grid = SurfaceGrid::default();
    let surface = f_surface(&grid).unwrap();
    assert_eq!(surface.len(), 121 * 100);
    let mut worst: f64 = 0.0;
    for pt in &surface {
        assert!(pt.f >= 0.0, "F({}, {}) = {}", pt.h, pt.delta, pt.f);
        worst = worst.max((pt.f - qubit_f_matrix(pt.h, pt.delta).unwrap()).abs());
    }
    assert!(worst <= 1e-10, "{worst:e}");
    let min = surface.iter().min_by(|a, b| a.f.total_cmp(&b.f)).unwrap();
    assert_eq!((min.h, min.delta, min.f), (0.0, 0.0, 0.0));
}

#[test]
fn closed_f_single_point() {
    assert!((qubit_f_closed(2.0, 0.0).unwrap() - 1f64.cosh().ln()).abs() < 1e-15);
}

#[test]
fn lower_branch_slack_exceeds_by_delta_h() {
    // Same setting as the closed form but on the lower-energy extremal.
    for (h, delta) in [(1.0, 0.3), (4.0, 0.8)] {
        let ham = qubit_hamiltonian(0.0, 0.0, 0.0, h);
        let sols = qubit_closed_form(&ham, 0.25 * (1.0 - delta * delta)).unwrap();
        let lower = check_bounds(&sols[0].state, &ham).unwrap().slack;
        assert!((lower - qubit_f_closed(h, delta).unwrap() - delta * h).abs() < 1e-12);
    }
}

#[test]
fn observable_bound_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let paulis = [
        qubit_hamiltonian(0.0, 2.0, 0.0, 0.0),
        qubit_hamiltonian(0.0, 0.0, 2.0, 0.0),
        qubit_hamiltonian(0.0, 0.0, 0.0, 2.0),
    ];
    for _ in 0..500 {
        let rho = random::density_any_rank(2, &mut rng);
        for a in &paulis {
            assert!(observable_bound(&rho, a).unwrap() >= -1e-9);
        }
    }
}

#[test]
fn sigma_x_bound_matches_direct_derivation() {
    // ln((e + 1/e)/2) + ln(1 - delta^2)/2 + delta artanh(delta) - <sigma_x>
    let e = std::f64::consts::E;
    for (h2, h3, delta) in [(0.0, 0.0, 0.0), (1.0, -0.5, 0.4), (3.0, 2.0, 0.95)] {
        let h = (0.5_f64 + h2 * h2 + h3 * h3).sqrt();
        let sx = std::f64::consts::FRAC_1_SQRT_2 * delta / h;
        let expected = ((e + 1.0 / e) / 2.0).ln() + 0.5 * (1.0 - delta * delta).ln() + delta * delta.atanh() - sx;
        assert!((sigma_x_bound(h2, h3, delta).unwrap() - expected).abs() < 1e-12);
    }
}

#[test]
fn sigma_x_surface_nonnegative() {
    let rows = sigma_x_surface(&sigma_x_default_grid()).unwrap();
    assert_eq!(rows.len(), 121 * 100);
    assert!(rows.iter().all(|r| r.f_sigma_x >= -1e-9));
}

#[test]
fn surface_grid_validation() {
    let bad = SurfaceGrid {
        delta_max: 1.0,
        ..SurfaceGrid::default()
    };
    assert!(f_surface(&bad).is_err());
    let empty = SurfaceGrid {
        h_points: 0,
        ..SurfaceGrid::default()
    };
    assert!(f_surface(&empty).is_err());
}

#[test]
fn energy_entropy_of_extremal_states() {
    // The extremal energies bracket <H> on the orbit, so the inequality is
    // tightest on the lowest branch for E - S and the highest for E + S.
    let h = bec_hamiltonian(&BecParams::qutrit(0.3, 0.5, -1.0));
    let basis = build_basis(3).unwrap();
    let p = ExtremalProblem::new(h.clone(), basis, PurityConstants::new(vec![0.29, 0.02]).unwrap()).unwrap();
    let sols = solve_extremal(&p, &SolveOptions::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let top = check_bounds(&sols[sols.len() - 1].state, &h).unwrap().slack;
    for _ in 0..100 {
        let rho = random::with_spectrum(&[0.5, 0.4, 0.1], &mut rng);
        let e = trace_product(&rho, &h).unwrap();
        assert!(e <= sols[sols.len() - 1].energy + 1e-10);
        assert!(check_bounds(&rho, &h).unwrap().slack >= top - 1e-10);
    }
}
