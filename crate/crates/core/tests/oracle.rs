mod common;

use std::f64::consts::PI;

use common::{fd_diagonal, fd_top_eigenvalues};
use ewape::eigensolver::compute_spectrum;
use ewape::expansion::InitialCondition;
use ewape::linalg::{dense_eig, Matrix};
use ewape::model::presets;
use ewape::oracle::*;
use ewape::{Error, PiecewiseWavenumber, SolverConfig};
use num_complex::Complex64;

fn closed_form_laplacian(c: f64, n: usize) -> Vec<f64> {
    let h = PI / (n + 1) as f64;
    (1..=n).map(|k| c * c - 4.0 / (h * h) * (k as f64 * h / 2.0).sin().powi(2)).collect()
}

#[test]
fn constant_coefficient_spectrum() {
    let pw = PiecewiseWavenumber::constant(1.7).unwrap();
    for n in [3, 10, 63, 200] {
        let got = fd_matrix(&pw, n).eigenvalues().unwrap();
        for (a, b) in got.iter().zip(closed_form_laplacian(1.7, n)) {
            assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()));
        }
    }
    let dense = dense_eig(&fd_matrix(&pw, 63).to_dense()).unwrap();
    for (a, b) in dense.values.iter().zip(closed_form_laplacian(1.7, 63)) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn pointwise_diagonal_follows_alpha_at() {
    let pw = presets::alpha1();
    let n = 9;
    let h = PI / 10.0;
    let t = fd_matrix_with(&pw, n, CoefficientSampling::Pointwise);
    for (i, d) in t.diag.iter().enumerate() {
        let z = (i + 1) as f64 * h;
        let a = pw.alpha_at(z).unwrap();
        assert!((d - (-2.0 / (h * h) + a * a)).abs() < 1e-12);
        assert!(a == 2.0 || a == 1.0);
    }
    assert!(t.off.iter().all(|&e| (e - 1.0 / (h * h)).abs() < 1e-12));
}

#[test]
fn cell_average_matches_independent_build() {
    for pw in [presets::alpha1(), presets::alpha2(), presets::alpha3()] {
        for n in [9, 100, 127] {
            let t = fd_matrix(&pw, n);
            let (d, e) = fd_diagonal(&pw, n);
            for (a, b) in t.diag.iter().zip(&d) {
                assert!((a - b).abs() <= 1e-12 * b.abs());
            }
            assert!(t.off.iter().all(|&o| (o - e).abs() <= 1e-12 * e));
        }
    }
}

#[test]
fn fd_eigenvalues_converge_at_second_order() {
    let pw = presets::alpha1();
    let exact = compute_spectrum(&pw, 20, &SolverConfig::default()).unwrap().modes;
    let levels: Vec<Vec<f64>> = [1023, 2047, 4095]
        .iter()
        .map(|&n| fd_matrix(&pw, n).eigenvalues().unwrap())
        .collect();
    for (j, m) in exact.iter().enumerate() {
        let e0 = (levels[0][j] - m.lambda).abs();
        let e1 = (levels[1][j] - m.lambda).abs();
        let e2 = (levels[2][j] - m.lambda).abs();
        for ratio in [e0 / e1, e1 / e2] {
            assert!((ratio / 4.0 - 1.0).abs() <= 0.2, "j={} ratio {ratio}", j + 1);
        }
    }
}

#[test]
fn library_eigenvalues_match_bisection() {
    for pw in [presets::alpha2(), presets::alpha3()] {
        let t = fd_matrix(&pw, 2047);
        let ours = t.eigenvalues().unwrap();
        let bisect = fd_top_eigenvalues(&pw, 2047, 30);
        // Both are backward stable, so they agree to a multiple of ε‖T‖.
        for (a, b) in ours.iter().zip(&bisect) {
            assert!((a - b).abs() <= 1e-13 * t.norm(), "{a} vs {b}");
        }
    }
}

#[test]
fn dense_eig_examples() {
    let d = [5.0, 2.0, -1.0, -7.5];
    let e = dense_eig(&Matrix::from_diag(&d)).unwrap();
    assert_eq!(e.values, d.to_vec());
    for k in 0..4 {
        for i in 0..4 {
            assert_eq!(e.vector(k)[i].abs(), if i == k { 1.0 } else { 0.0 });
        }
    }

    let a = fd_matrix(&presets::alpha2(), 255).to_dense();
    let e = dense_eig(&a).unwrap();
    assert!(e.orthogonality_defect() <= 1e-9);
    let norm = a.max_abs() * 255.0;
    for k in 0..255 {
        let v = e.vector(k);
        let av = a.matvec(v);
        let res: f64 = av.iter().zip(v).map(|(x, y)| (x - e.values[k] * y).powi(2)).sum::<f64>().sqrt();
        assert!(res <= 1e-9 * norm);
    }
}

#[test]
fn propagator_examples() {
    let e = dense_eig(&Matrix::from_diag(&[4.0])).unwrap();
    for r in [0.0, 0.5, 2.0] {
        assert!((spectral_propagator(&e, r, 1.0)[0] - Complex64::from_polar(1.0, 2.0 * r)).norm() < 1e-15);
    }
    let e = dense_eig(&Matrix::from_diag(&[-9.0])).unwrap();
    assert!((spectral_propagator(&e, 1.0, 1.0)[0] - Complex64::new((-3.0f64).exp(), 0.0)).norm() < 1e-15);

    let e = fd_matrix(&presets::alpha3(), 40).eigen().unwrap();
    let p = spectral_propagator(&e, 0.0, 1.0);
    for i in 0..40 {
        for j in 0..40 {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((p[i * 40 + j] - want).norm() < 1e-12);
        }
    }
}

#[test]
fn propagator_is_unitary_on_propagating_subspace() {
    let e = fd_matrix(&presets::alpha1(), 63).eigen().unwrap();
    let n = 63;
    let p = spectral_propagator(&e, 0.8, 1.0);
    for k in (0..n).filter(|&k| e.values[k] >= 0.0) {
        let q = e.vector(k);
        let image: Vec<Complex64> = (0..n)
            .map(|i| (0..n).map(|j| p[i * n + j] * q[j]).sum())
            .collect();
        let norm: f64 = image.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-10);
    }
}

#[test]
fn reference_examples() {
    // sin(2z) samples are an exact discrete eigenvector with eigenvalue
    // 4 − (4/h²) sin²(h); the reference reproduces them up to that phase.
    let pw = PiecewiseWavenumber::constant(2.0).unwrap();
    let n = 511;
    let h = PI / (n + 1) as f64;
    let mu = 4.0 - 4.0 / (h * h) * h.sin().powi(2);
    let ic = InitialCondition::sine(2).unwrap();
    for r in [0.0, 0.1, 1.0] {
        let sol = reference_solve(&pw, &ic, n, r).unwrap();
        let phase = ewape::expansion::propagator_factor(mu, r, 1.0);
        for (z, u) in grid_points(n).iter().zip(&sol.values) {
            let s = (2.0 * z).sin();
            // An eigenvalue error δ near μ ≈ 0 moves the phase by δ·r/(2√μ).
            assert!((u - phase * s).norm() < 1e-10 + 1e-8 * r, "r={r} z={z} {u} vs {}", phase * s);
            assert!((u.norm() - s.abs()).abs() < 1e-10);
        }
    }

    let ic = InitialCondition::sine(2).unwrap();
    let sol = reference_solve(&presets::alpha1(), &ic, 255, 0.0).unwrap();
    for (z, u) in sol.points().iter().zip(&sol.values) {
        assert!((u - Complex64::new((2.0 * z).sin(), 0.0)).norm() < 1e-12);
    }

    assert!(matches!(
        reference_solve(&presets::alpha1(), &ic, MAX_REFERENCE_N + 1, 0.0),
        Err(Error::ReferenceTooLarge { .. })
    ));
}

#[test]
fn relative_error_examples() {
    let reference = reference_solve(&presets::alpha2(), &InitialCondition::default_characteristic(), 1023, 0.1).unwrap();
    let coarse = restrict(&reference, 127).unwrap();
    assert_eq!(relative_error(&coarse, &reference).unwrap(), 0.0);
    assert_eq!(grid_stride(127, 1023).unwrap(), 8);
    assert_eq!(coarse.values[0], reference.values[7]);

    let ones = GridSolution { n: 255, values: vec![Complex64::new(1.0, 0.0); 255], r: 0.0 };
    let near = GridSolution { n: 127, values: vec![Complex64::new(1.001, 0.0); 127], r: 0.0 };
    assert!((relative_error(&near, &ones).unwrap() - 1e-3).abs() < 1e-12);

    assert_eq!(grid_stride(127, 8191).unwrap(), 64);
    assert!(matches!(grid_stride(200, 8191), Err(Error::IncompatibleGrids { n: 200, n_ref: 8191 })));
}

#[test]
fn positive_counts_are_stable_under_refinement() {
    for pw in [presets::alpha1(), presets::alpha2(), presets::alpha3()] {
        let count = |n: usize| fd_matrix(&pw, n).eigenvalues().unwrap().iter().filter(|&&l| l > 0.0).count();
        assert_eq!(count(2048), count(4096));
    }
}

#[test]
fn inverse_iteration_reference_matches_rotations() {
    let pw = presets::alpha3();
    let t = fd_matrix(&pw, 1100);
    let a = t.eigen().unwrap();
    let b = t.eigen_inverse_iteration().unwrap();
    for (x, y) in a.values.iter().zip(&b.values) {
        assert!((x - y).abs() <= 1e-9 * (1.0 + x.abs()));
    }
    assert!(b.orthogonality_defect() <= 1e-9);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DecompositionCache::new(dir.path()).unwrap();
    let pw = presets::alpha1();
    let fresh = ReferenceSolver::with_cache(&pw, 255, &cache).unwrap();
    assert!(cache.path_for(&pw, 255, CoefficientSampling::CellAverage).exists());
    let loaded = ReferenceSolver::with_cache(&pw, 255, &cache).unwrap();
    assert_eq!(fresh.eigen(), loaded.eigen());
    let ic = InitialCondition::sine(3).unwrap();
    assert_eq!(fresh.solve(&ic, 0.4, 1.0), loaded.solve(&ic, 0.4, 1.0));
}
