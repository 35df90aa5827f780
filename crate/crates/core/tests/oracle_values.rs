use std::f64::consts::{PI, TAU};

use numrad::bench::{gen_random_matrix, run_benchmark, BenchConfig, Field, Status};
use numrad::chebyshev::{cheb_max, compute_radius_cheb, interpolate_h, DEFAULT_TOL};
use numrad::grid::golden_section_max;
use numrad::levelset::{compute_radius_lso, local_maximize};
use numrad::sdp::{check_certificate, compute_radius_sdp, compute_radius_sdp_detailed, SdpOptions};
use numrad::spectral::{h_value, sigma_max};
use numrad::{Matrix, Method};

/// Grid oracle (200000 points, golden-section polish) for
/// `gen_random_matrix(10, Real, 10)`.
const REAL10_SEED10: f64 = 4.460_279_194_636_114_22e0;
/// Same oracle for `gen_random_matrix(6, Complex, 2024)`.
const COMPLEX6_SEED2024: f64 = 4.813_702_335_357_336_71e0;

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1.0)
}

#[test]
fn shift_matrices() {
    for n in 2..=10 {
        let s = Matrix::shift(n).unwrap();
        let expected = (PI / (n as f64 + 1.0)).cos();
        assert!(
            rel(compute_radius_lso(&s, 1e-14).unwrap().value, expected) <= 1e-12,
            "n = {n}"
        );
        assert!(
            rel(
                compute_radius_cheb(&s, DEFAULT_TOL).unwrap().value,
                expected
            ) <= 1e-12,
            "n = {n}"
        );
    }
}

#[test]
fn seeded_real_matrix() {
    let a = gen_random_matrix(10, Field::Real, 10).unwrap();
    let l = compute_radius_lso(&a, 1e-14).unwrap();
    let c = compute_radius_cheb(&a, DEFAULT_TOL).unwrap();
    assert!(rel(l.value, REAL10_SEED10) <= 1e-12, "{}", l.value);
    assert!(rel(c.value, REAL10_SEED10) <= 1e-12, "{}", c.value);

    let sigma = sigma_max(&a).unwrap();
    let (pieces, _) = interpolate_h(&a, DEFAULT_TOL).unwrap();
    let mut worst: f64 = 0.0;
    for k in 0..1000 {
        let theta = TAU * k as f64 / 1000.0;
        let p = pieces
            .iter()
            .find(|p| theta >= p.a && theta <= p.b)
            .unwrap();
        worst = worst.max((p.eval(theta) - h_value(&a, theta).unwrap()).abs());
    }
    assert!(worst <= 1e-12 * (1.0 + sigma), "{worst}");
    let best = pieces
        .iter()
        .map(|p| cheb_max(p).value)
        .fold(f64::NEG_INFINITY, f64::max);
    assert!(rel(best, l.value) <= 1e-13);
}

#[test]
fn seeded_complex_matrix() {
    let a = gen_random_matrix(6, Field::Complex, 2024).unwrap();
    let l = compute_radius_lso(&a, 1e-14).unwrap();
    assert!(rel(l.value, COMPLEX6_SEED2024) <= 1e-12, "{}", l.value);
    assert!((l.theta_star - 5.314_769_309_905_502).abs() <= 1e-6);
}

#[test]
fn sdp_on_a_real_matrix() {
    let a = gen_random_matrix(8, Field::Real, 3).unwrap();
    let s = compute_radius_sdp(&a, 1e-8).unwrap().value;
    let l = compute_radius_lso(&a, 1e-14).unwrap().value;
    assert!(rel(s, l) <= 1e-7, "{s} vs {l}");
}

#[test]
fn sdp_certificate_is_tight() {
    let a = gen_random_matrix(6, Field::Complex, 5).unwrap();
    let out = compute_radius_sdp_detailed(&a, &SdpOptions::default()).unwrap();
    let c = out.result.value;
    let margin = check_certificate(&a, c, &out.iterate.z).unwrap();
    assert!(margin >= -1e-9 * (1.0 + c) && margin <= 1e-6, "{margin}");
}

#[test]
fn local_maximize_agrees_with_golden_section() {
    let a = gen_random_matrix(10, Field::Complex, 77).unwrap();
    let theta0 = 1.0;
    let m = local_maximize(&a, theta0, 1e-14).unwrap();
    // refine the same basin independently
    let (_, g, _) =
        golden_section_max(|t| h_value(&a, t), m.theta - 0.05, m.theta + 0.05, 1e-10).unwrap();
    assert!(rel(m.value, g) <= 1e-12, "{} vs {g}", m.value);
    assert!(m.value >= h_value(&a, theta0).unwrap());
}

#[test]
fn level_set_and_chebyshev_agree() {
    for (field, seed) in [(Field::Real, 1), (Field::Complex, 2)] {
        let a = gen_random_matrix(20, field, seed).unwrap();
        let l = compute_radius_lso(&a, 1e-14).unwrap().value;
        let c = compute_radius_cheb(&a, DEFAULT_TOL).unwrap().value;
        assert!(rel(l, c) <= 1e-12, "{field}: {l} vs {c}");
    }
}

#[test]
fn tiny_benchmark() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = BenchConfig::new(
        vec![2],
        vec![Field::Real],
        vec![Method::Lso, Method::Grid],
        7,
        dir.path().to_path_buf(),
    );
    config.trials = 2;
    let records = run_benchmark(&config).unwrap();
    assert_eq!(records.len(), 2);
    assert!(records.iter().all(|r| r.status == Status::Ok));
    let v: Vec<f64> = records.iter().map(|r| r.radius_value.unwrap()).collect();
    assert!(rel(v[0], v[1]) <= 1e-10);
}
