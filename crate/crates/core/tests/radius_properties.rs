use std::f64::consts::TAU;

use faer::{Mat, Side};
use num_complex::Complex64;
use proptest::prelude::*;

use numrad::bench::{gen_random_matrix, Field};
use numrad::chebyshev::{cheb_max, compute_radius_cheb, interpolate_h};
use numrad::grid::compute_radius_grid;
use numrad::levelset::{
    compute_radius_lso, compute_radius_lso_detailed, local_maximize, LsoOptions,
};
use numrad::sdp::{check_certificate, compute_radius_sdp_detailed, SdpOptions};
use numrad::spectral::{h_value, radius_bounds};
use numrad::{HermitianMatrix, Matrix};

const TOL: f64 = 1e-14;

fn arb_matrix(max_n: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_n, any::<bool>(), any::<u64>()).prop_map(|(n, real, seed)| {
        let field = if real { Field::Real } else { Field::Complex };
        gen_random_matrix(n, field, seed).unwrap()
    })
}

fn lso(a: &Matrix) -> f64 {
    compute_radius_lso(a, TOL).unwrap().value
}

fn random_unitary(n: usize, seed: u64) -> Mat<Complex64> {
    let g = gen_random_matrix(n, Field::Complex, seed).unwrap();
    let h = HermitianMatrix::symmetrize(g.as_faer());
    h.as_faer()
        .self_adjoint_eigen(Side::Lower)
        .unwrap()
        .U()
        .to_owned()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scale_invariance(a in arb_matrix(8), alpha in 0.01f64..100.0) {
        let r = lso(&a);
        let rs = lso(&a.scale(Complex64::new(alpha, 0.0)));
        prop_assert!((rs - alpha * r).abs() <= 1e-12 * alpha * r.max(1.0), "{} vs {}", rs, alpha * r);
    }

    #[test]
    fn rotation_and_adjoint_invariance(a in arb_matrix(8), phi in 0.0f64..TAU) {
        let r = lso(&a);
        let rot = lso(&a.scale(Complex64::from_polar(1.0, phi)));
        let adj = lso(&a.adjoint());
        prop_assert!((rot - r).abs() <= 1e-12 * r.max(1.0));
        prop_assert!((adj - r).abs() <= 1e-12 * r.max(1.0));
    }

    #[test]
    fn unitary_invariance(a in arb_matrix(8), seed in any::<u64>()) {
        let u = random_unitary(a.n(), seed);
        let r = lso(&a);
        let ru = lso(&a.unitary_similarity(&u).unwrap());
        prop_assert!((ru - r).abs() <= 1e-10 * r.max(1.0), "{} vs {}", ru, r);
    }

    #[test]
    fn sandwich_bounds(a in arb_matrix(8)) {
        let r = lso(&a);
        let (lo, hi) = radius_bounds(&a).unwrap();
        prop_assert!(r >= lo * (1.0 - 1e-12));
        prop_assert!(r <= hi * (1.0 + 1e-12));
    }

    #[test]
    fn matches_grid_on_small_matrices(a in arb_matrix(6)) {
        let r = lso(&a);
        let mut g = compute_radius_grid(&a, 20_000, 1e-13).unwrap().value;
        if (r - g).abs() > 1e-12 * r.max(1.0) {
            g = compute_radius_grid(&a, 200_000, 1e-13).unwrap().value;
        }
        prop_assert!((r - g).abs() <= 1e-12 * r.max(1.0), "lso {} grid {}", r, g);
    }

    #[test]
    fn unseeded_rounds_raise_the_level(a in arb_matrix(8)) {
        let opts = LsoOptions { tol_rel: TOL, eigen_seeds: 0, ..LsoOptions::default() };
        let out = compute_radius_lso_detailed(&a, &opts).unwrap();
        prop_assert!(!out.result.capped);
        for w in out.levels.windows(2) {
            prop_assert!(w[1] > w[0], "{:?}", out.levels);
        }
        if !out.result.degenerate {
            prop_assert!(out.final_crossings.angles.is_empty());
            prop_assert!(out.final_crossings.above.is_empty());
        }
        prop_assert!((out.result.value - lso(&a)).abs() <= 1e-12 * out.result.value.max(1.0));
    }

    #[test]
    fn local_maximize_never_decreases(a in arb_matrix(8), theta0 in 0.0f64..TAU) {
        let h0 = h_value(&a, theta0).unwrap();
        let m = local_maximize(&a, theta0, TOL).unwrap();
        prop_assert!(m.value >= h0);
        prop_assert!((h_value(&a, m.theta).unwrap() - m.value).abs() <= 1e-14 * (1.0 + m.value));
    }

    #[test]
    fn chebyshev_interpolant_is_faithful(a in arb_matrix(6)) {
        let tol = 1e-12;
        let (pieces, _) = interpolate_h(&a, tol).unwrap();
        let (_, sigma) = radius_bounds(&a).unwrap();
        let r = lso(&a);
        for p in &pieces {
            for k in 0..=20 {
                let x = p.a + (p.b - p.a) * k as f64 / 20.0;
                let d = (p.eval(x) - h_value(&a, x).unwrap()).abs();
                prop_assert!(d <= 100.0 * tol * (1.0 + sigma), "{}", d);
            }
            let m = cheb_max(p);
            prop_assert!(m.value <= r + 100.0 * tol * (1.0 + sigma));
        }
        let c = compute_radius_cheb(&a, tol).unwrap().value;
        prop_assert!((c - r).abs() <= 100.0 * tol * (1.0 + sigma));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sdp_certificate_is_sound(a in arb_matrix(5)) {
        let out = compute_radius_sdp_detailed(&a, &SdpOptions::default()).unwrap();
        let c = out.result.value;
        prop_assert!(c >= lso(&a) - 1e-9 * (1.0 + c));
        let margin = check_certificate(&a, c, &out.iterate.z).unwrap();
        prop_assert!(margin >= -1e-9 * (1.0 + c));
        if a.is_real() {
            prop_assert!(out.iterate.z.is_real());
        }
        for w in out.gap_history.windows(2) {
            prop_assert!(w[1] < w[0]);
        }
    }
}
