//! The Hermitian family `H(theta) = (e^{i theta} A + e^{-i theta} A^*) / 2`,
//! its largest eigenvalue `h(theta)`, and the spectral bounds every radius
//! method relies on.
//!
//! `h` is the support function of the field of values in direction `theta`,
//! so the numerical radius is its maximum over one period. Everything here
//! goes through dense decompositions; there is no iterative path.

use faer::{Mat, Side};
use num_complex::Complex64;

use crate::error::{NumradError, Result};
use crate::matrix::{HermitianMatrix, Matrix};

/// Relative eigenvalue gap below which `lambda_max` is treated as multiple.
pub const MULTIPLICITY_GAP: f64 = 1e-10;

/// An eigenvalue with a unit eigenvector.
#[derive(Clone, Debug, PartialEq)]
pub struct EigPair {
    pub value: f64,
    pub vector: Vec<Complex64>,
}

/// Value, first and second derivative of `h` at one angle.
///
/// `near_multiple` is raised when the gap between the two largest
/// eigenvalues is below [`MULTIPLICITY_GAP`] relative to `||H||`; the
/// derivatives are then one-sided at best and callers should not trust
/// Newton steps built from them.
#[derive(Clone, Debug)]
pub struct HEval {
    pub theta: f64,
    pub value: f64,
    pub derivative: f64,
    pub curvature: f64,
    pub gap: f64,
    pub near_multiple: bool,
    pub vector: Vec<Complex64>,
}

#[inline]
fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// `H(theta)`, symmetrized so it equals its conjugate transpose exactly.
pub fn build_h_matrix(a: &Matrix, theta: f64) -> HermitianMatrix {
    let z = cis(theta);
    let raw = a.as_faer();
    HermitianMatrix::from_upper(a.n(), |i, j| {
        (z * raw[(i, j)] + z.conj() * raw[(j, i)].conj()) * 0.5
    })
}

/// Makes the first nonzero component real and positive.
fn normalize_phase(v: &mut [Complex64]) {
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return;
    }
    if let Some(first) = v.iter().find(|z| z.norm() > 1e-12 * scale).copied() {
        let phase = first.conj() / first.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

fn hermitian_eigen(h: &HermitianMatrix, theta: f64) -> Result<(Vec<f64>, Mat<Complex64>)> {
    let m = h.dim();
    let evd = h
        .as_faer()
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| NumradError::Eigensolver { theta, n: m })?;
    let values: Vec<f64> = (0..m).map(|k| evd.S()[k].re).collect();
    Ok((values, evd.U().to_owned()))
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(h: &HermitianMatrix) -> Result<Vec<f64>> {
    h.as_faer()
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| NumradError::Decomposition {
            what: "Hermitian eigenvalue decomposition",
            n: h.dim(),
        })
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn lambda_min(h: &HermitianMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(h)?[0])
}

/// `h(theta)` only, without eigenvectors.
pub fn h_value(a: &Matrix, theta: f64) -> Result<f64> {
    let h = build_h_matrix(a, theta);
    let vals = h
        .as_faer()
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| NumradError::Eigensolver { theta, n: a.n() })?;
    Ok(vals[vals.len() - 1])
}

/// Ascending spectrum of `H(theta)`.
pub fn h_spectrum(a: &Matrix, theta: f64) -> Result<Vec<f64>> {
    let h = build_h_matrix(a, theta);
    h.as_faer()
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| NumradError::Eigensolver { theta, n: a.n() })
}

/// `lambda_max(H(theta))` with a unit eigenvector in a fixed phase.
pub fn eval_h(a: &Matrix, theta: f64) -> Result<EigPair> {
    let h = build_h_matrix(a, theta);
    let (values, u) = hermitian_eigen(&h, theta)?;
    let top = values.len() - 1;
    let mut vector: Vec<Complex64> = (0..a.n()).map(|i| u[(i, top)]).collect();
    normalize_phase(&mut vector);
    Ok(EigPair {
        value: values[top],
        vector,
    })
}

/// `v^* A v`
fn rayleigh(a: &Matrix, v: &[Complex64]) -> Complex64 {
    let raw = a.as_faer();
    let n = a.n();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let mut col = Complex64::new(0.0, 0.0);
        for i in 0..n {
            col += v[i].conj() * raw[(i, j)];
        }
        acc += col * v[j];
    }
    acc
}

/// `v^* H'(theta) v` with `H'(theta) = (i e^{i theta} A - i e^{-i theta} A^*) / 2`.
///
/// For a unit eigenvector of a simple `lambda_max` this is `h'(theta)`.
/// Expanding the quadratic form gives `-Im(e^{i theta} v^* A v)`, which is
/// real by construction.
pub fn eval_h_derivative(a: &Matrix, theta: f64, v: &[Complex64]) -> f64 {
    -(cis(theta) * rayleigh(a, v)).im
}

/// `h`, `h'`, `h''` and the top eigenvalue gap at `theta`.
///
/// The curvature uses `H'' = -H` and second-order perturbation theory:
/// `h'' = -h + 2 sum_{j>1} |u_j^* H' v|^2 / (lambda_1 - lambda_j)`.
/// At a genuine eigenvalue crossing it is meaningless; `near_multiple` says so.
pub fn eval_h_full(a: &Matrix, theta: f64) -> Result<HEval> {
    let n = a.n();
    let h = build_h_matrix(a, theta);
    let (values, u) = hermitian_eigen(&h, theta)?;
    let top = n - 1;
    let lambda = values[top];
    let mut vector: Vec<Complex64> = (0..n).map(|i| u[(i, top)]).collect();
    normalize_phase(&mut vector);

    // noise in H(theta) is relative to A, not to H(theta), which can vanish
    let norm = values[0].abs().max(lambda.abs()).max(a.max_abs());
    let gap = if n > 1 {
        lambda - values[top - 1]
    } else {
        f64::INFINITY
    };
    let near_multiple = n > 1 && gap <= MULTIPLICITY_GAP * norm.max(f64::MIN_POSITIVE);

    let derivative = eval_h_derivative(a, theta, &vector);

    // H' v = (i/2) (e^{i theta} A v - e^{-i theta} A^* v)
    let z = cis(theta);
    let raw = a.as_faer();
    let mut hv = vec![Complex64::new(0.0, 0.0); n];
    for (i, out) in hv.iter_mut().enumerate() {
        let mut av = Complex64::new(0.0, 0.0);
        let mut ahv = Complex64::new(0.0, 0.0);
        for j in 0..n {
            av += raw[(i, j)] * vector[j];
            ahv += raw[(j, i)].conj() * vector[j];
        }
        *out = Complex64::new(0.0, 0.5) * (z * av - z.conj() * ahv);
    }
    // eigenvalues clustered with lambda_max are left out of the sum; this is
    // exact when the clustered branches coincide identically
    let cluster_tol = MULTIPLICITY_GAP * norm.max(f64::MIN_POSITIVE);
    let mut curvature = -lambda;
    for k in 0..top {
        if lambda - values[k] <= cluster_tol {
            continue;
        }
        let mut proj = Complex64::new(0.0, 0.0);
        for i in 0..n {
            proj += u[(i, k)].conj() * hv[i];
        }
        curvature += 2.0 * proj.norm_sqr() / (lambda - values[k]);
    }

    Ok(HEval {
        theta,
        value: lambda,
        derivative,
        curvature,
        gap,
        near_multiple,
        vector,
    })
}

/// Largest singular value.
pub fn sigma_max(a: &Matrix) -> Result<f64> {
    let s = a
        .as_faer()
        .singular_values()
        .map_err(|_| NumradError::Decomposition {
            what: "singular value decomposition",
            n: a.n(),
        })?;
    Ok(s.first().copied().unwrap_or(0.0))
}

/// Eigenvalues of a general complex matrix, in solver order.
pub fn eigenvalues(a: &Matrix) -> Result<Vec<Complex64>> {
    if a.is_real() {
        let re = Mat::<f64>::from_fn(a.n(), a.n(), |i, j| a.get(i, j).re);
        re.eigenvalues()
    } else {
        a.as_faer().eigenvalues()
    }
    .map_err(|_| NumradError::Decomposition {
        what: "eigenvalue decomposition",
        n: a.n(),
    })
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(a: &Matrix) -> Result<f64> {
    Ok(eigenvalues(a)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Lower bound `max(rho, sigma_max / 2)` and upper bound `sigma_max` on the radius.
pub fn radius_bounds(a: &Matrix) -> Result<(f64, f64)> {
    let s = sigma_max(a)?;
    let rho = spectral_radius(a)?;
    Ok((rho.max(0.5 * s), s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn jordan() -> Matrix {
        Matrix::shift(2).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn h_matrix_examples() {
        let h = build_h_matrix(&Matrix::identity(2).unwrap(), PI);
        assert!(close(h.get(0, 0), c(-1.0, 0.0), 1e-15));
        assert!(close(h.get(0, 1), c(0.0, 0.0), 0.0));

        let h = build_h_matrix(&jordan(), 0.0);
        assert_eq!(h.get(0, 1), c(0.5, 0.0));
        assert_eq!(h.get(1, 0), c(0.5, 0.0));
        assert_eq!(h.get(0, 0), c(0.0, 0.0));

        let h = build_h_matrix(&jordan(), PI / 2.0);
        assert!(close(h.get(0, 1), c(0.0, 0.5), 1e-16));
        assert!(close(h.get(1, 0), c(0.0, -0.5), 1e-16));
        assert!(h.is_exactly_hermitian());
    }

    #[test]
    fn eval_h_examples() {
        assert!((eval_h(&Matrix::identity(2).unwrap(), 0.0).unwrap().value - 1.0).abs() < 1e-15);
        for theta in [0.0, 0.4, 2.0, 5.5] {
            assert!((eval_h(&jordan(), theta).unwrap().value - 0.5).abs() < 1e-15);
        }
        let d = Matrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!((eval_h(&d, PI / 3.0).unwrap().value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn eigenvector_phase_is_fixed() {
        let a = Matrix::from_row_major(
            2,
            vec![c(1.0, 2.0), c(0.5, -1.0), c(0.3, 0.0), c(-2.0, 1.0)],
        )
        .unwrap();
        let p = eval_h(&a, 1.1).unwrap();
        assert!(p.vector[0].im.abs() < 1e-15 && p.vector[0].re > 0.0);
        let norm: f64 = p.vector.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
        let h = build_h_matrix(&a, 1.1);
        let hv: Vec<Complex64> = (0..2)
            .map(|i| (0..2).map(|j| h.get(i, j) * p.vector[j]).sum())
            .collect();
        let res: f64 = (0..2)
            .map(|i| (hv[i] - p.value * p.vector[i]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(res < 1e-12);
    }

    #[test]
    fn derivative_examples() {
        let e1 = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let i2 = Matrix::identity(2).unwrap();
        assert!((eval_h_derivative(&i2, PI / 2.0, &e1) + 1.0).abs() < 1e-15);

        let p = eval_h(&jordan(), 0.3).unwrap();
        assert!(eval_h_derivative(&jordan(), 0.3, &p.vector).abs() < 1e-15);

        let d = Matrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!((eval_h_derivative(&d, 0.2, &e1) + 0.2f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn curvature_matches_second_difference() {
        let a = Matrix::from_row_major(
            3,
            vec![
                c(0.3, 1.0),
                c(-1.2, 0.4),
                c(0.7, 0.0),
                c(2.0, -0.5),
                c(0.1, 0.2),
                c(-0.9, 1.5),
                c(0.0, 0.8),
                c(1.1, -0.3),
                c(-0.4, -0.6),
            ],
        )
        .unwrap();
        let theta = 0.77;
        let f = eval_h_full(&a, theta).unwrap();
        assert!(!f.near_multiple);
        let d = 1e-4;
        let fp = h_value(&a, theta + d).unwrap();
        let fm = h_value(&a, theta - d).unwrap();
        let fd2 = (fp - 2.0 * f.value + fm) / (d * d);
        assert!(
            (f.curvature - fd2).abs() < 1e-5 * (1.0 + fd2.abs()),
            "{} vs {}",
            f.curvature,
            fd2
        );
    }

    #[test]
    fn jordan_block_is_flagged_multiple_nowhere() {
        // eigenvalues of H are +-1/2, gap 1: simple everywhere
        let f = eval_h_full(&jordan(), 1.0).unwrap();
        assert!(!f.near_multiple);
        assert!((f.curvature).abs() < 1e-14);
        // diag(1,-1) at pi/2: H = 0, double eigenvalue
        let d = Matrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let f = eval_h_full(&d, PI / 2.0).unwrap();
        assert!(f.near_multiple);
    }

    #[test]
    fn sigma_and_rho_examples() {
        let j = jordan();
        assert!((sigma_max(&j).unwrap() - 1.0).abs() < 1e-15);
        assert!(spectral_radius(&j).unwrap().abs() < 1e-15);

        let a = Matrix::identity(4).unwrap().scale(c(3.0, 0.0));
        assert!((sigma_max(&a).unwrap() - 3.0).abs() < 1e-14);
        assert!((spectral_radius(&a).unwrap() - 3.0).abs() < 1e-14);

        let a = Matrix::diagonal(&[c(0.0, 2.0), c(1.0, 0.0)]).unwrap();
        assert!((sigma_max(&a).unwrap() - 2.0).abs() < 1e-14);
        assert!((spectral_radius(&a).unwrap() - 2.0).abs() < 1e-14);
    }
}
