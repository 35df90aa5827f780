//! Numerical radius from its semidefinite characterization
//!
//! ```text
//!   r(A) = min { c : [ cI + Z    A   ]  is positive semidefinite,  Z Hermitian }
//!                    [  A^*    cI - Z ]
//! ```
//!
//! solved by a plain path-following log-det barrier method. For increasing
//! `t` the barrier objective `t c - log det M(c, Z)` is minimized by damped
//! Newton steps in the real coordinates of `(c, Z)`; on the central path the
//! suboptimality of `c` is at most `2n / t`. Real input restricts `Z` to be
//! real symmetric, which shrinks the variable count from `n^2 + 1` to
//! `n(n+1)/2 + 1`.
//!
//! The Hessian is assembled densely and factored directly, so cost grows
//! like `n^6` per Newton step. Inputs above [`MAX_SDP_DIM`] are rejected.

use std::f64::consts::FRAC_1_SQRT_2;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use faer::linalg::solvers::Solve;
use faer::{Mat, Side};
use num_complex::Complex64;

use crate::error::{NumradError, Result};
use crate::matrix::{HermitianMatrix, Matrix};
use crate::result::{wrap_angle, Method, RadiusResult};
use crate::spectral::{lambda_min, sigma_max};

pub const MAX_SDP_DIM: usize = 50;
pub const DEFAULT_TOL: f64 = 1e-8;
/// Barrier parameter growth per outer iteration.
pub const T_FACTOR: f64 = 10.0;
/// Inner loop stops once `lambda^2 / 2` falls below this.
pub const DECREMENT_TOL: f64 = 1e-8;
pub const MAX_NEWTON_STEPS: usize = 500;
pub const MAX_HALVINGS: usize = 60;
const ARMIJO: f64 = 0.25;

/// One element of the orthonormal Hermitian basis, as at most two
/// `(row, col, coefficient)` entries.
type BasisElement = Vec<(usize, usize, Complex64)>;

/// Orthonormal basis of the admissible `Z`: diagonal units, symmetric pairs
/// `(e_i e_j^T + e_j e_i^T)/sqrt 2` and, unless `real`, antisymmetric pairs
/// `i (e_i e_j^T - e_j e_i^T)/sqrt 2`.
fn hermitian_basis(n: usize, real: bool) -> Vec<BasisElement> {
    let mut basis = Vec::with_capacity(if real { n * (n + 1) / 2 } else { n * n });
    for i in 0..n {
        basis.push(vec![(i, i, Complex64::new(1.0, 0.0))]);
    }
    for i in 0..n {
        for j in i + 1..n {
            let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
            basis.push(vec![(i, j, s), (j, i, s)]);
        }
    }
    if !real {
        for i in 0..n {
            for j in i + 1..n {
                let s = Complex64::new(0.0, FRAC_1_SQRT_2);
                basis.push(vec![(i, j, s), (j, i, -s)]);
            }
        }
    }
    basis
}

/// Number of real unknowns `(c, Z)` for this input.
pub fn variable_count(a: &Matrix) -> usize {
    let n = a.n();
    1 + if a.is_real() { n * (n + 1) / 2 } else { n * n }
}

/// `(c, Z, t)` together with its feasibility margin and gap bound.
#[derive(Clone, Debug)]
pub struct SdpIterate {
    pub c: f64,
    pub z: HermitianMatrix,
    pub t: f64,
    /// `lambda_min(M(c, Z))`
    pub feas_margin: f64,
    /// `2n / t`
    pub gap_bound: f64,
}

/// One Newton step of the barrier method.
#[derive(Clone, Debug, PartialEq)]
pub struct SdpTraceRow {
    pub newton_step: usize,
    pub outer: usize,
    pub t: f64,
    pub c: f64,
    pub decrement: f64,
    pub gap_bound: f64,
}

#[derive(Clone, Debug)]
pub struct SdpOptions {
    pub tol: f64,
    pub trace: bool,
    pub max_dim: usize,
}

impl Default for SdpOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            trace: false,
            max_dim: MAX_SDP_DIM,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SdpOutcome {
    pub result: RadiusResult,
    /// Final iterate; `(c, Z)` is the certificate.
    pub iterate: SdpIterate,
    pub outer_iterations: usize,
    pub newton_steps: usize,
    /// Gap bound after each outer iteration.
    pub gap_history: Vec<f64>,
    pub trace: Vec<SdpTraceRow>,
}

/// `[[cI + Z, A], [A^*, cI - Z]]`
pub fn assemble_block_matrix(c: f64, z: &HermitianMatrix, a: &Matrix) -> Result<HermitianMatrix> {
    let n = a.n();
    if z.dim() != n {
        return Err(NumradError::DimensionMismatch {
            expected: n,
            got: z.dim(),
        });
    }
    let raw = a.as_faer();
    Ok(HermitianMatrix::from_upper(2 * n, |i, j| {
        match (i < n, j < n) {
            (true, true) => z.get(i, j) + if i == j { c } else { 0.0 },
            (true, false) => raw[(i, j - n)],
            (false, false) => -z.get(i - n, j - n) + if i == j { c } else { 0.0 },
            // lower-left block is filled by conjugation
            (false, true) => Complex64::new(0.0, 0.0),
        }
    }))
}

/// `lambda_min` of the block matrix; nonnegative means `c >= r(A)` is certified.
pub fn check_certificate(a: &Matrix, c: f64, z: &HermitianMatrix) -> Result<f64> {
    lambda_min(&assemble_block_matrix(c, z, a)?)
}

/// Maximizing angle read off the near-null vector `[x; y]` of the block
/// matrix: at the optimum `y = -e^{i theta} x`.
pub fn certificate_angle(a: &Matrix, c: f64, z: &HermitianMatrix) -> Result<f64> {
    let n = a.n();
    let m = assemble_block_matrix(c, z, a)?;
    let evd =
        m.as_faer()
            .self_adjoint_eigen(Side::Lower)
            .map_err(|_| NumradError::Eigensolver {
                theta: 0.0,
                n: 2 * n,
            })?;
    let w = evd.U();
    let p: Complex64 = (0..n).map(|i| -w[(i, 0)].conj() * w[(n + i, 0)]).sum();
    if p.norm() <= 1e-12 {
        return Ok(0.0);
    }
    Ok(wrap_angle(p.arg()))
}

/// Strictly feasible start: `Z = 0` and `c` just above `sigma_max(A)`.
pub fn initial_point(a: &Matrix) -> Result<SdpIterate> {
    let s = sigma_max(a)?;
    let eps0 = 1e-8 * (1.0 + s);
    let c = s * (1.0 + 1e-2) + eps0;
    let z = HermitianMatrix::zeros(a.n());
    let t = 1.0 / (1.0 + s);
    let feas_margin = check_certificate(a, c, &z)?;
    Ok(SdpIterate {
        c,
        z,
        t,
        feas_margin,
        gap_bound: 2.0 * a.n() as f64 / t,
    })
}

fn z_from_coords(n: usize, basis: &[BasisElement], coords: &[f64]) -> HermitianMatrix {
    let mut raw = Mat::<Complex64>::zeros(n, n);
    for (e, &x) in basis.iter().zip(coords) {
        for &(r, c, alpha) in e {
            raw[(r, c)] += alpha * x;
        }
    }
    HermitianMatrix::symmetrize(&raw)
}

/// Cholesky-based `(W = M^{-1}, log det M)`, or `None` if `M` is not positive definite.
fn inverse_and_logdet(m: &HermitianMatrix) -> Option<(Vec<Complex64>, f64)> {
    let dim = m.dim();
    let llt = m.as_faer().llt(Side::Lower).ok()?;
    let l = llt.L();
    let mut logdet = 0.0;
    for i in 0..dim {
        let d = l[(i, i)].re;
        if !(d > 0.0) || !d.is_finite() {
            return None;
        }
        logdet += 2.0 * d.ln();
    }
    let inv = llt.solve(Mat::<Complex64>::identity(dim, dim));
    let mut w = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            // symmetrize the computed inverse
            w[i * dim + j] = (inv[(i, j)] + inv[(j, i)].conj()) * 0.5;
        }
    }
    Some((w, logdet))
}

fn logdet(m: &HermitianMatrix) -> Option<f64> {
    let llt = m.as_faer().llt(Side::Lower).ok()?;
    let l = llt.L();
    let mut acc = 0.0;
    for i in 0..m.dim() {
        let d = l[(i, i)].re;
        if !(d > 0.0) || !d.is_finite() {
            return None;
        }
        acc += 2.0 * d.ln();
    }
    Some(acc)
}

struct NewtonSystem {
    grad: Vec<f64>,
    hess: Mat<f64>,
}

/// Gradient and Hessian of `t c - log det M` at the point whose inverse
/// block matrix is `w` (row-major, `2n x 2n`).
fn newton_system(n: usize, t: f64, w: &[Complex64], basis: &[BasisElement]) -> NewtonSystem {
    let dim = 2 * n;
    let at = |i: usize, j: usize| w[i * dim + j];
    let m = basis.len() + 1;

    // W^2
    let mut w2 = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let wik = at(i, k);
            for j in 0..dim {
                w2[i * dim + j] += wik * at(k, j);
            }
        }
    }

    let mut grad = vec![0.0; m];
    let trace_w: f64 = (0..dim).map(|i| at(i, i).re).sum();
    grad[0] = t - trace_w;

    let mut hess = Mat::<f64>::zeros(m, m);
    hess[(0, 0)] = w.iter().map(|z| z.norm_sqr()).sum();

    for (k, e) in basis.iter().enumerate() {
        let mut gk = Complex64::new(0.0, 0.0);
        let mut h0k = Complex64::new(0.0, 0.0);
        for &(r, c, alpha) in e {
            gk += alpha * (at(c, r) - at(n + c, n + r));
            h0k += alpha * (w2[c * dim + r] - w2[(n + c) * dim + n + r]);
        }
        grad[k + 1] = -gk.re;
        hess[(0, k + 1)] = h0k.re;
        hess[(k + 1, 0)] = h0k.re;
    }

    // tr(W D_j W D_k) with D = diag(E, -E), expanded over elementary matrices
    for (j, ej) in basis.iter().enumerate() {
        for (k, ek) in basis.iter().enumerate().skip(j) {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(r1, c1, a1) in ej {
                for &(r2, c2, a2) in ek {
                    let g = at(c2, r1) * at(c1, r2)
                        - at(c2, n + r1) * at(n + c1, r2)
                        - at(n + c2, r1) * at(c1, n + r2)
                        + at(n + c2, n + r1) * at(n + c1, n + r2);
                    acc += a1 * a2 * g;
                }
            }
            hess[(j + 1, k + 1)] = acc.re;
            hess[(k + 1, j + 1)] = acc.re;
        }
    }
    NewtonSystem { grad, hess }
}

/// Solves `H d = -g` by Cholesky, with a diagonal shift if `H` is numerically indefinite.
fn newton_direction(sys: &NewtonSystem) -> Option<Vec<f64>> {
    let m = sys.grad.len();
    let rhs = Mat::<f64>::from_fn(m, 1, |i, _| -sys.grad[i]);
    let max_diag = (0..m).map(|i| sys.hess[(i, i)].abs()).fold(0.0, f64::max);
    let mut shift = 0.0;
    for _ in 0..8 {
        let mut h = sys.hess.clone();
        for i in 0..m {
            h[(i, i)] += shift;
        }
        if let Ok(llt) = h.llt(Side::Lower) {
            let d = llt.solve(&rhs);
            let v: Vec<f64> = (0..m).map(|i| d[(i, 0)]).collect();
            if v.iter().all(|x| x.is_finite()) {
                return Some(v);
            }
        }
        shift = if shift == 0.0 {
            1e-14 * max_diag
        } else {
            shift * 100.0
        };
    }
    None
}

/// Numerical radius from the SDP characterization with default options.
pub fn compute_radius_sdp(a: &Matrix, tol: f64) -> Result<RadiusResult> {
    let opts = SdpOptions {
        tol,
        ..SdpOptions::default()
    };
    Ok(compute_radius_sdp_detailed(a, &opts)?.result)
}

pub fn compute_radius_sdp_detailed(a: &Matrix, opts: &SdpOptions) -> Result<SdpOutcome> {
    let n = a.n();
    if n > opts.max_dim {
        return Err(NumradError::SdpSizeLimit {
            n,
            limit: opts.max_dim,
        });
    }
    if !(opts.tol > 1e-12 && opts.tol < 1e-2) {
        return Err(NumradError::InvalidArgument(format!(
            "SDP tol must lie in (1e-12, 1e-2), got {}",
            opts.tol
        )));
    }
    let start = Instant::now();
    if a.max_abs() == 0.0 {
        // c = 0, Z = 0 makes M = 0, which is feasible and optimal
        let iterate = SdpIterate {
            c: 0.0,
            z: HermitianMatrix::zeros(n),
            t: f64::INFINITY,
            feas_margin: 0.0,
            gap_bound: 0.0,
        };
        return Ok(SdpOutcome {
            result: RadiusResult {
                value: 0.0,
                theta_star: 0.0,
                method: Method::Sdp,
                iterations: 0,
                h_evals: 0,
                wall_seconds: start.elapsed().as_secs_f64(),
                degenerate: false,
                capped: false,
            },
            iterate,
            outer_iterations: 0,
            newton_steps: 0,
            gap_history: Vec::new(),
            trace: Vec::new(),
        });
    }
    let basis = hermitian_basis(n, a.is_real());
    let init = initial_point(a)?;

    let mut c = init.c;
    let mut coords = vec![0.0; basis.len()];
    let mut t = init.t;
    let mut newton_steps = 0usize;
    let mut outer = 0usize;
    let mut gap_history = Vec::new();
    let mut trace = Vec::new();
    let barrier_dim = 2.0 * n as f64;

    loop {
        outer += 1;
        // centering
        loop {
            let z = z_from_coords(n, &basis, &coords);
            let m = assemble_block_matrix(c, &z, a)?;
            let (w, ld) =
                inverse_and_logdet(&m).ok_or(NumradError::SdpLineSearch { halvings: 0 })?;
            let sys = newton_system(n, t, &w, &basis);
            let dir = newton_direction(&sys).ok_or(NumradError::Decomposition {
                what: "barrier Hessian factorization",
                n: sys.grad.len(),
            })?;
            let slope: f64 = sys.grad.iter().zip(&dir).map(|(g, d)| g * d).sum();
            let decrement = -slope;
            newton_steps += 1;
            if opts.trace {
                trace.push(SdpTraceRow {
                    newton_step: newton_steps,
                    outer,
                    t,
                    c,
                    decrement,
                    gap_bound: barrier_dim / t,
                });
            }
            if decrement / 2.0 <= DECREMENT_TOL {
                break;
            }
            if newton_steps >= MAX_NEWTON_STEPS {
                return Err(NumradError::SdpIterationCap {
                    cap: MAX_NEWTON_STEPS,
                    best_c: c,
                    gap_bound: barrier_dim / t,
                });
            }

            let mut step = 1.0;
            let mut halvings = 0;
            loop {
                let c_new = c + step * dir[0];
                let coords_new: Vec<f64> = coords
                    .iter()
                    .zip(&dir[1..])
                    .map(|(x, d)| x + step * d)
                    .collect();
                let z_new = z_from_coords(n, &basis, &coords_new);
                let m_new = assemble_block_matrix(c_new, &z_new, a)?;
                if let Some(ld_new) = logdet(&m_new) {
                    // change in t c - log det M, formed without cancellation
                    let delta = t * (c_new - c) - (ld_new - ld);
                    if delta <= ARMIJO * step * slope || step * step * decrement < 1e-20 {
                        c = c_new;
                        coords = coords_new;
                        break;
                    }
                }
                step *= 0.5;
                halvings += 1;
                if halvings > MAX_HALVINGS {
                    return Err(NumradError::SdpLineSearch { halvings });
                }
            }
        }

        let gap = barrier_dim / t;
        gap_history.push(gap);
        if gap <= opts.tol * (1.0 + c.abs()) {
            break;
        }
        t *= T_FACTOR;
    }

    let z = z_from_coords(n, &basis, &coords);
    let feas_margin = check_certificate(a, c, &z)?;
    let theta_star = certificate_angle(a, c, &z)?;
    let iterate = SdpIterate {
        c,
        z,
        t,
        feas_margin,
        gap_bound: barrier_dim / t,
    };
    Ok(SdpOutcome {
        result: RadiusResult {
            value: c,
            theta_star,
            method: Method::Sdp,
            iterations: newton_steps,
            h_evals: 0,
            wall_seconds: start.elapsed().as_secs_f64(),
            degenerate: false,
            capped: false,
        },
        iterate,
        outer_iterations: outer,
        newton_steps,
        gap_history,
        trace,
    })
}

/// Writes the Newton trace as CSV with header `newton_step,outer,t,c,decrement,gap_bound`.
pub fn write_trace_csv(rows: &[SdpTraceRow], path: &Path) -> Result<()> {
    let io = |source| NumradError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut f = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    writeln!(f, "newton_step,outer,t,c,decrement,gap_bound").map_err(io)?;
    for r in rows {
        writeln!(
            f,
            "{},{},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.newton_step, r.outer, r.t, r.c, r.decrement, r.gap_bound
        )
        .map_err(io)?;
    }
    f.flush().map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basis_is_orthonormal() {
        let n = 3;
        for real in [true, false] {
            let b = hermitian_basis(n, real);
            assert_eq!(b.len(), if real { 6 } else { 9 });
            let dense: Vec<Mat<Complex64>> = b
                .iter()
                .map(|e| {
                    let mut m = Mat::<Complex64>::zeros(n, n);
                    for &(r, c, a) in e {
                        m[(r, c)] += a;
                    }
                    m
                })
                .collect();
            for (p, x) in dense.iter().enumerate() {
                for (q, y) in dense.iter().enumerate() {
                    let mut ip = c(0.0, 0.0);
                    for i in 0..n {
                        for j in 0..n {
                            ip += x[(i, j)].conj() * y[(i, j)];
                            // Hermitian
                            assert_eq!(x[(i, j)], x[(j, i)].conj());
                        }
                    }
                    let want = if p == q { 1.0 } else { 0.0 };
                    assert!((ip - c(want, 0.0)).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn block_matrix_examples() {
        let z0 = HermitianMatrix::zeros(2);
        let m = assemble_block_matrix(1.0, &z0, &Matrix::zeros(2).unwrap()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.get(i, j), c(if i == j { 1.0 } else { 0.0 }, 0.0));
            }
        }
        let z = HermitianMatrix::from_upper(2, |i, j| {
            if i == j {
                c(if i == 0 { 1.0 } else { -1.0 }, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let m = assemble_block_matrix(0.0, &z, &Matrix::zeros(2).unwrap()).unwrap();
        let d: Vec<f64> = (0..4).map(|i| m.get(i, i).re).collect();
        assert_eq!(d, vec![1.0, -1.0, -1.0, 1.0]);

        let a =
            Matrix::from_row_major(2, vec![c(1.0, 2.0), c(3.0, 0.0), c(0.0, -1.0), c(4.0, 0.0)])
                .unwrap();
        let m = assemble_block_matrix(0.0, &HermitianMatrix::zeros(2), &a).unwrap();
        assert_eq!(m.get(0, 2), a.get(0, 0));
        assert_eq!(m.get(1, 2), a.get(1, 0));
        assert_eq!(m.get(2, 1), a.get(1, 0).conj());
        assert!(m.is_exactly_hermitian());

        assert!(assemble_block_matrix(0.0, &HermitianMatrix::zeros(3), &a).is_err());
    }

    #[test]
    fn initial_points() {
        let p = initial_point(&Matrix::zeros(3).unwrap()).unwrap();
        assert!((p.c - 1e-8).abs() < 1e-20);
        assert!(p.feas_margin > 0.0);

        let p = initial_point(&Matrix::shift(2).unwrap()).unwrap();
        assert!((p.c - (1.01 + 2e-8)).abs() < 1e-15);
        assert!(p.feas_margin > 0.0);
        assert_eq!(p.gap_bound, 4.0 / p.t);

        let a = Matrix::identity(2).unwrap().scale(c(5.0, 0.0));
        let p = initial_point(&a).unwrap();
        assert!((p.c - 5.05).abs() < 1e-6);
        assert!(p.feas_margin > 0.0);
    }

    #[test]
    fn certificate_examples() {
        let a = Matrix::identity(2).unwrap();
        let l = check_certificate(&a, 0.0, &HermitianMatrix::zeros(2)).unwrap();
        assert!((l + 1.0).abs() < 1e-15);
        let l = check_certificate(&a, 2.0, &HermitianMatrix::zeros(2)).unwrap();
        assert!(l > 0.0);
    }

    #[test]
    fn gradient_and_hessian_match_finite_differences() {
        let a = Matrix::from_row_major(
            2,
            vec![c(0.4, 0.1), c(-0.3, 0.7), c(0.2, -0.5), c(0.9, 0.3)],
        )
        .unwrap();
        let n = 2;
        let basis = hermitian_basis(n, false);
        let t = 3.0;
        let x0: Vec<f64> = vec![2.5, 0.1, -0.2, 0.05, 0.3];
        let phi = |x: &[f64]| -> f64 {
            let z = z_from_coords(n, &basis, &x[1..]);
            let m = assemble_block_matrix(x[0], &z, &a).unwrap();
            t * x[0] - logdet(&m).unwrap()
        };
        let z = z_from_coords(n, &basis, &x0[1..]);
        let m = assemble_block_matrix(x0[0], &z, &a).unwrap();
        let (w, _) = inverse_and_logdet(&m).unwrap();
        let sys = newton_system(n, t, &w, &basis);
        let h = 1e-5;
        for i in 0..x0.len() {
            let mut xp = x0.clone();
            let mut xm = x0.clone();
            xp[i] += h;
            xm[i] -= h;
            let fd = (phi(&xp) - phi(&xm)) / (2.0 * h);
            assert!(
                (fd - sys.grad[i]).abs() < 1e-7,
                "grad {i}: {fd} vs {}",
                sys.grad[i]
            );
            for j in 0..x0.len() {
                let grad_at = |x: &[f64]| {
                    let z = z_from_coords(n, &basis, &x[1..]);
                    let m = assemble_block_matrix(x[0], &z, &a).unwrap();
                    let (w, _) = inverse_and_logdet(&m).unwrap();
                    newton_system(n, t, &w, &basis).grad[j]
                };
                let fd2 = (grad_at(&xp) - grad_at(&xm)) / (2.0 * h);
                assert!(
                    (fd2 - sys.hess[(j, i)]).abs() < 1e-6,
                    "hess {j},{i}: {fd2} vs {}",
                    sys.hess[(j, i)]
                );
            }
        }
    }

    #[test]
    fn jordan_block_radius() {
        let out = compute_radius_sdp_detailed(&Matrix::shift(2).unwrap(), &SdpOptions::default())
            .unwrap();
        assert!(
            (out.result.value - 0.5).abs() <= 1e-8,
            "{}",
            out.result.value
        );
        assert!(out.iterate.feas_margin >= -1e-9 * (1.0 + out.iterate.c));
        assert!(out.iterate.z.is_real());
        for w in out.gap_history.windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn normal_matrix_radius() {
        let a = Matrix::diagonal(&[c(0.0, 2.0), c(1.0, 0.0)]).unwrap();
        let r = compute_radius_sdp(&a, 1e-8).unwrap();
        assert!((r.value - 2.0).abs() <= 1e-7, "{}", r.value);
        // Re(e^{i theta} 2i) = 2 at theta = 3 pi / 2
        assert!(
            (r.theta_star - 1.5 * std::f64::consts::PI).abs() < 1e-3,
            "{}",
            r.theta_star
        );
    }

    #[test]
    fn zero_matrix_terminates_at_zero() {
        let a = Matrix::zeros(3).unwrap();
        let out = compute_radius_sdp_detailed(&a, &SdpOptions::default()).unwrap();
        assert_eq!(out.result.value, 0.0);
        assert!(check_certificate(&a, out.iterate.c, &out.iterate.z).unwrap() >= 0.0);
    }

    #[test]
    fn size_limit_enforced() {
        let a = Matrix::zeros(51).unwrap();
        assert!(matches!(
            compute_radius_sdp(&a, 1e-8),
            Err(NumradError::SdpSizeLimit { n: 51, limit: 50 })
        ));
    }

    #[test]
    fn variable_counts() {
        assert_eq!(variable_count(&Matrix::identity(4).unwrap()), 11);
        let a = Matrix::diagonal(&[c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(variable_count(&a), 17);
    }
}
