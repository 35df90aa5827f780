//! Adaptive Chebyshev interpolation and global maximization of the
//! interpolant, applied to `h` on `[0, 2 pi]`.
//!
//! Samples are taken on nested Chebyshev–Lobatto grids of `2^k + 1` points
//! and converted to Chebyshev coefficients with a cosine transform. The grid
//! doubles until the trailing fifth of the coefficients is negligible. The
//! maximum of the resulting polynomial is found among the endpoints and the
//! real roots of its derivative, which are the eigenvalues of colleague
//! matrices.
//!
//! `h` is only piecewise analytic: wherever its top eigenvalue crosses
//! another one the coefficients stop decaying. [`compute_radius_cheb`]
//! then splits the interval at the detected corner and interpolates each
//! piece separately.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use faer::Mat;
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{NumradError, Result};
use crate::grid::golden_section_max;
use crate::matrix::Matrix;
use crate::result::{wrap_angle, Method, RadiusResult};
use crate::spectral::{h_spectrum, h_value};

pub const DEFAULT_TOL: f64 = 1e-14;
/// Smallest grid is `2^MIN_LOG2 + 1` points.
pub const MIN_LOG2: u32 = 4;
/// Largest grid is `2^MAX_LOG2 + 1` points.
pub const MAX_LOG2: u32 = 16;
/// Fraction of trailing coefficients that must be negligible.
pub const TAIL_FRACTION: f64 = 0.2;
pub const MAX_SPLIT_DEPTH: usize = 10;
/// Colleague matrices larger than this are avoided by subdividing.
const COLLEAGUE_MAX: usize = 50;
/// Off-center split point for root subdivision (keeps roots off the seam).
const ROOT_SPLIT: f64 = -0.004_849_834_917_525;
/// Relative size below which resampled coefficients are treated as noise.
const RESAMPLE_CHOP: f64 = 1e-13;

/// Chebyshev series `sum_k coeffs[k] T_k(t)` on `[a, b]`, with `t` the affine
/// image of `x` in `[-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebSeries {
    pub coeffs: Vec<f64>,
    pub a: f64,
    pub b: f64,
    /// Largest magnitude among the coefficients dropped from the tail.
    pub tail_bound: f64,
    /// `max |coeff|` of the untruncated series.
    pub scale: f64,
    pub tol: f64,
}

impl ChebSeries {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn to_unit(&self, x: f64) -> f64 {
        (2.0 * x - self.a - self.b) / (self.b - self.a)
    }

    fn from_unit(&self, t: f64) -> f64 {
        0.5 * (self.a + self.b) + 0.5 * (self.b - self.a) * t
    }

    pub fn eval(&self, x: f64) -> f64 {
        clenshaw(&self.coeffs, self.to_unit(x))
    }

    /// Coefficients of the derivative with respect to `x`.
    pub fn derivative(&self) -> ChebSeries {
        let mut d = derivative_coeffs(&self.coeffs);
        let s = 2.0 / (self.b - self.a);
        for c in d.iter_mut() {
            *c *= s;
        }
        ChebSeries {
            coeffs: d,
            a: self.a,
            b: self.b,
            tail_bound: 0.0,
            scale: self.scale,
            tol: self.tol,
        }
    }
}

/// Clenshaw recurrence for `sum c_k T_k(t)`.
pub fn clenshaw(c: &[f64], t: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &ck in c.iter().skip(1).rev() {
        let b0 = ck + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    c[0] + t * b1 - b2
}

fn derivative_coeffs(c: &[f64]) -> Vec<f64> {
    let n = c.len() - 1;
    if n == 0 {
        return vec![0.0];
    }
    let mut d = vec![0.0; n + 1];
    for k in (1..=n).rev() {
        d[k - 1] = d.get(k + 1).copied().unwrap_or(0.0) + 2.0 * k as f64 * c[k];
    }
    d[0] *= 0.5;
    d.truncate(n);
    d
}

/// Chebyshev coefficients from values at `t_j = cos(j pi / N)`, `j = 0..=N`.
pub fn values_to_coeffs(values: &[f64]) -> Vec<f64> {
    let n = values.len() - 1;
    if n == 0 {
        return vec![values[0]];
    }
    let len = 2 * n;
    let mut buf: Vec<Complex64> = (0..len)
        .map(|j| {
            let idx = if j <= n { j } else { len - j };
            Complex64::new(values[idx], 0.0)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);
    let mut c: Vec<f64> = buf[..=n].iter().map(|z| z.re / n as f64).collect();
    c[0] *= 0.5;
    c[n] *= 0.5;
    c
}

/// Lobatto node `j` of an `N + 1` point grid on `[a, b]`, ordered from `b` down to `a`.
fn lobatto_node(a: f64, b: f64, n: usize, j: usize) -> f64 {
    if j == 0 {
        b
    } else if j == n {
        a
    } else {
        0.5 * (a + b) + 0.5 * (b - a) * (PI * j as f64 / n as f64).cos()
    }
}

enum Attempt {
    Converged(ChebSeries),
    Stalled {
        nodes: Vec<f64>,
        values: Vec<f64>,
        coeffs: Vec<f64>,
    },
}

fn truncate(coeffs: &[f64], a: f64, b: f64, tol: f64) -> ChebSeries {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let cut = tol * scale;
    let last = coeffs.iter().rposition(|c| c.abs() > cut).unwrap_or(0);
    let tail_bound = coeffs[last + 1..]
        .iter()
        .fold(0.0f64, |m, c| m.max(c.abs()));
    ChebSeries {
        coeffs: coeffs[..=last].to_vec(),
        a,
        b,
        tail_bound,
        scale,
        tol,
    }
}

fn tail_is_negligible(coeffs: &[f64], tol: f64) -> bool {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let m = ((TAIL_FRACTION * coeffs.len() as f64).ceil() as usize).max(1);
    coeffs[coeffs.len() - m..]
        .iter()
        .all(|c| c.abs() <= tol * scale)
}

fn interpolate_attempt(
    f: &mut impl FnMut(f64) -> Result<f64>,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Attempt> {
    let mut n = 1usize << MIN_LOG2;
    let mut values: Vec<f64> = (0..=n)
        .map(|j| f(lobatto_node(a, b, n, j)))
        .collect::<Result<_>>()?;
    loop {
        for v in &values {
            if !v.is_finite() {
                return Err(NumradError::InvalidArgument(
                    "sampled function is not finite".into(),
                ));
            }
        }
        let coeffs = values_to_coeffs(&values);
        if tail_is_negligible(&coeffs, tol) {
            return Ok(Attempt::Converged(truncate(&coeffs, a, b, tol)));
        }
        if n >= 1usize << MAX_LOG2 {
            let nodes = (0..=n).map(|j| lobatto_node(a, b, n, j)).collect();
            return Ok(Attempt::Stalled {
                nodes,
                values,
                coeffs,
            });
        }
        let n2 = 2 * n;
        let mut next = Vec::with_capacity(n2 + 1);
        for j in 0..=n2 {
            if j % 2 == 0 {
                next.push(values[j / 2]);
            } else {
                next.push(f(lobatto_node(a, b, n2, j))?);
            }
        }
        values = next;
        n = n2;
    }
}

/// Adaptive Chebyshev interpolant of `f` on `[a, b]` to relative tolerance `tol`.
pub fn cheb_interpolate(
    mut f: impl FnMut(f64) -> Result<f64>,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<ChebSeries> {
    if !(b > a) || !(tol > 0.0) {
        return Err(NumradError::InvalidArgument(format!(
            "need a < b and tol > 0, got [{a}, {b}], tol = {tol}"
        )));
    }
    match interpolate_attempt(&mut f, a, b, tol)? {
        Attempt::Converged(s) => Ok(s),
        Attempt::Stalled { coeffs, .. } => Err(stalled_error(a, b, coeffs)),
    }
}

fn stalled_error(a: f64, b: f64, coeffs: Vec<f64>) -> NumradError {
    let m = ((TAIL_FRACTION * coeffs.len() as f64).ceil() as usize).max(1);
    let tail = coeffs[coeffs.len() - m..]
        .iter()
        .fold(0.0f64, |acc, c| acc.max(c.abs()));
    NumradError::ChebyshevNoConvergence {
        a,
        b,
        max_len: coeffs.len(),
        tail,
        coeff_profile: coeffs,
    }
}

/// Eigenvalues of the colleague matrix of `sum c_k T_k`; `c` has degree >= 2
/// and a nonzero leading coefficient.
fn colleague_roots(c: &[f64]) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n];
    let m = Mat::<f64>::from_fn(n, n, |i, j| {
        let mut v = 0.0;
        if i == 0 {
            if j == 1 {
                v = 1.0;
            }
        } else if j + 1 == i || j == i + 1 {
            v = 0.5;
        }
        if i == n - 1 {
            v -= c[j] / (2.0 * lead);
        }
        v
    });
    m.eigenvalues().map_err(|_| NumradError::Decomposition {
        what: "colleague matrix eigenvalue decomposition",
        n,
    })
}

/// Real roots in `[-1, 1]` of `sum c_k T_k`. Near-real eigenvalues are kept
/// generously; spurious candidates only cost an extra evaluation.
fn unit_roots(c: &[f64], depth: usize) -> Result<Vec<f64>> {
    let scale = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return Ok(Vec::new());
    }
    let last = c.iter().rposition(|x| x.abs() > 1e-15 * scale).unwrap_or(0);
    let c = &c[..=last];
    let n = c.len() - 1;
    match n {
        0 => return Ok(Vec::new()),
        1 => {
            let r = -c[0] / c[1];
            return Ok(if r.abs() <= 1.0 + 1e-12 {
                vec![r.clamp(-1.0, 1.0)]
            } else {
                Vec::new()
            });
        }
        _ => {}
    }
    if n <= COLLEAGUE_MAX || depth > 40 {
        let roots = colleague_roots(c)?;
        return Ok(roots
            .into_iter()
            .filter(|z| z.im.abs() <= 1e-6 && z.re.abs() <= 1.0 + 1e-8)
            .map(|z| z.re.clamp(-1.0, 1.0))
            .collect());
    }
    // resample on the two halves and recurse
    let mut out = Vec::new();
    for (lo, hi) in [(-1.0, ROOT_SPLIT), (ROOT_SPLIT, 1.0)] {
        let vals: Vec<f64> = (0..=n)
            .map(|j| clenshaw(c, lobatto_node(lo, hi, n, j)))
            .collect();
        let mut sub = values_to_coeffs(&vals);
        // resampling leaves rounding noise in the tail; a noisy leading
        // coefficient would wreck the colleague matrix
        let sub_scale = sub.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let keep = sub
            .iter()
            .rposition(|x| x.abs() > RESAMPLE_CHOP * sub_scale)
            .unwrap_or(0);
        sub.truncate(keep + 1);
        for r in unit_roots(&sub, depth + 1)? {
            out.push(0.5 * (lo + hi) + 0.5 * (hi - lo) * r);
        }
    }
    if depth == 0 {
        let dc = derivative_coeffs(c);
        for r in out.iter_mut() {
            *r = polish_root(c, &dc, *r);
        }
    }
    Ok(out)
}

/// A few Newton steps on the full series, kept only while they reduce the residual.
fn polish_root(c: &[f64], dc: &[f64], mut x: f64) -> f64 {
    let mut fx = clenshaw(c, x).abs();
    for _ in 0..4 {
        let d = clenshaw(dc, x);
        if d == 0.0 {
            break;
        }
        let y = (x - clenshaw(c, x) / d).clamp(-1.0, 1.0);
        let fy = clenshaw(c, y).abs();
        if !(fy < fx) {
            break;
        }
        x = y;
        fx = fy;
    }
    x
}

/// Location and value of the global maximum of a series on its interval.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesMax {
    pub theta: f64,
    pub value: f64,
    /// The colleague eigensolver failed and dense sampling was used.
    pub fallback: bool,
}

/// Global maximum of `series` over `[a, b]`; ties go to the smaller argument.
pub fn cheb_max(series: &ChebSeries) -> SeriesMax {
    let d = derivative_coeffs(&series.coeffs);
    let (mut candidates, fallback) = match unit_roots(&d, 0) {
        Ok(r) => (r, false),
        Err(_) => (Vec::new(), true),
    };
    if fallback {
        return sampled_max(series);
    }
    candidates.push(-1.0);
    candidates.push(1.0);
    pick_max(
        series,
        candidates.into_iter().map(|t| series.from_unit(t)),
        false,
    )
}

fn pick_max(series: &ChebSeries, xs: impl Iterator<Item = f64>, fallback: bool) -> SeriesMax {
    let mut pts: Vec<(f64, f64)> = xs.map(|x| (x, series.eval(x))).collect();
    pts.sort_by(|p, q| p.0.total_cmp(&q.0));
    let tie = 4.0 * f64::EPSILON * series.scale.max(f64::MIN_POSITIVE);
    let mut best = pts[0];
    for &p in &pts[1..] {
        if p.1 > best.1 + tie {
            best = p;
        }
    }
    SeriesMax {
        theta: best.0,
        value: best.1,
        fallback,
    }
}

/// Dense sampling at `10 * degree` points plus parabolic refinement.
fn sampled_max(series: &ChebSeries) -> SeriesMax {
    let m = (10 * series.degree()).max(16);
    let h = (series.b - series.a) / m as f64;
    let xs: Vec<f64> = (0..=m).map(|k| series.a + k as f64 * h).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| series.eval(x)).collect();
    let mut cands = xs.clone();
    for k in 1..m {
        let (f0, f1, f2) = (vs[k - 1], vs[k], vs[k + 1]);
        let denom = f0 - 2.0 * f1 + f2;
        if f1 >= f0 && f1 >= f2 && denom < 0.0 {
            let shift = 0.5 * (f0 - f2) / denom;
            cands.push(xs[k] + shift.clamp(-1.0, 1.0) * h);
        }
    }
    pick_max(series, cands.into_iter(), true)
}

/// Refines a corner of `h` inside `[lo, hi]` by minimizing the gap between
/// the two largest eigenvalues of `H(theta)`.
fn locate_corner(a: &Matrix, lo: f64, hi: f64, evals: &mut usize) -> Result<f64> {
    if a.n() < 2 {
        return Ok(0.5 * (lo + hi));
    }
    let gap = |t: f64| -> Result<f64> {
        let s = h_spectrum(a, t)?;
        let k = s.len();
        Ok(-(s[k - 1] - s[k - 2]))
    };
    let tol = 4.0 * f64::EPSILON * hi.abs().max(1.0);
    let (t, _, e) = golden_section_max(gap, lo, hi, tol)?;
    *evals += e;
    Ok(t)
}

/// Index of the largest second divided difference of samples on a
/// (nonuniform) grid; bracket indices are returned in ascending `x`.
fn sharpest_point(nodes: &[f64], values: &[f64]) -> Option<(f64, f64)> {
    // nodes arrive from b down to a
    let mut pts: Vec<(f64, f64)> = nodes.iter().copied().zip(values.iter().copied()).collect();
    pts.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut best: Option<(usize, f64)> = None;
    for k in 1..pts.len() - 1 {
        let (x0, f0) = pts[k - 1];
        let (x1, f1) = pts[k];
        let (x2, f2) = pts[k + 1];
        let d01 = (f1 - f0) / (x1 - x0);
        let d12 = (f2 - f1) / (x2 - x1);
        let dd = ((d12 - d01) / (x2 - x0)).abs();
        if dd.is_finite() && best.is_none_or(|(_, b)| dd > b) {
            best = Some((k, dd));
        }
    }
    best.map(|(k, _)| (pts[k - 1].0, pts[k + 1].0))
}

fn interpolate_pieces(
    a_mat: &Matrix,
    lo: f64,
    hi: f64,
    tol: f64,
    depth: usize,
    evals: &mut usize,
    pieces: &mut Vec<ChebSeries>,
) -> Result<()> {
    let mut count = 0usize;
    let attempt = interpolate_attempt(
        &mut |t| {
            count += 1;
            h_value(a_mat, t)
        },
        lo,
        hi,
        tol,
    )?;
    *evals += count;
    match attempt {
        Attempt::Converged(s) => {
            pieces.push(s);
            Ok(())
        }
        Attempt::Stalled {
            nodes,
            values,
            coeffs,
        } => {
            if depth >= MAX_SPLIT_DEPTH {
                return Err(stalled_error(lo, hi, coeffs));
            }
            let width = hi - lo;
            let mut split = match sharpest_point(&nodes, &values) {
                Some((l, r)) => locate_corner(a_mat, l, r, evals)?,
                None => 0.5 * (lo + hi),
            };
            if !(split > lo + 1e-3 * width && split < hi - 1e-3 * width) {
                // corner sits on an endpoint already; plain bisection
                split = 0.5 * (lo + hi);
            }
            interpolate_pieces(a_mat, lo, split, tol, depth + 1, evals, pieces)?;
            interpolate_pieces(a_mat, split, hi, tol, depth + 1, evals, pieces)
        }
    }
}

/// Piecewise Chebyshev interpolant of `h` on `[0, 2 pi]`.
pub fn interpolate_h(a: &Matrix, tol: f64) -> Result<(Vec<ChebSeries>, usize)> {
    let mut pieces = Vec::new();
    let mut evals = 0;
    interpolate_pieces(a, 0.0, TAU, tol, 0, &mut evals, &mut pieces)?;
    Ok((pieces, evals))
}

/// Numerical radius by global maximization of a Chebyshev interpolant of `h`.
pub fn compute_radius_cheb(a: &Matrix, tol: f64) -> Result<RadiusResult> {
    if !(tol > 0.0 && tol < 1e-2) {
        return Err(NumradError::InvalidArgument(format!(
            "tol must lie in (0, 1e-2), got {tol}"
        )));
    }
    let start = Instant::now();
    if a.max_abs() == 0.0 {
        return Ok(RadiusResult {
            value: 0.0,
            theta_star: 0.0,
            method: Method::Cheb,
            iterations: 0,
            h_evals: 0,
            wall_seconds: start.elapsed().as_secs_f64(),
            degenerate: false,
            capped: false,
        });
    }
    let (pieces, evals) = interpolate_h(a, tol)?;
    let mut best = SeriesMax {
        theta: 0.0,
        value: f64::NEG_INFINITY,
        fallback: false,
    };
    let mut any_fallback = false;
    for p in &pieces {
        let m = cheb_max(p);
        any_fallback |= m.fallback;
        if m.value > best.value {
            best = m;
        }
    }
    Ok(RadiusResult {
        value: best.value.max(0.0),
        theta_star: wrap_angle(best.theta),
        method: Method::Cheb,
        iterations: pieces.len(),
        h_evals: evals,
        wall_seconds: start.elapsed().as_secs_f64(),
        degenerate: any_fallback,
        capped: false,
    })
}
