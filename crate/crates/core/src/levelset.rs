//! Level-set optimization for the numerical radius.
//!
//! Local maximization of `h` proposes a level `gamma`; the level set
//! `{theta : h(theta) = gamma}` is then computed exactly from the unit-circle
//! eigenvalues of a quadratic pencil. An empty level set slightly above the
//! current best value certifies it as the global maximum, otherwise the
//! arcs where `h` exceeds the level seed a new round of local searches.
//!
//! The pencil comes from writing `z = e^{i theta}`: `gamma` is an eigenvalue
//! of `H(theta)` exactly when `det(z^2 A - 2 gamma z I + A^*) = 0`. It is
//! linearized as
//!
//! ```text
//!   [ 2 gamma I   -A^* ]       [ A  0 ]
//!   [     I        0   ] w = z [ 0  I ] w
//! ```
//!
//! and solved by shift-and-invert about a point `e^{i theta0}` of the unit
//! circle where `gamma` is well separated from the spectrum of `H(theta0)`.
//! A `gamma` that lies in that spectrum at every probe angle means the
//! pencil is singular, and the caller falls back to the grid.
//!
//! Stopping constants, seeding and the handling of arcs above the level are
//! this crate's own choices.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use faer::linalg::solvers::Solve;
use faer::Mat;
use num_complex::Complex64;

use crate::error::{NumradError, Result};
use crate::grid::{compute_radius_grid, DEFAULT_POINTS, DEFAULT_REFINE_TOL};
use crate::matrix::Matrix;
use crate::result::{wrap_angle, Method, RadiusResult};
use crate::spectral::{eigenvalues, eval_h_full, h_spectrum, h_value, HEval};

/// Accepted distance of a pencil eigenvalue from the unit circle.
pub const UNIT_CIRCLE_TOL: f64 = 1e-8;
/// Accepted `|h(theta) - gamma|` for a confirmed crossing, relative to the level scale.
pub const CROSSING_TOL: f64 = 1e-8;
/// Crossing angles closer than this are merged.
pub const ANGLE_DEDUP_TOL: f64 = 1e-10;
pub const DEFAULT_TOL_REL: f64 = 1e-14;
pub const DEFAULT_MAX_OUTER: usize = 50;
pub const DEFAULT_LOCAL_ITERS: usize = 100;
/// Eigenvalues (largest modulus first) whose angles seed local searches.
pub const DEFAULT_EIGEN_SEEDS: usize = 4;

/// Probe angles for the pencil shift and the singular-pencil residual test.
const SHIFT_PROBES: usize = 16;
const PROBE_OFFSET: f64 = 0.1;

/// The level set `{theta : h(theta) = gamma}`.
///
/// `angles` only holds transversal crossings, where `h - gamma` changes
/// sign; tangential touches are dropped. `above` lists the open arcs on
/// which `h > gamma` as `(start, end)` with `start` in `[0, 2 pi)` and
/// `end > start` (possibly past `2 pi` when the arc wraps).
#[derive(Clone, Debug, PartialEq)]
pub struct LevelCrossings {
    pub gamma: f64,
    pub angles: Vec<f64>,
    pub whole_circle: bool,
    /// The pencil is singular for this level (`gamma` is an eigenvalue of
    /// `H(theta)` for every `theta`); `whole_circle` is also set.
    pub degenerate: bool,
    pub above: Vec<(f64, f64)>,
}

/// Outcome of a local maximization of `h`.
#[derive(Clone, Debug)]
pub struct LocalMax {
    pub theta: f64,
    pub value: f64,
    pub evals: usize,
    /// Iteration cap hit before the stopping test was met.
    pub capped: bool,
}

#[derive(Clone, Debug)]
pub struct LsoOptions {
    pub tol_rel: f64,
    pub max_outer: usize,
    pub local_iters: usize,
    /// Number of eigenvalue directions seeded besides `theta = 0`.
    pub eigen_seeds: usize,
}

impl Default for LsoOptions {
    fn default() -> Self {
        Self {
            tol_rel: DEFAULT_TOL_REL,
            max_outer: DEFAULT_MAX_OUTER,
            local_iters: DEFAULT_LOCAL_ITERS,
            eigen_seeds: DEFAULT_EIGEN_SEEDS,
        }
    }
}

/// Full record of one level-set run.
#[derive(Clone, Debug)]
pub struct LsoOutcome {
    pub result: RadiusResult,
    /// Best level after each round, starting with the seeded local searches.
    pub levels: Vec<f64>,
    /// Level set at the final inflated level.
    pub final_crossings: LevelCrossings,
}

fn level_scale(a: &Matrix, gamma: f64) -> f64 {
    gamma.abs() + a.max_abs()
}

/// Probe angle where `gamma` is farthest from the spectrum of `H(theta)`,
/// with that distance.
fn best_shift_angle(a: &Matrix, gamma: f64) -> Result<(f64, f64)> {
    let mut best = (0.0, f64::NEG_INFINITY);
    for k in 0..SHIFT_PROBES {
        let theta = PROBE_OFFSET + TAU * k as f64 / SHIFT_PROBES as f64;
        let dist = h_spectrum(a, theta)?
            .iter()
            .map(|l| (l - gamma).abs())
            .fold(f64::INFINITY, f64::min);
        if dist > best.1 {
            best = (theta, dist);
        }
    }
    Ok(best)
}

/// Finite eigenvalues `z` of the linearized pencil, by shift-and-invert
/// about `sigma = e^{i theta0}`: `z = sigma + 1 / mu` for the eigenvalues
/// `mu` of `(T - sigma B)^{-1} B`. The Schur complement of `T - sigma B` is
/// `-2 (H(theta0) - gamma I)`, so the solve is as well conditioned as
/// `gamma` is far from the spectrum at `theta0`.
fn pencil_eigenvalues(a: &Matrix, gamma: f64, theta0: f64) -> Result<Vec<Complex64>> {
    let n = a.n();
    let m = 2 * n;
    let s = a.max_abs();
    let g = gamma / s;
    let raw = a.as_faer();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let sigma = Complex64::from_polar(1.0, theta0);
    let b = Mat::<Complex64>::from_fn(m, m, |i, j| match (i < n, j < n) {
        (true, true) => raw[(i, j)] / s,
        (false, false) if i == j => one,
        _ => zero,
    });
    let shifted = Mat::<Complex64>::from_fn(m, m, |i, j| {
        let t = match (i < n, j < n) {
            (true, true) if i == j => Complex64::new(2.0 * g, 0.0),
            (true, false) => -raw[(j - n, i)].conj() / s,
            (false, true) if i - n == j => one,
            _ => zero,
        };
        t - sigma * b[(i, j)]
    });
    let c = shifted.partial_piv_lu().solve(&b);
    let mu = c
        .eigenvalues()
        .map_err(|_| NumradError::Pencil { gamma, size: m })?;
    if mu.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(NumradError::Pencil { gamma, size: m });
    }
    let cut = 1e-14 * mu.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    // mu = 0 belongs to an infinite eigenvalue (singular A)
    Ok(mu
        .into_iter()
        .filter(|z| z.norm() > cut)
        .map(|z| sigma + z.inv())
        .collect())
}

fn degenerate_crossings(gamma: f64) -> LevelCrossings {
    LevelCrossings {
        gamma,
        angles: Vec::new(),
        whole_circle: true,
        degenerate: true,
        above: Vec::new(),
    }
}

/// All angles where `h` crosses `gamma`, with the arcs where it lies above.
pub fn level_crossings(a: &Matrix, gamma: f64) -> Result<LevelCrossings> {
    let n = a.n();
    let scale = level_scale(a, gamma);
    let (theta0, dist) = best_shift_angle(a, gamma)?;
    if dist <= CROSSING_TOL * scale {
        // gamma is an eigenvalue of H(theta) at every probe: singular pencil
        return Ok(degenerate_crossings(gamma));
    }
    if a.max_abs() == 0.0 {
        // h is identically zero and gamma is not zero
        return Ok(LevelCrossings {
            gamma,
            angles: Vec::new(),
            whole_circle: gamma < 0.0,
            degenerate: false,
            above: if gamma < 0.0 {
                vec![(0.0, TAU)]
            } else {
                Vec::new()
            },
        });
    }

    let mut candidates: Vec<f64> = Vec::new();
    for z in pencil_eigenvalues(a, gamma, theta0)? {
        if (z.norm() - 1.0).abs() > UNIT_CIRCLE_TOL {
            continue;
        }
        let theta = wrap_angle(z.arg());
        if (h_value(a, theta)? - gamma).abs() <= CROSSING_TOL * scale {
            candidates.push(theta);
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup_by(|x, y| (*x - *y).abs() <= ANGLE_DEDUP_TOL);
    if candidates.len() > 1
        && TAU - candidates[candidates.len() - 1] + candidates[0] <= ANGLE_DEDUP_TOL
    {
        candidates.pop();
    }
    if candidates.len() > 2 * n {
        return Ok(degenerate_crossings(gamma));
    }

    if candidates.is_empty() {
        let mut min_h = f64::INFINITY;
        for &theta in &[0.0, PI / 2.0, PI, 1.5 * PI] {
            min_h = min_h.min(h_value(a, theta)?);
        }
        let whole = min_h > gamma;
        return Ok(LevelCrossings {
            gamma,
            angles: Vec::new(),
            whole_circle: whole,
            degenerate: false,
            above: if whole { vec![(0.0, TAU)] } else { Vec::new() },
        });
    }

    // classify each arc (c_k, c_{k+1}) by the sign of h - gamma at its midpoint
    let m = candidates.len();
    let mut arc_above = Vec::with_capacity(m);
    for k in 0..m {
        let start = candidates[k];
        let end = if k + 1 < m {
            candidates[k + 1]
        } else {
            candidates[0] + TAU
        };
        arc_above.push(h_value(a, wrap_angle(0.5 * (start + end)))? > gamma);
    }

    // keep only sign changes; candidate k separates arc k-1 from arc k
    let angles: Vec<f64> = (0..m)
        .filter(|&k| arc_above[(k + m - 1) % m] != arc_above[k])
        .map(|k| candidates[k])
        .collect();

    if angles.is_empty() {
        let whole = arc_above[0];
        return Ok(LevelCrossings {
            gamma,
            angles,
            whole_circle: whole,
            degenerate: false,
            above: if whole { vec![(0.0, TAU)] } else { Vec::new() },
        });
    }

    // transversal crossings alternate: an arc above starts at every crossing
    // whose following candidate-arc is above
    let mut above = Vec::new();
    let p = angles.len();
    for i in 0..p {
        let start = angles[i];
        let k = candidates.iter().position(|&c| c == start).unwrap_or(0);
        if arc_above[k] {
            let end = if i + 1 < p {
                angles[i + 1]
            } else {
                angles[0] + TAU
            };
            above.push((start, end));
        }
    }

    Ok(LevelCrossings {
        gamma,
        angles,
        whole_circle: false,
        degenerate: false,
        above,
    })
}

/// Safeguarded Newton ascent on `h` from `theta0`.
///
/// Newton steps use the analytic first and second derivatives and are only
/// accepted if they do not decrease `h`; a rejected step is halved. Where
/// the top eigenvalue is (nearly) multiple, or the curvature is not
/// negative, the step falls back to the sign of `h'` with the current trust
/// radius, which is bisection on the sign of the derivative. `h` is convex
/// across eigenvalue crossings, so a crossing is never a local maximum.
pub fn local_maximize(a: &Matrix, theta0: f64, tol: f64) -> Result<LocalMax> {
    local_maximize_capped(a, theta0, tol, DEFAULT_LOCAL_ITERS)
}

fn finish(cur: &HEval, evals: usize, capped: bool) -> LocalMax {
    LocalMax {
        theta: wrap_angle(cur.theta),
        value: cur.value,
        evals,
        capped,
    }
}

pub fn local_maximize_capped(
    a: &Matrix,
    theta0: f64,
    tol: f64,
    max_iter: usize,
) -> Result<LocalMax> {
    if !(tol > 0.0) {
        return Err(NumradError::InvalidArgument(
            "local_maximize tol must be positive".into(),
        ));
    }
    let mut cur = eval_h_full(a, theta0)?;
    let mut evals = 1;
    let mut trust = 0.5f64;

    for _ in 0..max_iter {
        let g = cur.derivative;
        if g.abs() <= tol * (1.0 + cur.value.abs()) {
            return Ok(finish(&cur, evals, false));
        }
        let newton = !cur.near_multiple && cur.curvature < 0.0;
        let mut step = if newton {
            (-g / cur.curvature).clamp(-trust, trust)
        } else {
            g.signum() * trust
        };

        let accepted = loop {
            let cand = eval_h_full(a, cur.theta + step)?;
            evals += 1;
            if cand.value >= cur.value {
                break Some(cand);
            }
            step *= 0.5;
            if step.abs() < tol {
                break None;
            }
        };
        let Some(cand) = accepted else {
            return Ok(finish(&cur, evals, false));
        };
        trust = if newton {
            (2.0 * step.abs()).clamp(tol, PI)
        } else if cand.derivative.signum() != g.signum() {
            // stepped over a stationary point or a crossing
            (0.5 * step.abs()).max(tol)
        } else {
            (2.0 * step.abs()).min(PI)
        };
        cur = cand;
        if step.abs() < tol {
            return Ok(finish(&cur, evals, false));
        }
    }
    Ok(finish(&cur, evals, true))
}

/// Seed angles: `0` plus `-arg(lambda)` for the largest nonzero eigenvalues
/// by modulus, which is where `Re(e^{i theta} lambda) = |lambda|`. The level
/// set rounds recover any maximum the seeds miss.
fn seed_angles(a: &Matrix, count: usize) -> Result<Vec<f64>> {
    let mut seeds = vec![0.0];
    let mut eigs = eigenvalues(a)?;
    eigs.sort_by(|x, y| y.norm().total_cmp(&x.norm()));
    for &lambda in eigs.iter().take(count) {
        if lambda.norm() > 0.0 {
            let mut t = wrap_angle(-lambda.arg());
            if a.is_real() && t > PI {
                // h(theta) = h(-theta) for real A
                t = TAU - t;
            }
            seeds.push(t);
        }
    }
    seeds.sort_by(f64::total_cmp);
    seeds.dedup_by(|x, y| (*x - *y).abs() <= 1e-12);
    Ok(seeds)
}

/// Numerical radius by level-set optimization with default options.
pub fn compute_radius_lso(a: &Matrix, tol_rel: f64) -> Result<RadiusResult> {
    let opts = LsoOptions {
        tol_rel,
        ..LsoOptions::default()
    };
    Ok(compute_radius_lso_detailed(a, &opts)?.result)
}

pub fn compute_radius_lso_detailed(a: &Matrix, opts: &LsoOptions) -> Result<LsoOutcome> {
    if !(opts.tol_rel > 0.0 && opts.tol_rel < 1e-2) {
        return Err(NumradError::InvalidArgument(format!(
            "tol_rel must lie in (0, 1e-2), got {}",
            opts.tol_rel
        )));
    }
    let start = Instant::now();
    let mut h_evals = 0usize;
    let mut capped = false;

    if a.max_abs() == 0.0 {
        return Ok(LsoOutcome {
            result: RadiusResult {
                value: 0.0,
                theta_star: 0.0,
                method: Method::Lso,
                iterations: 0,
                h_evals: 0,
                wall_seconds: start.elapsed().as_secs_f64(),
                degenerate: false,
                capped: false,
            },
            levels: vec![0.0],
            final_crossings: LevelCrossings {
                gamma: 0.0,
                angles: Vec::new(),
                whole_circle: false,
                degenerate: false,
                above: Vec::new(),
            },
        });
    }

    let mut gamma = f64::NEG_INFINITY;
    let mut theta_star = 0.0;
    for seed in seed_angles(a, opts.eigen_seeds)? {
        let lm = local_maximize_capped(a, seed, opts.tol_rel, opts.local_iters)?;
        h_evals += lm.evals;
        capped |= lm.capped;
        if lm.value > gamma {
            gamma = lm.value;
            theta_star = lm.theta;
        }
    }
    let mut levels = vec![gamma];

    for outer in 1..=opts.max_outer {
        let level = gamma * (1.0 + 2.0 * opts.tol_rel);
        let crossings = level_crossings(a, level)?;
        h_evals += crossings.angles.len() + 2 * a.n() + 4;

        if crossings.degenerate || crossings.whole_circle {
            let grid = compute_radius_grid(a, DEFAULT_POINTS, DEFAULT_REFINE_TOL)?;
            h_evals += grid.h_evals;
            let (value, theta) = if grid.value > gamma {
                (grid.value, grid.theta_star)
            } else {
                (gamma, theta_star)
            };
            return Ok(LsoOutcome {
                result: RadiusResult {
                    value,
                    theta_star: wrap_angle(theta),
                    method: Method::Lso,
                    iterations: outer,
                    h_evals,
                    wall_seconds: start.elapsed().as_secs_f64(),
                    degenerate: true,
                    capped,
                },
                levels,
                final_crossings: crossings,
            });
        }

        if crossings.above.is_empty() {
            return Ok(LsoOutcome {
                result: RadiusResult {
                    value: gamma,
                    theta_star: wrap_angle(theta_star),
                    method: Method::Lso,
                    iterations: outer,
                    h_evals,
                    wall_seconds: start.elapsed().as_secs_f64(),
                    degenerate: false,
                    capped,
                },
                levels,
                final_crossings: crossings,
            });
        }

        let mut improved = gamma;
        let mut improved_theta = theta_star;
        for &(lo, hi) in &crossings.above {
            let lm = local_maximize_capped(a, 0.5 * (lo + hi), opts.tol_rel, opts.local_iters)?;
            h_evals += lm.evals;
            capped |= lm.capped;
            if lm.value > improved {
                improved = lm.value;
                improved_theta = lm.theta;
            }
        }
        if improved <= gamma {
            // arcs above the inflated level must contain points above gamma
            return Err(NumradError::LevelSetCap {
                cap: outer,
                best_gamma: gamma,
                levels,
            });
        }
        gamma = improved;
        theta_star = improved_theta;
        levels.push(gamma);
    }

    Err(NumradError::LevelSetCap {
        cap: opts.max_outer,
        best_gamma: gamma,
        levels,
    })
}
