//! Brute-force reference: sample `h` on a uniform grid, then polish the best
//! few local maxima by golden-section search.
//!
//! This is the independent oracle for the other methods. It certifies
//! nothing: a spike narrower than the grid spacing can be missed.

use std::f64::consts::TAU;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{NumradError, Result};
use crate::matrix::Matrix;
use crate::result::{wrap_angle, Method, RadiusResult};
use crate::spectral::h_value;

pub const DEFAULT_POINTS: usize = 200_000;
pub const DEFAULT_REFINE_TOL: f64 = 1e-13;
/// Number of local basins polished.
pub const BASINS: usize = 5;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes `f` on `[lo, hi]` by golden-section search until the bracket is
/// narrower than `tol`. Returns `(argmax, max, evaluations)`.
pub fn golden_section_max(
    mut f: impl FnMut(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<(f64, f64, usize)> {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut evals = 2;
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
        evals += 1;
        if x1 >= x2 {
            break;
        }
    }
    Ok(if f1 >= f2 {
        (x1, f1, evals)
    } else {
        (x2, f2, evals)
    })
}

/// Samples `h` at `num_points` uniform angles on `[0, 2 pi)`.
pub fn sample_h(a: &Matrix, num_points: usize) -> Result<Vec<f64>> {
    let step = TAU / num_points as f64;
    (0..num_points)
        .into_par_iter()
        .map(|k| h_value(a, k as f64 * step))
        .collect()
}

/// Indices of the best cyclic local maxima, at most `k` of them, best first.
fn best_basins(samples: &[f64], k: usize) -> Vec<usize> {
    let m = samples.len();
    let mut peaks: Vec<usize> = (0..m)
        .filter(|&i| {
            let prev = samples[(i + m - 1) % m];
            let next = samples[(i + 1) % m];
            samples[i] >= prev && samples[i] >= next
        })
        .collect();
    peaks.sort_by(|&i, &j| samples[j].total_cmp(&samples[i]).then(i.cmp(&j)));
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    for p in peaks {
        // plateau neighbours belong to the same basin
        let adjacent = chosen
            .iter()
            .any(|&q| (p + m - q) % m <= 1 || (q + m - p) % m <= 1);
        if !adjacent {
            chosen.push(p);
        }
        if chosen.len() == k {
            break;
        }
    }
    chosen
}

/// Grid-plus-refinement estimate of the numerical radius.
pub fn compute_radius_grid(a: &Matrix, num_points: usize, refine_tol: f64) -> Result<RadiusResult> {
    if num_points < 16 {
        return Err(NumradError::InvalidArgument(format!(
            "grid needs at least 16 points, got {num_points}"
        )));
    }
    if !(refine_tol > 0.0) {
        return Err(NumradError::InvalidArgument(
            "refine_tol must be positive".into(),
        ));
    }
    let start = Instant::now();
    let step = TAU / num_points as f64;
    let samples = sample_h(a, num_points)?;
    let mut h_evals = num_points;

    let basins = best_basins(&samples, BASINS);
    let mut best_theta = 0.0;
    let mut best = f64::NEG_INFINITY;
    for &i in &basins {
        if samples[i] > best {
            best = samples[i];
            best_theta = i as f64 * step;
        }
    }
    for &i in &basins {
        let center = i as f64 * step;
        let (t, v, evals) =
            golden_section_max(|t| h_value(a, t), center - step, center + step, refine_tol)?;
        h_evals += evals;
        if v > best {
            best = v;
            best_theta = t;
        }
    }

    Ok(RadiusResult {
        value: best.max(0.0),
        theta_star: wrap_angle(best_theta),
        method: Method::Grid,
        iterations: basins.len(),
        h_evals,
        wall_seconds: start.elapsed().as_secs_f64(),
        degenerate: false,
        capped: false,
    })
}
