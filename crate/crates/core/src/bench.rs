//! Benchmark harness: seeded random matrices, averaged timings per method,
//! pairwise relative discrepancies and report files.
//!
//! Matrices come from ChaCha8 seeded with a 64-bit value and the
//! `rand_distr` standard normal transform, so a `(seed, n, field)` triple
//! yields the same matrix on every platform.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::chebyshev::{self, compute_radius_cheb};
use crate::error::{NumradError, Result};
use crate::grid::{compute_radius_grid, DEFAULT_POINTS, DEFAULT_REFINE_TOL};
use crate::levelset::{self, compute_radius_lso};
use crate::matrix::Matrix;
use crate::result::{Method, RadiusResult};
use crate::sdp::{self, compute_radius_sdp_detailed, write_trace_csv, SdpOptions};

pub const DEFAULT_TRIALS: usize = 5;
pub const DEFAULT_TRIAL_CAP_SECONDS: f64 = 180.0;
pub const DEFAULT_SDP_CAP: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "real" => Ok(Field::Real),
            "complex" => Ok(Field::Complex),
            other => Err(format!(
                "unknown field `{other}` (expected real or complex)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    SkippedSizeCap,
    Failed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::SkippedSizeCap => "skipped_size_cap",
            Status::Failed => "failed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub fields: Vec<Field>,
    pub methods: Vec<Method>,
    pub trials: usize,
    /// A method whose warmup exceeds this gets a single timed run.
    pub trial_time_cap_seconds: f64,
    pub seed: u64,
    pub output_dir: PathBuf,
    /// Largest `n` handed to the SDP solver.
    pub sdp_cap: usize,
    /// Write the SDP Newton trace of each warmup run to `output_dir`.
    pub sdp_trace: bool,
}

impl BenchConfig {
    pub fn new(
        sizes: Vec<usize>,
        fields: Vec<Field>,
        methods: Vec<Method>,
        seed: u64,
        output_dir: PathBuf,
    ) -> Self {
        Self {
            sizes,
            fields,
            methods,
            trials: DEFAULT_TRIALS,
            trial_time_cap_seconds: DEFAULT_TRIAL_CAP_SECONDS,
            seed,
            output_dir,
            sdp_cap: DEFAULT_SDP_CAP.min(sdp::MAX_SDP_DIM),
            sdp_trace: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(NumradError::InvalidArgument(msg.into()));
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return bad("sizes must be nonempty and each at least 1");
        }
        if self.fields.is_empty() {
            return bad("at least one field is required");
        }
        if self.methods.is_empty() {
            return bad("at least one method is required");
        }
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if !(self.trial_time_cap_seconds > 0.0) {
            return bad("trial time cap must be positive");
        }
        Ok(())
    }
}

/// Outcome of one method on one benchmark matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub field: Field,
    pub method: Method,
    pub radius_value: Option<f64>,
    pub theta_star: Option<f64>,
    /// Mean over the timed runs.
    pub wall_seconds: f64,
    pub trials_used: usize,
    pub status: Status,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyCell {
    pub n: usize,
    pub field: Field,
    pub method_a: Method,
    pub method_b: Method,
    pub value: f64,
}

/// `|r1 - r2| / max(r1, r2)`, and `0` when both vanish.
pub fn rel_discrepancy(r1: f64, r2: f64) -> f64 {
    let m = r1.max(r2);
    if m == 0.0 {
        0.0
    } else {
        (r1 - r2).abs() / m
    }
}

/// Matrix with i.i.d. standard normal entries (real and imaginary parts
/// independently for `Field::Complex`), drawn in row-major order.
pub fn gen_random_matrix(n: usize, field: Field, seed: u64) -> Result<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..n * n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = match field {
                Field::Real => 0.0,
                Field::Complex => StandardNormal.sample(&mut rng),
            };
            Complex64::new(re, im)
        })
        .collect();
    Matrix::from_row_major(n, entries)
}

/// Seed of the benchmark matrix for `(n, field)`: a separate ChaCha8 stream
/// per pair, keyed by the run seed.
pub fn matrix_seed(seed: u64, n: usize, field: Field) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tag = match field {
        Field::Real => 0,
        Field::Complex => 1,
    };
    rng.set_stream(((n as u64) << 1) | tag);
    rng.next_u64()
}

/// Runs `method` on `a` with its default tolerance.
pub fn run_method(a: &Matrix, method: Method) -> Result<RadiusResult> {
    match method {
        Method::Lso => compute_radius_lso(a, levelset::DEFAULT_TOL_REL),
        Method::Cheb => compute_radius_cheb(a, chebyshev::DEFAULT_TOL),
        Method::Sdp => compute_radius_sdp_detailed(a, &SdpOptions::default()).map(|o| o.result),
        Method::Grid => compute_radius_grid(a, DEFAULT_POINTS, DEFAULT_REFINE_TOL),
    }
}

fn warmup(a: &Matrix, method: Method, config: &BenchConfig, field: Field) -> Result<RadiusResult> {
    if method != Method::Sdp || !config.sdp_trace {
        return run_method(a, method);
    }
    let opts = SdpOptions {
        trace: true,
        ..SdpOptions::default()
    };
    let out = compute_radius_sdp_detailed(a, &opts)?;
    fs::create_dir_all(&config.output_dir).map_err(|source| NumradError::Io {
        path: config.output_dir.clone(),
        source,
    })?;
    let path = config
        .output_dir
        .join(format!("sdp_trace_n{}_{}.csv", a.n(), field));
    write_trace_csv(&out.trace, &path)?;
    Ok(out.result)
}

fn bench_one(a: &Matrix, field: Field, method: Method, config: &BenchConfig) -> BenchRecord {
    let n = a.n();
    let mut rec = BenchRecord {
        n,
        field,
        method,
        radius_value: None,
        theta_star: None,
        wall_seconds: 0.0,
        trials_used: 0,
        status: Status::Failed,
        error: None,
    };
    if method == Method::Sdp && n > config.sdp_cap {
        rec.status = Status::SkippedSizeCap;
        return rec;
    }
    let start = Instant::now();
    if let Err(e) = warmup(a, method, config, field) {
        rec.error = Some(e.to_string());
        return rec;
    }
    let runs = if start.elapsed().as_secs_f64() > config.trial_time_cap_seconds {
        1
    } else {
        config.trials
    };
    let mut total = 0.0;
    for _ in 0..runs {
        let t = Instant::now();
        match run_method(a, method) {
            Ok(r) => {
                total += t.elapsed().as_secs_f64();
                rec.radius_value = Some(r.value);
                rec.theta_star = Some(r.theta_star);
            }
            Err(e) => {
                rec.radius_value = None;
                rec.theta_star = None;
                rec.error = Some(e.to_string());
                return rec;
            }
        }
    }
    rec.wall_seconds = total / runs as f64;
    rec.trials_used = runs;
    rec.status = Status::Ok;
    rec
}

/// One matrix per `(n, field)`; every method is warmed up once and then timed
/// `trials` times, or once when the warmup exceeded the trial cap.
pub fn run_benchmark(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    config.validate()?;
    let mut records = Vec::new();
    for &field in &config.fields {
        for &n in &config.sizes {
            let a = gen_random_matrix(n, field, matrix_seed(config.seed, n, field))?;
            for &method in &config.methods {
                records.push(bench_one(&a, field, method, config));
            }
        }
    }
    Ok(records)
}

/// One cell per unordered pair of `ok` records on the same matrix, pairs in
/// the order the methods appear.
pub fn discrepancy_matrix(records: &[BenchRecord]) -> Vec<DiscrepancyCell> {
    let mut keys: Vec<(Field, usize)> = Vec::new();
    for r in records {
        if !keys.contains(&(r.field, r.n)) {
            keys.push((r.field, r.n));
        }
    }
    let mut cells = Vec::new();
    for (field, n) in keys {
        let ok: Vec<(Method, f64)> = records
            .iter()
            .filter(|r| r.field == field && r.n == n && r.status == Status::Ok)
            .filter_map(|r| r.radius_value.map(|v| (r.method, v)))
            .collect();
        for i in 0..ok.len() {
            for j in i + 1..ok.len() {
                cells.push(DiscrepancyCell {
                    n,
                    field,
                    method_a: ok[i].0,
                    method_b: ok[j].0,
                    value: rel_discrepancy(ok[i].1, ok[j].1),
                });
            }
        }
    }
    cells
}

fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn md_float(x: f64) -> String {
    format!("{x:.2e}")
}

pub fn timings_csv(records: &[BenchRecord]) -> String {
    let mut s =
        String::from("n,field,method,wall_seconds,trials_used,status,radius_value,theta_star\n");
    for r in records {
        let opt = |x: Option<f64>| x.map(csv_float).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.n,
            r.field,
            r.method,
            csv_float(r.wall_seconds),
            r.trials_used,
            r.status.as_str(),
            opt(r.radius_value),
            opt(r.theta_star)
        );
    }
    s
}

pub fn discrepancies_csv(cells: &[DiscrepancyCell]) -> String {
    let mut s = String::from("n,field,method_a,method_b,rel_discrepancy\n");
    for c in cells {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            c.n,
            c.field,
            c.method_a,
            c.method_b,
            csv_float(c.value)
        );
    }
    s
}

pub fn report_markdown(records: &[BenchRecord], cells: &[DiscrepancyCell]) -> String {
    let mut s = String::from("# Numerical radius benchmark\n");
    let mut fields: Vec<Field> = records.iter().map(|r| r.field).collect();
    fields.sort();
    fields.dedup();
    for field in fields {
        let rows: Vec<&BenchRecord> = records.iter().filter(|r| r.field == field).collect();
        let mut sizes: Vec<usize> = rows.iter().map(|r| r.n).collect();
        sizes.sort();
        sizes.dedup();
        let mut methods: Vec<Method> = Vec::new();
        for r in &rows {
            if !methods.contains(&r.method) {
                methods.push(r.method);
            }
        }

        let _ = writeln!(s, "\n## {field} matrices\n\n### Mean wall time (seconds)\n");
        let _ = write!(s, "| n |");
        for m in &methods {
            let _ = write!(s, " {m} |");
        }
        let _ = write!(s, "\n|---|");
        for _ in &methods {
            let _ = write!(s, "---|");
        }
        s.push('\n');
        for &n in &sizes {
            let _ = write!(s, "| {n} |");
            for &m in &methods {
                let cell = match rows.iter().find(|r| r.n == n && r.method == m) {
                    Some(r) if r.status == Status::Ok => md_float(r.wall_seconds),
                    Some(r) => r.status.as_str().to_string(),
                    None => String::new(),
                };
                let _ = write!(s, " {cell} |");
            }
            s.push('\n');
        }

        let mut pairs: Vec<(Method, Method)> = Vec::new();
        for c in cells.iter().filter(|c| c.field == field) {
            if !pairs.contains(&(c.method_a, c.method_b)) {
                pairs.push((c.method_a, c.method_b));
            }
        }
        let _ = writeln!(s, "\n### Relative discrepancy\n");
        if pairs.is_empty() {
            let _ = writeln!(s, "No pair of methods succeeded on the same matrix.");
            continue;
        }
        let _ = write!(s, "| n |");
        for (a, b) in &pairs {
            let _ = write!(s, " {a}-{b} |");
        }
        let _ = write!(s, "\n|---|");
        for _ in &pairs {
            let _ = write!(s, "---|");
        }
        s.push('\n');
        for &n in &sizes {
            let _ = write!(s, "| {n} |");
            for &(a, b) in &pairs {
                let cell = cells
                    .iter()
                    .find(|c| c.field == field && c.n == n && c.method_a == a && c.method_b == b)
                    .map(|c| md_float(c.value))
                    .unwrap_or_default();
                let _ = write!(s, " {cell} |");
            }
            s.push('\n');
        }
    }
    s
}

/// Writes `timings.csv`, `discrepancies.csv` and `report.md` into `dir`.
pub fn emit_reports(records: &[BenchRecord], cells: &[DiscrepancyCell], dir: &Path) -> Result<()> {
    let write = |name: &str, text: String| {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|source| NumradError::Io { path, source })
    };
    fs::create_dir_all(dir).map_err(|source| NumradError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    write("timings.csv", timings_csv(records))?;
    write("discrepancies.csv", discrepancies_csv(cells))?;
    write("report.md", report_markdown(records, cells))
}
