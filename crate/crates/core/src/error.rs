use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the radius solvers and their supporting I/O.
#[derive(Debug, Error)]
pub enum NumradError {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("Hermitian eigensolver failed at theta = {theta} (n = {n})")]
    Eigensolver { theta: f64, n: usize },

    #[error("{what} failed for an {n}x{n} matrix")]
    Decomposition { what: &'static str, n: usize },

    #[error("generalized eigensolver failed at level {gamma} (pencil size {size})")]
    Pencil { gamma: f64, size: usize },

    #[error("level-set iteration cap ({cap}) reached; best level {best_gamma}")]
    LevelSetCap {
        cap: usize,
        best_gamma: f64,
        levels: Vec<f64>,
    },

    #[error(
        "Chebyshev interpolation did not converge with {max_len} points on [{a}, {b}]; \
         trailing coefficient magnitude {tail:.3e}"
    )]
    ChebyshevNoConvergence {
        a: f64,
        b: f64,
        max_len: usize,
        tail: f64,
        coeff_profile: Vec<f64>,
    },

    #[error("SDP solver size limit exceeded: n = {n} > {limit}")]
    SdpSizeLimit { n: usize, limit: usize },

    #[error(
        "SDP Newton iteration cap ({cap}) reached; best c = {best_c}, gap bound {gap_bound:.3e}"
    )]
    SdpIterationCap {
        cap: usize,
        best_c: f64,
        gap_bound: f64,
    },

    #[error("SDP line search lost positive definiteness after {halvings} halvings")]
    SdpLineSearch { halvings: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
}

pub type Result<T> = std::result::Result<T, NumradError>;
