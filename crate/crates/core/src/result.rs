use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Which characterization produced a radius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Lso,
    Cheb,
    Sdp,
    Grid,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Lso, Method::Cheb, Method::Sdp, Method::Grid];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Lso => "lso",
            Method::Cheb => "cheb",
            Method::Sdp => "sdp",
            Method::Grid => "grid",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lso" => Ok(Method::Lso),
            "cheb" | "cf" => Ok(Method::Cheb),
            "sdp" => Ok(Method::Sdp),
            "grid" => Ok(Method::Grid),
            other => Err(format!(
                "unknown method `{other}` (expected lso, cheb, sdp or grid)"
            )),
        }
    }
}

/// A computed numerical radius.
///
/// `degenerate` marks results that came from a fallback path (singular
/// level-set pencil, Chebyshev root failure, ...), `capped` marks an
/// iteration cap that was hit without meeting the convergence test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub value: f64,
    pub theta_star: f64,
    pub method: Method,
    pub iterations: usize,
    pub h_evals: usize,
    pub wall_seconds: f64,
    pub degenerate: bool,
    pub capped: bool,
}

/// Maps any angle into `[0, 2 pi)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    let t = theta.rem_euclid(two_pi);
    if t >= two_pi {
        0.0
    } else {
        t
    }
}
