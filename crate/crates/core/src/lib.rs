//! Numerical radius `r(A) = max { |v^* A v| : ||v|| = 1 }` of dense complex
//! matrices, computed four independent ways:
//!
//! - [`levelset`]: local maximization of `h(theta) = lambda_max(H(theta))`
//!   certified by level sets from a quadratic eigenvalue pencil,
//! - [`chebyshev`]: adaptive Chebyshev interpolation of `h` followed by
//!   global maximization of the interpolant,
//! - [`sdp`]: a log-det barrier method on the semidefinite characterization,
//! - [`grid`]: brute-force sampling with local refinement (the oracle).
//!
//! [`bench`] runs the methods against each other on random matrices.

pub mod bench;
pub mod chebyshev;
pub mod error;
pub mod grid;
pub mod levelset;
pub mod matrix;
pub mod mmio;
pub mod result;
pub mod sdp;
pub mod spectral;

pub use error::{NumradError, Result};
pub use matrix::{HermitianMatrix, Matrix};
pub use result::{Method, RadiusResult};
