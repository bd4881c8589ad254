//! Linear stability of elliptic relative equilibria of the restricted planar 4-body
//! problem whose three primaries form an Euler collinear central configuration.
//!
//! The pipeline runs from masses to a verdict:
//!
//! 1. [`kepler_cc`] solves the collinear configuration and places the massless body.
//! 2. [`reduction`] builds the 2x2 matrix `D`, its gap `alpha` and the linear system
//!    `x' = J B(theta) x` in the pulsating frame.
//! 3. [`monodromy`] integrates the fundamental solution over one period.
//! 4. [`spectral`] classifies the period map into symplectic normal forms.
//! 5. [`maslov`] counts omega-Morse indices of the second order operator.
//! 6. [`atlas`] scans parameter planes, traces the bifurcation curves and drives the CLI.
//!
//! The stability of the linearized problem depends only on `(alpha, e)`.

pub mod atlas;
pub mod error;
pub mod kepler_cc;
pub mod linalg;
pub mod maslov;
pub mod monodromy;
pub mod reduction;
pub mod spectral;

pub use error::{Error, Result};
