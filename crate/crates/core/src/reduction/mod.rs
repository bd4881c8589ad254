//! Reduced linear data at the massless body: the matrix `D`, its eigen-gap `alpha`, the
//! coefficient `B(t)` of `x' = J B(t) x`, and the coordinate changes that carry the
//! relative equilibrium to a fixed point.

mod params;
mod system;
mod transform;

pub use params::{
    build_d, build_d_general, eigen_angle, eigen_split, symmetric_alpha, symmetric_chain,
    ReducedParams, SymmetricChain,
};
pub use system::{build_b, build_b_in, rotated_potential, Frame, LinearSystemCoeff};
pub use transform::{
    ere_state, fixed_point_deviation, inertial_to_reduced, reduction_jacobian, unit_massless_frame, UnitFrame,
};
