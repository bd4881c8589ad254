//! Euler collinear central configuration, the massless body's position and the
//! Keplerian kinematics carrying the configuration.

mod configuration;
mod masses;
mod orbit;

pub use configuration::{
    build_collinear_cc, massless_residual, solve_massless_position, solve_symmetric_y,
    symmetric_y_residual, CentralConfiguration, CollinearConfiguration, Vec2,
};
pub use masses::{euler_quintic_coefficients, quintic_residual, solve_euler_quintic, MassTriple};
pub use orbit::{check_eccentricity, mean_anomaly_of_true, sigma_of, KeplerOrbit, DEFAULT_E_MAX};
