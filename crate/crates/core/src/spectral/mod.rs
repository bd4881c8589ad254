//! Eigen-analysis of the period map: Krein signs, basic normal forms, splitting numbers
//! and the stability verdict.

mod eigen;
mod normal_form;
mod splitting;
mod verdict;

pub use eigen::{eigenstructure, eigenvector, krein_value, pair_from_s, EigenStructure, Tolerances};
pub use normal_form::{classify_normal_form, in_upper_half, unit_angle, Block, FormKind, NormalForm};
pub use splitting::{block_splitting, index_via_splitting, splitting_numbers, unit_eigen_angles};
pub use verdict::{stability_verdict, Region, StabilityVerdict, Verdict};

use crate::error::Result;
use crate::linalg::Mat4;

/// Eigen-structure, normal form and verdict of a period map with default tolerances.
pub fn analyze(m: &Mat4) -> Result<StabilityVerdict> {
    let es = eigenstructure(m, &Tolerances::default())?;
    Ok(stability_verdict(&classify_normal_form(&es)))
}

#[cfg(test)]
mod tests;
