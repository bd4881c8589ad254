use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::normal_form::{in_upper_half, Block, FormKind, NormalForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    StronglyLinearlyStable,
    LinearlyStableNotStrong,
    SpectrallyStableLinearlyUnstable,
    EllipticHyperbolic,
    Hyperbolic,
}

impl Verdict {
    pub fn is_linearly_stable(&self) -> bool {
        matches!(self, Verdict::StronglyLinearlyStable | Verdict::LinearlyStableNotStrong)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Position of a parameter point relative to the curves `Gamma_k <= Gamma_s <= Gamma_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    BelowGammaK,
    OnGammaK,
    KtoS,
    OnGammaS,
    StoM,
    OnGammaM,
    AboveGammaM,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub verdict: Verdict,
    pub normal_form: NormalForm,
    pub region: Option<Region>,
}

const COLLISION_ANGLE_TOL: f64 = 1e-9;

/// Verdict and region implied by a normal form.
pub fn stability_verdict(nf: &NormalForm) -> StabilityVerdict {
    use FormKind::*;
    use Region::*;
    use Verdict::*;
    let (verdict, region) = match nf.kind() {
        EllipticElliptic { theta1, theta2 } => {
            if (theta1 + theta2 - 2.0 * PI).abs() <= COLLISION_ANGLE_TOL {
                (LinearlyStableNotStrong, None)
            } else {
                let region = match (in_upper_half(theta1), in_upper_half(theta2)) {
                    (true, false) | (false, true) => Some(KtoS),
                    (false, false) => Some(AboveGammaM),
                    (true, true) => None,
                };
                (StronglyLinearlyStable, region)
            }
        }
        FormKind::EllipticHyperbolic { .. } => (Verdict::EllipticHyperbolic, Some(StoM)),
        ComplexSaddle | HyperbolicHyperbolic => (Hyperbolic, Some(BelowGammaK)),
        KreinCollision { .. } => (SpectrallyStableLinearlyUnstable, Some(OnGammaK)),
        MinusIdentityRotation { .. } => (LinearlyStableNotStrong, Some(OnGammaS)),
        MinusJordanRotation { a, .. } => {
            (SpectrallyStableLinearlyUnstable, Some(if a < 0 { OnGammaS } else { OnGammaM }))
        }
        MinusJordanHyperbolic { .. } => (Verdict::EllipticHyperbolic, Some(OnGammaK)),
        MinusJordanPair { a: 0, b: 0 } => (LinearlyStableNotStrong, Some(OnGammaK)),
        MinusJordanPair { .. } | DoubleJordan { .. } => (SpectrallyStableLinearlyUnstable, Some(OnGammaK)),
        Parabolic => {
            let off_circle = nf
                .blocks
                .iter()
                .any(|b| matches!(b, Block::Hyperbolic { .. } | Block::ComplexSaddle { .. }));
            let jordan = nf.blocks.iter().any(|b| {
                matches!(b, Block::Parabolic { a, .. } if *a != 0)
                    || matches!(b, Block::DoubleJordan { .. } | Block::KreinCollision { .. })
            });
            let verdict = if off_circle {
                Verdict::EllipticHyperbolic
            } else if jordan {
                SpectrallyStableLinearlyUnstable
            } else {
                LinearlyStableNotStrong
            };
            (verdict, None)
        }
    };
    StabilityVerdict { verdict, normal_form: nf.clone(), region }
}
