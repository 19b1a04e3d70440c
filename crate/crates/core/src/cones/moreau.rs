use serde::{Deserialize, Serialize};

use super::{project_lorentz, ConeSpec};
use crate::error::{Error, Result};

/// Moreau decomposition `x = plus − minus` with `plus ∈ K`, `minus ∈ K*`,
/// `⟨plus, minus⟩ = 0`, together with `abs = plus + minus`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoreauParts {
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
    pub abs: Vec<f64>,
}

/// Closed-form Moreau decomposition for the orthant and the Lorentz cone.
pub fn moreau_decompose(k: &ConeSpec, x: &[f64]) -> Result<MoreauParts> {
    if x.len() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: x.len(),
        });
    }
    match k {
        ConeSpec::Orthant { .. } => {
            let plus: Vec<f64> = x.iter().map(|v| v.max(0.0)).collect();
            let minus: Vec<f64> = x.iter().map(|v| (-v).max(0.0)).collect();
            let abs = x.iter().map(|v| v.abs()).collect();
            Ok(MoreauParts { plus, minus, abs })
        }
        ConeSpec::Lorentz { .. } => Ok(project_lorentz(x)),
        other => Err(Error::UnsupportedCone {
            operation: "Moreau decomposition",
            cone: other.name(),
        }),
    }
}
