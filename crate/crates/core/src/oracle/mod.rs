//! Sampling oracles for spherical quasi-convexity of `q_A`.
//!
//! Three equivalent formulations are tested independently: the value of
//! `q_A` along minimal geodesics, the pairwise inequalities
//! `⟨Ax,y⟩ ≤ ⟨x,y⟩·max{q_A(x), q_A(y)}` (and their Rayleigh-quotient form),
//! and convexity of the sublevel cones `{x ∈ K : ⟨(A − cI)x, x⟩ ≤ 0}`.
//! A reported violation always carries a [`Counterexample`] that re-verifies
//! by direct evaluation; the absence of a violation certifies nothing.

mod counterexample;
mod checks;

pub use counterexample::{Counterexample, PairwiseForm};
pub use checks::{
    geodesic_quasiconvexity_test, pairwise_test, sublevel_convexity_test, LevelSelection, OracleOptions,
    OracleOutcome, OracleStatus,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SymmetricMatrix;
use crate::vector;

/// Pairs farther apart than `π − ANTIPODAL_GAP` are discarded.
pub const ANTIPODAL_GAP: f64 = 1e-6;

/// Endpoints of a minimal geodesic in the cap.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicSample {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub theta: f64,
    pub grid: usize,
}

/// Point at parameter `t` of the minimal geodesic from `x` to `y`:
/// `(sin((1−t)θ)x + sin(tθ)y)/sin θ`, `θ = arccos⟨x,y⟩`.
pub fn geodesic_point(x: &[f64], y: &[f64], t: f64) -> Result<Vec<f64>> {
    let c = vector::dot(x, y).clamp(-1.0, 1.0);
    let theta = c.acos();
    let s = theta.sin();
    if s < 1e-12 {
        return Err(Error::DegenerateGeodesic);
    }
    if t == 0.0 {
        return Ok(x.to_vec());
    }
    if t == 1.0 {
        return Ok(y.to_vec());
    }
    let a = ((1.0 - t) * theta).sin() / s;
    let b = (t * theta).sin() / s;
    Ok(vector::axpy(&vector::scaled(x, a), b, y))
}

/// `φ_A(x) = ⟨Ax, x⟩/‖x‖²`.
pub fn rayleigh(a: &SymmetricMatrix, x: &[f64]) -> Result<f64> {
    let nn = vector::dot(x, x);
    if nn == 0.0 || !nn.is_finite() {
        return Err(Error::InvalidInput("Rayleigh quotient of the zero vector".into()));
    }
    Ok(a.quad(x) / nn)
}

/// `q_A` on the great circle through unit `x` toward `y`, parametrized by arc
/// length `s`: `q(s) = P + Q cos 2s + R sin 2s`.
#[derive(Clone, Debug)]
pub(crate) struct Arc {
    pub theta: f64,
    p: f64,
    q: f64,
    r: f64,
}

impl Arc {
    pub fn new(a: &SymmetricMatrix, x: &[f64], y: &[f64]) -> Option<Self> {
        let c = vector::dot(x, y).clamp(-1.0, 1.0);
        let theta = c.acos();
        let w = vector::normalized(&vector::axpy(y, -c, x))?;
        let qx = a.quad(x);
        let qw = a.quad(&w);
        let b = a.bilinear(x, &w);
        Some(Self {
            theta,
            p: 0.5 * (qx + qw),
            q: 0.5 * (qx - qw),
            r: b,
        })
    }

    pub fn value(&self, s: f64) -> f64 {
        self.p + self.q * (2.0 * s).cos() + self.r * (2.0 * s).sin()
    }

    pub fn amplitude(&self) -> f64 {
        self.q.hypot(self.r)
    }

    /// Arc length of the interior maximizer on `(0, θ)`, if any.
    pub fn interior_max(&self) -> Option<f64> {
        if self.amplitude() == 0.0 {
            return None;
        }
        let mut s = 0.5 * self.r.atan2(self.q);
        if s < 0.0 {
            s += std::f64::consts::PI;
        }
        (s > 0.0 && s < self.theta).then_some(s)
    }
}
