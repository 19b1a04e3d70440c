use serde::{Deserialize, Serialize};

use super::{geodesic_point, rayleigh, Arc};
use crate::cones::ConeSpec;
use crate::error::Result;
use crate::linalg::SymmetricMatrix;
use crate::vector;

/// Which pairwise inequality is violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PairwiseForm {
    /// `⟨Ax,y⟩ ≤ ⟨x,y⟩·max{q_A(x), q_A(y)}` for unit `x, y`.
    Sphere,
    /// `⟨Ax,y⟩/⟨x,y⟩ ≤ max{φ_A(x), φ_A(y)}` for `⟨x,y⟩ ≠ 0`.
    Rayleigh,
}

/// Explicit data refuting spherical quasi-convexity of `q_A`; `margin` is
/// the amount by which the relevant inequality fails.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Counterexample {
    /// `q_A(γ(t)) − max{q_A(x), q_A(y)}` on the geodesic from `x` to `y`.
    Geodesic {
        x: Vec<f64>,
        y: Vec<f64>,
        t: f64,
        point: Vec<f64>,
        margin: f64,
    },
    Pairwise {
        form: PairwiseForm,
        x: Vec<f64>,
        y: Vec<f64>,
        margin: f64,
    },
    /// `φ_A(z) − c` for `z = (1−s)x + sy` with `φ_A(x), φ_A(y) ≤ c`.
    Sublevel {
        x: Vec<f64>,
        y: Vec<f64>,
        level: f64,
        s: f64,
        point: Vec<f64>,
        margin: f64,
    },
}

impl Counterexample {
    pub fn margin(&self) -> f64 {
        match self {
            Counterexample::Geodesic { margin, .. }
            | Counterexample::Pairwise { margin, .. }
            | Counterexample::Sublevel { margin, .. } => *margin,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Counterexample::Geodesic { .. } => "GEODESIC",
            Counterexample::Pairwise { .. } => "PAIRWISE",
            Counterexample::Sublevel { .. } => "SUBLEVEL",
        }
    }

    /// Endpoints of the underlying pair.
    pub fn endpoints(&self) -> (&[f64], &[f64]) {
        match self {
            Counterexample::Geodesic { x, y, .. }
            | Counterexample::Pairwise { x, y, .. }
            | Counterexample::Sublevel { x, y, .. } => (x, y),
        }
    }

    /// The violation margin evaluated from the stored data alone.
    pub fn recompute_margin(&self, a: &SymmetricMatrix) -> Result<f64> {
        Ok(match self {
            Counterexample::Geodesic { x, y, t, .. } => {
                let g = geodesic_point(x, y, *t)?;
                a.quad(&g) - a.quad(x).max(a.quad(y))
            }
            Counterexample::Pairwise {
                form: PairwiseForm::Sphere,
                x,
                y,
                ..
            } => a.bilinear(x, y) - vector::dot(x, y) * a.quad(x).max(a.quad(y)),
            Counterexample::Pairwise {
                form: PairwiseForm::Rayleigh,
                x,
                y,
                ..
            } => a.bilinear(x, y) / vector::dot(x, y) - rayleigh(a, x)?.max(rayleigh(a, y)?),
            Counterexample::Sublevel { x, y, level, s, .. } => {
                let z = vector::axpy(&vector::scaled(x, 1.0 - s), *s, y);
                rayleigh(a, &z)? - level
            }
        })
    }

    /// Re-verifies the counterexample by direct evaluation: endpoints in
    /// `int K`, the form's side conditions, a margin above `tol`, and
    /// agreement with the stored margin to `1e−12` (relative).
    pub fn verify(&self, a: &SymmetricMatrix, k: &ConeSpec, tol: f64) -> Result<bool> {
        let (x, y) = self.endpoints();
        if !(k.margin(x) > 0.0 && k.margin(y) > 0.0) {
            return Ok(false);
        }
        let unit = |v: &[f64]| (vector::norm(v) - 1.0).abs() <= 1e-12;
        let side = match self {
            Counterexample::Geodesic { t, .. } => unit(x) && unit(y) && (0.0..=1.0).contains(t),
            Counterexample::Pairwise {
                form: PairwiseForm::Sphere,
                ..
            } => unit(x) && unit(y),
            Counterexample::Pairwise {
                form: PairwiseForm::Rayleigh,
                ..
            } => vector::dot(x, y).abs() > 1e-8,
            Counterexample::Sublevel { level, s, .. } => {
                // one endpoint sits exactly on the level; allow its rounding
                let cap = level + 1e-12 * (1.0 + level.abs());
                (0.0..=1.0).contains(s) && rayleigh(a, x)? <= cap && rayleigh(a, y)? <= cap
            }
        };
        if !side {
            return Ok(false);
        }
        let m = self.recompute_margin(a)?;
        Ok(m > tol && (m - self.margin()).abs() <= 1e-12 * (1.0 + m.abs()))
    }

    /// The geodesic through the same pair, refined to the exact arc maximizer.
    pub fn to_geodesic(&self, a: &SymmetricMatrix) -> Option<Counterexample> {
        if let Counterexample::Geodesic { .. } = self {
            return Some(self.clone());
        }
        let (x, y) = self.endpoints();
        let x = vector::normalized(x)?;
        let y = vector::normalized(y)?;
        geodesic_at_max(a, &x, &y)
    }

    /// The sublevel escape at level `c = max{q_A(x), q_A(y)}` of the geodesic
    /// form, at the segment point on the ray of the arc maximizer.
    pub fn to_sublevel(&self, a: &SymmetricMatrix) -> Option<Counterexample> {
        if let Counterexample::Sublevel { .. } = self {
            return Some(self.clone());
        }
        let Counterexample::Geodesic { x, y, t, .. } = self.to_geodesic(a)? else {
            return None;
        };
        let theta = vector::dot(&x, &y).clamp(-1.0, 1.0).acos();
        let s_arc = t * theta;
        let (p, q) = ((theta - s_arc).sin(), s_arc.sin());
        let s = q / (p + q);
        let level = a.quad(&x).max(a.quad(&y));
        let point = vector::axpy(&vector::scaled(&x, 1.0 - s), s, &y);
        let margin = rayleigh(a, &point).ok()? - level;
        Some(Counterexample::Sublevel {
            x,
            y,
            level,
            s,
            point,
            margin,
        })
    }

    /// A violated sphere-form pair `γ(s* − ε), γ(s* + ε)` placed
    /// symmetrically around the arc maximizer; its margin is
    /// `amplitude · sin²(2ε)`.
    pub fn to_pairwise(&self, a: &SymmetricMatrix) -> Option<Counterexample> {
        if let Counterexample::Pairwise { .. } = self {
            return Some(self.clone());
        }
        let Counterexample::Geodesic { x, y, .. } = self.to_geodesic(a)? else {
            return None;
        };
        symmetric_pair(a, &x, &y)
    }
}

pub(crate) fn geodesic_at_max(a: &SymmetricMatrix, x: &[f64], y: &[f64]) -> Option<Counterexample> {
    let arc = Arc::new(a, x, y)?;
    let s = arc.interior_max()?;
    let t = s / arc.theta;
    let point = geodesic_point(x, y, t).ok()?;
    let margin = a.quad(&point) - a.quad(x).max(a.quad(y));
    Some(Counterexample::Geodesic {
        x: x.to_vec(),
        y: y.to_vec(),
        t,
        point,
        margin,
    })
}

pub(crate) fn symmetric_pair(a: &SymmetricMatrix, x: &[f64], y: &[f64]) -> Option<Counterexample> {
    let arc = Arc::new(a, x, y)?;
    let s = arc.interior_max()?;
    let eps = s.min(arc.theta - s).min(std::f64::consts::FRAC_PI_4);
    let u = geodesic_point(x, y, (s - eps) / arc.theta).ok()?;
    let v = geodesic_point(x, y, (s + eps) / arc.theta).ok()?;
    let margin = a.bilinear(&u, &v) - vector::dot(&u, &v) * a.quad(&u).max(a.quad(&v));
    Some(Counterexample::Pairwise {
        form: PairwiseForm::Sphere,
        x: u,
        y: v,
        margin,
    })
}
