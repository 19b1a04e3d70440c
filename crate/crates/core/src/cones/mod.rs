//! Closed convex cones: the nonnegative orthant, the Lorentz cone, elliptic
//! cones in an orthonormal frame, and negations of these.

mod elliptic;
mod intersect;
mod lorentz;
mod moreau;
mod wcone;

pub use elliptic::{elliptic_levelcone, EllipticCone};
pub use intersect::{dykstra_project, intersection_trivial, IntersectionResult, IntersectionStatus};
pub use lorentz::{abs_lorentz, project_lorentz};
pub use moreau::{moreau_decompose, MoreauParts};
pub use wcone::{w_dual_contains, WConeSpec, WDualResult};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector;

/// Default additive tolerance on the defining inequality.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// Default margin required for strict interior membership.
pub const STRICT_MARGIN: f64 = 1e-7;

/// Three-valued answer of a numerical membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Membership {
    Yes,
    No,
    Inconclusive,
}

/// A proper (or, for degenerate level cones, closed convex) cone in `ℝⁿ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ConeSpec {
    Orthant { n: usize },
    Lorentz { n: usize },
    Elliptic(EllipticCone),
    Negated { inner: Box<ConeSpec> },
}

impl ConeSpec {
    pub fn orthant(n: usize) -> Self {
        ConeSpec::Orthant { n }
    }

    pub fn lorentz(n: usize) -> Self {
        ConeSpec::Lorentz { n }
    }

    /// The cone `-K`.
    pub fn negated(self) -> Self {
        match self {
            ConeSpec::Negated { inner } => *inner,
            other => ConeSpec::Negated {
                inner: Box::new(other),
            },
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConeSpec::Orthant { n } | ConeSpec::Lorentz { n } => *n,
            ConeSpec::Elliptic(e) => e.dim(),
            ConeSpec::Negated { inner } => inner.dim(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ConeSpec::Orthant { .. } => "orthant",
            ConeSpec::Lorentz { .. } => "lorentz",
            ConeSpec::Elliptic(_) => "elliptic",
            ConeSpec::Negated { .. } => "negated",
        }
    }

    /// `K* = K` for the orthant, the Lorentz cone and their negations.
    pub fn is_self_dual(&self) -> bool {
        match self {
            ConeSpec::Orthant { .. } | ConeSpec::Lorentz { .. } => true,
            ConeSpec::Elliptic(e) => e.weights().iter().all(|t| (t - 1.0).abs() <= 1e-12),
            ConeSpec::Negated { inner } => inner.is_self_dual(),
        }
    }

    /// `K ⊆ K*`. An elliptic cone is subdual iff every weight is at least one.
    pub fn is_subdual(&self) -> bool {
        match self {
            ConeSpec::Orthant { .. } | ConeSpec::Lorentz { .. } => true,
            ConeSpec::Elliptic(e) => !e.is_degenerate() && e.weights().iter().all(|t| *t >= 1.0 - 1e-12),
            ConeSpec::Negated { inner } => inner.is_subdual(),
        }
    }

    /// Strips negations, returning the base cone and whether an odd number
    /// of negations was removed.
    pub fn base(&self) -> (&ConeSpec, bool) {
        match self {
            ConeSpec::Negated { inner } => {
                let (b, neg) = inner.base();
                (b, !neg)
            }
            other => (other, false),
        }
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Signed slack of the defining inequality; nonnegative exactly on `K`.
    pub fn margin(&self, x: &[f64]) -> f64 {
        match self {
            ConeSpec::Orthant { .. } => x.iter().copied().fold(f64::INFINITY, f64::min),
            ConeSpec::Lorentz { .. } => x[0] - vector::tail_norm(x),
            ConeSpec::Elliptic(e) => e.margin(x),
            ConeSpec::Negated { inner } => inner.margin(&vector::neg(x)),
        }
    }

    /// A supergradient of [`margin`](Self::margin) at `x`.
    pub fn margin_gradient(&self, x: &[f64]) -> Vec<f64> {
        match self {
            ConeSpec::Orthant { n } => {
                let mut k = 0;
                for i in 1..*n {
                    if x[i] < x[k] {
                        k = i;
                    }
                }
                vector::unit(*n, k)
            }
            ConeSpec::Lorentz { n } => {
                let r = vector::tail_norm(x);
                let mut g = vector::unit(*n, 0);
                if r > 0.0 {
                    for i in 1..*n {
                        g[i] = -x[i] / r;
                    }
                }
                g
            }
            ConeSpec::Elliptic(e) => e.margin_gradient(x),
            ConeSpec::Negated { inner } => inner.margin_gradient(&vector::neg(x)),
        }
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        self.check_dim(x)?;
        Ok(self.margin(x) >= -tol)
    }

    /// Interior membership with the defining inequality satisfied by `margin`.
    pub fn contains_strict(&self, x: &[f64], margin: f64) -> Result<bool> {
        self.check_dim(x)?;
        Ok(self.margin(x) > margin)
    }

    /// Tests `y ∈ K*`.
    ///
    /// Exact for the orthant and the Lorentz cone. For elliptic cones the
    /// minimum of `⟨y, x⟩` over unit `x ∈ K` is `-‖P_K(-y)‖`, which is
    /// evaluated through the projection; a `No` answer is confirmed by a
    /// re-verified unit witness.
    pub fn dual_contains(&self, y: &[f64], tol: f64) -> Result<Membership> {
        self.check_dim(y)?;
        match self {
            ConeSpec::Orthant { .. } | ConeSpec::Lorentz { .. } => Ok(if self.margin(y) >= -tol {
                Membership::Yes
            } else {
                Membership::No
            }),
            ConeSpec::Negated { inner } => inner.dual_contains(&vector::neg(y), tol),
            ConeSpec::Elliptic(_) => {
                let (min, witness) = self.min_linear_on_cap(y)?;
                if min >= -tol {
                    return Ok(Membership::Yes);
                }
                match witness {
                    Some(x) if self.contains(&x, MEMBERSHIP_TOL)? && vector::dot(y, &x) < -tol => {
                        Ok(Membership::No)
                    }
                    _ => Ok(Membership::Inconclusive),
                }
            }
        }
    }

    /// `min ⟨v, x⟩` over unit `x ∈ K`, with the minimizer when the minimum is
    /// negative.
    pub fn min_linear_on_cap(&self, v: &[f64]) -> Result<(f64, Option<Vec<f64>>)> {
        let p = self.project(&vector::neg(v))?;
        let r = vector::norm(&p);
        if r <= 1e-300 {
            return Ok((0.0, None));
        }
        let x = vector::scaled(&p, 1.0 / r);
        Ok((vector::dot(v, &x), Some(x)))
    }

    /// Metric projection onto `K`.
    pub fn project(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        Ok(match self {
            ConeSpec::Orthant { .. } => x.iter().map(|v| v.max(0.0)).collect(),
            ConeSpec::Lorentz { .. } => project_lorentz(x).plus,
            ConeSpec::Elliptic(e) => e.project(x),
            ConeSpec::Negated { inner } => vector::neg(&inner.project(&vector::neg(x))?),
        })
    }

    /// A unit vector deep inside the cone.
    pub fn center(&self) -> Vec<f64> {
        match self {
            ConeSpec::Orthant { n } => vec![1.0 / (*n as f64).sqrt(); *n],
            ConeSpec::Lorentz { n } => vector::unit(*n, 0),
            ConeSpec::Elliptic(e) => e.axis().to_vec(),
            ConeSpec::Negated { inner } => vector::neg(&inner.center()),
        }
    }
}
