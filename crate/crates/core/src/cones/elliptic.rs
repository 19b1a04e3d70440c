//! Elliptic cones `{x : ⟨v¹,x⟩ ≥ √(Σᵢ θᵢ⟨vⁱ,x⟩²)}` in an orthonormal frame.

use serde::{Deserialize, Serialize};

use super::ConeSpec;
use crate::error::{Error, Result};
use crate::linalg::SpectralDecomposition;
use crate::vector;

const ORTHONORMAL_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipticCone {
    axis: Vec<f64>,
    basis: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl EllipticCone {
    /// Validates orthonormality of `{axis} ∪ basis` and nonnegativity of the
    /// weights. Zero weights yield a degenerate (non-pointed) cone.
    pub fn new(axis: Vec<f64>, basis: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        let n = axis.len();
        if n < 2 {
            return Err(Error::InvalidInput("elliptic cone needs dimension at least 2".into()));
        }
        if basis.len() != n - 1 {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                found: basis.len(),
            });
        }
        if weights.len() != n - 1 {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                found: weights.len(),
            });
        }
        if let Some(b) = basis.iter().find(|b| b.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.len(),
            });
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidInput("elliptic weights must be finite and nonnegative".into()));
        }
        let frame: Vec<&Vec<f64>> = std::iter::once(&axis).chain(basis.iter()).collect();
        for i in 0..n {
            if frame[i].iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidInput("elliptic frame is not finite".into()));
            }
            for j in 0..=i {
                let expected = if i == j { 1.0 } else { 0.0 };
                if (vector::dot(frame[i], frame[j]) - expected).abs() > ORTHONORMAL_TOL {
                    return Err(Error::InvalidInput(
                        "elliptic axis and basis must be orthonormal".into(),
                    ));
                }
            }
        }
        Ok(Self {
            axis,
            basis,
            weights,
        })
    }

    /// Axis `eⁱ`-aligned cone with `v¹ = e¹`, `vⁱ = eⁱ`.
    pub fn axis_aligned(n: usize, weights: &[f64]) -> Result<Self> {
        let basis = (1..n).map(|i| vector::unit(n, i)).collect();
        Self::new(vector::unit(n, 0), basis, weights.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.axis.len()
    }

    pub fn axis(&self) -> &[f64] {
        &self.axis
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Some weight vanishes, so the cone contains a line.
    pub fn is_degenerate(&self) -> bool {
        self.weights.contains(&0.0)
    }

    /// The cone with the axis reversed, i.e. `-ℰ`.
    pub fn reversed(&self) -> Self {
        Self {
            axis: vector::neg(&self.axis),
            basis: self.basis.clone(),
            weights: self.weights.clone(),
        }
    }

    /// Coordinates `(⟨v¹,x⟩, ⟨v²,x⟩, …)`.
    pub fn coordinates(&self, x: &[f64]) -> Vec<f64> {
        std::iter::once(vector::dot(&self.axis, x))
            .chain(self.basis.iter().map(|b| vector::dot(b, x)))
            .collect()
    }

    /// Inverse of [`coordinates`](Self::coordinates).
    pub fn from_coordinates(&self, z: &[f64]) -> Vec<f64> {
        let mut x = vector::scaled(&self.axis, z[0]);
        for (b, zi) in self.basis.iter().zip(&z[1..]) {
            x = vector::axpy(&x, *zi, b);
        }
        x
    }

    pub fn margin(&self, x: &[f64]) -> f64 {
        let z = self.coordinates(x);
        let s: f64 = self
            .weights
            .iter()
            .zip(&z[1..])
            .map(|(t, zi)| t * zi * zi)
            .sum();
        z[0] - s.sqrt()
    }

    pub fn margin_gradient(&self, x: &[f64]) -> Vec<f64> {
        let z = self.coordinates(x);
        let s: f64 = self
            .weights
            .iter()
            .zip(&z[1..])
            .map(|(t, zi)| t * zi * zi)
            .sum::<f64>()
            .sqrt();
        let mut g = self.axis.clone();
        if s > 0.0 {
            for ((b, t), zi) in self.basis.iter().zip(&self.weights).zip(&z[1..]) {
                g = vector::axpy(&g, -t * zi / s, b);
            }
        }
        g
    }

    /// Columns of a map `B` with `B(ℒ) = ℰ`; `None` when degenerate.
    pub fn lorentz_map(&self) -> Option<Vec<Vec<f64>>> {
        if self.is_degenerate() {
            return None;
        }
        let mut cols = vec![self.axis.clone()];
        for (b, t) in self.basis.iter().zip(&self.weights) {
            cols.push(vector::scaled(b, 1.0 / t.sqrt()));
        }
        Some(cols)
    }

    /// Metric projection. Coordinates with zero weight are unconstrained and
    /// pass through; on the rest the KKT system `z₁ = p/(1−μ)`,
    /// `zᵢ = qᵢ/(1+μθᵢ)` is solved for the multiplier `μ > 0` by bisection
    /// on the strictly decreasing map `μ ↦ (1−μ)√(Σθᵢqᵢ²/(1+μθᵢ)²)`.
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        let z = self.coordinates(x);
        let p = z[0];
        let q = &z[1..];
        let active: Vec<usize> = (0..q.len()).filter(|&i| self.weights[i] > 0.0).collect();
        let weighted = |mu: f64| -> f64 {
            active
                .iter()
                .map(|&i| {
                    let t = self.weights[i];
                    let zi = q[i] / (1.0 + mu * t);
                    t * zi * zi
                })
                .sum::<f64>()
                .sqrt()
        };
        let mut out = z.clone();
        let inside = weighted(0.0);
        if p >= inside {
            return x.to_vec();
        }
        let polar: f64 = active
            .iter()
            .map(|&i| q[i] * q[i] / self.weights[i])
            .sum::<f64>()
            .sqrt();
        if -p >= polar {
            out[0] = 0.0;
            for &i in &active {
                out[i + 1] = 0.0;
            }
            return self.from_coordinates(&out);
        }
        // μ = s/(1−s), s ∈ (0,1)
        let psi = |s: f64| -> f64 {
            let mu = s / (1.0 - s);
            (1.0 - mu) * weighted(mu)
        };
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if psi(mid) > p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let s = 0.5 * (lo + hi);
        let mu = s / (1.0 - s);
        for &i in &active {
            out[i + 1] = q[i] / (1.0 + mu * self.weights[i]);
        }
        out[0] = weighted(mu);
        self.from_coordinates(&out)
    }
}

/// The level cone `ℒ_c` of a spectrum with `θᵢ(c) = (λᵢ − c)/(c − λ₁)`.
///
/// Requires `λ₁ < c ≤ λ₂`; at `c = λ₂` the cone is degenerate.
pub fn elliptic_levelcone(dec: &SpectralDecomposition, c: f64) -> Result<ConeSpec> {
    let l = dec.eigenvalues();
    if c.is_nan() || c <= l[0] || c > l[1] {
        return Err(Error::Domain(format!(
            "level {c} must lie in (λ₁, λ₂] = ({}, {}]",
            l[0], l[1]
        )));
    }
    let weights: Vec<f64> = l[1..]
        .iter()
        .map(|li| ((li - c) / (c - l[0])).max(0.0))
        .collect();
    let basis = dec.eigenvectors()[1..].to_vec();
    let cone = EllipticCone::new(dec.eigenvector(0).to_vec(), basis, weights)?;
    Ok(ConeSpec::Elliptic(cone))
}
