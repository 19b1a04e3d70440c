//! Projection onto an intersection of two cones and a numerical test of
//! `K ∩ L = {0}`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ConeSpec, MEMBERSHIP_TOL};
use crate::error::{Error, Result};
use crate::sampling::{rng_from_seed, unit_sphere};
use crate::vector;

const DYKSTRA_MAX_ITER: usize = 20_000;
const DYKSTRA_TOL: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq)]
pub struct DykstraResult {
    pub point: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
}

/// Dykstra's alternating projections for `P_{K ∩ L}(x)`.
pub fn dykstra_project(k: &ConeSpec, l: &ConeSpec, x: &[f64]) -> Result<DykstraResult> {
    if k.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: l.dim(),
        });
    }
    let n = x.len();
    let scale = 1.0 + vector::norm(x);
    let mut y = x.to_vec();
    let mut p = vec![0.0; n];
    let mut q = vec![0.0; n];
    for it in 1..=DYKSTRA_MAX_ITER {
        let z = k.project(&vector::add(&y, &p))?;
        p = vector::sub(&vector::add(&y, &p), &z);
        let y_next = l.project(&vector::add(&z, &q))?;
        q = vector::sub(&vector::add(&z, &q), &y_next);
        let moved = vector::dist(&y_next, &y);
        let gap = vector::dist(&z, &y_next);
        y = y_next;
        if moved <= DYKSTRA_TOL * scale && gap <= DYKSTRA_TOL * scale {
            return Ok(DykstraResult {
                point: y,
                converged: true,
                iterations: it,
            });
        }
    }
    Ok(DykstraResult {
        point: y,
        converged: false,
        iterations: DYKSTRA_MAX_ITER,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IntersectionStatus {
    Trivial,
    Nontrivial,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionResult {
    pub status: IntersectionStatus,
    /// Unit vector in both cones, for `Nontrivial`.
    pub witness: Option<Vec<f64>>,
    /// Largest `min(margin_K, margin_L)` found on the unit sphere.
    pub best_joint_margin: f64,
}

/// Decides `K ∩ L = {0}` numerically.
///
/// Two routes are combined: Dykstra projections of seeded points onto
/// `K ∩ L` (any nonzero result is a witness), and multi-start supergradient
/// ascent of the joint margin `min(margin_K, margin_L)` on the sphere.
/// `Trivial` needs every projection to vanish and the best joint margin to
/// stay below `-tol`.
pub fn intersection_trivial(
    k: &ConeSpec,
    l: &ConeSpec,
    budget: usize,
    tol: f64,
    seed: u64,
) -> Result<IntersectionResult> {
    if k.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: l.dim(),
        });
    }
    let n = k.dim();
    let mut rng = rng_from_seed(seed);
    let mut points = vec![k.center(), l.center()];
    if let Some(mid) = vector::normalized(&vector::add(&k.center(), &l.center())) {
        points.push(mid);
    }
    while points.len() < budget.max(8) {
        points.push(unit_sphere(&mut rng, n));
    }

    let joint = |x: &[f64]| k.margin(x).min(l.margin(x));
    let mut best_margin = f64::NEG_INFINITY;
    let mut best_point = points[0].clone();
    let mut all_vanish = true;

    for x in &points {
        let d = dykstra_project(k, l, x)?;
        let r = vector::norm(&d.point);
        if r > 1e-9 {
            let w = vector::scaled(&d.point, 1.0 / r);
            if k.contains(&w, MEMBERSHIP_TOL)? && l.contains(&w, MEMBERSHIP_TOL)? {
                return Ok(IntersectionResult {
                    status: IntersectionStatus::Nontrivial,
                    best_joint_margin: joint(&w),
                    witness: Some(w),
                });
            }
        }
        if !d.converged || r > 1e-12 {
            all_vanish = false;
        }
        let (m, y) = ascend(k, l, x, &mut rng);
        if m > best_margin {
            best_margin = m;
            best_point = y;
        }
    }
    if best_margin >= -MEMBERSHIP_TOL {
        return Ok(IntersectionResult {
            status: IntersectionStatus::Nontrivial,
            witness: Some(best_point),
            best_joint_margin: best_margin,
        });
    }
    let status = if all_vanish && best_margin <= -tol {
        IntersectionStatus::Trivial
    } else {
        IntersectionStatus::Inconclusive
    };
    Ok(IntersectionResult {
        status,
        witness: None,
        best_joint_margin: best_margin,
    })
}

fn ascend<R: Rng + ?Sized>(k: &ConeSpec, l: &ConeSpec, start: &[f64], rng: &mut R) -> (f64, Vec<f64>) {
    let joint = |x: &[f64]| k.margin(x).min(l.margin(x));
    let mut x = start.to_vec();
    let mut best = (joint(&x), x.clone());
    for it in 0..400 {
        let (mk, ml) = (k.margin(&x), l.margin(&x));
        let g = if mk < ml {
            k.margin_gradient(&x)
        } else if ml < mk {
            l.margin_gradient(&x)
        } else {
            // at a tie, a random convex combination of the two supergradients
            let t: f64 = rng.random();
            vector::axpy(&vector::scaled(&k.margin_gradient(&x), t), 1.0 - t, &l.margin_gradient(&x))
        };
        let tangent = vector::axpy(&g, -vector::dot(&g, &x), &x);
        let step = 0.5 / ((it + 1) as f64).sqrt();
        match vector::normalized(&vector::axpy(&x, step, &tangent)) {
            Some(y) => x = y,
            None => break,
        }
        let m = joint(&x);
        if m > best.0 {
            best = (m, x.clone());
        }
    }
    best
}
