//! Projected gradient on `K ∩ S^{n−1}`: `x⁺ = normalize(P_K(x − s·∇_S f))`
//! with Armijo backtracking.

use rand::Rng;

use crate::cones::ConeSpec;
use crate::sampling::CapSampler;
use crate::vector;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapOptions {
    pub max_iter: usize,
    /// Bound on the gradient-mapping norm `‖x⁺ − x‖/s`, relative to `1 + ‖∇f‖`.
    pub stationarity_tol: f64,
    pub initial_step: f64,
}

impl Default for CapOptions {
    fn default() -> Self {
        Self {
            max_iter: 4000,
            stationarity_tol: 1e-9,
            initial_step: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CapOptimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Local minimization of a smooth `f` (value and Euclidean gradient) over
/// the closed cap `K ∩ S^{n−1}` from `start`.
pub fn minimize_on_cap<F>(cone: &ConeSpec, f: F, start: &[f64], opts: &CapOptions) -> CapOptimum
where
    F: Fn(&[f64]) -> (f64, Vec<f64>),
{
    let mut x = feasible(cone, start).unwrap_or_else(|| cone.center());
    let (mut fx, mut g) = f(&x);
    let mut step = opts.initial_step;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        iterations += 1;
        let radial = vector::dot(&g, &x);
        let rg = vector::axpy(&g, -radial, &x);
        let gnorm = vector::norm(&g);
        let mut accepted = None;
        let mut s = step;
        for _ in 0..60 {
            if let Some(y) = feasible(cone, &vector::axpy(&x, -s, &rg)) {
                let d2 = vector::dist(&y, &x).powi(2);
                let (fy, gy) = f(&y);
                if fy <= fx - 1e-4 * d2 / s {
                    accepted = Some((y, fy, gy, d2.sqrt() / s));
                    break;
                }
                if d2.sqrt() / s <= opts.stationarity_tol * (1.0 + gnorm) {
                    // no decrease possible at working precision
                    converged = true;
                    break;
                }
            }
            s *= 0.5;
        }
        match accepted {
            Some((y, fy, gy, mapping)) => {
                x = y;
                fx = fy;
                g = gy;
                step = (2.0 * s).min(1e6);
                if mapping <= opts.stationarity_tol * (1.0 + gnorm) {
                    converged = true;
                    break;
                }
            }
            None => break,
        }
        if converged {
            break;
        }
    }
    CapOptimum {
        x,
        value: fx,
        converged,
        iterations,
    }
}

/// Best local minimum over several starts; ties go to the earliest start.
pub fn multistart_minimize<F>(
    cone: &ConeSpec,
    f: F,
    starts: &[Vec<f64>],
    opts: &CapOptions,
) -> Option<CapOptimum>
where
    F: Fn(&[f64]) -> (f64, Vec<f64>),
{
    let mut best: Option<CapOptimum> = None;
    for s in starts {
        let r = minimize_on_cap(cone, &f, s, opts);
        if best.as_ref().is_none_or(|b| r.value < b.value) {
            best = Some(r);
        }
    }
    best
}

/// Starting points: normalized projections of `±d` for every `d` in
/// `directions`, then cap samples until `count` points are available.
pub fn cap_starts<R: Rng + ?Sized>(
    cone: &ConeSpec,
    directions: &[Vec<f64>],
    count: usize,
    rng: &mut R,
) -> Vec<Vec<f64>> {
    let mut starts = Vec::with_capacity(count.max(2 * directions.len()));
    for d in directions {
        for sign in [1.0, -1.0] {
            if let Some(p) = feasible(cone, &vector::scaled(d, sign)) {
                starts.push(p);
            }
        }
    }
    let sampler = CapSampler::new(cone);
    while starts.len() < count {
        starts.push(sampler.sample(rng));
    }
    starts
}

fn feasible(cone: &ConeSpec, x: &[f64]) -> Option<Vec<f64>> {
    let p = cone.project(x).ok()?;
    let r = vector::norm(&p);
    if r > 1e-12 * (1.0 + vector::norm(x)) {
        Some(vector::scaled(&p, 1.0 / r))
    } else {
        None
    }
}
