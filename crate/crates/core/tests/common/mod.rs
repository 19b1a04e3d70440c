//! Test-side reference computations, written without calling the library's
//! solvers so that they can check it independently.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

pub fn gaussian(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    // Box-Muller keeps this file free of the library's samplers
    (0..n)
        .map(|_| {
            let u: f64 = rng.random::<f64>().max(1e-300);
            let v: f64 = rng.random();
            (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
        })
        .collect()
}

pub fn unit(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    loop {
        let g = gaussian(rng, n);
        let r = norm(&g);
        if r > 1e-6 {
            return g.iter().map(|v| v / r).collect();
        }
    }
}

pub fn in_lorentz(x: &[f64], tol: f64) -> bool {
    x[0] + tol >= norm(&x[1..])
}

pub fn in_orthant(x: &[f64], tol: f64) -> bool {
    x.iter().all(|v| *v >= -tol)
}

pub fn quad(a: &[Vec<f64>], x: &[f64]) -> f64 {
    a.iter().zip(x).map(|(row, xi)| xi * dot(row, x)).sum()
}

/// Uniform point of the Lorentz cap by rejection from the sphere.
pub fn lorentz_cap_point(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    loop {
        let mut x = unit(rng, n);
        x[0] = x[0].abs();
        if in_lorentz(&x, 0.0) {
            return x;
        }
    }
}

/// Point of `∂ℒ ∩ S^{n−1}`.
pub fn lorentz_rim_point(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let u = unit(rng, n - 1);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    std::iter::once(s).chain(u.iter().map(|v| s * v)).collect()
}

/// Projection onto the Lorentz cone by projected gradient descent.
///
/// Writing `y = (s, r·u)` with `s ≥ r ≥ 0`, the optimal direction is
/// `u = x̄/‖x̄‖` and the optimal `s` is `max(x₁, r)`, leaving the smooth
/// problem `min_{r ≥ 0} (‖x̄‖ − r)² + (max(x₁, r) − x₁)²`, whose gradient is
/// 4-Lipschitz; the projection onto `r ≥ 0` is a clamp.
pub fn lorentz_projection_by_descent(x: &[f64]) -> Vec<f64> {
    let x1 = x[0];
    let rb = norm(&x[1..]);
    let mut r = rb;
    for _ in 0..200 {
        let g = -2.0 * (rb - r) + 2.0 * (r - x1).max(0.0);
        r = (r - 0.25 * g).max(0.0);
    }
    let s = x1.max(r);
    let tail = x[1..].iter().map(|v| if rb > 0.0 { r * v / rb } else { 0.0 });
    std::iter::once(s).chain(tail).collect()
}

/// Cyclic Jacobi eigenvalues of a small symmetric matrix, ascending.
pub fn jacobi_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut m = a.to_vec();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |j| *j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Minimum of `q_A` over dense samples of the Lorentz cap and its rim.
pub fn lorentz_cap_min(a: &[Vec<f64>], samples: usize, seed: u64) -> (f64, Vec<f64>) {
    let mut r = rng(seed);
    let n = a.len();
    let mut best = (f64::INFINITY, vec![]);
    for i in 0..samples {
        let x = if i % 2 == 0 {
            lorentz_cap_point(&mut r, n)
        } else {
            lorentz_rim_point(&mut r, n)
        };
        let v = quad(a, &x);
        if v < best.0 {
            best = (v, x);
        }
    }
    best
}

/// Point at parameter `t` of the minimal geodesic from `x` to `y`.
pub fn slerp(x: &[f64], y: &[f64], t: f64) -> Vec<f64> {
    let theta = dot(x, y).clamp(-1.0, 1.0).acos();
    let (a, b) = (((1.0 - t) * theta).sin(), (t * theta).sin());
    let s = theta.sin();
    x.iter().zip(y).map(|(xi, yi)| (a * xi + b * yi) / s).collect()
}

/// Largest interior excess of `q_A` over the endpoints on a fine grid.
pub fn geodesic_excess(a: &[Vec<f64>], x: &[f64], y: &[f64], grid: usize) -> f64 {
    let top = quad(a, x).max(quad(a, y));
    (1..grid)
        .map(|j| quad(a, &slerp(x, y, j as f64 / grid as f64)) - top)
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn diag(d: &[f64]) -> Vec<Vec<f64>> {
    let n = d.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { d[i] } else { 0.0 }).collect())
        .collect()
}
