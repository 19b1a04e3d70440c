use serde::{Deserialize, Serialize};

use super::AnalysisOptions;
use crate::cones::ConeSpec;
use crate::error::{Error, Result};
use crate::linalg::SpectralDecomposition;
use crate::sampling::rng_from_seed;
use crate::sphere_opt::{cap_starts, multistart_minimize, CapOptions};
use crate::vector;

/// `α = min ⟨v¹,y⟩²` and `η = max Σ_{i≥3}⟨vⁱ,y⟩² / ⟨v¹,y⟩²` over unit
/// `y ∈ K`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaEta {
    pub alpha: f64,
    pub eta: f64,
    pub alpha_argmin: Vec<f64>,
    pub eta_argmax: Vec<f64>,
    /// `α` is exact; otherwise it is an upper bound on the true minimum.
    pub alpha_exact: bool,
    /// `η` is exact; otherwise it is a lower bound on the true maximum.
    pub eta_exact: bool,
    pub converged: bool,
}

/// Both quantities are sign-invariant in `v¹`, so whichever of `±v¹` lies
/// in `int K*` is used.
///
/// Both objectives are quasi-concave (for `α`) or quasi-convex (for `η`)
/// over the cone, so their extremes sit on extreme rays. For the orthant
/// the rays are the unit vectors and both values are exact; for the Lorentz
/// cone `α` has a closed form and `η` is maximized by multi-start projected
/// ascent seeded on the boundary; elliptic cones use the optimizer for both.
pub fn compute_alpha_eta(dec: &SpectralDecomposition, k: &ConeSpec, opts: &AnalysisOptions) -> Result<AlphaEta> {
    let n = dec.dim();
    if k.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: k.dim(),
        });
    }
    if n < 3 {
        return Err(Error::Domain("α and η need n ≥ 3".into()));
    }
    let (base, negated) = k.base();
    let cap_opts = CapOptions::default();
    let mut rng = rng_from_seed(opts.seed ^ 0x5151);
    let mut starts = cap_starts(base, dec.eigenvectors(), opts.cap_starts, &mut rng);
    if let ConeSpec::Lorentz { .. } = base {
        starts.extend(lorentz_rim_starts(dec));
    }

    let v1 = dec.eigenvector(0);
    let mut chosen = None;
    for s in [1.0, -1.0] {
        let w = vector::scaled(v1, s);
        let (value, argmin, exact) = linear_min(base, &w, &starts, &cap_opts);
        if value > opts.tol {
            chosen = Some((w, value, argmin, exact));
            break;
        }
    }
    let Some((w, m, alpha_argmin, alpha_exact)) = chosen else {
        return Err(Error::Domain("neither v¹ nor −v¹ lies in the interior of K*".into()));
    };

    let tail: Vec<&[f64]> = (2..n).map(|i| dec.eigenvector(i)).collect();
    let ratio = |y: &[f64]| {
        let d = vector::dot(&w, y);
        let num: f64 = tail.iter().map(|v| vector::dot(v, y).powi(2)).sum();
        (num / (d * d), d, num)
    };
    let (eta, eta_argmax, eta_exact, converged) = match base {
        ConeSpec::Orthant { .. } => {
            let (mut best, mut arg) = (f64::NEG_INFINITY, 0);
            for i in 0..n {
                let r = ratio(&vector::unit(n, i)).0;
                if r > best {
                    best = r;
                    arg = i;
                }
            }
            (best, vector::unit(n, arg), true, true)
        }
        _ => {
            let f = |y: &[f64]| {
                let (r, d, num) = ratio(y);
                let mut g = vec![0.0; n];
                for v in &tail {
                    g = vector::axpy(&g, 2.0 * vector::dot(v, y) / (d * d), v);
                }
                g = vector::axpy(&g, -2.0 * num / (d * d * d), &w);
                (-r, vector::neg(&g))
            };
            let best = multistart_minimize(base, f, &starts, &cap_opts).expect("at least one start");
            (ratio(&best.x).0, best.x, false, best.converged)
        }
    };

    let orient = |y: Vec<f64>| if negated { vector::neg(&y) } else { y };
    Ok(AlphaEta {
        alpha: m * m,
        eta,
        alpha_argmin: orient(alpha_argmin),
        eta_argmax: orient(eta_argmax),
        alpha_exact,
        eta_exact,
        converged,
    })
}

/// `min ⟨w, y⟩` over unit `y ∈ K` with its minimizer and exactness.
fn linear_min(k: &ConeSpec, w: &[f64], starts: &[Vec<f64>], opts: &CapOptions) -> (f64, Vec<f64>, bool) {
    let n = w.len();
    match k {
        ConeSpec::Orthant { .. } => {
            let i = (0..n).min_by(|&i, &j| w[i].total_cmp(&w[j])).unwrap_or(0);
            (w[i], vector::unit(n, i), true)
        }
        ConeSpec::Lorentz { .. } => {
            let r = vector::tail_norm(w);
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let mut y = vec![s; 1];
            if r > 0.0 {
                y.extend(w[1..].iter().map(|t| -s * t / r));
            } else {
                y.push(s);
                y.extend(std::iter::repeat_n(0.0, n - 2));
            }
            ((w[0] - r) * s, y, true)
        }
        _ => {
            let f = |y: &[f64]| (vector::dot(w, y), w.to_vec());
            let best = multistart_minimize(k, f, starts, opts).expect("at least one start");
            (vector::dot(w, &best.x), best.x, false)
        }
    }
}

/// Rim points `(1, ±ū)/√2` for the tail `ū` of every eigenvector.
fn lorentz_rim_starts(dec: &SpectralDecomposition) -> Vec<Vec<f64>> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::new();
    for v in dec.eigenvectors() {
        if let Some(u) = vector::normalized(&v[1..]) {
            for sign in [1.0, -1.0] {
                let mut y = vec![s];
                y.extend(u.iter().map(|t| sign * s * t));
                out.push(y);
            }
        }
    }
    out
}
