//! The cone `𝒲 = (ℒ_c ∪ −ℒ_c) ∩ int K` and membership of a vector in `𝒲*`.

use serde::{Deserialize, Serialize};

use super::{dykstra_project, elliptic_levelcone, ConeSpec, Membership, MEMBERSHIP_TOL, STRICT_MARGIN};
use crate::error::{Error, Result};
use crate::linalg::SpectralDecomposition;
use crate::sampling::{rng_from_seed, CapSampler};
use crate::vector;

#[derive(Clone, Debug, PartialEq)]
pub struct WConeSpec {
    decomposition: SpectralDecomposition,
    base_cone: ConeSpec,
    level: f64,
    level_cone: ConeSpec,
}

impl WConeSpec {
    /// `𝒲` at level `c = λ₂`.
    pub fn new(decomposition: SpectralDecomposition, base_cone: ConeSpec) -> Result<Self> {
        let c = decomposition.eigenvalue(1);
        Self::with_level(decomposition, base_cone, c)
    }

    /// Requires `λ₁ < c ≤ λ₂`.
    pub fn with_level(decomposition: SpectralDecomposition, base_cone: ConeSpec, c: f64) -> Result<Self> {
        if base_cone.dim() != decomposition.dim() {
            return Err(Error::DimensionMismatch {
                expected: decomposition.dim(),
                found: base_cone.dim(),
            });
        }
        let level_cone = elliptic_levelcone(&decomposition, c)?;
        Ok(Self {
            decomposition,
            base_cone,
            level: c,
            level_cone,
        })
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomposition
    }

    pub fn base_cone(&self) -> &ConeSpec {
        &self.base_cone
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn level_cone(&self) -> &ConeSpec {
        &self.level_cone
    }

    /// `x ∈ 𝒲`: `x ∈ ℒ_c ∪ −ℒ_c` within `MEMBERSHIP_TOL` and `x ∈ int K` with
    /// margin `STRICT_MARGIN`.
    pub fn contains(&self, x: &[f64]) -> bool {
        let lm = self.level_cone.margin(x).max(self.level_cone.margin(&vector::neg(x)));
        lm >= -MEMBERSHIP_TOL && self.base_cone.margin(x) > STRICT_MARGIN
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WDualResult {
    pub status: Membership,
    /// Smallest `⟨v, x⟩` over unit `x` found in the closure of `𝒲`.
    pub min_value: f64,
    /// Unit `x ∈ 𝒲` with `⟨v, x⟩ < −10·tol`, when `status` is `No`.
    pub witness: Option<Vec<f64>>,
    pub converged: bool,
    pub members_sampled: usize,
    pub diagnostic: Option<String>,
}

/// Tests `v ∈ 𝒲*`.
///
/// For each sign `σ` the minimum of `⟨v, ·⟩` over unit vectors of
/// `K ∩ σℒ_c` is `−‖P(−v)‖`, computed with Dykstra's projections; this set
/// contains the corresponding branch of `𝒲`, so nonnegative minima on both
/// branches give `Yes`. A violating minimizer is moved into the interior of
/// `𝒲` toward sampled members and re-verified before answering `No`.
pub fn w_dual_contains(w: &WConeSpec, v: &[f64], samples: usize, tol: f64, seed: u64) -> Result<WDualResult> {
    let n = w.base_cone.dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    let mut result = WDualResult {
        status: Membership::Inconclusive,
        min_value: 0.0,
        witness: None,
        converged: true,
        members_sampled: 0,
        diagnostic: None,
    };
    if v.iter().all(|x| *x == 0.0) {
        result.status = Membership::Yes;
        return Ok(result);
    }

    // rejection sampling of 𝒲 through the cap of K
    let mut rng = rng_from_seed(seed);
    let sampler = CapSampler::new(&w.base_cone);
    let mut members: [Vec<Vec<f64>>; 2] = [Vec::new(), Vec::new()];
    let mut best_sample: Option<(f64, Vec<f64>)> = None;
    for _ in 0..samples {
        let x = sampler.sample(&mut rng);
        let branch = if w.level_cone.margin(&x) >= 0.0 {
            0
        } else if w.level_cone.margin(&vector::neg(&x)) >= 0.0 {
            1
        } else {
            continue;
        };
        let val = vector::dot(v, &x);
        if best_sample.as_ref().is_none_or(|(b, _)| val < *b) {
            best_sample = Some((val, x.clone()));
        }
        if members[branch].len() < 64 {
            members[branch].push(x);
        }
        result.members_sampled += 1;
    }
    if result.members_sampled == 0 {
        result.diagnostic = Some(format!("no member of the cone found in {samples} draws"));
    }
    if let Some((val, x)) = &best_sample {
        result.min_value = *val;
        if *val < -10.0 * tol && w.contains(x) {
            result.status = Membership::No;
            result.witness = Some(x.clone());
            return Ok(result);
        }
    }

    let minus_v = vector::neg(v);
    let mut branch_ok = true;
    for (idx, sign) in [(0usize, 1.0), (1usize, -1.0)] {
        let branch = if sign > 0.0 {
            w.level_cone.clone()
        } else {
            w.level_cone.clone().negated()
        };
        let d = dykstra_project(&w.base_cone, &branch, &minus_v)?;
        result.converged &= d.converged;
        let r = vector::norm(&d.point);
        let min = -r;
        result.min_value = result.min_value.min(min);
        if min < -tol {
            branch_ok = false;
            if min < -10.0 * tol {
                let x = vector::scaled(&d.point, 1.0 / r);
                if let Some(wit) = nudge_inside(w, v, &x, &members[idx], tol) {
                    result.status = Membership::No;
                    result.witness = Some(wit);
                    return Ok(result);
                }
            }
        }
    }
    if branch_ok && result.converged {
        result.status = Membership::Yes;
    }
    Ok(result)
}

fn nudge_inside(w: &WConeSpec, v: &[f64], x: &[f64], members: &[Vec<f64>], tol: f64) -> Option<Vec<f64>> {
    if w.contains(x) && vector::dot(v, x) < -10.0 * tol {
        return Some(x.to_vec());
    }
    let mut anchors: Vec<Vec<f64>> = members.to_vec();
    anchors.push(w.base_cone.center());
    for z in &anchors {
        for t in [1e-9, 1e-7, 1e-5, 1e-3, 1e-2, 0.1] {
            let y = vector::normalized(&vector::axpy(&vector::scaled(x, 1.0 - t), t, z))?;
            if w.contains(&y) && vector::dot(v, &y) < -10.0 * tol {
                return Some(y);
            }
        }
    }
    None
}
