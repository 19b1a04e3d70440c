//! Seeded samplers for unit vectors in the interior of a cone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cones::{ConeSpec, STRICT_MARGIN};
use crate::vector;

/// Default share of boundary-biased draws.
pub const DEFAULT_BOUNDARY_FRACTION: f64 = 0.1;
/// Upper end of the margin range targeted by boundary-biased draws.
pub const BOUNDARY_BAND: f64 = 0.05;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Uniform unit vector in `ℝⁿ`.
pub fn unit_sphere<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        if let Some(u) = vector::normalized(&standard_normal(rng, n)) {
            return u;
        }
    }
}

/// Draws unit vectors in the strict interior of a cone.
///
/// Orthant and Lorentz caps are sampled uniformly; elliptic cones are
/// parametrized through their frame. A fraction of the draws is pushed
/// toward the boundary, landing at a margin drawn uniformly from
/// `(10·STRICT_MARGIN, BOUNDARY_BAND)`.
#[derive(Clone, Debug)]
pub struct CapSampler<'a> {
    cone: &'a ConeSpec,
    boundary_fraction: f64,
}

impl<'a> CapSampler<'a> {
    pub fn new(cone: &'a ConeSpec) -> Self {
        Self {
            cone,
            boundary_fraction: DEFAULT_BOUNDARY_FRACTION,
        }
    }

    pub fn with_boundary_fraction(mut self, fraction: f64) -> Self {
        self.boundary_fraction = fraction.clamp(0.0, 1.0);
        self
    }

    pub fn cone(&self) -> &ConeSpec {
        self.cone
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let x = self.sample_interior(rng);
        if self.boundary_fraction > 0.0 && rng.random::<f64>() < self.boundary_fraction {
            let target = 10.0 * STRICT_MARGIN + rng.random::<f64>() * (BOUNDARY_BAND - 10.0 * STRICT_MARGIN);
            self.toward_boundary(x, target, rng)
        } else {
            x
        }
    }

    /// Draw without boundary bias.
    pub fn sample_interior<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        loop {
            let x = draw(self.cone, rng);
            if self.cone.margin(&x) > STRICT_MARGIN {
                return x;
            }
        }
    }

    fn toward_boundary<R: Rng + ?Sized>(&self, x: Vec<f64>, target: f64, rng: &mut R) -> Vec<f64> {
        let n = x.len();
        let mut d = standard_normal(rng, n);
        if self.cone.margin(&d) > 0.0 {
            // the ray x + t·d would stay inside a pointed cone
            d = vector::neg(&d);
        }
        let at = |t: f64| -> Option<(Vec<f64>, f64)> {
            let y = vector::normalized(&vector::axpy(&x, t, &d))?;
            let m = self.cone.margin(&y);
            Some((y, m))
        };
        if self.cone.margin(&x) <= target {
            return x;
        }
        let mut hi = 1.0;
        let mut found = false;
        for _ in 0..60 {
            match at(hi) {
                Some((_, m)) if m < target => {
                    found = true;
                    break;
                }
                _ => hi *= 2.0,
            }
        }
        if !found {
            return x;
        }
        let mut lo = 0.0;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            match at(mid) {
                Some((_, m)) if m >= target => lo = mid,
                _ => hi = mid,
            }
        }
        match at(lo) {
            Some((y, m)) if m > STRICT_MARGIN => y,
            _ => x,
        }
    }
}

fn draw<R: Rng + ?Sized>(cone: &ConeSpec, rng: &mut R) -> Vec<f64> {
    match cone {
        ConeSpec::Orthant { n } => {
            let g: Vec<f64> = standard_normal(rng, *n).into_iter().map(f64::abs).collect();
            vector::normalized(&g).unwrap_or_else(|| cone.center())
        }
        ConeSpec::Lorentz { n } => lorentz_cap(*n, rng),
        ConeSpec::Elliptic(e) => {
            let m = e.dim() - 1;
            let active = e.weights().iter().filter(|w| **w > 0.0).count();
            // uniform point of the unit ball in the weighted coordinates
            let dir = if active > 0 { unit_sphere(rng, active) } else { Vec::new() };
            let radius = rng.random::<f64>().powf(1.0 / active.max(1) as f64);
            let mut z = vec![1.0];
            let mut k = 0;
            for i in 0..m {
                let t = e.weights()[i];
                if t > 0.0 {
                    z.push(radius * dir[k] / t.sqrt());
                    k += 1;
                } else {
                    z.push(rng.sample::<f64, _>(StandardNormal));
                }
            }
            vector::normalized(&e.from_coordinates(&z)).unwrap_or_else(|| cone.center())
        }
        ConeSpec::Negated { inner } => vector::neg(&draw(inner, rng)),
    }
}

/// Uniform on `ℒ ∩ S^{n−1}`, the spherical cap of angle `π/4` around `e¹`.
fn lorentz_cap<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let quarter = std::f64::consts::FRAC_PI_4;
    let psi = loop {
        let psi = rng.random::<f64>() * quarter;
        // polar-angle density ∝ sin^{n−2}
        let accept = (psi.sin() / quarter.sin()).powi(n as i32 - 2);
        if rng.random::<f64>() <= accept {
            break psi;
        }
    };
    let u = unit_sphere(rng, n - 1);
    let mut x = Vec::with_capacity(n);
    x.push(psi.cos());
    x.extend(u.iter().map(|ui| psi.sin() * ui));
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::EllipticCone;

    #[test]
    fn samples_are_strict_unit_members() {
        let cones = [
            ConeSpec::orthant(4),
            ConeSpec::lorentz(2),
            ConeSpec::lorentz(5),
            ConeSpec::Elliptic(EllipticCone::axis_aligned(3, &[4.0, 0.5]).unwrap()),
            ConeSpec::lorentz(3).negated(),
        ];
        let mut rng = rng_from_seed(7);
        for k in &cones {
            let s = CapSampler::new(k);
            for _ in 0..2000 {
                let x = s.sample(&mut rng);
                assert!((vector::norm(&x) - 1.0).abs() < 1e-12);
                assert!(k.margin(&x) > STRICT_MARGIN);
            }
        }
    }

    #[test]
    fn boundary_bias_reaches_the_band() {
        let k = ConeSpec::lorentz(3);
        let s = CapSampler::new(&k).with_boundary_fraction(1.0);
        let mut rng = rng_from_seed(8);
        let near = (0..500)
            .filter(|_| k.margin(&s.sample(&mut rng)) < BOUNDARY_BAND + 1e-12)
            .count();
        assert!(near > 450);
    }

    #[test]
    fn lorentz_cap_is_rotationally_balanced() {
        // the mean of a uniform cap sample lies on the axis
        let mut rng = rng_from_seed(10);
        let k = ConeSpec::lorentz(3);
        let s = CapSampler::new(&k).with_boundary_fraction(0.0);
        let mut mean = [0.0; 3];
        let m = 20_000;
        for _ in 0..m {
            let x = s.sample(&mut rng);
            for i in 0..3 {
                mean[i] += x[i] / m as f64;
            }
        }
        assert!(mean[1].abs() < 0.01 && mean[2].abs() < 0.01);
        // E[cos ψ] for the uniform cap of angle π/4 on S² is (1 + cos(π/4))/2
        let expected = 0.5 * (1.0 + std::f64::consts::FRAC_1_SQRT_2);
        assert!((mean[0] - expected).abs() < 0.005);
    }
}
