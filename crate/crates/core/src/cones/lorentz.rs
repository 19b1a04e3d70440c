//! Closed-form projection onto the Lorentz cone and the associated absolute
//! value.

use super::MoreauParts;
use crate::error::{Error, Result};
use crate::vector;

/// Moreau parts of `x` with respect to the Lorentz cone.
pub fn project_lorentz(x: &[f64]) -> MoreauParts {
    let x1 = x[0];
    let r = vector::tail_norm(x);
    let n = x.len();
    if x1 >= r {
        return MoreauParts {
            plus: x.to_vec(),
            minus: vec![0.0; n],
            abs: x.to_vec(),
        };
    }
    if -x1 >= r {
        let minus = vector::neg(x);
        return MoreauParts {
            plus: vec![0.0; n],
            abs: minus.clone(),
            minus,
        };
    }
    // here r > |x1| ≥ 0
    let a = (x1 + r) / (2.0 * r);
    let b = (r - x1) / (2.0 * r);
    let mut plus = Vec::with_capacity(n);
    let mut minus = Vec::with_capacity(n);
    plus.push(a * r);
    minus.push(b * r);
    for xi in &x[1..] {
        plus.push(a * xi);
        minus.push(-b * xi);
    }
    let abs = vector::add(&plus, &minus);
    MoreauParts { plus, minus, abs }
}

/// `|x|^ℒ = x₊ + x₋`, evaluated by the closed form
/// `(max(|x₁|, ‖x̄‖), min(|x₁|, ‖x̄‖) sgn(x₁) x̄ / ‖x̄‖)` with `x̄` the trailing
/// block, and `(|x₁|, 0)` when `x̄ = 0`.
pub fn abs_lorentz(x: &[f64]) -> Result<Vec<f64>> {
    if x.iter().all(|v| *v == 0.0) {
        return Err(Error::InvalidInput("absolute value of the zero vector".into()));
    }
    let x1 = x[0];
    let r = vector::tail_norm(x);
    let mut out = Vec::with_capacity(x.len());
    if r == 0.0 {
        out.push(x1.abs());
        out.extend(std::iter::repeat_n(0.0, x.len() - 1));
        return Ok(out);
    }
    let big = x1.abs().max(r);
    let small = x1.abs().min(r);
    let sign = if x1 > 0.0 {
        1.0
    } else if x1 < 0.0 {
        -1.0
    } else {
        0.0
    };
    out.push(big);
    for xi in &x[1..] {
        out.push(small * sign * xi / r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{ConeSpec, MEMBERSHIP_TOL};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent projection: projected gradient on `½‖y − x‖²` over `ℒ`,
    /// where feasibility is restored by radial scaling of the tail.
    fn brute_projection(x: &[f64]) -> Vec<f64> {
        // minimize over (t, s) the distance to y = (t, s·u) with u = x̄/‖x̄‖
        let r = vector::tail_norm(x);
        let best = |t: f64| -> f64 {
            let s = t.min(r.max(0.0));
            (x[0] - t).powi(2) + (r - s).powi(2)
        };
        let (mut lo, mut hi) = (0.0_f64, x[0].abs() + r + 1.0);
        for _ in 0..300 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if best(m1) <= best(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let t = 0.5 * (lo + hi);
        let s = t.min(r);
        let mut y = vec![t];
        for xi in &x[1..] {
            y.push(if r > 0.0 { s * xi / r } else { 0.0 });
        }
        y
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        vector::dist(a, b) <= tol
    }

    #[test]
    fn projection_examples() {
        let p = project_lorentz(&[0.0, 1.0, 0.0]);
        assert!(close(&p.plus, &[0.5, 0.5, 0.0], 1e-15));
        assert!(close(&p.minus, &[0.5, -0.5, 0.0], 1e-15));
        assert!(close(&brute_projection(&[0.0, 1.0, 0.0]), &[0.5, 0.5, 0.0], 1e-6));

        let p = project_lorentz(&[2.0, 1.0, 0.0]);
        assert_eq!(p.plus, vec![2.0, 1.0, 0.0]);
        assert_eq!(p.minus, vec![0.0, 0.0, 0.0]);

        let p = project_lorentz(&[-2.0, 1.0, 0.0]);
        assert_eq!(p.plus, vec![0.0, 0.0, 0.0]);
        assert_eq!(p.minus, vec![2.0, -1.0, 0.0]);
    }

    #[test]
    fn absolute_value_examples() {
        let a = abs_lorentz(&[1.0, 2.0, 0.0]).unwrap();
        assert!(close(&a, &[2.0, 1.0, 0.0], 1e-15));
        assert!(close(&a, &project_lorentz(&[1.0, 2.0, 0.0]).abs, 1e-12));
        assert_eq!(abs_lorentz(&[3.0, 1.0, 0.0]).unwrap(), vec![3.0, 1.0, 0.0]);
        let a = abs_lorentz(&[0.0, 0.0, 1.0]).unwrap();
        assert!(close(&a, &[1.0, 0.0, 0.0], 1e-15));
        assert!(close(&a, &project_lorentz(&[0.0, 0.0, 1.0]).abs, 1e-12));
        assert_eq!(abs_lorentz(&[-2.0, 0.0, 0.0]).unwrap(), vec![2.0, 0.0, 0.0]);
        assert!(abs_lorentz(&[0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn agrees_with_brute_force_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let l = ConeSpec::lorentz(4);
        for _ in 0..500 {
            let x: Vec<f64> = (0..4).map(|_| rng.random_range(-3.0..3.0)).collect();
            let p = project_lorentz(&x);
            assert!(close(&p.plus, &brute_projection(&x), 1e-6));
            assert!(l.contains(&p.plus, MEMBERSHIP_TOL).unwrap());
            let abs = abs_lorentz(&x).unwrap();
            assert!(close(&abs, &p.abs, 1e-9));
        }
    }
}
