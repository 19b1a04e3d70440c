//! Copositivity certificates: exact for the Lorentz cone through the
//! condition "`A − ρJ` is PSD for some `ρ ≥ 0`", exact for elliptic cones
//! by a linear change of variables, and refutation-only by sampling for the
//! orthant.

use serde::{Deserialize, Serialize};

use crate::cones::{ConeSpec, MEMBERSHIP_TOL};
use crate::error::{Error, Result};
use crate::linalg::{is_psd, min_eigenvalue, spectral_decompose, SymmetricMatrix, DEFAULT_GAP_TOL};
use crate::sampling::{rng_from_seed, CapSampler};
use crate::sphere_opt::{cap_starts, minimize_on_cap, multistart_minimize, CapOptions};
use crate::vector;

const GOLDEN: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CopositivityStatus {
    Copositive,
    NotCopositive,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CopositivityCertificate {
    pub status: CopositivityStatus,
    /// Multiplier with `A − ρJ` PSD (Lorentz), or `0` for the PSD shortcut.
    pub rho: Option<f64>,
    /// `λ_min(A − ρJ)` at the returned `ρ`, or the sampled minimum of `q_A`.
    pub psd_floor: f64,
    /// Unit `x ∈ K` with `⟨Ax, x⟩ < −tol`.
    pub witness: Option<Vec<f64>>,
}

impl CopositivityCertificate {
    /// Re-checks the certificate against `A` and `K` from its stored data.
    pub fn verify(&self, a: &SymmetricMatrix, k: &ConeSpec, tol: f64) -> Result<bool> {
        match self.status {
            CopositivityStatus::NotCopositive => match &self.witness {
                Some(x) => Ok(verified_witness(a, k, x, tol)?),
                None => Ok(false),
            },
            CopositivityStatus::Copositive => match (self.rho, k.base().0) {
                (Some(rho), ConeSpec::Lorentz { n }) => {
                    Ok(is_psd(&a.add_scaled(-rho, &SymmetricMatrix::lorentz_j(*n)), tol)?.psd)
                }
                (Some(_), _) => Ok(is_psd(a, tol)?.psd),
                (None, _) => Ok(true),
            },
            CopositivityStatus::Inconclusive => Ok(true),
        }
    }
}

fn verified_witness(a: &SymmetricMatrix, k: &ConeSpec, x: &[f64], tol: f64) -> Result<bool> {
    Ok(k.contains(x, MEMBERSHIP_TOL)? && a.quad(x) < -tol * vector::dot(x, x))
}

/// `g(ρ) = λ_min(A − ρJ)`, a concave function of `ρ`.
pub fn lorentz_floor(a: &SymmetricMatrix, rho: f64) -> Result<f64> {
    min_eigenvalue(&a.add_scaled(-rho, &SymmetricMatrix::lorentz_j(a.dim())))
}

/// Exact Lorentz copositivity by golden-section maximization of
/// `g(ρ) = λ_min(A − ρJ)` on `[0, R]`, `R = 2‖A‖_F + 1`.
///
/// Since `g(ρ) ≤ a₁₁ − ρ`, the maximizer lies in `[0, 2‖A‖_F]`; the interval
/// is widened anyway if the search ends at its right end.
pub fn lorentz_copositive(a: &SymmetricMatrix, tol: f64) -> Result<CopositivityCertificate> {
    let n = a.dim();
    let g0 = lorentz_floor(a, 0.0)?;
    if g0 >= -tol {
        return Ok(CopositivityCertificate {
            status: CopositivityStatus::Copositive,
            rho: Some(0.0),
            psd_floor: g0,
            witness: None,
        });
    }
    let mut r = 2.0 * a.frobenius_norm() + 1.0;
    let (mut rho, mut g) = (0.0, g0);
    for _ in 0..8 {
        let (rr, gg) = golden_max(|t| lorentz_floor(a, t), 0.0, r)?;
        if gg > g {
            rho = rr;
            g = gg;
        }
        if rr < r * (1.0 - 1e-6) {
            break;
        }
        r *= 2.0;
    }
    if g >= -tol {
        return Ok(CopositivityCertificate {
            status: CopositivityStatus::Copositive,
            rho: Some(rho),
            psd_floor: g,
            witness: None,
        });
    }
    let k = ConeSpec::lorentz(n);
    let witness = lorentz_witness(a, rho, tol)?;
    Ok(match witness {
        Some(x) if verified_witness(a, &k, &x, tol)? => CopositivityCertificate {
            status: CopositivityStatus::NotCopositive,
            rho: Some(rho),
            psd_floor: g,
            witness: Some(x),
        },
        _ => CopositivityCertificate {
            status: CopositivityStatus::Inconclusive,
            rho: Some(rho),
            psd_floor: g,
            witness: None,
        },
    })
}

fn golden_max<F>(f: F, mut lo: f64, mut hi: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let width = 1e-10 * (hi - lo);
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > width {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1)?;
        }
    }
    let mid = 0.5 * (lo + hi);
    let fm = f(mid)?;
    let best = [(x1, f1), (x2, f2), (mid, fm)]
        .into_iter()
        .fold((mid, fm), |b, c| if c.1 > b.1 { c } else { b });
    Ok(best)
}

/// Candidate vectors in `ℒ` from the bottom eigenspace of `A − ρJ`, polished
/// by projected descent of `q_A` on the Lorentz cap.
fn lorentz_witness(a: &SymmetricMatrix, rho: f64, tol: f64) -> Result<Option<Vec<f64>>> {
    let n = a.dim();
    let shifted = a.add_scaled(-rho, &SymmetricMatrix::lorentz_j(n));
    let dec = spectral_decompose(&shifted, DEFAULT_GAP_TOL)?;
    let j = SymmetricMatrix::lorentz_j(n);
    let floor = dec.eigenvalue(0);
    let band = 1e-6 * (1.0 + floor.abs());
    let bottom: Vec<&[f64]> = (0..n)
        .filter(|&i| dec.eigenvalue(i) - floor <= band)
        .map(|i| dec.eigenvector(i))
        .collect();

    let mut candidates: Vec<Vec<f64>> = Vec::new();
    for u in &bottom {
        candidates.push(into_lorentz(u));
    }
    // at a kink, combine two bottom eigenvectors into a J-isotropic one
    for i in 0..bottom.len() {
        for k in (i + 1)..bottom.len() {
            let (u, w) = (bottom[i], bottom[k]);
            let (juu, juw, jww) = (j.quad(u), j.bilinear(u, w), j.quad(w));
            // juu c² + 2 juw c s + jww s² = 0 over the unit circle
            for t in isotropic_angles(juu, juw, jww) {
                let c = vector::axpy(&vector::scaled(u, t.cos()), t.sin(), w);
                candidates.push(into_lorentz(&c));
            }
        }
    }
    let k = ConeSpec::lorentz(n);
    let f = |x: &[f64]| (a.quad(x), vector::scaled(&a.apply(x), 2.0));
    let opts = CapOptions {
        initial_step: 0.5 / (1.0 + a.frobenius_norm()),
        ..CapOptions::default()
    };
    let mut best: Option<(f64, Vec<f64>)> = None;
    for c in candidates.iter().filter_map(|c| vector::normalized(c)) {
        for x in [c.clone(), minimize_on_cap(&k, f, &c, &opts).x] {
            if !k.contains(&x, MEMBERSHIP_TOL)? {
                continue;
            }
            let v = a.quad(&x);
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, x));
            }
        }
    }
    if let Some((v, _)) = &best {
        if *v < -tol {
            return Ok(best.map(|b| b.1));
        }
    }
    // last resort: seeded multistart descent
    let mut rng = rng_from_seed(0x5eed);
    let starts = cap_starts(&k, &bottom.iter().map(|u| u.to_vec()).collect::<Vec<_>>(), 32, &mut rng);
    Ok(multistart_minimize(&k, f, &starts, &opts)
        .filter(|r| r.value < -tol)
        .map(|r| r.x))
}

/// `(max(|u₁|, ‖ū‖), sgn(u₁)·ū)`, a point of `ℒ` close to `±u`.
fn into_lorentz(u: &[f64]) -> Vec<f64> {
    let r = vector::tail_norm(u);
    let s = if u[0] < 0.0 { -1.0 } else { 1.0 };
    let mut x = vec![u[0].abs().max(r)];
    x.extend(u[1..].iter().map(|v| s * v));
    x
}

fn isotropic_angles(a: f64, b: f64, c: f64) -> Vec<f64> {
    // a cos² t + 2b cos t sin t + c sin² t = 0 ⇔ c τ² + 2b τ + a = 0, τ = tan t
    let mut out = Vec::new();
    if c.abs() < 1e-300 {
        if b.abs() > 1e-300 {
            out.push((-a / (2.0 * b)).atan());
        }
        out.push(std::f64::consts::FRAC_PI_2);
        return out;
    }
    let disc = b * b - a * c;
    if disc >= 0.0 {
        let s = disc.sqrt();
        out.push(((-b + s) / c).atan());
        out.push(((-b - s) / c).atan());
    }
    out
}

/// Seeded refutation of `K`-copositivity.
///
/// Never reports `Copositive` except through the PSD shortcut; otherwise a
/// violation is searched by sampling the cap and polishing the best ten
/// samples with projected descent.
pub fn sampled_copositive(
    a: &SymmetricMatrix,
    k: &ConeSpec,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<CopositivityCertificate> {
    if k.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: k.dim(),
        });
    }
    let psd = is_psd(a, tol)?;
    if psd.psd {
        return Ok(CopositivityCertificate {
            status: CopositivityStatus::Copositive,
            rho: Some(0.0),
            psd_floor: psd.min_eigenvalue,
            witness: None,
        });
    }
    if samples == 0 {
        return Ok(CopositivityCertificate {
            status: CopositivityStatus::Inconclusive,
            rho: None,
            psd_floor: f64::INFINITY,
            witness: None,
        });
    }
    let mut rng = rng_from_seed(seed);
    let sampler = CapSampler::new(k);
    let mut pool: Vec<(f64, Vec<f64>)> = Vec::with_capacity(samples);
    for _ in 0..samples {
        let x = sampler.sample(&mut rng);
        pool.push((a.quad(&x), x));
    }
    pool.sort_by(|p, q| p.0.total_cmp(&q.0));
    let dec = spectral_decompose(a, DEFAULT_GAP_TOL)?;
    let mut starts: Vec<Vec<f64>> = pool.iter().take(10).map(|p| p.1.clone()).collect();
    starts.extend(cap_starts(k, &[dec.eigenvector(0).to_vec()], 0, &mut rng));
    let f = |x: &[f64]| (a.quad(x), vector::scaled(&a.apply(x), 2.0));
    let opts = CapOptions {
        initial_step: 0.5 / (1.0 + a.frobenius_norm()),
        ..CapOptions::default()
    };
    let best = multistart_minimize(k, f, &starts, &opts);
    let (value, x) = match best {
        Some(b) if b.value < pool[0].0 => (b.value, b.x),
        _ => (pool[0].0, pool[0].1.clone()),
    };
    if value < -tol && verified_witness(a, k, &x, tol)? {
        return Ok(CopositivityCertificate {
            status: CopositivityStatus::NotCopositive,
            rho: None,
            psd_floor: value,
            witness: Some(x),
        });
    }
    Ok(CopositivityCertificate {
        status: CopositivityStatus::Inconclusive,
        rho: None,
        psd_floor: value,
        witness: None,
    })
}

/// Best available copositivity decision for `A` on `K`.
///
/// Lorentz cones (and their negations) are decided exactly, elliptic cones
/// through `A ↦ BᵀAB` with `B(ℒ) = ℰ`, and every other cone by the PSD
/// shortcut or a sampled refutation.
pub fn certify_copositive(
    a: &SymmetricMatrix,
    k: &ConeSpec,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<CopositivityCertificate> {
    // ⟨Ax, x⟩ is even in x, so K and −K behave identically
    let (base, negated) = k.base();
    let flip = |mut c: CopositivityCertificate| {
        if negated {
            c.witness = c.witness.map(|w| vector::neg(&w));
        }
        c
    };
    match base {
        ConeSpec::Lorentz { .. } => Ok(flip(lorentz_copositive(a, tol)?)),
        ConeSpec::Elliptic(e) => match e.lorentz_map() {
            Some(cols) => {
                let b = a.congruence(&cols);
                let mut c = lorentz_copositive(&b, tol)?;
                if let Some(z) = c.witness.take() {
                    let x = vector::normalized(&combine(&cols, &z));
                    match x {
                        Some(x) if verified_witness(a, base, &x, tol)? => c.witness = Some(x),
                        _ => c.status = CopositivityStatus::Inconclusive,
                    }
                }
                Ok(flip(c))
            }
            None => Ok(flip(sampled_copositive(a, base, samples, seed, tol)?)),
        },
        _ => Ok(flip(sampled_copositive(a, base, samples, seed, tol)?)),
    }
}

/// `Σ zᵢ colsᵢ`.
fn combine(cols: &[Vec<f64>], z: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; cols[0].len()];
    for (c, zi) in cols.iter().zip(z) {
        x = vector::axpy(&x, *zi, c);
    }
    x
}

/// Result of a sampled `K`-Z-property check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ZPropertyResult {
    Consistent,
    Violated { x: Vec<f64>, y: Vec<f64>, value: f64 },
}

/// Checks `⟨Ax, y⟩ ≤ tol` on complementary pairs `x ∈ K`, `y ∈ K*`,
/// `⟨x, y⟩ = 0`.
///
/// The extremal pairs are tried first: `(eⁱ, eʲ)` for the orthant, and for
/// the Lorentz cone `x = (1, u)/√2`, `y = (1, −u)/√2` with `u` the bottom
/// eigenvector of the trailing block of `A`, for which
/// `⟨Ax, y⟩ = (a₁₁ − uᵀCu)/2` is maximal. Random pairs follow.
pub fn z_property_sampled(
    a: &SymmetricMatrix,
    k: &ConeSpec,
    pairs: usize,
    seed: u64,
    tol: f64,
) -> Result<ZPropertyResult> {
    let n = a.dim();
    if k.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: k.dim(),
        });
    }
    // (−x, −y) gives the same value, so −K behaves like K
    let base = k.base().0;
    let mut rng = rng_from_seed(seed);
    let mut candidates: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    match base {
        ConeSpec::Orthant { .. } => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        candidates.push((vector::unit(n, i), vector::unit(n, j)));
                    }
                }
            }
            use rand::Rng;
            for _ in 0..pairs {
                let mut x = vec![0.0; n];
                let mut y = vec![0.0; n];
                for i in 0..n {
                    let v: f64 = rng.random();
                    if rng.random::<bool>() {
                        x[i] = v;
                    } else {
                        y[i] = v;
                    }
                }
                if let (Some(x), Some(y)) = (vector::normalized(&x), vector::normalized(&y)) {
                    candidates.push((x, y));
                }
            }
        }
        ConeSpec::Lorentz { .. } => {
            let pair = |u: &[f64]| {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let mut x = vec![s];
                x.extend(u.iter().map(|v| s * v));
                let mut y = vec![s];
                y.extend(u.iter().map(|v| -s * v));
                (x, y)
            };
            if n == 2 {
                candidates.push(pair(&[1.0]));
                candidates.push(pair(&[-1.0]));
            } else {
                let rows: Vec<Vec<f64>> = (1..n).map(|i| a.row(i)[1..].to_vec()).collect();
                let c = SymmetricMatrix::from_rows(&rows)?;
                let dec = spectral_decompose(&c, DEFAULT_GAP_TOL)?;
                candidates.push(pair(dec.eigenvector(0)));
            }
            for _ in 0..pairs {
                let u = crate::sampling::unit_sphere(&mut rng, n - 1);
                candidates.push(pair(&u));
            }
        }
        other => {
            return Err(Error::UnsupportedCone {
                operation: "Z-property check",
                cone: other.name(),
            })
        }
    }
    for (x, y) in candidates {
        let value = a.bilinear(&x, &y);
        if value > tol {
            return Ok(ZPropertyResult::Violated { x, y, value });
        }
    }
    Ok(ZPropertyResult::Consistent)
}
