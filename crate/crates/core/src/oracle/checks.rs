use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::counterexample::{geodesic_at_max, symmetric_pair};
use super::{geodesic_point, rayleigh, Arc, Counterexample, PairwiseForm, ANTIPODAL_GAP};
use crate::cones::ConeSpec;
use crate::error::{Error, Result};
use crate::linalg::{spectral_decompose, SymmetricMatrix, DEFAULT_GAP_TOL};
use crate::sampling::{rng_from_seed, CapSampler, DEFAULT_BOUNDARY_FRACTION};
use crate::vector;

/// Stream offset for the scale factors of the Rayleigh-form pairwise test.
const SCALE_STREAM: u64 = 0x9e37_79b9_7f4a_7c15;
/// Stream offset for the member pool of level-driven sublevel tests.
const POOL_STREAM: u64 = 0x6a09_e667_f3bc_c909;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OracleOptions {
    /// Number of sampled pairs.
    pub samples: usize,
    /// Interior grid points per geodesic.
    pub grid: usize,
    pub seed: u64,
    /// Absolute violation tolerance.
    pub tol: f64,
    pub boundary_fraction: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            samples: 10_000,
            grid: 33,
            seed: 42,
            tol: 1e-8,
            boundary_fraction: DEFAULT_BOUNDARY_FRACTION,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OracleStatus {
    /// Nothing found within budget; not a certificate.
    NoViolation,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleOutcome {
    pub status: OracleStatus,
    /// Pairs (or pair-level combinations) actually examined.
    pub tested: usize,
    pub counterexample: Option<Counterexample>,
    /// Index of the pair that produced the counterexample.
    pub sample_index: Option<usize>,
    pub diagnostics: Vec<String>,
}

impl OracleOutcome {
    fn clean(tested: usize, diagnostics: Vec<String>) -> Self {
        Self {
            status: OracleStatus::NoViolation,
            tested,
            counterexample: None,
            sample_index: None,
            diagnostics,
        }
    }

    fn violated(tested: usize, index: usize, cx: Counterexample, diagnostics: Vec<String>) -> Self {
        Self {
            status: OracleStatus::Violated,
            tested,
            counterexample: Some(cx),
            sample_index: Some(index),
            diagnostics,
        }
    }

    pub fn is_violated(&self) -> bool {
        self.status == OracleStatus::Violated
    }
}

/// Levels `c` at which sublevel sets are tested.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum LevelSelection {
    /// `m` equally spaced levels strictly inside `(λ₁, λₙ)`.
    Sweep(usize),
    Explicit(Vec<f64>),
    /// For each sampled pair, the smallest level containing both endpoints.
    PairMaximum,
}

impl Default for LevelSelection {
    fn default() -> Self {
        LevelSelection::Sweep(16)
    }
}

fn validate(a: &SymmetricMatrix, k: &ConeSpec, opts: &OracleOptions) -> Result<()> {
    if a.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: k.dim(),
        });
    }
    if opts.samples == 0 {
        return Err(Error::InvalidInput("at least one sample is required".into()));
    }
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {}", opts.tol)));
    }
    Ok(())
}

/// Stream of non-degenerate cap pairs shared by the geodesic, pairwise and
/// pair-level sublevel tests.
struct PairStream<'a> {
    sampler: CapSampler<'a>,
    rng: ChaCha8Rng,
}

impl<'a> PairStream<'a> {
    fn new(k: &'a ConeSpec, opts: &OracleOptions) -> Self {
        Self {
            sampler: CapSampler::new(k).with_boundary_fraction(opts.boundary_fraction),
            rng: rng_from_seed(opts.seed),
        }
    }

    /// `None` for a discarded (near-antipodal or coincident) pair.
    fn next(&mut self) -> Option<(Vec<f64>, Vec<f64>)> {
        let x = self.sampler.sample(&mut self.rng);
        let y = self.sampler.sample(&mut self.rng);
        let theta = vector::dot(&x, &y).clamp(-1.0, 1.0).acos();
        (theta < std::f64::consts::PI - ANTIPODAL_GAP && theta.sin() >= 1e-12).then_some((x, y))
    }
}

/// Samples geodesics in the cap and looks for an interior point where
/// `q_A` exceeds the larger endpoint value by more than `tol`.
///
/// Each geodesic is scanned on a uniform grid and at the exact maximizer of
/// `q_A` along its great circle; a candidate is re-evaluated by slerp before
/// being reported.
pub fn geodesic_quasiconvexity_test(a: &SymmetricMatrix, k: &ConeSpec, opts: &OracleOptions) -> Result<OracleOutcome> {
    validate(a, k, opts)?;
    if opts.grid < 3 {
        return Err(Error::InvalidInput(format!("grid must be at least 3, got {}", opts.grid)));
    }
    let mut stream = PairStream::new(k, opts);
    let mut tested = 0;
    for index in 0..opts.samples {
        let Some((x, y)) = stream.next() else { continue };
        let Some(arc) = Arc::new(a, &x, &y) else { continue };
        tested += 1;
        let top = a.quad(&x).max(a.quad(&y));

        if let Some(cx) = geodesic_at_max(a, &x, &y) {
            if cx.margin() > opts.tol {
                return Ok(OracleOutcome::violated(tested, index, cx, Vec::new()));
            }
        }
        let mut best = (f64::NEG_INFINITY, 0.0);
        for j in 1..=opts.grid {
            let t = j as f64 / (opts.grid + 1) as f64;
            let v = arc.value(t * arc.theta);
            if v > best.0 {
                best = (v, t);
            }
        }
        if best.0 - top > opts.tol {
            let t = best.1;
            let point = geodesic_point(&x, &y, t)?;
            let margin = a.quad(&point) - top;
            if margin > opts.tol {
                let cx = Counterexample::Geodesic {
                    x,
                    y,
                    t,
                    point,
                    margin,
                };
                return Ok(OracleOutcome::violated(tested, index, cx, Vec::new()));
            }
        }
    }
    Ok(OracleOutcome::clean(tested, Vec::new()))
}

/// Tests the pairwise inequalities on sampled cap pairs: the sphere form on
/// the pair itself, the Rayleigh form on positively rescaled copies, and
/// the sphere form on the pair placed symmetrically around the maximizer of
/// `q_A` along their great circle.
pub fn pairwise_test(a: &SymmetricMatrix, k: &ConeSpec, opts: &OracleOptions) -> Result<OracleOutcome> {
    validate(a, k, opts)?;
    let mut stream = PairStream::new(k, opts);
    let mut scales = rng_from_seed(opts.seed ^ SCALE_STREAM);
    let mut tested = 0;
    for index in 0..opts.samples {
        let Some((x, y)) = stream.next() else { continue };
        tested += 1;

        let qx = a.quad(&x);
        let qy = a.quad(&y);
        let margin = a.bilinear(&x, &y) - vector::dot(&x, &y) * qx.max(qy);
        if margin > opts.tol {
            let cx = Counterexample::Pairwise {
                form: PairwiseForm::Sphere,
                x,
                y,
                margin,
            };
            return Ok(OracleOutcome::violated(tested, index, cx, Vec::new()));
        }

        let sx = vector::scaled(&x, scales.random_range(0.1..10.0));
        let sy = vector::scaled(&y, scales.random_range(0.1..10.0));
        let ip = vector::dot(&sx, &sy);
        if ip.abs() > 1e-8 {
            let margin = a.bilinear(&sx, &sy) / ip - rayleigh(a, &sx)?.max(rayleigh(a, &sy)?);
            if margin > opts.tol {
                let cx = Counterexample::Pairwise {
                    form: PairwiseForm::Rayleigh,
                    x: sx,
                    y: sy,
                    margin,
                };
                return Ok(OracleOutcome::violated(tested, index, cx, Vec::new()));
            }
        }

        if let Some(cx) = symmetric_pair(a, &x, &y) {
            if cx.margin() > opts.tol {
                return Ok(OracleOutcome::violated(tested, index, cx, Vec::new()));
            }
        }
    }
    Ok(OracleOutcome::clean(tested, Vec::new()))
}

/// Tests convexity of the sublevel cones `[φ_A ≤ c] ∩ int K`.
///
/// For each member pair the midpoint, three random convex combinations and
/// the combination on the ray of the maximizer of `φ_A` along the segment
/// are checked. Levels outside `[λ₁, λₙ)` give empty or full sets and are
/// skipped.
pub fn sublevel_convexity_test(
    a: &SymmetricMatrix,
    k: &ConeSpec,
    levels: &LevelSelection,
    opts: &OracleOptions,
) -> Result<OracleOutcome> {
    validate(a, k, opts)?;
    let mut combos = rng_from_seed(opts.seed ^ SCALE_STREAM);
    match levels {
        LevelSelection::PairMaximum => {
            let mut stream = PairStream::new(k, opts);
            let mut tested = 0;
            for index in 0..opts.samples {
                let Some((x, y)) = stream.next() else { continue };
                tested += 1;
                let level = a.quad(&x).max(a.quad(&y));
                if let Some(cx) = escape(a, &x, &y, level, &mut combos, opts.tol)? {
                    return Ok(OracleOutcome::violated(tested, index, cx, Vec::new()));
                }
            }
            Ok(OracleOutcome::clean(tested, Vec::new()))
        }
        LevelSelection::Sweep(_) | LevelSelection::Explicit(_) => {
            let dec = spectral_decompose(a, DEFAULT_GAP_TOL)?;
            let lo = dec.eigenvalue(0);
            let hi = dec.eigenvalue(a.dim() - 1);
            let list: Vec<f64> = match levels {
                LevelSelection::Sweep(m) => (1..=*m).map(|j| lo + (hi - lo) * j as f64 / (*m + 1) as f64).collect(),
                LevelSelection::Explicit(v) => v.clone(),
                LevelSelection::PairMaximum => unreachable!(),
            };
            let sampler = CapSampler::new(k).with_boundary_fraction(opts.boundary_fraction);
            let mut rng = rng_from_seed(opts.seed ^ POOL_STREAM);
            let pool: Vec<(Vec<f64>, f64)> = (0..2 * opts.samples)
                .map(|_| {
                    let x = sampler.sample(&mut rng);
                    let q = a.quad(&x);
                    (x, q)
                })
                .collect();

            let mut diagnostics = Vec::new();
            let mut tested = 0;
            let mut index = 0;
            for &c in &list {
                if !(c >= lo && c < hi) {
                    diagnostics.push(format!("level {c:e} outside [λ₁, λₙ): set is empty or all of int K"));
                    continue;
                }
                let members: Vec<&Vec<f64>> = pool.iter().filter(|(_, q)| *q <= c).map(|(x, _)| x).collect();
                if members.len() < 2 {
                    diagnostics.push(format!("level {c:e}: {} member(s) found, skipped", members.len()));
                    continue;
                }
                let per_level = (opts.samples / list.len().max(1)).max(1);
                for _ in 0..per_level {
                    let i = rng.random_range(0..members.len());
                    let mut j = rng.random_range(0..members.len() - 1);
                    if j >= i {
                        j += 1;
                    }
                    tested += 1;
                    if let Some(cx) = escape(a, members[i], members[j], c, &mut combos, opts.tol)? {
                        return Ok(OracleOutcome::violated(tested, index, cx, diagnostics));
                    }
                    index += 1;
                }
            }
            Ok(OracleOutcome::clean(tested, diagnostics))
        }
    }
}

/// First convex combination of unit `x, y` (both in `[φ_A ≤ level]`) that
/// leaves the set by more than `tol`.
fn escape(
    a: &SymmetricMatrix,
    x: &[f64],
    y: &[f64],
    level: f64,
    rng: &mut ChaCha8Rng,
    tol: f64,
) -> Result<Option<Counterexample>> {
    let mut params = vec![0.5, rng.random::<f64>(), rng.random::<f64>(), rng.random::<f64>()];
    if let Some(arc) = Arc::new(a, x, y) {
        if let Some(s) = arc.interior_max() {
            let (p, q) = ((arc.theta - s).sin(), s.sin());
            params.push(q / (p + q));
        }
    }
    for s in params {
        let z = vector::axpy(&vector::scaled(x, 1.0 - s), s, y);
        if vector::norm(&z) < 1e-12 {
            continue;
        }
        let margin = rayleigh(a, &z)? - level;
        if margin > tol {
            return Ok(Some(Counterexample::Sublevel {
                x: x.to_vec(),
                y: y.to_vec(),
                level,
                s,
                point: z,
                margin,
            }));
        }
    }
    Ok(None)
}
