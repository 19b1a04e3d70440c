//! Shared, lazily computed quantities of one analysis run.

use std::cell::OnceCell;

use super::AnalysisOptions;
use crate::cones::{ConeSpec, Membership, MEMBERSHIP_TOL};
use crate::copositivity::{certify_copositive, CopositivityCertificate};
use crate::linalg::{SpectralDecomposition, SymmetricMatrix};
use crate::sampling::rng_from_seed;
use crate::sphere_opt::{cap_starts, multistart_minimize, CapOptions};
use crate::vector;

/// Extremes of `q_A` over the closed cap found by multi-start descent.
/// `min` is an upper bound on the true minimum, `max` a lower bound on the
/// true maximum.
#[derive(Clone, Debug)]
pub struct CapRange {
    pub min: f64,
    pub argmin: Vec<f64>,
    pub max: f64,
    pub argmax: Vec<f64>,
    pub converged: bool,
}

pub struct Context<'a> {
    pub a: &'a SymmetricMatrix,
    pub k: &'a ConeSpec,
    pub dec: SpectralDecomposition,
    pub opts: &'a AnalysisOptions,
    range: OnceCell<CapRange>,
    shifted: OnceCell<std::result::Result<CopositivityCertificate, String>>,
}

impl<'a> Context<'a> {
    pub fn new(a: &'a SymmetricMatrix, k: &'a ConeSpec, dec: SpectralDecomposition, opts: &'a AnalysisOptions) -> Self {
        Self {
            a,
            k,
            dec,
            opts,
            range: OnceCell::new(),
            shifted: OnceCell::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.a.dim()
    }

    pub fn lambda(&self, i: usize) -> f64 {
        self.dec.eigenvalue(i)
    }

    pub fn v(&self, i: usize) -> &[f64] {
        self.dec.eigenvector(i)
    }

    pub fn simple_smallest(&self) -> bool {
        self.dec.multiplicity_of_smallest() == 1
    }

    /// Distinct seed per consumer so that conditions do not share streams.
    pub fn seed(&self, salt: u64) -> u64 {
        self.opts.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15)
    }

    pub fn cap_range(&self) -> &CapRange {
        self.range.get_or_init(|| {
            let a = self.a;
            let mut rng = rng_from_seed(self.seed(1));
            let starts = cap_starts(self.k, self.dec.eigenvectors(), self.opts.cap_starts, &mut rng);
            let opts = CapOptions {
                initial_step: 0.5 / (1.0 + a.frobenius_norm()),
                ..CapOptions::default()
            };
            let lo = multistart_minimize(self.k, |x| (a.quad(x), vector::scaled(&a.apply(x), 2.0)), &starts, &opts)
                .expect("at least one start");
            let hi = multistart_minimize(
                self.k,
                |x| (-a.quad(x), vector::scaled(&a.apply(x), -2.0)),
                &starts,
                &opts,
            )
            .expect("at least one start");
            CapRange {
                min: a.quad(&lo.x),
                argmin: lo.x,
                max: a.quad(&hi.x),
                argmax: hi.x,
                converged: lo.converged && hi.converged,
            }
        })
    }

    /// Copositivity certificate of `λ₂I − A` on `K`.
    pub fn shifted_copositivity(&self) -> std::result::Result<&CopositivityCertificate, &str> {
        self.shifted
            .get_or_init(|| {
                let b = self.a.scaled(-1.0).shifted(self.lambda(1));
                certify_copositive(&b, self.k, self.opts.samples, self.seed(2), self.opts.tol).map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(|e| e.as_str())
    }

    /// The sign `σ` with `σv ∈ K*`, `None` if neither, or the error text
    /// when a membership test is inconclusive for both signs.
    pub fn dual_sign(&self, v: &[f64]) -> std::result::Result<Option<f64>, String> {
        let mut inconclusive = false;
        for s in [1.0, -1.0] {
            match self.k.dual_contains(&vector::scaled(v, s), self.opts.tol) {
                Ok(Membership::Yes) => return Ok(Some(s)),
                Ok(Membership::No) => {}
                Ok(Membership::Inconclusive) => inconclusive = true,
                Err(e) => return Err(e.to_string()),
            }
        }
        if inconclusive {
            Err("dual-cone membership inconclusive".into())
        } else {
            Ok(None)
        }
    }

    /// The sign `σ` with `σv ∈ K`, if any.
    pub fn primal_sign(&self, v: &[f64]) -> Option<f64> {
        [1.0, -1.0]
            .into_iter()
            .find(|s| self.k.margin(&vector::scaled(v, *s)) >= -MEMBERSHIP_TOL)
    }

    /// `‖Av − λv‖` for eigenpair `i`, recorded as re-verifiable evidence.
    pub fn residual(&self, i: usize) -> f64 {
        let v = self.v(i);
        vector::dist(&self.a.apply(v), &vector::scaled(v, self.lambda(i)))
    }
}
