//! Named instances whose verdict is known in advance.

use std::fmt;
use std::str::FromStr;

use super::input::{ProblemInput, ProblemMetadata};
use crate::analysis::{AnalysisOptions, Verdict};
use crate::cones::ConeSpec;
use crate::error::{Error, Result};
use crate::linalg::{householder, SymmetricMatrix};
use crate::vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleName {
    /// Orthant, `v¹ = (e¹+eⁿ)/√2`, `vⁿ = (e¹−eⁿ)/√2`, spectrum `(0, 1.6, …, 1.6, 2)`.
    CounterggOrthant,
    /// Lorentz cone, `vⁱ = eⁱ`, spectrum `(0, 1.6, …, 1.6, 2)`.
    CounterggLorentz,
    /// Lorentz cone, `diag(0, t₂, …, tₙ)` with `tᵢ` evenly spaced in `[1, 1.4]`.
    AlphaEtaLorentz,
    /// Orthant, reflector along `(1, …, 1)/√n`.
    Householder,
    /// Lorentz cone, two levels with the low eigenvector inside the cone.
    TwoEigLorentzPos,
    /// Lorentz cone, `I − e²(e²)ᵀ`.
    TwoEigLorentzNeg,
}

impl ExampleName {
    pub const ALL: [ExampleName; 6] = [
        ExampleName::CounterggOrthant,
        ExampleName::CounterggLorentz,
        ExampleName::AlphaEtaLorentz,
        ExampleName::Householder,
        ExampleName::TwoEigLorentzPos,
        ExampleName::TwoEigLorentzNeg,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExampleName::CounterggOrthant => "countergg-orthant",
            ExampleName::CounterggLorentz => "countergg-lorentz",
            ExampleName::AlphaEtaLorentz => "alpha-eta-lorentz",
            ExampleName::Householder => "householder",
            ExampleName::TwoEigLorentzPos => "two-eig-lorentz-pos",
            ExampleName::TwoEigLorentzNeg => "two-eig-lorentz-neg",
        }
    }

    pub fn expected_verdict(self) -> Verdict {
        match self {
            ExampleName::TwoEigLorentzNeg => Verdict::CertifiedNot,
            _ => Verdict::CertifiedQuasiconvex,
        }
    }

    pub fn min_dim(self) -> usize {
        match self {
            ExampleName::Householder => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for ExampleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for ExampleName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<_> = Self::ALL.iter().map(|e| e.as_str()).collect();
                Error::InvalidInput(format!("unknown example {s:?}; expected one of {}", known.join(", ")))
            })
    }
}

/// Builds the named instance in dimension `n`; `seed` becomes the seed of
/// its analysis options.
pub fn generate_example(name: ExampleName, n: usize, seed: u64) -> Result<ProblemInput> {
    if n < name.min_dim() {
        return Err(Error::InvalidInput(format!("{name} needs n ≥ {}, got {n}", name.min_dim())));
    }
    let (matrix, cone) = match name {
        ExampleName::CounterggOrthant => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let mut v1 = vec![0.0; n];
            let mut vn = vec![0.0; n];
            v1[0] = s;
            v1[n - 1] = s;
            vn[0] = s;
            vn[n - 1] = -s;
            let mut vecs = vec![v1];
            vecs.extend((1..n - 1).map(|i| vector::unit(n, i)));
            vecs.push(vn);
            (SymmetricMatrix::from_spectrum(&three_level(n), &vecs)?, ConeSpec::orthant(n))
        }
        ExampleName::CounterggLorentz => (SymmetricMatrix::diag(&three_level(n))?, ConeSpec::lorentz(n)),
        ExampleName::AlphaEtaLorentz => {
            let mut d = vec![0.0];
            d.extend((0..n - 1).map(|i| 1.0 + 0.4 * i as f64 / (n - 2) as f64));
            (SymmetricMatrix::diag(&d)?, ConeSpec::lorentz(n))
        }
        ExampleName::Householder => (householder(&vec![1.0; n])?, ConeSpec::orthant(n)),
        ExampleName::TwoEigLorentzPos => {
            let mut v = vec![0.0; n];
            v[0] = 1.0;
            v[1] = 0.5;
            (SymmetricMatrix::two_level(&v, 0.0, 1.0)?, ConeSpec::lorentz(n))
        }
        ExampleName::TwoEigLorentzNeg => (SymmetricMatrix::two_level(&vector::unit(n, 1), 0.0, 1.0)?, ConeSpec::lorentz(n)),
    };
    Ok(ProblemInput {
        matrix,
        cone,
        options: AnalysisOptions::default().with_seed(seed),
        metadata: Some(ProblemMetadata {
            name: name.as_str().into(),
            expected_verdict: name.expected_verdict(),
        }),
        warnings: Vec::new(),
    })
}

/// `(0, 1.6, …, 1.6, 2)`: `λ < (λ+η)/2 < μ < η`.
fn three_level(n: usize) -> Vec<f64> {
    let mut d = vec![1.6; n];
    d[0] = 0.0;
    d[n - 1] = 2.0;
    d
}
