//! Spherical quasi-convexity of quadratic forms `q_A(x) = ⟨Ax, x⟩` on the
//! cap `S^{n−1} ∩ int K` of a convex cone `K`.
//!
//! The crate combines exact certificates derived from the eigen-structure
//! of `A`, cone memberships and Lorentz copositivity with seeded sampling
//! oracles that can refute quasi-convexity by an explicit counterexample.
//!
//! ```
//! use sqc::analysis::{analyze, AnalysisOptions, Verdict};
//! use sqc::cones::ConeSpec;
//! use sqc::linalg::SymmetricMatrix;
//!
//! let a = SymmetricMatrix::diag(&[0.0, 1.0, 1.0]).unwrap();
//! let report = analyze(&a, &ConeSpec::lorentz(3), &AnalysisOptions::default());
//! assert_eq!(report.verdict, Verdict::CertifiedQuasiconvex);
//! ```

pub mod analysis;
pub mod cli;
pub mod cones;
pub mod copositivity;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod sampling;
pub mod sphere_opt;
pub mod vector;

pub use error::{Error, Result};
