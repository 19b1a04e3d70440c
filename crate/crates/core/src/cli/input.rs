//! JSON problem documents.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::format::to_json_string;
use crate::analysis::{AnalysisOptions, Verdict};
use crate::cones::{ConeSpec, EllipticCone};
use crate::error::{Error, Result};
use crate::linalg::SymmetricMatrix;

/// Asymmetry above which parsing records a warning before averaging.
pub const ASYMMETRY_WARNING: f64 = 1e-9;

/// Regression metadata carried by generated problems.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemMetadata {
    pub name: String,
    pub expected_verdict: Verdict,
}

/// A validated matrix/cone pair with its analysis options.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemInput {
    pub matrix: SymmetricMatrix,
    pub cone: ConeSpec,
    pub options: AnalysisOptions,
    pub metadata: Option<ProblemMetadata>,
    /// Non-fatal findings of the parser, such as symmetrization.
    pub warnings: Vec<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Num(f64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    n: Option<usize>,
    matrix: Vec<Vec<Entry>>,
    cone: Value,
    #[serde(default)]
    options: Option<Value>,
    #[serde(default)]
    metadata: Option<ProblemMetadata>,
}

#[derive(Serialize)]
struct Document<'a> {
    n: usize,
    matrix: Vec<Vec<f64>>,
    cone: &'a ConeSpec,
    options: &'a AnalysisOptions,
    #[serde(skip_serializing_if = "Option::is_none")]
    metadata: Option<&'a ProblemMetadata>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn field_error(what: &str, e: impl std::fmt::Display) -> Error {
    Error::Parse {
        line: 0,
        column: 0,
        message: format!("{what}: {e}"),
    }
}

/// Reads a problem from `path`, or from standard input when `path` is `-`.
pub fn parse_problem(path: &Path) -> Result<ProblemInput> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    parse_problem_str(&text)
}

pub fn parse_problem_str(text: &str) -> Result<ProblemInput> {
    let raw: RawProblem = serde_json::from_str(text).map_err(json_error)?;
    let n = raw.n.unwrap_or(raw.matrix.len());
    if raw.matrix.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: raw.matrix.len(),
        });
    }
    let mut rows = Vec::with_capacity(n);
    for (i, row) in raw.matrix.into_iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        let mut values = Vec::with_capacity(n);
        for (j, entry) in row.into_iter().enumerate() {
            let v = match entry {
                Entry::Num(v) => v,
                Entry::Text(t) => match t.trim().parse::<f64>() {
                    Ok(v) if !v.is_finite() => return Err(Error::NonFinite { row: i, col: j }),
                    _ => {
                        let what = format!("matrix[{i}][{j}]");
                        return Err(field_error(&what, format!("expected a number, found {t:?}")));
                    }
                },
            };
            if !v.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
            values.push(v);
        }
        rows.push(values);
    }

    let mut warnings = Vec::new();
    let asym = SymmetricMatrix::max_asymmetry(&rows);
    if asym > ASYMMETRY_WARNING {
        warnings.push(format!("matrix asymmetry {asym:e} exceeds {ASYMMETRY_WARNING:e}; using (A + Aᵀ)/2"));
    }
    let matrix = SymmetricMatrix::from_rows(&rows)?;
    let cone = parse_cone(&raw.cone, n)?;
    if cone.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cone.dim(),
        });
    }

    let options = match raw.options {
        Some(v) => serde_json::from_value(v).map_err(|e| field_error("options", e))?,
        None => AnalysisOptions::default(),
    };
    validate_options(&options)?;

    Ok(ProblemInput {
        matrix,
        cone,
        options,
        metadata: raw.metadata,
        warnings,
    })
}

/// Builds a cone from its JSON description, filling a missing `n` from the
/// matrix size.
fn parse_cone(v: &Value, n: usize) -> Result<ConeSpec> {
    let obj = v
        .as_object()
        .ok_or_else(|| field_error("cone", "expected an object"))?;
    let kind = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| field_error("cone", "missing string field \"type\""))?;
    let dim = match obj.get("n") {
        None => n,
        Some(d) => d
            .as_u64()
            .map(|d| d as usize)
            .ok_or_else(|| field_error("cone.n", "expected a non-negative integer"))?,
    };
    let vector = |key: &str| -> Result<Vec<f64>> {
        serde_json::from_value(obj.get(key).cloned().unwrap_or(Value::Null))
            .map_err(|e| field_error(&format!("cone.{key}"), e))
    };
    match kind {
        "orthant" => Ok(ConeSpec::orthant(dim)),
        "lorentz" => Ok(ConeSpec::lorentz(dim)),
        "elliptic" => {
            let axis = vector("axis")?;
            let weights = vector("weights")?;
            let basis: Vec<Vec<f64>> = serde_json::from_value(obj.get("basis").cloned().unwrap_or(Value::Null))
                .map_err(|e| field_error("cone.basis", e))?;
            Ok(ConeSpec::Elliptic(EllipticCone::new(axis, basis, weights)?))
        }
        "negated" => {
            let inner = obj
                .get("inner")
                .ok_or_else(|| field_error("cone", "negated cone needs \"inner\""))?;
            Ok(parse_cone(inner, n)?.negated())
        }
        other => Err(field_error("cone.type", format!("unknown cone type {other:?}"))),
    }
}

fn validate_options(o: &AnalysisOptions) -> Result<()> {
    for (name, v) in [
        ("options.tol", o.tol),
        ("options.gap_tol", o.gap_tol),
        ("options.oracle.tol", o.oracle.tol),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidInput(format!("{name} must be positive, got {v}")));
        }
    }
    if !(0.0..=1.0).contains(&o.oracle.boundary_fraction) {
        return Err(Error::InvalidInput(format!(
            "options.oracle.boundary_fraction must lie in [0, 1], got {}",
            o.oracle.boundary_fraction
        )));
    }
    Ok(())
}

/// Serializes a problem so that [`parse_problem_str`] restores it exactly.
pub fn emit(problem: &ProblemInput) -> Result<String> {
    to_json_string(&Document {
        n: problem.matrix.dim(),
        matrix: problem.matrix.to_rows(),
        cone: &problem.cone,
        options: &problem.options,
        metadata: problem.metadata.as_ref(),
    })
}
