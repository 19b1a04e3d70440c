//! Command-line front end: problem files, report assembly, exit codes and
//! the example generators.

mod format;
mod generate;
mod input;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use format::{to_json_string, DigitsFormatter};
pub use generate::{generate_example, ExampleName};
pub use input::{emit, parse_problem, parse_problem_str, ProblemInput, ProblemMetadata, ASYMMETRY_WARNING};

use crate::analysis::{analyze, AnalysisReport, ConditionStatus, Verdict};
use crate::cones::{moreau_decompose, ConeSpec, MoreauParts};
use crate::error::{Error, Result};
use crate::linalg::SymmetricMatrix;
use crate::oracle::{
    geodesic_quasiconvexity_test, pairwise_test, sublevel_convexity_test, LevelSelection, OracleOptions,
    OracleOutcome,
};

pub const EXIT_INPUT_ERROR: i32 = 10;
pub const EXIT_IO_ERROR: i32 = 11;
pub const EXIT_INTERNAL_ERROR: i32 = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Conditions only; the geodesic oracle runs only for undecided inputs.
    Analyze,
    /// The three sampling oracles only.
    Oracle,
    /// Conditions plus all oracles as cross-validation.
    #[default]
    Both,
}

/// One oracle run with the re-verification of its counterexample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRun {
    pub outcome: Option<OracleOutcome>,
    /// The counterexample re-evaluated to a violation above tolerance.
    pub verified: bool,
    pub error: Option<String>,
}

impl OracleRun {
    fn from_result(r: Result<OracleOutcome>, a: &SymmetricMatrix, k: &ConeSpec, tol: f64) -> Self {
        match r {
            Ok(outcome) => {
                let verified = outcome
                    .counterexample
                    .as_ref()
                    .is_some_and(|cx| cx.verify(a, k, tol).unwrap_or(false));
                Self {
                    outcome: Some(outcome),
                    verified,
                    error: None,
                }
            }
            Err(e) => Self {
                outcome: None,
                verified: false,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleSuite {
    pub geodesic: OracleRun,
    pub pairwise: OracleRun,
    /// Sublevel test at the pair-maximum level of every sampled pair.
    pub sublevel: OracleRun,
}

impl OracleSuite {
    fn first_verified(&self) -> Option<&'static str> {
        [
            ("GEODESIC_ORACLE", &self.geodesic),
            ("PAIRWISE_ORACLE", &self.pairwise),
            ("SUBLEVEL_ORACLE", &self.sublevel),
        ]
        .into_iter()
        .find(|(_, r)| r.verified)
        .map(|(name, _)| name)
    }
}

/// Everything `sqc analyze` writes as JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub mode: Mode,
    pub verdict: Verdict,
    pub decided_by: Option<String>,
    pub expected_verdict: Option<Verdict>,
    pub seed: u64,
    pub analysis: Option<AnalysisReport>,
    pub oracles: Option<OracleSuite>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        verdict_exit_code(self.verdict)
    }
}

pub fn verdict_exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::CertifiedQuasiconvex => 0,
        Verdict::CertifiedNot => 1,
        Verdict::Unknown => 2,
    }
}

pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO_ERROR,
        Error::Parse { .. }
        | Error::NonFinite { .. }
        | Error::DimensionMismatch { .. }
        | Error::InvalidInput(_)
        | Error::UnsupportedCone { .. }
        | Error::Domain(_) => EXIT_INPUT_ERROR,
        _ => EXIT_INTERNAL_ERROR,
    }
}

fn oracle_suite(a: &SymmetricMatrix, k: &ConeSpec, opts: &OracleOptions, geodesic: Option<OracleOutcome>) -> OracleSuite {
    let geodesic = match geodesic {
        Some(o) => OracleRun::from_result(Ok(o), a, k, opts.tol),
        None => OracleRun::from_result(geodesic_quasiconvexity_test(a, k, opts), a, k, opts.tol),
    };
    OracleSuite {
        geodesic,
        pairwise: OracleRun::from_result(pairwise_test(a, k, opts), a, k, opts.tol),
        sublevel: OracleRun::from_result(
            sublevel_convexity_test(a, k, &LevelSelection::PairMaximum, opts),
            a,
            k,
            opts.tol,
        ),
    }
}

/// Runs `problem` in `mode`. The result is a pure function of the problem.
pub fn run(problem: &ProblemInput, mode: Mode) -> RunReport {
    let (a, k) = (&problem.matrix, &problem.cone);
    let mut report = RunReport {
        mode,
        verdict: Verdict::Unknown,
        decided_by: None,
        expected_verdict: problem.metadata.as_ref().map(|m| m.expected_verdict),
        seed: problem.options.seed,
        analysis: None,
        oracles: None,
        warnings: problem.warnings.clone(),
        notes: Vec::new(),
    };
    match mode {
        Mode::Oracle => {
            let suite = oracle_suite(a, k, &problem.options.oracle, None);
            if let Some(name) = suite.first_verified() {
                report.verdict = Verdict::CertifiedNot;
                report.decided_by = Some(name.into());
            } else {
                report
                    .notes
                    .push("no violation found by sampling; this is not a certificate".into());
            }
            report.oracles = Some(suite);
        }
        Mode::Analyze | Mode::Both => {
            let mut opts = problem.options.clone();
            opts.cross_validate |= mode == Mode::Both;
            let analysis = analyze(a, k, &opts);
            report.verdict = analysis.verdict;
            report.decided_by = analysis.decided_by.clone();
            if mode == Mode::Both {
                let suite = oracle_suite(a, k, &opts.oracle, analysis.oracle_summary.clone());
                match (report.verdict, suite.first_verified()) {
                    (Verdict::Unknown, Some(name)) => {
                        report.verdict = Verdict::CertifiedNot;
                        report.decided_by = Some(name.into());
                    }
                    (Verdict::CertifiedQuasiconvex, Some(name)) => {
                        report.notes.push(format!(
                            "{name} re-verified a counterexample against the certificate of {}; verdict withdrawn",
                            report.decided_by.as_deref().unwrap_or("?")
                        ));
                        report.verdict = Verdict::Unknown;
                        report.decided_by = None;
                    }
                    _ => {}
                }
                report.oracles = Some(suite);
            }
            report.analysis = Some(analysis);
        }
    }
    if let Some(expected) = report.expected_verdict {
        if expected != report.verdict {
            report
                .notes
                .push(format!("verdict {} differs from the expected {expected}", report.verdict));
        }
    }
    report
}

/// Short human-readable account of a run.
pub fn summary(report: &RunReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "verdict: {}", report.verdict);
    if let Some(d) = &report.decided_by {
        let _ = writeln!(s, "decided by: {d}");
    }
    if let Some(a) = &report.analysis {
        for o in &a.outcomes {
            let status = match o.status {
                ConditionStatus::Holds => "holds",
                ConditionStatus::Fails => "fails",
                ConditionStatus::NotApplicable => "not applicable",
                ConditionStatus::Inconclusive => "inconclusive",
            };
            let _ = writeln!(s, "  {:<18} {status}", o.condition_id.as_str());
        }
        for n in &a.notes {
            let _ = writeln!(s, "note: {n}");
        }
    }
    if let Some(suite) = &report.oracles {
        for (name, r) in [
            ("geodesic", &suite.geodesic),
            ("pairwise", &suite.pairwise),
            ("sublevel", &suite.sublevel),
        ] {
            let line = match (&r.outcome, &r.error) {
                (Some(o), _) if r.verified => format!("verified violation after {} pairs", o.tested),
                (Some(o), _) if o.is_violated() => "candidate failed re-verification".to_string(),
                (Some(o), _) => format!("no violation in {} pairs", o.tested),
                (None, Some(e)) => format!("error: {e}"),
                (None, None) => "not run".to_string(),
            };
            let _ = writeln!(s, "  oracle {name:<9} {line}");
        }
    }
    for w in &report.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    for n in &report.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

/// Moreau decomposition of a comma-separated vector for a named cone.
pub fn project(cone: &str, vector: &str) -> Result<MoreauParts> {
    let x = parse_vector(vector)?;
    let k = match cone {
        "lorentz" => ConeSpec::lorentz(x.len()),
        "orthant" => ConeSpec::orthant(x.len()),
        other => {
            return Err(Error::InvalidInput(format!(
                "projection supports the lorentz and orthant cones, got {other:?}"
            )))
        }
    };
    moreau_decompose(&k, &x)
}

pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    let x = text
        .split(',')
        .enumerate()
        .map(|(i, t)| {
            let v: f64 = t.trim().parse().map_err(|_| Error::Parse {
                line: 1,
                column: i + 1,
                message: format!("component {i} is not a number: {:?}", t.trim()),
            })?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinite { row: 0, col: i })
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    if x.len() < 2 {
        return Err(Error::InvalidInput("vector needs at least two components".into()));
    }
    if x.iter().all(|v| *v == 0.0) {
        return Err(Error::InvalidInput("zero vector".into()));
    }
    Ok(x)
}
