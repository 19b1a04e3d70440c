//! Decision engine: evaluates necessary conditions, sufficient conditions
//! and characterizations of spherical quasi-convexity, then aggregates them
//! into a verdict.
//!
//! Precedence, highest first: characterizations, failed necessary
//! conditions, satisfied sufficient conditions, a re-verified oracle
//! counterexample. Anything else is `UNKNOWN`.

mod alpha_eta;
mod conditions;
mod context;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use alpha_eta::{compute_alpha_eta, AlphaEta};
pub use conditions::{
    characterize_lorentz_2eig, characterize_selfdual, necessary_conditions, sufficient_alpha_eta,
    sufficient_best_iii, sufficient_conv_sl, sufficient_countergg, sufficient_two_eig,
};

use crate::cones::ConeSpec;
use crate::linalg::{spectral_decompose, SpectralDecomposition, SymmetricMatrix, DEFAULT_GAP_TOL};
use crate::oracle::{geodesic_quasiconvexity_test, OracleOptions, OracleOutcome};
use context::Context;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConditionId {
    #[serde(rename = "NEC_MULT_ONE")]
    NecMultOne,
    #[serde(rename = "NEC_LAMBDA2_SPLIT")]
    NecLambda2Split,
    #[serde(rename = "NEC_Z_PROPERTY")]
    NecZProperty,
    #[serde(rename = "SUF_TWO_EIG")]
    SufTwoEig,
    #[serde(rename = "SUF_BEST_III")]
    SufBestIii,
    #[serde(rename = "SUF_COUNTERGG")]
    SufCountergg,
    #[serde(rename = "SUF_ALPHA_ETA")]
    SufAlphaEta,
    #[serde(rename = "SUF_CONV_SL")]
    SufConvSl,
    #[serde(rename = "CHAR_SELFDUAL_IV")]
    CharSelfdualIv,
    #[serde(rename = "CHAR_LORENTZ_2EIG")]
    CharLorentz2Eig,
}

/// What a condition's status implies for the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionKind {
    /// `FAILS` refutes quasi-convexity.
    Necessary,
    /// `HOLDS` certifies quasi-convexity.
    Sufficient,
    /// `HOLDS` certifies, `FAILS` refutes.
    Characterization,
}

impl ConditionId {
    pub const ALL: [ConditionId; 10] = [
        ConditionId::NecMultOne,
        ConditionId::NecLambda2Split,
        ConditionId::NecZProperty,
        ConditionId::CharLorentz2Eig,
        ConditionId::CharSelfdualIv,
        ConditionId::SufTwoEig,
        ConditionId::SufBestIii,
        ConditionId::SufCountergg,
        ConditionId::SufAlphaEta,
        ConditionId::SufConvSl,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConditionId::NecMultOne => "NEC_MULT_ONE",
            ConditionId::NecLambda2Split => "NEC_LAMBDA2_SPLIT",
            ConditionId::NecZProperty => "NEC_Z_PROPERTY",
            ConditionId::SufTwoEig => "SUF_TWO_EIG",
            ConditionId::SufBestIii => "SUF_BEST_III",
            ConditionId::SufCountergg => "SUF_COUNTERGG",
            ConditionId::SufAlphaEta => "SUF_ALPHA_ETA",
            ConditionId::SufConvSl => "SUF_CONV_SL",
            ConditionId::CharSelfdualIv => "CHAR_SELFDUAL_IV",
            ConditionId::CharLorentz2Eig => "CHAR_LORENTZ_2EIG",
        }
    }

    pub fn kind(self) -> ConditionKind {
        match self {
            ConditionId::NecMultOne | ConditionId::NecLambda2Split | ConditionId::NecZProperty => {
                ConditionKind::Necessary
            }
            ConditionId::CharSelfdualIv | ConditionId::CharLorentz2Eig => ConditionKind::Characterization,
            _ => ConditionKind::Sufficient,
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl std::str::FromStr for ConditionId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ConditionId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown condition `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConditionStatus {
    Holds,
    Fails,
    NotApplicable,
    Inconclusive,
}

pub type Evidence = BTreeMap<String, Value>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionOutcome {
    pub condition_id: ConditionId,
    pub status: ConditionStatus,
    pub evidence: Evidence,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ConditionOutcome {
    pub fn new(condition_id: ConditionId, status: ConditionStatus) -> Self {
        Self {
            condition_id,
            status,
            evidence: Evidence::new(),
            notes: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.evidence
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    /// The verdict this outcome forces on its own, if any.
    pub fn implied_verdict(&self) -> Option<Verdict> {
        match (self.condition_id.kind(), self.status) {
            (ConditionKind::Necessary, ConditionStatus::Fails)
            | (ConditionKind::Characterization, ConditionStatus::Fails) => Some(Verdict::CertifiedNot),
            (ConditionKind::Sufficient, ConditionStatus::Holds)
            | (ConditionKind::Characterization, ConditionStatus::Holds) => Some(Verdict::CertifiedQuasiconvex),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    CertifiedQuasiconvex,
    CertifiedNot,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CertifiedQuasiconvex => "CERTIFIED_QUASICONVEX",
            Verdict::CertifiedNot => "CERTIFIED_NOT",
            Verdict::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalysisOptions {
    pub seed: u64,
    /// Absolute tolerance for inequalities between spectral and cap values.
    pub tol: f64,
    /// Relative eigenvalue grouping tolerance.
    pub gap_tol: f64,
    /// Sample budget of sampled copositivity and dual-cone tests.
    pub samples: usize,
    /// Starts of the cap optimizers.
    pub cap_starts: usize,
    /// Evaluate every condition instead of stopping at the first decision.
    pub exhaustive: bool,
    /// Always run the geodesic oracle, not only for undecided instances.
    pub cross_validate: bool,
    /// Restrict evaluation to these conditions.
    pub conditions: Option<Vec<ConditionId>>,
    pub oracle: OracleOptions,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            seed: 42,
            tol: 1e-9,
            gap_tol: DEFAULT_GAP_TOL,
            samples: 4000,
            cap_starts: 64,
            exhaustive: false,
            cross_validate: false,
            conditions: None,
            oracle: OracleOptions::default(),
        }
    }
}

impl AnalysisOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self.oracle.seed = seed;
        self
    }

    fn selected(&self, id: ConditionId) -> bool {
        self.conditions.as_ref().is_none_or(|c| c.contains(&id))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
    pub multiplicity_of_smallest: usize,
    pub cluster_sizes: Vec<usize>,
    pub gap_tolerance: f64,
}

impl From<&SpectralDecomposition> for SpectralSummary {
    fn from(d: &SpectralDecomposition) -> Self {
        Self {
            eigenvalues: d.eigenvalues().to_vec(),
            eigenvectors: d.eigenvectors().to_vec(),
            multiplicity_of_smallest: d.multiplicity_of_smallest(),
            cluster_sizes: d.cluster_sizes(),
            gap_tolerance: d.gap_tolerance(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub tol: f64,
    pub gap_tol: f64,
    pub samples: usize,
    pub cap_starts: usize,
    pub oracle_samples: usize,
    pub oracle_tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub verdict: Verdict,
    /// Condition id, or `GEODESIC_ORACLE`, that settled the verdict.
    pub decided_by: Option<String>,
    pub outcomes: Vec<ConditionOutcome>,
    pub spectral: Option<SpectralSummary>,
    pub oracle_summary: Option<OracleOutcome>,
    pub provenance: Provenance,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn outcome(&self, id: ConditionId) -> Option<&ConditionOutcome> {
        self.outcomes.iter().find(|o| o.condition_id == id)
    }
}

/// Runs the conditions in order, stopping at the first decisive one unless
/// `opts.exhaustive` is set, and falls back to the geodesic oracle.
///
/// Total: input problems are reported as notes on an `UNKNOWN` verdict.
pub fn analyze(a: &SymmetricMatrix, k: &ConeSpec, opts: &AnalysisOptions) -> AnalysisReport {
    let mut report = AnalysisReport {
        verdict: Verdict::Unknown,
        decided_by: None,
        outcomes: Vec::new(),
        spectral: None,
        oracle_summary: None,
        provenance: Provenance {
            seed: opts.seed,
            tol: opts.tol,
            gap_tol: opts.gap_tol,
            samples: opts.samples,
            cap_starts: opts.cap_starts,
            oracle_samples: opts.oracle.samples,
            oracle_tol: opts.oracle.tol,
        },
        notes: Vec::new(),
    };
    if a.dim() != k.dim() {
        report
            .notes
            .push(format!("matrix dimension {} does not match cone dimension {}", a.dim(), k.dim()));
        return report;
    }
    let dec = match spectral_decompose(a, opts.gap_tol) {
        Ok(d) => d,
        Err(e) => {
            report.notes.push(format!("spectral decomposition failed: {e}"));
            return report;
        }
    };
    report.spectral = Some(SpectralSummary::from(&dec));

    if dec.is_scalar() {
        report.outcomes.push(
            ConditionOutcome::new(ConditionId::NecMultOne, ConditionStatus::Holds)
                .with("constant_form", true)
                .with("eigenvalue", dec.eigenvalue(0))
                .note("A has a single eigenvalue, so q_A is constant on the sphere"),
        );
        report.verdict = Verdict::CertifiedQuasiconvex;
        report.decided_by = Some(ConditionId::NecMultOne.to_string());
        if opts.cross_validate {
            attach_oracle(&mut report, a, k, opts);
        }
        return report;
    }

    // q_A is even, so −K behaves exactly like K
    let (base, negated) = k.base();
    if negated {
        report
            .notes
            .push("conditions evaluated on the base cone; x ↦ −x maps its cap onto the given one".into());
    }
    if !base.is_subdual() {
        report
            .notes
            .push("the cone is not subdual: no spectral condition applies, only the oracle can decide".into());
    } else {
        if dec.eigenvalues().iter().any(|l| l.abs() <= dec.gap_tolerance()) {
            report
                .notes
                .push("A is singular; no condition here requires nonsingularity".into());
        }
        let ctx = Context::new(a, base, dec, opts);
        run_conditions(&ctx, opts, &mut report);
    }

    if report.verdict == Verdict::Unknown || opts.cross_validate {
        attach_oracle(&mut report, a, k, opts);
    }
    report
}

fn run_conditions(ctx: &Context, opts: &AnalysisOptions, report: &mut AnalysisReport) {
    type Step = (ConditionId, fn(&Context) -> ConditionOutcome);
    let steps: [Step; 11] = [
        (ConditionId::NecMultOne, conditions::nec_mult_one),
        (ConditionId::NecLambda2Split, conditions::nec_lambda2_split),
        (ConditionId::NecZProperty, conditions::nec_z_property),
        (ConditionId::CharLorentz2Eig, conditions::char_lorentz_2eig),
        (ConditionId::CharSelfdualIv, conditions::char_selfdual_iv),
        (ConditionId::SufTwoEig, conditions::suf_two_eig),
        (ConditionId::SufBestIii, conditions::suf_best_iii_dual),
        (ConditionId::SufCountergg, conditions::suf_countergg),
        (ConditionId::SufAlphaEta, conditions::suf_alpha_eta),
        (ConditionId::SufConvSl, conditions::suf_conv_sl),
        (ConditionId::SufBestIii, conditions::suf_best_iii),
    ];
    for (id, eval) in steps {
        if !opts.selected(id) {
            continue;
        }
        let outcome = eval(ctx);
        let decisive = outcome.implied_verdict().is_some();
        match report.outcomes.iter_mut().find(|o| o.condition_id == id) {
            // the second SUF_BEST_III pass refines the first
            Some(existing) => {
                if existing.status != ConditionStatus::Holds {
                    *existing = outcome;
                }
            }
            None => report.outcomes.push(outcome),
        }
        if decisive && !opts.exhaustive {
            break;
        }
    }
    aggregate(report);
}

/// Applies the precedence order to the recorded outcomes.
fn aggregate(report: &mut AnalysisReport) {
    let pick = |kind: ConditionKind, verdict: Option<Verdict>| {
        report
            .outcomes
            .iter()
            .filter(|o| o.condition_id.kind() == kind)
            .filter_map(|o| o.implied_verdict().map(|v| (v, o.condition_id)))
            .find(|(v, _)| verdict.is_none_or(|w| w == *v))
    };
    let decision = pick(ConditionKind::Characterization, None)
        .or_else(|| pick(ConditionKind::Necessary, Some(Verdict::CertifiedNot)))
        .or_else(|| pick(ConditionKind::Sufficient, Some(Verdict::CertifiedQuasiconvex)));
    if let Some((verdict, id)) = decision {
        report.verdict = verdict;
        report.decided_by = Some(id.to_string());
    }
    let refuted = report.outcomes.iter().any(|o| o.implied_verdict() == Some(Verdict::CertifiedNot));
    let certified = report
        .outcomes
        .iter()
        .any(|o| o.implied_verdict() == Some(Verdict::CertifiedQuasiconvex));
    if refuted && certified {
        report
            .notes
            .push("conflicting conditions; the verdict follows the precedence order".into());
    }
}

fn attach_oracle(report: &mut AnalysisReport, a: &SymmetricMatrix, k: &ConeSpec, opts: &AnalysisOptions) {
    match geodesic_quasiconvexity_test(a, k, &opts.oracle) {
        Ok(outcome) => {
            let verified = outcome
                .counterexample
                .as_ref()
                .map(|cx| cx.verify(a, k, opts.oracle.tol).unwrap_or(false));
            match (verified, report.verdict) {
                (Some(true), Verdict::Unknown) => {
                    report.verdict = Verdict::CertifiedNot;
                    report.decided_by = Some("GEODESIC_ORACLE".into());
                }
                (Some(true), Verdict::CertifiedQuasiconvex) => report
                    .notes
                    .push("the geodesic oracle holds a verified counterexample to the certified verdict".into()),
                (Some(false), _) => report
                    .notes
                    .push("an oracle candidate failed re-verification and was ignored".into()),
                _ => {}
            }
            report.oracle_summary = Some(outcome);
        }
        Err(e) => report.notes.push(format!("oracle failed: {e}")),
    }
}
