//! The individual conditions. Each takes the shared [`Context`] and
//! records enough evidence to re-check its status by direct evaluation.

use super::context::Context;
use super::{compute_alpha_eta, AnalysisOptions, ConditionId, ConditionOutcome, ConditionStatus};
use crate::cones::{
    elliptic_levelcone, intersection_trivial, moreau_decompose, w_dual_contains, ConeSpec, IntersectionStatus,
    Membership, WConeSpec,
};
use crate::copositivity::{z_property_sampled, CopositivityStatus, ZPropertyResult};
use crate::error::{Error, Result};
use crate::linalg::{spectral_decompose, SymmetricMatrix};
use crate::vector;

use ConditionId as Id;
use ConditionStatus as St;

fn na(id: ConditionId, why: &str) -> ConditionOutcome {
    ConditionOutcome::new(id, St::NotApplicable).note(why)
}

fn inconclusive(id: ConditionId, why: impl Into<String>) -> ConditionOutcome {
    ConditionOutcome::new(id, St::Inconclusive).note(why)
}

/// Copositivity of `λ₂I − A` as a condition status: `Ok(())` when
/// certified, otherwise the outcome to report.
fn require_copositive(ctx: &Context, id: ConditionId) -> std::result::Result<ConditionOutcome, ConditionOutcome> {
    match ctx.shifted_copositivity() {
        Err(e) => Err(inconclusive(id, format!("copositivity test failed: {e}"))),
        Ok(c) => match c.status {
            CopositivityStatus::Copositive => Ok(ConditionOutcome::new(id, St::Holds)
                .with("copositive", true)
                .with("rho", c.rho)
                .with("psd_floor", c.psd_floor)),
            CopositivityStatus::NotCopositive => Err(ConditionOutcome::new(id, St::Fails)
                .with("copositive", false)
                .with("copositivity_witness", &c.witness)
                .with("psd_floor", c.psd_floor)
                .note("λ₂I − A is not copositive on K")),
            CopositivityStatus::Inconclusive => Err(inconclusive(id, "copositivity of λ₂I − A could not be decided")
                .with("psd_floor", c.psd_floor)),
        },
    }
}

pub(super) fn nec_mult_one(ctx: &Context) -> ConditionOutcome {
    let k = ctx.dec.multiplicity_of_smallest();
    let out = ConditionOutcome::new(Id::NecMultOne, if k == 1 { St::Holds } else { St::Fails })
        .with("multiplicity", k)
        .with("lambda1", ctx.lambda(0));
    if k == 1 {
        return out;
    }
    let residuals: Vec<f64> = (0..k).map(|i| ctx.residual(i)).collect();
    out.with("eigenvalues", &ctx.dec.eigenvalues()[..k])
        .with("eigenvectors", &ctx.dec.eigenvectors()[..k])
        .with("residuals", residuals)
        .note("the smallest eigenvalue is repeated and A is not scalar")
}

pub(super) fn nec_lambda2_split(ctx: &Context) -> ConditionOutcome {
    let l2 = ctx.lambda(1);
    let tol = ctx.opts.tol;
    let r = ctx.cap_range();
    let out = ConditionOutcome::new(Id::NecLambda2Split, St::Inconclusive)
        .with("lambda2", l2)
        .with("cap_min", r.min)
        .with("cap_max", r.max)
        .with("converged", r.converged);
    if r.min < l2 - 10.0 * tol && r.max > l2 + 10.0 * tol {
        let mut o = out.with("argmin", &r.argmin).with("argmax", &r.argmax);
        o.status = St::Fails;
        return o.note("λ₂ lies strictly between values of q_A on the cap");
    }
    if l2 <= r.min + tol || r.max <= l2 + tol {
        let mut o = out;
        o.status = St::Holds;
        return o.note("cap extremes are optimizer estimates");
    }
    out.note("margins to λ₂ are below resolution")
}

pub(super) fn nec_z_property(ctx: &Context) -> ConditionOutcome {
    if !ctx.k.is_self_dual() {
        return na(Id::NecZProperty, "requires a self-dual cone");
    }
    match z_property_sampled(ctx.a, ctx.k, ctx.opts.samples.min(2000), ctx.seed(3), ctx.opts.tol) {
        Ok(ZPropertyResult::Consistent) => ConditionOutcome::new(Id::NecZProperty, St::Holds)
            .with("method", "extremal complementary pairs and sampling"),
        Ok(ZPropertyResult::Violated { x, y, value }) => ConditionOutcome::new(Id::NecZProperty, St::Fails)
            .with("x", x)
            .with("y", y)
            .with("value", value)
            .note("complementary pair with ⟨Ax, y⟩ > 0"),
        Err(e) => inconclusive(Id::NecZProperty, e.to_string()),
    }
}

pub(super) fn char_lorentz_2eig(ctx: &Context) -> ConditionOutcome {
    let id = Id::CharLorentz2Eig;
    if !matches!(ctx.k, ConeSpec::Lorentz { .. }) {
        return na(id, "requires the Lorentz cone");
    }
    if !ctx.dec.is_two_level() {
        return na(id, "requires λ₁ < λ₂ = … = λₙ");
    }
    let v = ctx.v(0);
    let out = ConditionOutcome::new(id, St::Holds)
        .with("v1", v)
        .with("margin_plus", ctx.k.margin(v))
        .with("margin_minus", ctx.k.margin(&vector::neg(v)))
        .with("residual", ctx.residual(0));
    match ctx.primal_sign(v) {
        Some(s) => out.with("sign", s),
        None => {
            let mut o = out;
            o.status = St::Fails;
            o.note("±v¹ lies outside the Lorentz cone")
        }
    }
}

pub(super) fn char_selfdual_iv(ctx: &Context) -> ConditionOutcome {
    let id = Id::CharSelfdualIv;
    if !ctx.k.is_self_dual() {
        return na(id, "requires a self-dual cone");
    }
    if !ctx.simple_smallest() {
        return ConditionOutcome::new(id, St::Fails)
            .with("multiplicity", ctx.dec.multiplicity_of_smallest())
            .note("the smallest eigenvalue is repeated");
    }
    let Some(s) = ctx.primal_sign(ctx.v(0)) else {
        return na(id, "requires ±v¹ ∈ K");
    };
    match require_copositive(ctx, id) {
        Ok(o) | Err(o) => o.with("sign", s),
    }
}

pub(super) fn suf_two_eig(ctx: &Context) -> ConditionOutcome {
    let id = Id::SufTwoEig;
    if !ctx.dec.is_two_level() {
        return na(id, "requires λ₁ < λ₂ = … = λₙ");
    }
    match ctx.dual_sign(ctx.v(0)) {
        Ok(Some(s)) => ConditionOutcome::new(id, St::Holds).with("sign", s).with("v1", ctx.v(0)),
        Ok(None) => ConditionOutcome::new(id, St::Fails).note("±v¹ lies outside K*"),
        Err(e) => inconclusive(id, e),
    }
}

/// The `v¹ ∈ ±K*` branch only.
pub(super) fn suf_best_iii_dual(ctx: &Context) -> ConditionOutcome {
    best_iii(ctx, false)
}

/// Both branches, the `v¹ ∈ ±𝒲*` one last.
pub(super) fn suf_best_iii(ctx: &Context) -> ConditionOutcome {
    best_iii(ctx, true)
}

fn best_iii(ctx: &Context, with_w: bool) -> ConditionOutcome {
    let id = Id::SufBestIii;
    if !ctx.simple_smallest() {
        return na(id, "requires a simple smallest eigenvalue");
    }
    let base = match require_copositive(ctx, id) {
        Ok(o) => o,
        Err(o) => return o,
    };
    match ctx.dual_sign(ctx.v(0)) {
        Ok(Some(s)) => return base.with("branch", "dual_cone").with("sign", s),
        Ok(None) => {}
        Err(e) if !with_w => return inconclusive(id, e),
        Err(_) => {}
    }
    if !with_w {
        let mut o = base;
        o.status = St::Inconclusive;
        return o.note("±v¹ ∉ K*; the 𝒲* branch is evaluated last");
    }
    let w = match WConeSpec::new(ctx.dec.clone(), ctx.k.clone()) {
        Ok(w) => w,
        Err(e) => return inconclusive(id, e.to_string()),
    };
    let mut witnesses = Vec::new();
    let mut undecided = false;
    for s in [1.0, -1.0] {
        let v = vector::scaled(ctx.v(0), s);
        match w_dual_contains(&w, &v, ctx.opts.samples, ctx.opts.tol, ctx.seed(4)) {
            Ok(r) if r.status == Membership::Yes => {
                return base
                    .with("branch", "w_dual")
                    .with("sign", s)
                    .with("w_min_value", r.min_value)
            }
            Ok(r) if r.status == Membership::No => witnesses.push(r.witness),
            Ok(_) => undecided = true,
            Err(_) => undecided = true,
        }
    }
    if undecided {
        return inconclusive(id, "𝒲* membership of ±v¹ inconclusive");
    }
    let mut o = base.with("w_witnesses", witnesses);
    o.status = St::Fails;
    o.note("±v¹ lies outside 𝒲*")
}

pub(super) fn suf_countergg(ctx: &Context) -> ConditionOutcome {
    let id = Id::SufCountergg;
    if !matches!(ctx.k, ConeSpec::Orthant { .. } | ConeSpec::Lorentz { .. }) {
        return na(id, "requires a cone with a closed-form Moreau decomposition");
    }
    if ctx.n() < 3 || !ctx.dec.is_three_level() {
        return na(id, "requires λ₁ < λ₂ = … = λₙ₋₁ < λₙ");
    }
    let n = ctx.n();
    let (l, mu, eta) = (ctx.lambda(0), ctx.lambda(1), ctx.lambda(n - 1));
    let coef = ((eta - mu) / (mu - l)).sqrt();
    // |·|^K is even, so only the sign of v¹ matters
    let abs = match moreau_decompose(ctx.k, ctx.v(n - 1)) {
        Ok(p) => p.abs,
        Err(e) => return inconclusive(id, e.to_string()),
    };
    let mut margins = Vec::new();
    for s in [1.0, -1.0] {
        let u = vector::axpy(&vector::scaled(ctx.v(0), s), -coef, &abs);
        let m = ctx.k.margin(&u);
        if m >= -ctx.opts.tol {
            return ConditionOutcome::new(id, St::Holds)
                .with("sign", s)
                .with("coefficient", coef)
                .with("u", u)
                .with("dual_margin", m);
        }
        margins.push(m);
    }
    ConditionOutcome::new(id, St::Fails)
        .with("coefficient", coef)
        .with("dual_margins", margins)
        .note("v¹ − c·|vⁿ| ∉ K* for both signs of v¹")
}

pub(super) fn suf_alpha_eta(ctx: &Context) -> ConditionOutcome {
    let id = Id::SufAlphaEta;
    if ctx.n() < 3 {
        return na(id, "requires n ≥ 3");
    }
    if !ctx.simple_smallest() {
        return na(id, "requires λ₁ < λ₂");
    }
    let ae = match compute_alpha_eta(&ctx.dec, ctx.k, ctx.opts) {
        Ok(ae) => ae,
        Err(Error::Domain(m)) => return na(id, &m),
        Err(e) => return inconclusive(id, e.to_string()),
    };
    let (l1, l2, ln) = (ctx.lambda(0), ctx.lambda(1), ctx.lambda(ctx.n() - 1));
    let inv_eta = if ae.eta > 0.0 { Some(1.0 / ae.eta) } else { None };
    let (delta, source) = match inv_eta {
        Some(e) if e > ae.alpha => (e, "inverse_eta"),
        None => (f64::MAX, "inverse_eta"),
        _ => (ae.alpha, "alpha"),
    };
    let bound = l2 + delta * (l2 - l1);
    let holds = ln <= bound + ctx.opts.tol;
    let mut out = ConditionOutcome::new(id, if holds { St::Holds } else { St::Fails })
        .with("alpha", ae.alpha)
        .with("eta", ae.eta)
        .with("delta", delta)
        .with("delta_source", source)
        .with("bound", bound)
        .with("lambda_n", ln)
        .with("alpha_exact", ae.alpha_exact)
        .with("eta_exact", ae.eta_exact)
        .with("alpha_argmin", &ae.alpha_argmin)
        .with("eta_argmax", &ae.eta_argmax);
    if !ae.eta_exact {
        out = out.note("η is an optimizer lower bound");
    }
    // the inequality implies λ₂I − A copositive; cross-check where decidable
    if holds {
        if let Ok(c) = ctx.shifted_copositivity() {
            if c.status == CopositivityStatus::NotCopositive {
                out.status = St::Inconclusive;
                out = out.note("copositivity of λ₂I − A refuted despite the inequality; estimates unreliable");
            }
        }
    }
    out
}

pub(super) fn suf_conv_sl(ctx: &Context) -> ConditionOutcome {
    let id = Id::SufConvSl;
    if ctx.n() < 3 {
        return na(id, "requires n ≥ 3");
    }
    if !ctx.simple_smallest() {
        return na(id, "requires λ₁ < λ₂");
    }
    let (l1, l2, l3) = (ctx.lambda(0), ctx.lambda(1), ctx.lambda(2));
    let mid = 0.5 * (l1 + l3);
    if l2 > mid + ctx.opts.tol {
        return ConditionOutcome::new(id, St::Fails)
            .with("lambda2", l2)
            .with("midpoint", mid)
            .note("λ₂ > (λ₁ + λ₃)/2");
    }
    let base = match require_copositive(ctx, id) {
        Ok(o) => o.with("lambda2", l2).with("midpoint", mid),
        Err(o) => return o,
    };
    let level = match elliptic_levelcone(&ctx.dec, l2) {
        Ok(c) => c,
        Err(e) => return inconclusive(id, e.to_string()),
    };
    let mut statuses = Vec::new();
    let mut witnesses = Vec::new();
    for (name, branch) in [("plus", level.clone()), ("minus", level.negated())] {
        match intersection_trivial(ctx.k, &branch, 64, ctx.opts.tol, ctx.seed(5)) {
            Ok(r) if r.status == IntersectionStatus::Trivial => {
                return base
                    .with("trivial_branch", name)
                    .with("best_joint_margin", r.best_joint_margin)
            }
            Ok(r) => {
                statuses.push(r.status);
                witnesses.push(r.witness);
            }
            Err(e) => return inconclusive(id, e.to_string()),
        }
    }
    let mut out = base.with("intersections", &statuses).with("witnesses", witnesses);
    if statuses.iter().all(|s| *s == IntersectionStatus::Nontrivial) {
        out.status = St::Fails;
        out.note("K meets both ℒ_λ₂ and −ℒ_λ₂ nontrivially")
    } else {
        out.status = St::Inconclusive;
        out.note("intersection tests inconclusive")
    }
}

// Public entry points for evaluating single conditions.

fn with_context<T>(
    a: &SymmetricMatrix,
    k: &ConeSpec,
    opts: &AnalysisOptions,
    f: impl FnOnce(&Context) -> T,
) -> Result<std::result::Result<T, &'static str>> {
    if a.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: k.dim(),
        });
    }
    let base = k.base().0;
    if !base.is_subdual() {
        return Ok(Err("requires a subdual cone"));
    }
    let dec = spectral_decompose(a, opts.gap_tol)?;
    if dec.is_scalar() {
        return Ok(Err("q_A is constant"));
    }
    let ctx = Context::new(a, base, dec, opts);
    Ok(Ok(f(&ctx)))
}

fn single(
    id: ConditionId,
    a: &SymmetricMatrix,
    k: &ConeSpec,
    opts: &AnalysisOptions,
    f: fn(&Context) -> ConditionOutcome,
) -> Result<ConditionOutcome> {
    Ok(with_context(a, k, opts, f)?.unwrap_or_else(|why| na(id, why)))
}

/// `NEC_MULT_ONE`, `NEC_LAMBDA2_SPLIT` and `NEC_Z_PROPERTY`.
pub fn necessary_conditions(a: &SymmetricMatrix, k: &ConeSpec, opts: &AnalysisOptions) -> Result<Vec<ConditionOutcome>> {
    Ok(with_context(a, k, opts, |ctx| {
        vec![nec_mult_one(ctx), nec_lambda2_split(ctx), nec_z_property(ctx)]
    })?
    .unwrap_or_else(|why| {
        [Id::NecMultOne, Id::NecLambda2Split, Id::NecZProperty]
            .into_iter()
            .map(|id| na(id, why))
            .collect()
    }))
}

pub fn sufficient_two_eig(a: &SymmetricMatrix, k: &ConeSpec, opts: &AnalysisOptions) -> Result<ConditionOutcome> {
    single(Id::SufTwoEig, a, k, opts, suf_two_eig)
}

pub fn sufficient_best_iii(a: &SymmetricMatrix, k: &ConeSpec, opts: &AnalysisOptions) -> Result<ConditionOutcome> {
    single(Id::SufBestIii, a, k, opts, suf_best_iii)
}

pub fn sufficient_countergg(a: &SymmetricMatrix, k: &ConeSpec, opts: &AnalysisOptions) -> Result<ConditionOutcome> {
    single(Id::SufCountergg, a, k, opts, suf_countergg)
}

pub fn sufficient_alpha_eta(a: &SymmetricMatrix, k: &ConeSpec, opts: &AnalysisOptions) -> Result<ConditionOutcome> {
    single(Id::SufAlphaEta, a, k, opts, suf_alpha_eta)
}

pub fn sufficient_conv_sl(a: &SymmetricMatrix, k: &ConeSpec, opts: &AnalysisOptions) -> Result<ConditionOutcome> {
    single(Id::SufConvSl, a, k, opts, suf_conv_sl)
}

pub fn characterize_selfdual(a: &SymmetricMatrix, k: &ConeSpec, opts: &AnalysisOptions) -> Result<ConditionOutcome> {
    single(Id::CharSelfdualIv, a, k, opts, char_selfdual_iv)
}

pub fn characterize_lorentz_2eig(a: &SymmetricMatrix, k: &ConeSpec, opts: &AnalysisOptions) -> Result<ConditionOutcome> {
    single(Id::CharLorentz2Eig, a, k, opts, char_lorentz_2eig)
}
