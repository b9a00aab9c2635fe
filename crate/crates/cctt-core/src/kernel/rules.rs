//! The registered inference rules: one entry per rule label of the calculus,
//! with per-mode conclusion lists and checkers for the equality conclusions.
//!
//! Formation conclusions are implemented by the term constructors (the
//! coverage test in the suite asserts that bijection); the checkers here
//! implement every ≡ conclusion, reconstructing both sides from a leaf's
//! metavariable instantiation and validating premise derivations.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::env::{Env, Mode};
use crate::error::{CheckError, Result};
use crate::kernel::derivation::{Inst, InstExt};
use crate::synth::{
    check_judgment_wf, id_context, mor_boundary, split_ext, ty_ctx, tymor_boundary,
};
use crate::syntax::judgment::Judgment;
use crate::syntax::term::{Ctx, CtxMor, Dir, Ty, TyMor, TyNode};
use crate::theory::elab;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Figure {
    Structural,  // Fig. 5 and its split counterpart
    Congruence,  // Fig. 6 and its split counterpart
    Pi,          // Fig. 2 / split
    Sigma,       // Fig. 3 / split
    IdTy,        // Fig. 4 / split
    EmptyCtx,    // optional terminal-context rules
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Concl {
    /// Implemented by a term constructor.
    Formation(&'static str),
    CtxMorEq,
    TyMorEq,
    /// Type equality (split mode only).
    TyEq,
}

/// A checked equality premise: its conclusion judgment plus the derivation
/// that proved it (so schemas can embed evidence in iso nodes).
#[derive(Clone)]
pub struct Premise {
    pub judgment: Judgment,
    pub derivation: std::sync::Arc<crate::kernel::derivation::EqDerivation>,
}

pub type SchemaFn = fn(&Env, &Inst, u8, &[Premise]) -> Result<Judgment>;

pub struct ModeSpec {
    pub conclusions: &'static [Concl],
    pub check: Option<SchemaFn>,
    /// Number of equality-derivation premises the checker expects.
    pub premises: usize,
}

pub struct RuleSpec {
    pub id: &'static str,
    pub figure: Figure,
    pub nonsplit: Option<ModeSpec>,
    pub split: Option<ModeSpec>,
}

impl RuleSpec {
    pub fn for_mode(&self, mode: Mode) -> Option<&ModeSpec> {
        match mode {
            Mode::NonSplit => self.nonsplit.as_ref(),
            Mode::Split => self.split.as_ref(),
        }
    }
}

pub fn registry() -> &'static BTreeMap<&'static str, RuleSpec> {
    static REG: OnceLock<BTreeMap<&'static str, RuleSpec>> = OnceLock::new();
    REG.get_or_init(build_registry)
}

pub fn lookup(id: &str) -> Result<&'static RuleSpec> {
    registry()
        .get(id)
        .ok_or_else(|| CheckError::UnknownRule(id.to_string()))
}

/// Labels of the congruence rules; `Cong` derivation nodes must cite one of
/// these.
pub fn is_congruence(id: &str) -> bool {
    matches!(
        id,
        "ctx-eq-refl"
            | "ctx-eq-sym"
            | "ctx-eq-trans"
            | "ctx-comp-cong-1"
            | "ctx-comp-cong-2"
            | "ty-eq-refl"
            | "ty-eq-sym"
            | "ty-eq-trans"
            | "ty-comp-cong-1"
            | "ty-comp-cong-2"
            | "ext-cong"
            | "sub-cong-tm"
            | "sub-proj-cong"
            | "sub-ext-cong"
    )
}

// -- schema helpers -------------------------------------------------------------

pub(crate) fn ctx_eq_judgment(env: &Env, lhs: CtxMor, rhs: CtxMor) -> Result<Judgment> {
    let (dom, cod) = mor_boundary(env, &lhs)?;
    let j = Judgment::CtxMorEq { dom, lhs, rhs, cod };
    check_judgment_wf(env, &j)?;
    Ok(j)
}

pub(crate) fn ty_eq_judgment(env: &Env, lhs: TyMor, rhs: TyMor) -> Result<Judgment> {
    let (ctx, dom, cod) = tymor_boundary(env, &lhs)?;
    let j = Judgment::TyMorEq {
        ctx,
        dom,
        lhs,
        rhs,
        cod,
    };
    check_judgment_wf(env, &j)?;
    Ok(j)
}

pub(crate) fn type_eq_judgment(env: &Env, lhs: Ty, rhs: Ty) -> Result<Judgment> {
    let ctx = ty_ctx(env, &lhs)?;
    let j = Judgment::TyEq { ctx, lhs, rhs };
    check_judgment_wf(env, &j)?;
    Ok(j)
}

pub(crate) fn bad_concl(rule: &str, concl: u8) -> CheckError {
    CheckError::SchemaMismatch {
        rule: rule.to_string(),
        metavar: "conclusion".into(),
        expected: "an equality conclusion index".into(),
        found: concl.to_string(),
    }
}

fn premise_ctx_eq(premises: &[Premise], i: usize, rule: &str) -> Result<(Ctx, CtxMor, CtxMor, Ctx)> {
    match premises.get(i).map(|p| &p.judgment) {
        Some(Judgment::CtxMorEq { dom, lhs, rhs, cod }) => {
            Ok((dom.clone(), lhs.clone(), rhs.clone(), cod.clone()))
        }
        other => Err(CheckError::SchemaMismatch {
            rule: rule.to_string(),
            metavar: format!("premise {i}"),
            expected: "a context-morphism equality".into(),
            found: other.map(|j| j.to_string()).unwrap_or("missing".into()),
        }),
    }
}

pub(crate) fn premise_deriv(
    premises: &[Premise],
    i: usize,
    rule: &str,
) -> Result<std::sync::Arc<crate::kernel::derivation::EqDerivation>> {
    premises
        .get(i)
        .map(|p| p.derivation.clone())
        .ok_or_else(|| CheckError::EvidenceRequired(format!("{rule}: premise {i} missing")))
}

fn premise_tymor_eq(
    premises: &[Premise],
    i: usize,
    rule: &str,
) -> Result<(Ctx, Ty, TyMor, TyMor, Ty)> {
    match premises.get(i).map(|p| &p.judgment) {
        Some(Judgment::TyMorEq {
            ctx,
            dom,
            lhs,
            rhs,
            cod,
        }) => Ok((ctx.clone(), dom.clone(), lhs.clone(), rhs.clone(), cod.clone())),
        other => Err(CheckError::SchemaMismatch {
            rule: rule.to_string(),
            metavar: format!("premise {i}"),
            expected: "a type-morphism equality".into(),
            found: other.map(|j| j.to_string()).unwrap_or("missing".into()),
        }),
    }
}

// -- Fig. 5: structural rules ---------------------------------------------------

fn ctx_id_unit(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    let s = inst.ctxmor("s")?;
    let (dom, cod) = mor_boundary(env, &s)?;
    let lhs = match concl {
        0 => CtxMor::comp(s.clone(), CtxMor::id(dom)),
        1 => CtxMor::comp(CtxMor::id(cod), s.clone()),
        _ => return Err(bad_concl("ctx-id-unit", concl)),
    };
    ctx_eq_judgment(env, lhs, s)
}

fn ctx_comp_assoc(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ctx-comp-assoc", concl));
    }
    let s = inst.ctxmor("s")?;
    let s2 = inst.ctxmor("s2")?;
    let s3 = inst.ctxmor("s3")?;
    let lhs = CtxMor::comp(s3.clone(), CtxMor::comp(s2.clone(), s.clone()));
    let rhs = CtxMor::comp(CtxMor::comp(s3, s2), s);
    ctx_eq_judgment(env, lhs, rhs)
}

fn ty_id_unit(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    let t = inst.tymor("t")?;
    let (_, dom, cod) = tymor_boundary(env, &t)?;
    let lhs = match concl {
        0 => TyMor::comp(t.clone(), TyMor::id(dom)),
        1 => TyMor::comp(TyMor::id(cod), t.clone()),
        _ => return Err(bad_concl("ty-id-unit", concl)),
    };
    ty_eq_judgment(env, lhs, t)
}

fn ty_comp_assoc(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ty-comp-assoc", concl));
    }
    let t = inst.tymor("t")?;
    let t2 = inst.tymor("t2")?;
    let t3 = inst.tymor("t3")?;
    let lhs = TyMor::comp(t3.clone(), TyMor::comp(t2.clone(), t.clone()));
    let rhs = TyMor::comp(TyMor::comp(t3, t2), t);
    ty_eq_judgment(env, lhs, rhs)
}

fn ext_id(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ext-id", concl));
    }
    let a = inst.ty("A")?;
    let ctx = ty_ctx(env, &a)?;
    let lhs = CtxMor::ext_mor(ctx.clone(), TyMor::id(a.clone()));
    let rhs = CtxMor::id(Ctx::ext(ctx, a));
    ctx_eq_judgment(env, lhs, rhs)
}

fn ext_comp(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ext-comp", concl));
    }
    let t = inst.tymor("t")?;
    let t2 = inst.tymor("t2")?;
    let (ctx, _, _) = tymor_boundary(env, &t)?;
    let lhs = CtxMor::ext_mor(ctx.clone(), TyMor::comp(t2.clone(), t.clone()));
    let rhs = CtxMor::comp(
        CtxMor::ext_mor(ctx.clone(), t2),
        CtxMor::ext_mor(ctx, t),
    );
    ctx_eq_judgment(env, lhs, rhs)
}

fn ext_c(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ext-c", concl));
    }
    let t = inst.tymor("t")?;
    let (ctx, dom, cod) = tymor_boundary(env, &t)?;
    let lhs = CtxMor::comp(CtxMor::proj(cod), CtxMor::ext_mor(ctx, t));
    let rhs = CtxMor::proj(dom);
    ctx_eq_judgment(env, lhs, rhs)
}

fn sub_prs_id(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-prs-id", concl));
    }
    let a = inst.ty("A")?;
    let s = inst.ctxmor("s")?;
    let lhs = TyMor::sub(TyMor::id(a.clone()), s.clone());
    let rhs = TyMor::id(Ty::sub(a, s));
    ty_eq_judgment(env, lhs, rhs)
}

fn sub_prs_comp(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-prs-comp", concl));
    }
    let t = inst.tymor("t")?;
    let t2 = inst.tymor("t2")?;
    let s = inst.ctxmor("s")?;
    let lhs = TyMor::sub(TyMor::comp(t2.clone(), t.clone()), s.clone());
    let rhs = TyMor::comp(TyMor::sub(t2, s.clone()), TyMor::sub(t, s));
    ty_eq_judgment(env, lhs, rhs)
}

/// The ⊢iso inverse laws shared by sub-id, sub-comp, pi-sub, sigma-sub,
/// id-sub, sub-cong: conclusion 2 is fwd ∘ bwd ≡ 1, conclusion 3 the other
/// composite.
fn iso_inverse_laws(
    env: &Env,
    fwd: TyMor,
    bwd: TyMor,
    concl: u8,
    rule: &str,
) -> Result<Judgment> {
    let (_, dom, cod) = tymor_boundary(env, &fwd)?;
    match concl {
        2 => ty_eq_judgment(env, TyMor::comp(fwd, bwd), TyMor::id(cod)),
        3 => ty_eq_judgment(env, TyMor::comp(bwd, fwd), TyMor::id(dom)),
        _ => Err(bad_concl(rule, concl)),
    }
}

fn sub_id(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    let a = inst.ty("A")?;
    if env.split() {
        if concl != 0 {
            return Err(bad_concl("sub-id", concl));
        }
        let ctx = ty_ctx(env, &a)?;
        return type_eq_judgment(env, Ty::sub(a.clone(), CtxMor::id(ctx)), a);
    }
    iso_inverse_laws(
        env,
        TyMor::iso_id(a.clone(), Dir::Fwd),
        TyMor::iso_id(a, Dir::Bwd),
        concl,
        "sub-id",
    )
}

fn sub_comp(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    let a = inst.ty("A")?;
    let s2 = inst.ctxmor("s2")?;
    let s = inst.ctxmor("s")?;
    if env.split() {
        if concl != 0 {
            return Err(bad_concl("sub-comp", concl));
        }
        return type_eq_judgment(
            env,
            Ty::sub(a.clone(), CtxMor::comp(s2.clone(), s.clone())),
            Ty::sub(Ty::sub(a, s2), s),
        );
    }
    iso_inverse_laws(
        env,
        TyMor::iso_comp(a.clone(), s2.clone(), s.clone(), Dir::Fwd),
        TyMor::iso_comp(a, s2, s, Dir::Bwd),
        concl,
        "sub-comp",
    )
}

fn sub_tm_id(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-tm-id", concl));
    }
    let t = inst.tymor("t")?;
    let (ctx, dom, cod) = tymor_boundary(env, &t)?;
    let lhs = TyMor::sub(t.clone(), CtxMor::id(ctx));
    if env.split() {
        return ty_eq_judgment(env, lhs, t);
    }
    let rhs = TyMor::comp_chain(&[
        TyMor::iso_id(cod, Dir::Bwd),
        t,
        TyMor::iso_id(dom, Dir::Fwd),
    ]);
    ty_eq_judgment(env, lhs, rhs)
}

fn sub_tm_comp(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-tm-comp", concl));
    }
    let t = inst.tymor("t")?;
    let s2 = inst.ctxmor("s2")?;
    let s = inst.ctxmor("s")?;
    let (_, dom, cod) = tymor_boundary(env, &t)?;
    let fused = CtxMor::comp(s2.clone(), s.clone());
    let lhs = TyMor::sub(t.clone(), fused.clone());
    let iterated = TyMor::sub(TyMor::sub(t, s2.clone()), s.clone());
    if env.split() {
        return ty_eq_judgment(env, lhs, iterated);
    }
    let rhs = TyMor::comp_chain(&[
        TyMor::iso_comp(cod, s2.clone(), s.clone(), Dir::Bwd),
        iterated,
        TyMor::iso_comp(dom, s2, s, Dir::Fwd),
    ]);
    ty_eq_judgment(env, lhs, rhs)
}

fn sub_beta(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    let s = inst.ctxmor("s")?;
    let t = inst.ctxmor("t")?;
    let pair = CtxMor::pair(s.clone(), t.clone());
    let (_, cod) = mor_boundary(env, &pair)?;
    let (_, a) = split_ext(env, &cod).ok_or_else(|| CheckError::IllFormedSubterm {
        path: "sub-beta".into(),
        reason: "pairing does not land in an extension".into(),
    })?;
    match concl {
        0 => ctx_eq_judgment(env, CtxMor::comp(CtxMor::proj(a), pair), s),
        1 => {
            if env.split() {
                ctx_eq_judgment(env, CtxMor::p2(pair), t)
            } else {
                // transport A[π ∘ (s,t)] to A[s] with the first conclusion
                // as evidence
                let ev = crate::kernel::derivation::EqDerivation::rule_at(
                    "sub-beta",
                    0,
                    Inst::new().bind("s", s.clone()).bind("t", t.clone()),
                );
                let fix = crate::syntax::term::TyMor::iso_sub(
                    a.clone(),
                    CtxMor::comp(CtxMor::proj(a), pair.clone()),
                    s,
                    ev,
                    crate::syntax::term::Dir::Fwd,
                );
                let (g, _) = mor_boundary(env, &t)?;
                let lhs = CtxMor::comp(CtxMor::ext_mor(g, fix), CtxMor::p2(pair));
                ctx_eq_judgment(env, lhs, t)
            }
        }
        _ => Err(bad_concl("sub-beta", concl)),
    }
}

fn sub_eta(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-eta", concl));
    }
    let s = inst.ctxmor("s")?;
    let (_, cod) = mor_boundary(env, &s)?;
    let (_, a) = split_ext(env, &cod).ok_or_else(|| CheckError::IllFormedSubterm {
        path: "sub-eta".into(),
        reason: "morphism does not land in an extension".into(),
    })?;
    let lhs = CtxMor::pair(
        CtxMor::comp(CtxMor::proj(a), s.clone()),
        CtxMor::p2(s.clone()),
    );
    ctx_eq_judgment(env, lhs, s)
}

fn sub_proj(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 1 {
        return Err(bad_concl("sub-proj", concl));
    }
    let s = inst.ctxmor("s")?;
    let p2 = CtxMor::p2(s.clone());
    let (dom, cod) = mor_boundary(env, &p2)?;
    let (_, a) = split_ext(env, &cod).unwrap();
    let lhs = CtxMor::comp(CtxMor::proj(a), p2);
    ctx_eq_judgment(env, lhs, CtxMor::id(dom))
}

fn sub_proj_id(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-proj-id", concl));
    }
    let a = inst.ty("A")?;
    let ctx = ty_ctx(env, &a)?;
    let ext_a = Ctx::ext(ctx.clone(), a.clone());
    let one = CtxMor::id(ctx.clone());
    let a_one = Ty::sub(a.clone(), one.clone());
    let proj = CtxMor::proj(a.clone());
    let lift = elab::lift(env, &proj, &a_one)?;
    let p2_one = CtxMor::p2(CtxMor::id(ext_a.clone()));
    let lhs = if env.split() {
        CtxMor::comp(lift, p2_one)
    } else {
        // transport A[π_A ∘ 1] to A[1_Γ][π_A]
        let v1 = CtxMor::comp(proj.clone(), CtxMor::id(ext_a.clone()));
        let v2 = CtxMor::comp(one.clone(), proj.clone());
        let ev = crate::kernel::derivation::EqDerivation::trans(
            elab::d_unit_r(&proj),
            crate::kernel::derivation::EqDerivation::sym(elab::d_unit_l(&proj)),
        );
        let fix = TyMor::comp(
            TyMor::iso_comp(a.clone(), one, proj, Dir::Fwd),
            TyMor::iso_sub(a.clone(), v1, v2, ev, Dir::Fwd),
        );
        CtxMor::comp(lift, CtxMor::comp(CtxMor::ext_mor(ext_a.clone(), fix), p2_one))
    };
    let rhs = if env.split() {
        CtxMor::ext_mor(ctx, TyMor::id(a))
    } else {
        CtxMor::ext_mor(ctx, TyMor::iso_id(a, Dir::Bwd))
    };
    ctx_eq_judgment(env, lhs, rhs)
}

fn sub_proj_comp(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-proj-comp", concl));
    }
    let a = inst.ty("A")?;
    let s = inst.ctxmor("s")?; // Δ → Θ
    let s2 = inst.ctxmor("s2")?; // Γ → Δ
    let a_s = Ty::sub(a.clone(), s.clone());
    let a_s_s2 = Ty::sub(a_s.clone(), s2.clone());
    let fused_mor = CtxMor::comp(s.clone(), s2.clone());
    let fused = Ty::sub(a.clone(), fused_mor.clone());
    let l1 = elab::lift(env, &s, &a)?;
    let l2 = elab::lift(env, &s2, &a_s)?;
    let ll = CtxMor::comp(l1.clone(), l2.clone());
    let proj_x = CtxMor::proj(a_s_s2.clone());
    let outer = elab::lift(env, &proj_x, &fused)?;
    let p2_ll = CtxMor::p2(ll.clone());
    let lhs = if env.split() {
        CtxMor::comp(outer, p2_ll)
    } else {
        // transport A[π_A ∘ (s.A ∘ s'.A[s])] to A[s∘s'][π]
        let p_a = CtxMor::proj(a.clone());
        let (l1_f1, l1_f2) = elab::pair_components(&l1);
        let (l2_f1, l2_f2) = elab::pair_components(&l2);
        let base = ty_ctx(env, &a_s_s2)?;
        let x = Ctx::ext(base, a_s_s2.clone());
        let p_as = CtxMor::proj(a_s.clone());
        let ev = crate::kernel::derivation::EqDerivation::trans_chain(vec![
            elab::d_assoc(&p_a, &l1, &l2),
            elab::d_cong_pre(&l2, elab::d_sub_beta0(&l1_f1, &l1_f2)),
            crate::kernel::derivation::EqDerivation::sym(elab::d_assoc(&s, &p_as, &l2)),
            elab::d_cong_post(&s, elab::d_sub_beta0(&l2_f1, &l2_f2)),
            elab::d_assoc(&s, &s2, &proj_x),
        ]);
        let v1 = CtxMor::comp(p_a, ll.clone());
        let v2 = CtxMor::comp(fused_mor.clone(), proj_x.clone());
        let fix = TyMor::comp(
            TyMor::iso_comp(a.clone(), fused_mor, proj_x, Dir::Fwd),
            TyMor::iso_sub(a.clone(), v1, v2, ev, Dir::Fwd),
        );
        CtxMor::comp(outer, CtxMor::comp(CtxMor::ext_mor(x, fix), p2_ll))
    };
    let base = ty_ctx(env, &a_s_s2)?;
    let rhs = if env.split() {
        CtxMor::ext_mor(base, TyMor::id(a_s_s2))
    } else {
        CtxMor::ext_mor(base, TyMor::iso_comp(a, s, s2, Dir::Bwd))
    };
    ctx_eq_judgment(env, lhs, rhs)
}

fn tm_sub_coh(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("tm-sub-coh", concl));
    }
    let t = inst.tymor("t")?;
    let s = inst.ctxmor("s")?;
    let (delta, a, b) = tymor_boundary(env, &t)?;
    let lift_b = elab::lift(env, &s, &b)?;
    let lift_a = elab::lift(env, &s, &a)?;
    let (gamma, _) = mor_boundary(env, &s)?;
    let lhs = CtxMor::comp(
        lift_b,
        CtxMor::ext_mor(gamma, TyMor::sub(t.clone(), s.clone())),
    );
    let rhs = CtxMor::comp(CtxMor::ext_mor(delta, t), lift_a);
    ctx_eq_judgment(env, lhs, rhs)
}

fn empty_ctx_mor_unique(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("empty-ctx-mor-unique", concl));
    }
    env.require_feature("empty")?;
    let s = inst.ctxmor("s")?;
    let (dom, cod) = mor_boundary(env, &s)?;
    if !crate::synth::ctx_eq(env, &cod, &Ctx::empty()) {
        return Err(CheckError::ContextMismatch {
            expected: "<>".into(),
            found: cod.to_string(),
            path: "empty-ctx-mor-unique".into(),
        });
    }
    ctx_eq_judgment(env, s, CtxMor::bang(dom))
}

// -- Fig. 6: congruence rules -----------------------------------------------------

fn ctx_eq_refl(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ctx-eq-refl", concl));
    }
    let s = inst.ctxmor("s")?;
    ctx_eq_judgment(env, s.clone(), s)
}

fn ctx_eq_sym(env: &Env, _inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ctx-eq-sym", concl));
    }
    let (dom, l, r, cod) = premise_ctx_eq(p, 0, "ctx-eq-sym")?;
    let j = Judgment::CtxMorEq {
        dom,
        lhs: r,
        rhs: l,
        cod,
    };
    check_judgment_wf(env, &j)?;
    Ok(j)
}

fn ctx_eq_trans(env: &Env, _inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ctx-eq-trans", concl));
    }
    let (dom, l1, r1, cod) = premise_ctx_eq(p, 0, "ctx-eq-trans")?;
    let (_, l2, r2, _) = premise_ctx_eq(p, 1, "ctx-eq-trans")?;
    if !crate::synth::mor_eq(env, &r1, &l2) {
        return Err(CheckError::BoundaryMismatch {
            path: "ctx-eq-trans".into(),
            reason: format!("middle terms differ: {r1} vs {l2}"),
        });
    }
    let j = Judgment::CtxMorEq {
        dom,
        lhs: l1,
        rhs: r2,
        cod,
    };
    check_judgment_wf(env, &j)?;
    Ok(j)
}

fn ctx_comp_cong_1(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ctx-comp-cong-1", concl));
    }
    let t = inst.ctxmor("t")?;
    let (_, l, r, _) = premise_ctx_eq(p, 0, "ctx-comp-cong-1")?;
    ctx_eq_judgment(env, CtxMor::comp(t.clone(), l), CtxMor::comp(t, r))
}

fn ctx_comp_cong_2(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ctx-comp-cong-2", concl));
    }
    let t = inst.ctxmor("t")?;
    let (_, l, r, _) = premise_ctx_eq(p, 0, "ctx-comp-cong-2")?;
    ctx_eq_judgment(env, CtxMor::comp(l, t.clone()), CtxMor::comp(r, t))
}

fn ty_eq_refl(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ty-eq-refl", concl));
    }
    let t = inst.tymor("t")?;
    ty_eq_judgment(env, t.clone(), t)
}

fn ty_eq_sym(env: &Env, _inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ty-eq-sym", concl));
    }
    let (ctx, dom, l, r, cod) = premise_tymor_eq(p, 0, "ty-eq-sym")?;
    let j = Judgment::TyMorEq {
        ctx,
        dom,
        lhs: r,
        rhs: l,
        cod,
    };
    check_judgment_wf(env, &j)?;
    Ok(j)
}

fn ty_eq_trans(env: &Env, _inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ty-eq-trans", concl));
    }
    let (ctx, dom, l1, r1, cod) = premise_tymor_eq(p, 0, "ty-eq-trans")?;
    let (_, _, l2, r2, _) = premise_tymor_eq(p, 1, "ty-eq-trans")?;
    if !crate::synth::tymor_eq(env, &r1, &l2) {
        return Err(CheckError::BoundaryMismatch {
            path: "ty-eq-trans".into(),
            reason: format!("middle terms differ: {r1} vs {l2}"),
        });
    }
    let j = Judgment::TyMorEq {
        ctx,
        dom,
        lhs: l1,
        rhs: r2,
        cod,
    };
    check_judgment_wf(env, &j)?;
    Ok(j)
}

fn ty_comp_cong_1(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ty-comp-cong-1", concl));
    }
    let t = inst.tymor("t")?;
    let (_, _, l, r, _) = premise_tymor_eq(p, 0, "ty-comp-cong-1")?;
    ty_eq_judgment(env, TyMor::comp(t.clone(), l), TyMor::comp(t, r))
}

fn ty_comp_cong_2(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ty-comp-cong-2", concl));
    }
    let t = inst.tymor("t")?;
    let (_, _, l, r, _) = premise_tymor_eq(p, 0, "ty-comp-cong-2")?;
    ty_eq_judgment(env, TyMor::comp(l, t.clone()), TyMor::comp(r, t))
}

fn ext_cong(env: &Env, _inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("ext-cong", concl));
    }
    let (ctx, _, l, r, _) = premise_tymor_eq(p, 0, "ext-cong")?;
    ctx_eq_judgment(
        env,
        CtxMor::ext_mor(ctx.clone(), l),
        CtxMor::ext_mor(ctx, r),
    )
}

fn sub_cong_tm(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-cong-tm", concl));
    }
    let s = inst.ctxmor("s")?;
    let (_, _, l, r, _) = premise_tymor_eq(p, 0, "sub-cong-tm")?;
    ty_eq_judgment(env, TyMor::sub(l, s.clone()), TyMor::sub(r, s))
}

fn sub_cong(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    let a = inst.ty("A")?;
    let (_, l, r, _) = premise_ctx_eq(p, 0, "sub-cong")?;
    if env.split() {
        if concl != 0 {
            return Err(bad_concl("sub-cong", concl));
        }
        return type_eq_judgment(env, Ty::sub(a.clone(), l), Ty::sub(a, r));
    }
    let d = premise_deriv(p, 0, "sub-cong")?;
    let fwd = TyMor::iso_sub(a.clone(), l.clone(), r.clone(), d.clone(), Dir::Fwd);
    let bwd = TyMor::iso_sub(a.clone(), l.clone(), r.clone(), d.clone(), Dir::Bwd);
    match concl {
        2 | 3 => iso_inverse_laws(env, fwd, bwd, concl, "sub-cong"),
        4 => {
            // i^sub-inv_{A,s,s'} ≡ i^sub_{A,s',s}
            let swapped = TyMor::iso_sub(
                a,
                r,
                l,
                crate::kernel::derivation::EqDerivation::sym(d),
                Dir::Fwd,
            );
            ty_eq_judgment(env, bwd, swapped)
        }
        _ => Err(bad_concl("sub-cong", concl)),
    }
}

fn sub_cong_id(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-cong-id", concl));
    }
    let a = inst.ty("A")?;
    let s = inst.ctxmor("s")?;
    let refl = crate::kernel::derivation::EqDerivation::refl(s.clone());
    let lhs = TyMor::iso_sub(a.clone(), s.clone(), s.clone(), refl, Dir::Fwd);
    ty_eq_judgment(env, lhs, TyMor::id(Ty::sub(a, s)))
}

fn sub_cong_comp_1(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-cong-comp-1", concl));
    }
    let a = inst.ty("A")?;
    let s_post = inst.ctxmor("s2")?; // s' : Δ → Θ
    let (_, s1, s2, _) = premise_ctx_eq(p, 0, "sub-cong-comp-1")?;
    let d = premise_deriv(p, 0, "sub-cong-comp-1")?;
    // Γ | A[s'∘s₁] ⊢ i^comp_{A,s',s₂} ∘ i^sub_{A,s'∘s₁,s'∘s₂} ≡
    //               i^sub_{A[s'],s₁,s₂} ∘ i^comp_{A,s',s₁} : A[s'][s₂]
    let c1 = CtxMor::comp(s_post.clone(), s1.clone());
    let c2 = CtxMor::comp(s_post.clone(), s2.clone());
    let post_d = elab::d_cong_post(&s_post, d.clone());
    let lhs = TyMor::comp(
        TyMor::iso_comp(a.clone(), s_post.clone(), s2.clone(), Dir::Fwd),
        TyMor::iso_sub(a.clone(), c1, c2, post_d, Dir::Fwd),
    );
    let rhs = TyMor::comp(
        TyMor::iso_sub(Ty::sub(a.clone(), s_post.clone()), s1.clone(), s2, d, Dir::Fwd),
        TyMor::iso_comp(a, s_post, s1, Dir::Fwd),
    );
    ty_eq_judgment(env, lhs, rhs)
}

fn sub_cong_comp_2(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-cong-comp-2", concl));
    }
    let a = inst.ty("A")?;
    let s_pre = inst.ctxmor("s")?; // s' : Γ → Δ
    let (_, s1, s2, _) = premise_ctx_eq(p, 0, "sub-cong-comp-2")?;
    let d = premise_deriv(p, 0, "sub-cong-comp-2")?;
    // Γ | A[s₁∘s'] ⊢ i^comp_{A,s₂,s'} ∘ i^sub_{A,s₁∘s',s₂∘s'} ≡
    //               (i^sub_{A,s₁,s₂})[s'] ∘ i^comp_{A,s₁,s'} : A[s₂][s']
    let c1 = CtxMor::comp(s1.clone(), s_pre.clone());
    let c2 = CtxMor::comp(s2.clone(), s_pre.clone());
    let pre_d = elab::d_cong_pre(&s_pre, d.clone());
    let lhs = TyMor::comp(
        TyMor::iso_comp(a.clone(), s2.clone(), s_pre.clone(), Dir::Fwd),
        TyMor::iso_sub(a.clone(), c1, c2, pre_d, Dir::Fwd),
    );
    let rhs = TyMor::comp(
        TyMor::sub(
            TyMor::iso_sub(a.clone(), s1.clone(), s2, d, Dir::Fwd),
            s_pre.clone(),
        ),
        TyMor::iso_comp(a, s1, s_pre, Dir::Fwd),
    );
    ty_eq_judgment(env, lhs, rhs)
}

fn sub_proj_cong(env: &Env, _inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    let (_, s1, s2, cod) = premise_ctx_eq(p, 0, "sub-proj-cong")?;
    let (_, a) = split_ext(env, &cod).ok_or_else(|| CheckError::IllFormedSubterm {
        path: "sub-proj-cong".into(),
        reason: "premise codomain is not an extension".into(),
    })?;
    match concl {
        0 => {
            let proj = CtxMor::proj(a);
            ctx_eq_judgment(
                env,
                CtxMor::comp(proj.clone(), s1),
                CtxMor::comp(proj, s2),
            )
        }
        1 => {
            if env.split() {
                ctx_eq_judgment(env, CtxMor::p2(s1), CtxMor::p2(s2))
            } else {
                let d = premise_deriv(p, 0, "sub-proj-cong")?;
                let proj = CtxMor::proj(a.clone());
                let u1 = CtxMor::comp(proj.clone(), s1.clone());
                let u2 = CtxMor::comp(proj.clone(), s2.clone());
                let glue = TyMor::iso_sub(a, u1, u2, elab::d_cong_post(&proj, d), Dir::Fwd);
                let (g, _) = mor_boundary(env, &s1)?;
                let lhs = CtxMor::comp(CtxMor::ext_mor(g, glue), CtxMor::p2(s1));
                ctx_eq_judgment(env, lhs, CtxMor::p2(s2))
            }
        }
        _ => Err(bad_concl("sub-proj-cong", concl)),
    }
}

fn sub_ext_cong(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-ext-cong", concl));
    }
    let t1 = inst.ctxmor("t")?;
    let t2 = inst.ctxmor("t2")?;
    let (_, s1, s2, _) = premise_ctx_eq(p, 0, "sub-ext-cong")?;
    // second premise relates the section components (with transport glue in
    // non-split mode); we only need it checked, the conclusion re-synthesizes
    let _ = premise_ctx_eq(p, 1, "sub-ext-cong")?;
    ctx_eq_judgment(
        env,
        CtxMor::pair(s1, t1),
        CtxMor::pair(s2, t2),
    )
}


// -- the registry -----------------------------------------------------------------

use crate::kernel::rules_formers as formers;

const F_CTX: Concl = Concl::Formation("-");

fn both(
    conclusions: &'static [Concl],
    check: Option<SchemaFn>,
    premises: usize,
) -> (Option<ModeSpec>, Option<ModeSpec>) {
    (
        Some(ModeSpec {
            conclusions,
            check,
            premises,
        }),
        Some(ModeSpec {
            conclusions,
            check,
            premises,
        }),
    )
}

fn spec(
    id: &'static str,
    figure: Figure,
    modes: (Option<ModeSpec>, Option<ModeSpec>),
) -> (&'static str, RuleSpec) {
    (
        id,
        RuleSpec {
            id,
            figure,
            nonsplit: modes.0,
            split: modes.1,
        },
    )
}

fn nonsplit_only(
    conclusions: &'static [Concl],
    check: Option<SchemaFn>,
    premises: usize,
) -> (Option<ModeSpec>, Option<ModeSpec>) {
    (
        Some(ModeSpec {
            conclusions,
            check,
            premises,
        }),
        None,
    )
}

fn per_mode(ns: ModeSpec, sp: ModeSpec) -> (Option<ModeSpec>, Option<ModeSpec>) {
    (Some(ns), Some(sp))
}

fn ms(conclusions: &'static [Concl], check: Option<SchemaFn>, premises: usize) -> ModeSpec {
    ModeSpec {
        conclusions,
        check,
        premises,
    }
}

fn build_registry() -> BTreeMap<&'static str, RuleSpec> {
    use Concl::*;
    use Figure::*;
    let _ = F_CTX;
    let entries: Vec<(&'static str, RuleSpec)> = vec![
        // Fig. 5 — structural
        spec("ctx-mor-id", Structural, both(&[Formation("Id")], None, 0)),
        spec("ctx-mor-comp", Structural, both(&[Formation("Comp")], None, 0)),
        spec("ctx-id-unit", Structural, both(&[CtxMorEq, CtxMorEq], Some(ctx_id_unit), 0)),
        spec("ctx-comp-assoc", Structural, both(&[CtxMorEq], Some(ctx_comp_assoc), 0)),
        spec("ty-mor-id", Structural, both(&[Formation("IdT")], None, 0)),
        spec("ty-mor-comp", Structural, both(&[Formation("CompT")], None, 0)),
        spec("ty-id-unit", Structural, both(&[TyMorEq, TyMorEq], Some(ty_id_unit), 0)),
        spec("ty-comp-assoc", Structural, both(&[TyMorEq], Some(ty_comp_assoc), 0)),
        spec("ext-ty", Structural, both(&[Formation("Ext")], None, 0)),
        spec("ext-tm", Structural, both(&[Formation("ExtMor")], None, 0)),
        spec("ext-id", Structural, both(&[CtxMorEq], Some(ext_id), 0)),
        spec("ext-comp", Structural, both(&[CtxMorEq], Some(ext_comp), 0)),
        spec("ext-proj", Structural, both(&[Formation("Proj")], None, 0)),
        spec("ext-c", Structural, both(&[CtxMorEq], Some(ext_c), 0)),
        spec("sub-ty", Structural, both(&[Formation("Sub")], None, 0)),
        spec("sub-tm", Structural, both(&[Formation("SubTm")], None, 0)),
        spec("sub-prs-id", Structural, both(&[TyMorEq], Some(sub_prs_id), 0)),
        spec("sub-prs-comp", Structural, both(&[TyMorEq], Some(sub_prs_comp), 0)),
        spec(
            "sub-id",
            Structural,
            per_mode(
                ms(&[Formation("IsoId"), Formation("IsoId"), TyMorEq, TyMorEq], Some(sub_id), 0),
                ms(&[TyEq], Some(sub_id), 0),
            ),
        ),
        spec(
            "sub-comp",
            Structural,
            per_mode(
                ms(&[Formation("IsoComp"), Formation("IsoComp"), TyMorEq, TyMorEq], Some(sub_comp), 0),
                ms(&[TyEq], Some(sub_comp), 0),
            ),
        ),
        spec("sub-tm-id", Structural, both(&[TyMorEq], Some(sub_tm_id), 0)),
        spec("sub-tm-comp", Structural, both(&[TyMorEq], Some(sub_tm_comp), 0)),
        spec("sub-ext", Structural, both(&[Formation("Pair")], None, 0)),
        spec("sub-proj", Structural, both(&[Formation("P2"), CtxMorEq], Some(sub_proj), 0)),
        spec("sub-beta", Structural, both(&[CtxMorEq, CtxMorEq], Some(sub_beta), 0)),
        spec("sub-eta", Structural, both(&[CtxMorEq], Some(sub_eta), 0)),
        spec("sub-proj-id", Structural, both(&[CtxMorEq], Some(sub_proj_id), 0)),
        spec("sub-proj-comp", Structural, both(&[CtxMorEq], Some(sub_proj_comp), 0)),
        spec("tm-sub-coh", Structural, both(&[CtxMorEq], Some(tm_sub_coh), 0)),
        // Fig. 6 — congruence
        spec("ctx-eq-refl", Congruence, both(&[CtxMorEq], Some(ctx_eq_refl), 0)),
        spec("ctx-eq-sym", Congruence, both(&[CtxMorEq], Some(ctx_eq_sym), 1)),
        spec("ctx-eq-trans", Congruence, both(&[CtxMorEq], Some(ctx_eq_trans), 2)),
        spec("ctx-comp-cong-1", Congruence, both(&[CtxMorEq], Some(ctx_comp_cong_1), 1)),
        spec("ctx-comp-cong-2", Congruence, both(&[CtxMorEq], Some(ctx_comp_cong_2), 1)),
        spec("ty-eq-refl", Congruence, both(&[TyMorEq], Some(ty_eq_refl), 0)),
        spec("ty-eq-sym", Congruence, both(&[TyMorEq], Some(ty_eq_sym), 1)),
        spec("ty-eq-trans", Congruence, both(&[TyMorEq], Some(ty_eq_trans), 2)),
        spec("ty-comp-cong-1", Congruence, both(&[TyMorEq], Some(ty_comp_cong_1), 1)),
        spec("ty-comp-cong-2", Congruence, both(&[TyMorEq], Some(ty_comp_cong_2), 1)),
        spec("ext-cong", Congruence, both(&[CtxMorEq], Some(ext_cong), 1)),
        spec("sub-cong-tm", Congruence, both(&[TyMorEq], Some(sub_cong_tm), 1)),
        spec(
            "sub-cong",
            Congruence,
            per_mode(
                ms(
                    &[Formation("IsoSub"), Formation("IsoSub"), TyMorEq, TyMorEq, TyMorEq],
                    Some(sub_cong),
                    1,
                ),
                ms(&[TyEq], Some(sub_cong), 1),
            ),
        ),
        spec("sub-cong-id", Congruence, nonsplit_only(&[TyMorEq], Some(sub_cong_id), 0)),
        spec("sub-cong-comp-1", Congruence, nonsplit_only(&[TyMorEq], Some(sub_cong_comp_1), 1)),
        spec("sub-cong-comp-2", Congruence, nonsplit_only(&[TyMorEq], Some(sub_cong_comp_2), 1)),
        spec("sub-proj-cong", Congruence, both(&[CtxMorEq, CtxMorEq], Some(sub_proj_cong), 1)),
        spec("sub-ext-cong", Congruence, both(&[CtxMorEq], Some(sub_ext_cong), 2)),
        // Fig. 2 — Π
        spec("pi-form", Pi, both(&[Formation("Pi")], None, 0)),
        spec("pi-intro", Pi, both(&[Formation("Lam"), CtxMorEq], Some(formers::pi_intro), 0)),
        spec("pi-elim", Pi, both(&[Formation("App"), CtxMorEq], Some(formers::pi_elim), 0)),
        spec("pi-beta", Pi, both(&[CtxMorEq], Some(formers::pi_beta), 0)),
        spec("pi-eta", Pi, both(&[CtxMorEq], Some(formers::pi_eta), 0)),
        spec(
            "pi-sub",
            Pi,
            per_mode(
                ms(&[Formation("IsoPi"), Formation("IsoPi"), TyMorEq, TyMorEq], Some(formers::pi_sub), 0),
                ms(&[TyEq], Some(formers::pi_sub), 0),
            ),
        ),
        spec(
            "sub-lam",
            Pi,
            per_mode(
                ms(&[CtxMorEq], Some(formers::sub_lam), 1),
                ms(&[CtxMorEq], Some(formers::sub_lam), 0),
            ),
        ),
        spec("subt-pi", Pi, both(&[Formation("PiMap"), CtxMorEq], Some(formers::subt_pi), 0)),
        spec("subt-pi-id", Pi, both(&[TyMorEq], Some(formers::subt_pi_id), 0)),
        spec("subt-pi-comp", Pi, both(&[TyMorEq], Some(formers::subt_pi_comp), 0)),
        spec("pi-sub-id", Pi, nonsplit_only(&[TyMorEq], Some(formers::pi_sub_id), 1)),
        spec("pi-sub-comp", Pi, nonsplit_only(&[TyMorEq], Some(formers::pi_sub_comp), 1)),
        // Fig. 3 — Σ
        spec("sigma-form", Sigma, both(&[Formation("Sigma")], None, 0)),
        spec(
            "sigma-intro",
            Sigma,
            both(&[Formation("SigmaPair"), CtxMorEq], Some(formers::sigma_intro), 0),
        ),
        spec("sigma-elim", Sigma, both(&[Formation("SigmaProj")], None, 0)),
        spec("sigma-beta", Sigma, both(&[CtxMorEq], Some(formers::sigma_beta), 0)),
        spec("sigma-eta", Sigma, both(&[CtxMorEq], Some(formers::sigma_eta), 0)),
        spec(
            "sigma-sub",
            Sigma,
            per_mode(
                ms(
                    &[Formation("IsoSigma"), Formation("IsoSigma"), TyMorEq, TyMorEq],
                    Some(formers::sigma_sub),
                    0,
                ),
                ms(&[TyEq], Some(formers::sigma_sub), 0),
            ),
        ),
        spec("sub-pair", Sigma, both(&[CtxMorEq], Some(formers::sub_pair), 0)),
        spec(
            "subt-sigma",
            Sigma,
            both(&[Formation("SigmaMap"), CtxMorEq], Some(formers::subt_sigma), 0),
        ),
        spec("subt-sigma-id", Sigma, both(&[TyMorEq], Some(formers::subt_sigma_id), 0)),
        spec("subt-sigma-comp", Sigma, both(&[TyMorEq], Some(formers::subt_sigma_comp), 0)),
        spec("sigma-sub-id", Sigma, nonsplit_only(&[TyMorEq], Some(formers::sigma_sub_id), 1)),
        spec("sigma-sub-comp", Sigma, nonsplit_only(&[TyMorEq], Some(formers::sigma_sub_comp), 1)),
        // Fig. 4 — Id
        spec("id-form", IdTy, both(&[Formation("IdTy")], None, 0)),
        spec("id-intro", IdTy, both(&[Formation("Refl"), CtxMorEq], Some(formers::id_intro), 0)),
        spec("id-elim", IdTy, both(&[Formation("J"), CtxMorEq], Some(formers::id_elim), 0)),
        spec("id-beta", IdTy, both(&[CtxMorEq], Some(formers::id_beta), 0)),
        spec(
            "id-sub",
            IdTy,
            per_mode(
                ms(
                    &[Formation("IsoIdTy"), Formation("IsoIdTy"), TyMorEq, TyMorEq],
                    Some(formers::id_sub),
                    0,
                ),
                ms(&[TyEq], Some(formers::id_sub), 0),
            ),
        ),
        spec("sub-refl", IdTy, both(&[CtxMorEq], Some(formers::sub_refl), 0)),
        spec("sub-j", IdTy, both(&[CtxMorEq], Some(formers::sub_j), 1)),
        spec("subt-id", IdTy, both(&[Formation("IdMap")], None, 0)),
        spec(
            "subt-id-i",
            IdTy,
            per_mode(
                ms(&[TyMorEq], Some(formers::subt_id_i), 1),
                ms(&[TyMorEq], Some(formers::subt_id_i), 0),
            ),
        ),
        spec(
            "subt-id-c",
            IdTy,
            per_mode(
                ms(&[TyMorEq], Some(formers::subt_id_c), 1),
                ms(&[TyMorEq], Some(formers::subt_id_c), 0),
            ),
        ),
        spec("subt-id-refl", IdTy, both(&[CtxMorEq], Some(formers::subt_id_refl), 0)),
        spec("subt-id-j", IdTy, both(&[CtxMorEq], Some(formers::subt_id_j), 1)),
        spec("id-sub-id", IdTy, nonsplit_only(&[TyMorEq], Some(formers::id_sub_id), 1)),
        spec("id-sub-comp", IdTy, nonsplit_only(&[TyMorEq], Some(formers::id_sub_comp), 1)),
        // Remark 3.3 — optional empty context
        spec("empty-ctx", EmptyCtx, both(&[Formation("Empty")], None, 0)),
        spec("empty-ctx-mor", EmptyCtx, both(&[Formation("Bang")], None, 0)),
        spec(
            "empty-ctx-mor-unique",
            EmptyCtx,
            both(&[CtxMorEq], Some(empty_ctx_mor_unique), 0),
        ),
    ];
    entries.into_iter().collect()
}
