//! End-to-end exercises of synthesis, derivation checking, the split
//! decision procedure, and the elaborators.

use cctt_core::env::{Env, Features, Mode};
use cctt_core::kernel::check::{check_eq, compile_step};
use cctt_core::kernel::derivation::{EqDerivation, Inst};
use cctt_core::kernel::rewrite::{decide_eq_split, SplitVerdict};
use cctt_core::synth;
use cctt_core::syntax::judgment::Judgment;
use cctt_core::syntax::term::{Ctx, CtxMor, Term, Ty};
use cctt_core::theory::elab;

fn split_env() -> Env {
    Env::new(Mode::Split, Features::all())
}

fn nonsplit_env() -> Env {
    Env::new(Mode::NonSplit, Features::all())
}

fn base() -> (Ctx, Ty, Ctx, CtxMor) {
    let g = Ctx::const_("G");
    let d = Ctx::const_("D");
    let a = Ty::const_("A", d.clone());
    let s = CtxMor::const_("s", g.clone(), d.clone());
    (g, a, d, s)
}

#[test]
fn synthesis_of_basic_judgments() {
    let env = nonsplit_env();
    let (g, a, d, s) = base();
    // Γ ⊢ A[s] type
    let j = synth::synthesize_ty(&env, &Ty::sub(a.clone(), s.clone())).unwrap();
    match j {
        Judgment::IsTy { ctx, .. } => assert_eq!(ctx, g),
        _ => panic!("wrong judgment"),
    }
    // Δ.A ⊢ π_A : Δ
    let j = synth::synthesize_ctxmor(&env, &CtxMor::proj(a.clone())).unwrap();
    match j {
        Judgment::CtxMorJ { dom, cod, .. } => {
            assert_eq!(dom, Ctx::ext(d.clone(), a.clone()));
            assert_eq!(cod, d);
        }
        _ => panic!("wrong judgment"),
    }
    // ill-formed: extension whose type lives elsewhere
    let h = Ctx::const_("H");
    let bad = Ctx::ext(h, a);
    let err = synth::synthesize_ctx(&env, &bad).unwrap_err();
    assert_eq!(err.code(), "IllFormedType");
}

#[test]
fn lift_synthesizes_at_the_stated_boundary() {
    for env in [nonsplit_env(), split_env()] {
        let (g, a, d, s) = base();
        let lifted = elab::lift(&env, &s, &a).unwrap();
        let (dom, cod) = synth::mor_boundary(&env, &lifted).unwrap();
        assert_eq!(dom, Ctx::ext(g.clone(), Ty::sub(a.clone(), s.clone())));
        assert_eq!(cod, Ctx::ext(d.clone(), a.clone()));
    }
}

#[test]
fn check_eq_accepts_unit_law() {
    let env = nonsplit_env();
    let (_, a, _, s) = base();
    let _ = a;
    let d = EqDerivation::rule_at("ctx-id-unit", 0, Inst::new().bind("s", s.clone()));
    let j = check_eq(&env, &d).unwrap();
    match j {
        Judgment::CtxMorEq { lhs, rhs, .. } => {
            assert_eq!(lhs, CtxMor::comp(s.clone(), CtxMor::id(Ctx::const_("G"))));
            assert_eq!(rhs, s);
        }
        _ => panic!("wrong judgment"),
    }
}

#[test]
fn check_eq_rejects_unknown_rule_and_bad_trans() {
    let env = nonsplit_env();
    let (_, _, _, s) = base();
    let bad = EqDerivation::rule("no-such-rule", Inst::new());
    assert_eq!(check_eq(&env, &bad).unwrap_err().code(), "UnknownRule");
    // trans along unequal middles
    let r1 = EqDerivation::refl(s.clone());
    let r2 = EqDerivation::refl(CtxMor::id(Ctx::const_("G")));
    let t = EqDerivation::trans(r1, r2);
    assert_eq!(check_eq(&env, &t).unwrap_err().code(), "BoundaryMismatch");
}

#[test]
fn split_decides_sub_id_and_sub_beta() {
    let env = split_env();
    let (g, a, _, s) = base();
    // A[1_Γ] ≡ A — wait, A lives in Δ; use A[s][1_Γ] ≡ A[s]
    let asub = Ty::sub(a.clone(), s.clone());
    let lhs: Term = Ty::sub(asub.clone(), CtxMor::id(g.clone())).into();
    let rhs: Term = asub.clone().into();
    match decide_eq_split(&env, &lhs, &rhs).unwrap() {
        SplitVerdict::Equal { .. } => {}
        v => panic!("expected equal, got {v:?}"),
    }
    // π_A ∘ (s, t) ≡ s with t := p₂(c) for a constant c : Γ → Γ.A[s]
    let c = CtxMor::const_("c", g.clone(), Ctx::ext(g.clone(), asub.clone()));
    let t = CtxMor::p2(c.clone());
    // p₂(c) : Γ → Γ.A[s][π∘c]; the pairing lands in Γ.(A[s∘π∘c])
    let subst = CtxMor::comp(CtxMor::proj(asub.clone()), c);
    let pair = CtxMor::pair(subst.clone(), t.clone());
    let (_, pair_cod) = synth::mor_boundary(&env, &pair).unwrap();
    let pair_ty = pair_cod.as_ext().map(|(_, t)| t.clone()).unwrap();
    let lhs: Term = CtxMor::comp(CtxMor::proj(pair_ty), pair).into();
    let rhs: Term = subst.into();
    match decide_eq_split(&env, &lhs, &rhs).unwrap() {
        SplitVerdict::Equal { lhs, rhs, .. } => {
            assert!(lhs
                .steps
                .iter()
                .chain(rhs.steps.iter())
                .any(|st| st.rule == "sub-beta" || st.rule == "sub-eta"));
        }
        v => panic!("expected equal, got {v:?}"),
    }
}

#[test]
fn split_decides_pi_sub_push() {
    let env = split_env();
    let (_, a, d, s) = base();
    let b = Ty::const_("B", Ctx::ext(d.clone(), a.clone()));
    let lifted = elab::lift(&env, &s, &a).unwrap();
    let lhs: Term = Ty::sub(Ty::pi(a.clone(), b.clone()), s.clone()).into();
    let rhs: Term = Ty::pi(
        Ty::sub(a.clone(), s.clone()),
        Ty::sub(b.clone(), lifted),
    )
    .into();
    match decide_eq_split(&env, &lhs, &rhs).unwrap() {
        SplitVerdict::Equal { lhs, rhs, .. } => {
            let mut rules: Vec<_> = lhs
                .steps
                .iter()
                .chain(rhs.steps.iter())
                .map(|s| s.rule.as_str())
                .collect();
            rules.dedup();
            assert!(rules.contains(&"pi-sub"));
        }
        v => panic!("expected equal, got {v:?}"),
    }
}

#[test]
fn split_trace_steps_compile_to_derivations() {
    let env = split_env();
    let (g, a, _, s) = base();
    let asub = Ty::sub(a.clone(), s.clone());
    let lhs: Term = Ty::sub(asub.clone(), CtxMor::id(g.clone())).into();
    let rhs: Term = asub.into();
    match decide_eq_split(&env, &lhs, &rhs).unwrap() {
        SplitVerdict::Equal { lhs, rhs, .. } => {
            for step in lhs.steps.iter().chain(rhs.steps.iter()) {
                compile_step(&env, step).unwrap();
            }
        }
        v => panic!("expected equal, got {v:?}"),
    }
}

#[test]
fn subsumption_section_proof_checks() {
    let env = nonsplit_env();
    let (_, _, d, _) = base();
    let a = Ty::const_("A0", d.clone());
    let b = Ty::const_("B0", d.clone());
    let t = cctt_core::TyMor::const_("t", a.clone(), b.clone());
    // a section given by p₂ of a constant into Δ.A
    let c = CtxMor::const_("c", d.clone(), Ctx::ext(d.clone(), a.clone()));
    let raw = CtxMor::p2(c);
    // raw : Δ → Δ.A[π_A ∘ c]; adjust t to that weakened boundary
    let (_, raw_cod) = synth::mor_boundary(&env, &raw).unwrap();
    let (_, aw) = raw_cod.as_ext().map(|(b, t)| (b.clone(), t.clone())).unwrap();
    let tw = cctt_core::TyMor::const_("tw", aw.clone(), b.clone());
    let a_sec = elab::d_sub_proj1(match raw.node() {
        cctt_core::syntax::term::CtxMorNode::P2(w) => w,
        _ => unreachable!(),
    });
    let (term, proof) = elab::subsume(&env, &tw, &raw, a_sec).unwrap();
    let j = check_eq(&env, &proof).unwrap();
    match j {
        Judgment::CtxMorEq { lhs, rhs, .. } => {
            assert_eq!(
                lhs,
                CtxMor::comp(CtxMor::proj(b), term.clone())
            );
            assert_eq!(rhs, CtxMor::id(d));
        }
        _ => panic!("wrong judgment"),
    }
    let _ = term;
}
