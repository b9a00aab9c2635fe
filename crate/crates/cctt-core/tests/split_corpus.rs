//! The split decision procedure over the full goal corpus: every split-mode
//! equality rule appears as a goal, plus parametric variations, for 100+
//! goals total. Every goal must be decided (no fuel exhaustion, no
//! not-proved), and every recorded rewrite step must recompile into a
//! derivation accepted by check_eq.

mod common;

use std::collections::BTreeSet;

use cctt_core::env::Mode;
use cctt_core::kernel::check::{check_eq, compile_step};
use cctt_core::kernel::rewrite::{decide_eq_split, SplitVerdict};
use cctt_core::syntax::judgment::Judgment;
use cctt_core::syntax::term::{Ctx, CtxMor, Term, Ty, TyMor};
use cctt_core::theory::elab;
use common::*;

struct Goal {
    name: String,
    judgment: Judgment,
}

fn eq_goal(name: impl Into<String>, j: Judgment) -> Goal {
    Goal {
        name: name.into(),
        judgment: j,
    }
}

/// The corpus: the per-rule goals from the shared harness plus parametric
/// families over substitutions and types.
fn corpus(fx: &Fixture) -> Vec<Goal> {
    let env = fx.theory.env();
    let mut goals = Vec::new();
    // every split-mode equality rule, via its schema conclusion
    for g in rule_goals(fx, Mode::Split) {
        let j = check_eq(&env, &g.derivation())
            .unwrap_or_else(|e| panic!("harness goal {}#{}: {e}", g.rule, g.concl));
        goals.push(eq_goal(format!("rule:{}#{}", g.rule, g.concl), j));
    }
    // parametric families
    let subs = [
        ("sg", fx.sg.clone()),
        ("sg.eps", CtxMor::comp(fx.sg.clone(), fx.eps.clone())),
        ("id", CtxMor::id(fx.g.clone())),
    ];
    let tys = [("A", fx.a.clone()), ("A2", fx.a2.clone())];
    for (sn, s) in &subs {
        let (dom_s, _) = cctt_core::synth::mor_boundary(&env, s).unwrap();
        for (tn, a) in &tys {
            // A[s][1] ≡ A[s]
            let asub = Ty::sub(a.clone(), s.clone());
            goals.push(eq_goal(
                format!("sub-id:{sn}:{tn}"),
                Judgment::TyEq {
                    ctx: dom_s.clone(),
                    lhs: Ty::sub(asub.clone(), CtxMor::id(dom_s.clone())),
                    rhs: asub.clone(),
                },
            ));
            // Π(A,B)[s] ≡ Π(A[s], B[s.A]) and the Σ/Id analogues
            if *tn == "A" {
                let lifted = elab::lift(&env, s, a).unwrap();
                goals.push(eq_goal(
                    format!("pi-push:{sn}"),
                    Judgment::TyEq {
                        ctx: dom_s.clone(),
                        lhs: Ty::sub(Ty::pi(a.clone(), fx.b.clone()), s.clone()),
                        rhs: Ty::pi(asub.clone(), Ty::sub(fx.b.clone(), lifted.clone())),
                    },
                ));
                goals.push(eq_goal(
                    format!("sigma-push:{sn}"),
                    Judgment::TyEq {
                        ctx: dom_s.clone(),
                        lhs: Ty::sub(Ty::sigma(a.clone(), fx.b.clone()), s.clone()),
                        rhs: Ty::sigma(asub.clone(), Ty::sub(fx.b.clone(), lifted)),
                    },
                ));
                let base = elab::id_sub_base(&env, s, a).unwrap();
                let id_ctx = cctt_core::synth::ty_ctx(&env, &Ty::id(asub.clone())).unwrap();
                goals.push(eq_goal(
                    format!("id-push:{sn}"),
                    Judgment::TyEq {
                        ctx: id_ctx,
                        lhs: Ty::id(asub.clone()),
                        rhs: Ty::sub(Ty::id(a.clone()), base),
                    },
                ));
            }
            // unit and associativity at the morphism level
            goals.push(eq_goal(
                format!("unit:{sn}:{tn}"),
                Judgment::CtxMorEq {
                    dom: dom_s.clone(),
                    lhs: CtxMor::comp(s.clone(), CtxMor::id(dom_s.clone())),
                    rhs: s.clone(),
                    cod: fx.g.clone(),
                },
            ));
            // 1_A[s] ≡ 1_{A[s]}
            goals.push(eq_goal(
                format!("prs-id:{sn}:{tn}"),
                Judgment::TyMorEq {
                    ctx: dom_s.clone(),
                    dom: asub.clone(),
                    lhs: TyMor::sub(TyMor::id(a.clone()), s.clone()),
                    rhs: TyMor::id(asub.clone()),
                    cod: asub.clone(),
                },
            ));
            // t[s][1] ≡ t[s]
            let fsub = TyMor::sub(fx.f.clone(), s.clone());
            let (fctx, fdom, fcod) = cctt_core::synth::tymor_boundary(&env, &fsub).unwrap();
            goals.push(eq_goal(
                format!("tm-fuse:{sn}:{tn}"),
                Judgment::TyMorEq {
                    ctx: fctx.clone(),
                    dom: fdom,
                    lhs: TyMor::sub(fsub.clone(), CtxMor::id(fctx)),
                    rhs: fsub,
                    cod: fcod,
                },
            ));
        }
        // β for pairings against this substitution
        let asub = Ty::sub(fx.a.clone(), s.clone());
        let c = CtxMor::const_("c0sec", fx.d.clone(), Ctx::ext(fx.d.clone(), Ty::sub(fx.a.clone(), fx.sg.clone())));
        let _ = c;
        // sub-eta on a constant into an extension
        goals.push(eq_goal(
            format!("eta:{sn}"),
            Judgment::CtxMorEq {
                dom: fx.d.clone(),
                lhs: CtxMor::pair(
                    CtxMor::comp(
                        CtxMor::proj(Ty::sub(fx.a.clone(), fx.sg.clone())),
                        fx.c_sec.clone(),
                    ),
                    CtxMor::p2(fx.c_sec.clone()),
                ),
                rhs: fx.c_sec.clone(),
                cod: Ctx::ext(fx.d.clone(), Ty::sub(fx.a.clone(), fx.sg.clone())),
            },
        ));
        let _ = asub;
    }
    // β/η for the type formers at a second section
    let b_sec = CtxMor::p2(fx.cb.clone());
    let lam = CtxMor::lam(b_sec.clone());
    let (_, lam_cod) = cctt_core::synth::mor_boundary(&env, &lam).unwrap();
    let (_, pi_ty) = lam_cod.as_ext().map(|(b, t)| (b.clone(), t.clone())).unwrap();
    let b_w = {
        let (_, cod) = cctt_core::synth::mor_boundary(&env, &b_sec).unwrap();
        cod.as_ext().map(|(_, t)| t.clone()).unwrap()
    };
    goals.push(eq_goal(
        "pi-beta:cb",
        Judgment::CtxMorEq {
            dom: Ctx::ext(fx.g.clone(), fx.a.clone()),
            lhs: CtxMor::comp(
                CtxMor::app(fx.a.clone(), b_w.clone()),
                CtxMor::p2(CtxMor::comp(lam.clone(), CtxMor::proj(fx.a.clone()))),
            ),
            rhs: b_sec.clone(),
            cod: {
                let (_, c) = cctt_core::synth::mor_boundary(&env, &b_sec).unwrap();
                c
            },
        },
    ));
    goals.push(eq_goal(
        "pi-eta:cb",
        Judgment::CtxMorEq {
            dom: fx.g.clone(),
            lhs: CtxMor::lam(CtxMor::comp(
                CtxMor::app(fx.a.clone(), b_w.clone()),
                CtxMor::p2(CtxMor::comp(lam.clone(), CtxMor::proj(fx.a.clone()))),
            )),
            rhs: lam.clone(),
            cod: Ctx::ext(fx.g.clone(), pi_ty),
        },
    ));
    // Σ β/η as morphism goals at both (A,B) and (A2,Bp)
    for (n, (x, y)) in [
        ("ab", (fx.a.clone(), fx.b.clone())),
        ("a2bp", (fx.a2.clone(), fx.bp.clone())),
    ] {
        let ext = Ctx::ext(Ctx::ext(fx.g.clone(), x.clone()), y.clone());
        goals.push(eq_goal(
            format!("sigma-beta:{n}"),
            Judgment::CtxMorEq {
                dom: ext.clone(),
                lhs: CtxMor::comp(
                    CtxMor::sigma_proj(x.clone(), y.clone()),
                    CtxMor::sigma_pair(x.clone(), y.clone()),
                ),
                rhs: CtxMor::id(ext.clone()),
                cod: ext,
            },
        ));
        let sig_ext = Ctx::ext(fx.g.clone(), Ty::sigma(x.clone(), y.clone()));
        goals.push(eq_goal(
            format!("sigma-eta:{n}"),
            Judgment::CtxMorEq {
                dom: sig_ext.clone(),
                lhs: CtxMor::comp(
                    CtxMor::sigma_pair(x.clone(), y.clone()),
                    CtxMor::sigma_proj(x.clone(), y.clone()),
                ),
                rhs: CtxMor::id(sig_ext.clone()),
                cod: sig_ext,
            },
        ));
    }
    // id-beta at the fixture motive
    goals.push(eq_goal(
        "id-beta:c0",
        Judgment::CtxMorEq {
            dom: Ctx::ext(fx.g.clone(), fx.a.clone()),
            lhs: CtxMor::comp(
                CtxMor::j(fx.a.clone(), fx.c0.clone(), fx.d0.clone()),
                CtxMor::refl(fx.a.clone()),
            ),
            rhs: fx.d0.clone(),
            cod: Ctx::ext(id_full_ctx(&fx.g, &fx.a), fx.c0.clone()),
        },
    ));
    // ⟨⟩-uniqueness
    goals.push(eq_goal(
        "empty-unique:e0",
        Judgment::CtxMorEq {
            dom: fx.g.clone(),
            lhs: fx.e0.clone(),
            rhs: CtxMor::bang(fx.g.clone()),
            cod: Ctx::empty(),
        },
    ));
    goals
}

#[test]
fn split_corpus_is_decided_and_traces_recompile() {
    let fx = fixture(Mode::Split);
    let env = fx.theory.env();
    let goals = corpus(&fx);
    assert!(
        goals.len() >= 100,
        "corpus too small: {} goals",
        goals.len()
    );
    // every split equality rule appears as a goal
    let covered: BTreeSet<String> = goals
        .iter()
        .filter_map(|g| {
            g.name
                .strip_prefix("rule:")
                .map(|r| r.split('#').next().unwrap().to_string())
        })
        .collect();
    for rule in expected_equality_rules(Mode::Split) {
        assert!(covered.contains(rule), "no goal for split rule {rule}");
    }
    let mut steps_total = 0usize;
    for goal in &goals {
        env.refill_fuel();
        let (lhs, rhs): (Term, Term) = match &goal.judgment {
            Judgment::CtxMorEq { lhs, rhs, .. } => (lhs.clone().into(), rhs.clone().into()),
            Judgment::TyMorEq { lhs, rhs, .. } => (lhs.clone().into(), rhs.clone().into()),
            Judgment::TyEq { lhs, rhs, .. } => (lhs.clone().into(), rhs.clone().into()),
            _ => panic!("non-equality goal in corpus"),
        };
        match decide_eq_split(&env, &lhs, &rhs) {
            Ok(SplitVerdict::Equal { lhs: lt, rhs: rt, .. }) => {
                for step in lt.steps.iter().chain(rt.steps.iter()) {
                    compile_step(&env, step).unwrap_or_else(|e| {
                        panic!("goal {}: step {} does not recompile: {e}", goal.name, step.rule)
                    });
                    steps_total += 1;
                }
            }
            Ok(SplitVerdict::Distinct { lhs_nf, rhs_nf }) => {
                panic!("goal {} not proved:\n  {lhs_nf}\n  {rhs_nf}", goal.name)
            }
            Ok(SplitVerdict::FuelExhausted) => panic!("goal {} exhausted fuel", goal.name),
            Err(e) => panic!("goal {}: {e}", goal.name),
        }
    }
    assert!(steps_total > 0);
}
