//! Shared fixtures: the standard test theory, one instantiation per
//! equality rule, and bindings of the declared constants into both concrete
//! models.

#![allow(dead_code)]

use std::sync::Arc;

use cctt_core::env::{Env, Features, Mode};
use cctt_core::kernel::derivation::{EqDerivation, Inst};
use cctt_core::kernel::rules::{registry, Concl};
use cctt_core::models::groupoid::{
    build_groupoid_family, Family, FamMor, FiniteGroupoid, Functor, GObj, GroupoidModel,
};
use cctt_core::models::heyting::{
    build_heyting_model, FiniteHeytingAlgebra, HPredicate, HWitness, HeytingModel, SetObj,
};
use cctt_core::semantics::laws::FiniteModel;
use cctt_core::semantics::{ComprehensionModel, Interpretation};
use cctt_core::syntax::judgment::Judgment;
use cctt_core::syntax::term::{Ctx, CtxMor, Dir, Ty, TyMor};
use cctt_core::theory::elab;
use cctt_core::theory::{Theory, TheoryBuilder};

pub struct Fixture {
    pub theory: Theory,
    // contexts
    pub g: Ctx,
    pub d: Ctx,
    pub e: Ctx,
    // types
    pub a: Ty,
    pub a2: Ty,
    pub a3: Ty,
    pub a4: Ty,
    pub b: Ty,
    pub bp: Ty,
    pub bpp: Ty,
    pub b2p: Ty,
    pub b3p: Ty,
    pub c0: Ty,
    // context morphisms
    pub sg: CtxMor,  // σ : D → G
    pub tu: CtxMor,  // τ : G → D
    pub rho: CtxMor, // ρ : D → G
    pub eps: CtxMor, // ε : E → D
    pub c_sec: CtxMor, // c₀ : D → D.A[σ]
    pub cb: CtxMor,    // c_B : G.A → (G.A).B
    pub d0: CtxMor,    // d₀ : G.A → ctxI(A).Id_A.C0
    pub e0: CtxMor,    // e₀ : G → ⋄
    // type morphisms
    pub f: TyMor,   // A2 → A
    pub f2: TyMor,  // A → A3
    pub f3: TyMor,  // A3 → A4
    pub gp: TyMor,  // B[G.f] → B'
    pub fp2: TyMor, // A3 → A2
    pub gp2: TyMor, // B'[G.fp2] → B''
    pub fs: TyMor,  // A → A2
    pub gs: TyMor,  // B → B2'[G.fs]
    pub fs2: TyMor, // A2 → A3
    pub gs2: TyMor, // B2' → B3'[G.fs2]
}

/// Γ.A.A[π_A].Id_A.
pub fn id_full_ctx(ca: &Ctx, a: &Ty) -> Ctx {
    let ext = Ctx::ext(ca.clone(), a.clone());
    let weak = Ty::sub(a.clone(), CtxMor::proj(a.clone()));
    Ctx::ext(Ctx::ext(ext, weak), Ty::id(a.clone()))
}

pub fn fixture(mode: Mode) -> Fixture {
    let mut tb = TheoryBuilder::new(mode, Features::all());
    let g = tb.declare_ctx("G").unwrap();
    let d = tb.declare_ctx("D").unwrap();
    let e = tb.declare_ctx("E").unwrap();
    let a = tb.declare_ty("A", g.clone()).unwrap();
    let a2 = tb.declare_ty("A2", g.clone()).unwrap();
    let a3 = tb.declare_ty("A3", g.clone()).unwrap();
    let a4 = tb.declare_ty("A4", g.clone()).unwrap();
    let ga = Ctx::ext(g.clone(), a.clone());
    let ga2 = Ctx::ext(g.clone(), a2.clone());
    let ga3 = Ctx::ext(g.clone(), a3.clone());
    let b = tb.declare_ty("B", ga.clone()).unwrap();
    let bp = tb.declare_ty("Bp", ga2.clone()).unwrap();
    let bpp = tb.declare_ty("Bpp", ga3.clone()).unwrap();
    let b2p = tb.declare_ty("B2p", ga2.clone()).unwrap();
    let b3p = tb.declare_ty("B3p", ga3.clone()).unwrap();
    let c0 = tb
        .declare_ty("C0", id_full_ctx(&g, &a))
        .unwrap();
    let sg = tb.declare_ctxmor("sg", d.clone(), g.clone()).unwrap();
    let tu = tb.declare_ctxmor("tu", g.clone(), d.clone()).unwrap();
    let rho = tb.declare_ctxmor("rho", d.clone(), g.clone()).unwrap();
    let eps = tb.declare_ctxmor("eps", e.clone(), d.clone()).unwrap();
    let c_sec = tb
        .declare_ctxmor(
            "c0sec",
            d.clone(),
            Ctx::ext(d.clone(), Ty::sub(a.clone(), sg.clone())),
        )
        .unwrap();
    let cb = tb
        .declare_ctxmor("cb", ga.clone(), Ctx::ext(ga.clone(), b.clone()))
        .unwrap();
    let d0 = tb
        .declare_ctxmor(
            "d0",
            ga.clone(),
            Ctx::ext(id_full_ctx(&g, &a), c0.clone()),
        )
        .unwrap();
    let e0 = tb.declare_ctxmor("e0", g.clone(), Ctx::empty()).unwrap();
    let f = tb.declare_tymor("f", a2.clone(), a.clone()).unwrap();
    let f2 = tb.declare_tymor("f2", a.clone(), a3.clone()).unwrap();
    let f3 = tb.declare_tymor("f3", a3.clone(), a4.clone()).unwrap();
    let chi_f = CtxMor::ext_mor(g.clone(), f.clone());
    let gp = tb
        .declare_tymor("gp", Ty::sub(b.clone(), chi_f.clone()), bp.clone())
        .unwrap();
    let fp2 = tb.declare_tymor("fp2", a3.clone(), a2.clone()).unwrap();
    let chi_fp2 = CtxMor::ext_mor(g.clone(), fp2.clone());
    let gp2 = tb
        .declare_tymor("gp2", Ty::sub(bp.clone(), chi_fp2), bpp.clone())
        .unwrap();
    let fs = tb.declare_tymor("fs", a.clone(), a2.clone()).unwrap();
    let chi_fs = CtxMor::ext_mor(g.clone(), fs.clone());
    let gs = tb
        .declare_tymor("gs", b.clone(), Ty::sub(b2p.clone(), chi_fs))
        .unwrap();
    let fs2 = tb.declare_tymor("fs2", a2.clone(), a3.clone()).unwrap();
    let chi_fs2 = CtxMor::ext_mor(g.clone(), fs2.clone());
    let gs2 = tb
        .declare_tymor("gs2", b2p.clone(), Ty::sub(b3p.clone(), chi_fs2))
        .unwrap();
    // the eliminator base point is over refl
    let d0_side = Judgment::CtxMorEq {
        dom: ga.clone(),
        lhs: CtxMor::comp(CtxMor::proj(c0.clone()), d0.clone()),
        rhs: CtxMor::refl(a.clone()),
        cod: id_full_ctx(&g, &a),
    };
    tb.declare_axiom("d0-side", d0_side, None, true).unwrap();
    if mode == Mode::NonSplit {
        declare_coherence_postulates(&mut tb, &g, &a, &sg, &eps, &f, &f2);
    } else {
        // the diagonal still composes only up to coherence in split mode
        let env = Env::new(Mode::Split, Features::all());
        let diag_f = elab::diagonal_square_mor(&env, &f).unwrap();
        let diag_f2 = elab::diagonal_square_mor(&env, &f2).unwrap();
        let diag_fused =
            elab::diagonal_square_mor(&env, &TyMor::comp(f2.clone(), f.clone())).unwrap();
        let bd = cctt_core::synth::mor_boundary(&env, &diag_fused).unwrap();
        tb.declare_axiom(
            "coh-diag-comp",
            Judgment::CtxMorEq {
                dom: bd.0,
                lhs: diag_fused,
                rhs: CtxMor::comp(diag_f2, diag_f),
                cod: bd.1,
            },
            None,
            true,
        )
        .unwrap();
    }
    let theory = tb.finish();
    Fixture {
        theory,
        g,
        d,
        e,
        a,
        a2,
        a3,
        a4,
        b,
        bp,
        bpp,
        b2p,
        b3p,
        c0,
        sg,
        tu,
        rho,
        eps,
        c_sec,
        cb,
        d0,
        e0,
        f,
        f2,
        f3,
        gp,
        fp2,
        gp2,
        fs,
        gs,
        fs2,
        gs2,
    }
}

/// The lift-coherence facts used by the Beck–Chevalley coherence rules.
/// They hold in every model but are not derivable from the printed rules,
/// so the standard theory postulates them (and the harness re-validates
/// them semantically).
fn declare_coherence_postulates(
    tb: &mut TheoryBuilder,
    g: &Ctx,
    a: &Ty,
    sg: &CtxMor,
    eps: &CtxMor,
    f: &TyMor,
    f2: &TyMor,
) {
    let env = Env::new(Mode::NonSplit, Features::all());
    let ga = Ctx::ext(g.clone(), a.clone());
    let one = CtxMor::id(g.clone());
    let lift_one = elab::lift(&env, &one, a).unwrap();
    // lift(1,A) ∘ Γ.i^id⁻ ≡ 1
    let lhs = CtxMor::comp(
        lift_one.clone(),
        CtxMor::ext_mor(g.clone(), TyMor::iso_id(a.clone(), Dir::Bwd)),
    );
    tb.declare_axiom(
        "coh-lift-id-cancel",
        Judgment::CtxMorEq {
            dom: ga.clone(),
            lhs,
            rhs: CtxMor::id(ga.clone()),
            cod: ga.clone(),
        },
        None,
        true,
    )
    .unwrap();
    // lift(1,A) ≡ Γ.i^id
    tb.declare_axiom(
        "coh-lift-id-fwd",
        Judgment::CtxMorEq {
            dom: Ctx::ext(g.clone(), Ty::sub(a.clone(), one.clone())),
            lhs: lift_one,
            rhs: CtxMor::ext_mor(g.clone(), TyMor::iso_id(a.clone(), Dir::Fwd)),
            cod: ga.clone(),
        },
        None,
        true,
    )
    .unwrap();
    // composite lifts against i^comp, both orientations
    let fused = CtxMor::comp(sg.clone(), eps.clone());
    let lift_fused = elab::lift(&env, &fused, a).unwrap();
    let a_s = Ty::sub(a.clone(), sg.clone());
    let lift_s = elab::lift(&env, sg, a).unwrap();
    let lift_s2 = elab::lift(&env, eps, &a_s).unwrap();
    let e_ctx = Ctx::ext(
        cctt_core::synth::mor_boundary(&env, eps).unwrap().0,
        Ty::sub(a_s.clone(), eps.clone()),
    );
    let ic_bwd = CtxMor::ext_mor(
        cctt_core::synth::mor_boundary(&env, eps).unwrap().0,
        TyMor::iso_comp(a.clone(), sg.clone(), eps.clone(), Dir::Bwd),
    );
    let _ = e_ctx;
    tb.declare_axiom(
        "coh-lift-comp-pi",
        Judgment::CtxMorEq {
            dom: cctt_core::synth::mor_boundary(&env, &ic_bwd).unwrap().0,
            lhs: CtxMor::comp(lift_fused.clone(), ic_bwd.clone()),
            rhs: CtxMor::comp(lift_s.clone(), lift_s2.clone()),
            cod: ga.clone(),
        },
        None,
        true,
    )
    .unwrap();
    let ic_fwd = CtxMor::ext_mor(
        cctt_core::synth::mor_boundary(&env, eps).unwrap().0,
        TyMor::iso_comp(a.clone(), sg.clone(), eps.clone(), Dir::Fwd),
    );
    tb.declare_axiom(
        "coh-lift-comp-sigma",
        Judgment::CtxMorEq {
            dom: cctt_core::synth::mor_boundary(&env, &lift_fused).unwrap().0,
            lhs: lift_fused,
            rhs: CtxMor::comp(CtxMor::comp(lift_s, lift_s2), ic_fwd),
            cod: ga.clone(),
        },
        None,
        true,
    )
    .unwrap();
    // diagonal coherences
    let diag_one = elab::diagonal_square_mor(&env, &TyMor::id(a.clone())).unwrap();
    let weak_ctx = cctt_core::synth::id_context(g, a);
    tb.declare_axiom(
        "coh-diag-one",
        Judgment::CtxMorEq {
            dom: weak_ctx.clone(),
            lhs: CtxMor::id(weak_ctx.clone()),
            rhs: diag_one,
            cod: weak_ctx,
        },
        None,
        true,
    )
    .unwrap();
    let diag_f = elab::diagonal_square_mor(&env, f).unwrap();
    let diag_f2 = elab::diagonal_square_mor(&env, f2).unwrap();
    let diag_fused = elab::diagonal_square_mor(&env, &TyMor::comp(f2.clone(), f.clone())).unwrap();
    let (ddom, dcod) = (
        cctt_core::synth::mor_boundary(&env, &diag_fused).unwrap().0,
        cctt_core::synth::mor_boundary(&env, &diag_fused).unwrap().1,
    );
    tb.declare_axiom(
        "coh-diag-comp",
        Judgment::CtxMorEq {
            dom: ddom,
            lhs: diag_fused,
            rhs: CtxMor::comp(diag_f2, diag_f),
            cod: dcod,
        },
        None,
        true,
    )
    .unwrap();
    // Id-type base-substitution coherences
    let base_one = elab::id_sub_base(&env, &one, a).unwrap();
    let diag_iso = elab::diagonal_square_mor(&env, &TyMor::iso_id(a.clone(), Dir::Fwd)).unwrap();
    let (bdom, bcod) = {
        let bd = cctt_core::synth::mor_boundary(&env, &base_one).unwrap();
        (bd.0, bd.1)
    };
    tb.declare_axiom(
        "coh-base-id",
        Judgment::CtxMorEq {
            dom: bdom,
            lhs: base_one,
            rhs: diag_iso,
            cod: bcod,
        },
        None,
        true,
    )
    .unwrap();
    let base_fused = elab::id_sub_base(&env, &fused, a).unwrap();
    let base_s = elab::id_sub_base(&env, sg, a).unwrap();
    let base_s2 = elab::id_sub_base(&env, eps, &a_s).unwrap();
    let ic = TyMor::iso_comp(a.clone(), sg.clone(), eps.clone(), Dir::Fwd);
    let diag_ic = elab::diagonal_square_mor(&env, &ic).unwrap();
    let chain = CtxMor::comp(base_s, CtxMor::comp(base_s2, diag_ic));
    let (bfd, bfc) = {
        let bd = cctt_core::synth::mor_boundary(&env, &base_fused).unwrap();
        (bd.0, bd.1)
    };
    tb.declare_axiom(
        "coh-base-comp",
        Judgment::CtxMorEq {
            dom: bfd,
            lhs: base_fused,
            rhs: chain,
            cod: bfc,
        },
        None,
        true,
    )
    .unwrap();
}

/// One instantiation of a rule's equality conclusion: the leaf pieces
/// needed to call check_eq.
pub struct RuleGoal {
    pub rule: &'static str,
    pub concl: u8,
    pub inst: Inst,
    pub premises: Vec<Arc<EqDerivation>>,
}

impl RuleGoal {
    pub fn derivation(&self) -> Arc<EqDerivation> {
        EqDerivation::rule_with(self.rule, self.concl, self.inst.clone(), self.premises.clone())
    }
}

/// ≥ 1 goal per registered equality conclusion for the given mode.
pub fn rule_goals(fx: &Fixture, mode: Mode) -> Vec<RuleGoal> {
    let mut goals = Vec::new();
    let mut push = |rule: &'static str, concl: u8, inst: Inst, premises: Vec<Arc<EqDerivation>>| {
        goals.push(RuleGoal {
            rule,
            concl,
            inst,
            premises,
        });
    };
    let f = fx;
    let section = CtxMor::p2(f.c_sec.clone());
    let section_sub = CtxMor::comp(
        CtxMor::proj(Ty::sub(f.a.clone(), f.sg.clone())),
        f.c_sec.clone(),
    );
    let b_section = CtxMor::p2(f.cb.clone());
    let unit0 = |s: &CtxMor| EqDerivation::rule_at("ctx-id-unit", 0, Inst::new().bind("s", s.clone()));
    let tunit0 = |t: &TyMor| EqDerivation::rule_at("ty-id-unit", 0, Inst::new().bind("t", t.clone()));

    // Fig. 5
    push("ctx-id-unit", 0, Inst::new().bind("s", f.sg.clone()), vec![]);
    push("ctx-id-unit", 1, Inst::new().bind("s", f.sg.clone()), vec![]);
    push(
        "ctx-comp-assoc",
        0,
        Inst::new()
            .bind("s", f.sg.clone())
            .bind("s2", f.tu.clone())
            .bind("s3", f.rho.clone()),
        vec![],
    );
    push("ty-id-unit", 0, Inst::new().bind("t", f.f.clone()), vec![]);
    push("ty-id-unit", 1, Inst::new().bind("t", f.f.clone()), vec![]);
    push(
        "ty-comp-assoc",
        0,
        Inst::new()
            .bind("t", f.f.clone())
            .bind("t2", f.f2.clone())
            .bind("t3", f.f3.clone()),
        vec![],
    );
    push("ext-id", 0, Inst::new().bind("A", f.a.clone()), vec![]);
    push(
        "ext-comp",
        0,
        Inst::new().bind("t", f.f.clone()).bind("t2", f.f2.clone()),
        vec![],
    );
    push("ext-c", 0, Inst::new().bind("t", f.f.clone()), vec![]);
    push(
        "sub-prs-id",
        0,
        Inst::new().bind("A", f.a.clone()).bind("s", f.sg.clone()),
        vec![],
    );
    push(
        "sub-prs-comp",
        0,
        Inst::new()
            .bind("t", f.f.clone())
            .bind("t2", f.f2.clone())
            .bind("s", f.sg.clone()),
        vec![],
    );
    if mode == Mode::Split {
        push("sub-id", 0, Inst::new().bind("A", f.a.clone()), vec![]);
        push(
            "sub-comp",
            0,
            Inst::new()
                .bind("A", f.a.clone())
                .bind("s2", f.sg.clone())
                .bind("s", f.eps.clone()),
            vec![],
        );
    } else {
        push("sub-id", 2, Inst::new().bind("A", f.a.clone()), vec![]);
        push("sub-id", 3, Inst::new().bind("A", f.a.clone()), vec![]);
        push(
            "sub-comp",
            2,
            Inst::new()
                .bind("A", f.a.clone())
                .bind("s2", f.sg.clone())
                .bind("s", f.eps.clone()),
            vec![],
        );
        push(
            "sub-comp",
            3,
            Inst::new()
                .bind("A", f.a.clone())
                .bind("s2", f.sg.clone())
                .bind("s", f.eps.clone()),
            vec![],
        );
    }
    push("sub-tm-id", 0, Inst::new().bind("t", f.f.clone()), vec![]);
    push(
        "sub-tm-comp",
        0,
        Inst::new()
            .bind("t", f.f.clone())
            .bind("s2", f.sg.clone())
            .bind("s", f.eps.clone()),
        vec![],
    );
    push(
        "sub-beta",
        0,
        Inst::new()
            .bind("s", section_sub.clone())
            .bind("t", section.clone()),
        vec![],
    );
    push(
        "sub-beta",
        1,
        Inst::new()
            .bind("s", section_sub.clone())
            .bind("t", section.clone()),
        vec![],
    );
    push("sub-eta", 0, Inst::new().bind("s", f.c_sec.clone()), vec![]);
    push("sub-proj", 1, Inst::new().bind("s", f.c_sec.clone()), vec![]);
    push("sub-proj-id", 0, Inst::new().bind("A", f.a.clone()), vec![]);
    push(
        "sub-proj-comp",
        0,
        Inst::new()
            .bind("A", f.a.clone())
            .bind("s", f.sg.clone())
            .bind("s2", f.eps.clone()),
        vec![],
    );
    push(
        "tm-sub-coh",
        0,
        Inst::new().bind("t", f.f.clone()).bind("s", f.sg.clone()),
        vec![],
    );
    push(
        "empty-ctx-mor-unique",
        0,
        Inst::new().bind("s", f.e0.clone()),
        vec![],
    );

    // Fig. 6
    push("ctx-eq-refl", 0, Inst::new().bind("s", f.sg.clone()), vec![]);
    push("ctx-eq-sym", 0, Inst::new(), vec![unit0(&f.sg)]);
    push(
        "ctx-eq-trans",
        0,
        Inst::new(),
        vec![
            unit0(&f.sg),
            EqDerivation::sym(EqDerivation::rule_at(
                "ctx-id-unit",
                1,
                Inst::new().bind("s", f.sg.clone()),
            )),
        ],
    );
    push(
        "ctx-comp-cong-1",
        0,
        Inst::new().bind("t", f.tu.clone()),
        vec![unit0(&f.sg)],
    );
    push(
        "ctx-comp-cong-2",
        0,
        Inst::new().bind("t", f.eps.clone()),
        vec![unit0(&f.sg)],
    );
    push("ty-eq-refl", 0, Inst::new().bind("t", f.f.clone()), vec![]);
    push("ty-eq-sym", 0, Inst::new(), vec![tunit0(&f.f)]);
    push(
        "ty-eq-trans",
        0,
        Inst::new(),
        vec![
            tunit0(&f.f),
            EqDerivation::sym(EqDerivation::rule_at(
                "ty-id-unit",
                1,
                Inst::new().bind("t", f.f.clone()),
            )),
        ],
    );
    push(
        "ty-comp-cong-1",
        0,
        Inst::new().bind("t", f.f2.clone()),
        vec![tunit0(&f.f)],
    );
    push(
        "ty-comp-cong-2",
        0,
        Inst::new().bind("t", f.f.clone()),
        vec![tunit0(&f.f2)],
    );
    push("ext-cong", 0, Inst::new(), vec![tunit0(&f.f)]);
    push(
        "sub-cong-tm",
        0,
        Inst::new().bind("s", f.sg.clone()),
        vec![tunit0(&f.f)],
    );
    let s_eq = EqDerivation::sym(unit0(&f.sg)); // σ ≡ σ∘1
    if mode == Mode::Split {
        push("sub-cong", 0, Inst::new().bind("A", f.a.clone()), vec![s_eq.clone()]);
    } else {
        push("sub-cong", 2, Inst::new().bind("A", f.a.clone()), vec![s_eq.clone()]);
        push("sub-cong", 3, Inst::new().bind("A", f.a.clone()), vec![s_eq.clone()]);
        push("sub-cong", 4, Inst::new().bind("A", f.a.clone()), vec![s_eq.clone()]);
        push(
            "sub-cong-id",
            0,
            Inst::new().bind("A", f.a.clone()).bind("s", f.sg.clone()),
            vec![],
        );
        let eps_eq = EqDerivation::sym(unit0(&f.eps));
        push(
            "sub-cong-comp-1",
            0,
            Inst::new().bind("A", f.a.clone()).bind("s2", f.sg.clone()),
            vec![eps_eq],
        );
        push(
            "sub-cong-comp-2",
            0,
            Inst::new().bind("A", f.a.clone()).bind("s", f.eps.clone()),
            vec![s_eq.clone()],
        );
    }
    let c_eq = EqDerivation::sym(unit0(&f.c_sec)); // c₀ ≡ c₀∘1
    push("sub-proj-cong", 0, Inst::new(), vec![c_eq.clone()]);
    push("sub-proj-cong", 1, Inst::new(), vec![c_eq]);
    // sub-ext-cong with reflexive component equalities
    {
        let refl_s = EqDerivation::refl(section_sub.clone());
        let second = if mode == Mode::Split {
            EqDerivation::refl(section.clone())
        } else {
            // Γ.i^sub(refl) ∘ t ≡ Γ.1 ∘ t ≡ 1 ∘ t ≡ t
            EqDerivation::trans_chain(vec![
                elab::d_cong_pre(
                    &section,
                    EqDerivation::trans(
                        elab::d_ext_cong(EqDerivation::rule(
                            "sub-cong-id",
                            Inst::new()
                                .bind("A", Ty::sub(f.a.clone(), f.sg.clone()))
                                .bind("s", section_sub.clone()),
                        )),
                        elab::d_ext_id(&Ty::sub(
                            Ty::sub(f.a.clone(), f.sg.clone()),
                            section_sub.clone(),
                        )),
                    ),
                ),
                elab::d_unit_l(&section),
            ])
        };
        push(
            "sub-ext-cong",
            0,
            Inst::new()
                .bind("t", section.clone())
                .bind("t2", section.clone()),
            vec![refl_s, second],
        );
    }

    // Fig. 2 — Π
    push("pi-intro", 1, Inst::new().bind("b", b_section.clone()), vec![]);
    // the Π instance family: B weakened along c_B
    let b_w = match cctt_core::synth::mor_boundary(
        &fx.theory.env(),
        &b_section,
    ) {
        Ok((_, cod)) => cod.as_ext().map(|(_, t)| t.clone()).unwrap(),
        Err(e) => panic!("b_section boundary: {e}"),
    };
    push(
        "pi-elim",
        1,
        Inst::new().bind("A", f.a.clone()).bind("B", b_w.clone()),
        vec![],
    );
    push("pi-beta", 0, Inst::new().bind("b", b_section.clone()), vec![]);
    push(
        "pi-eta",
        0,
        Inst::new().bind("f", CtxMor::lam(b_section.clone())),
        vec![],
    );
    if mode == Mode::Split {
        push(
            "pi-sub",
            0,
            Inst::new()
                .bind("A", f.a.clone())
                .bind("B", f.b.clone())
                .bind("s", f.sg.clone()),
            vec![],
        );
    } else {
        for concl in [2u8, 3] {
            push(
                "pi-sub",
                concl,
                Inst::new()
                    .bind("A", f.a.clone())
                    .bind("B", f.b.clone())
                    .bind("s", f.sg.clone()),
                vec![],
            );
        }
    }
    let sub_lam_premises = if mode == Mode::Split {
        vec![]
    } else {
        vec![elab::d_sub_proj1(&f.cb)]
    };
    push(
        "sub-lam",
        0,
        Inst::new()
            .bind("b", b_section.clone())
            .bind("s", f.sg.clone()),
        sub_lam_premises,
    );
    push(
        "subt-pi",
        1,
        Inst::new().bind("f", f.f.clone()).bind("g", f.gp.clone()),
        vec![],
    );
    push(
        "subt-pi-id",
        0,
        Inst::new().bind("A", f.a.clone()).bind("B", f.b.clone()),
        vec![],
    );
    push(
        "subt-pi-comp",
        0,
        Inst::new()
            .bind("f", f.f.clone())
            .bind("g", f.gp.clone())
            .bind("f2", f.fp2.clone())
            .bind("g2", f.gp2.clone()),
        vec![],
    );
    if mode == Mode::NonSplit {
        push(
            "pi-sub-id",
            0,
            Inst::new().bind("A", f.a.clone()).bind("B", f.b.clone()),
            vec![EqDerivation::axiom("coh-lift-id-cancel")],
        );
        push(
            "pi-sub-comp",
            0,
            Inst::new()
                .bind("A", f.a.clone())
                .bind("B", f.b.clone())
                .bind("s", f.sg.clone())
                .bind("s2", f.eps.clone()),
            vec![EqDerivation::axiom("coh-lift-comp-pi")],
        );
    }

    // Fig. 3 — Σ
    push(
        "sigma-intro",
        1,
        Inst::new().bind("A", f.a.clone()).bind("B", f.b.clone()),
        vec![],
    );
    push(
        "sigma-beta",
        0,
        Inst::new().bind("A", f.a.clone()).bind("B", f.b.clone()),
        vec![],
    );
    push(
        "sigma-eta",
        0,
        Inst::new().bind("A", f.a.clone()).bind("B", f.b.clone()),
        vec![],
    );
    if mode == Mode::Split {
        push(
            "sigma-sub",
            0,
            Inst::new()
                .bind("A", f.a.clone())
                .bind("B", f.b.clone())
                .bind("s", f.sg.clone()),
            vec![],
        );
    } else {
        for concl in [2u8, 3] {
            push(
                "sigma-sub",
                concl,
                Inst::new()
                    .bind("A", f.a.clone())
                    .bind("B", f.b.clone())
                    .bind("s", f.sg.clone()),
                vec![],
            );
        }
    }
    push(
        "sub-pair",
        0,
        Inst::new()
            .bind("A", f.a.clone())
            .bind("B", f.b.clone())
            .bind("s", f.sg.clone()),
        vec![],
    );
    push(
        "subt-sigma",
        1,
        Inst::new().bind("f", f.fs.clone()).bind("g", f.gs.clone()),
        vec![],
    );
    push(
        "subt-sigma-id",
        0,
        Inst::new().bind("A", f.a.clone()).bind("B", f.b.clone()),
        vec![],
    );
    push(
        "subt-sigma-comp",
        0,
        Inst::new()
            .bind("f", f.fs.clone())
            .bind("g", f.gs.clone())
            .bind("f2", f.fs2.clone())
            .bind("g2", f.gs2.clone()),
        vec![],
    );
    if mode == Mode::NonSplit {
        push(
            "sigma-sub-id",
            0,
            Inst::new().bind("A", f.a.clone()).bind("B", f.b.clone()),
            vec![EqDerivation::axiom("coh-lift-id-fwd")],
        );
        push(
            "sigma-sub-comp",
            0,
            Inst::new()
                .bind("A", f.a.clone())
                .bind("B", f.b.clone())
                .bind("s", f.sg.clone())
                .bind("s2", f.eps.clone()),
            vec![EqDerivation::axiom("coh-lift-comp-sigma")],
        );
    }

    // Fig. 4 — Id
    push("id-intro", 1, Inst::new().bind("A", f.a.clone()), vec![]);
    push(
        "id-elim",
        1,
        Inst::new()
            .bind("A", f.a.clone())
            .bind("C", f.c0.clone())
            .bind("d", f.d0.clone()),
        vec![],
    );
    push(
        "id-beta",
        0,
        Inst::new()
            .bind("A", f.a.clone())
            .bind("C", f.c0.clone())
            .bind("d", f.d0.clone()),
        vec![],
    );
    if mode == Mode::Split {
        push(
            "id-sub",
            0,
            Inst::new().bind("A", f.a.clone()).bind("s", f.sg.clone()),
            vec![],
        );
    } else {
        for concl in [2u8, 3] {
            push(
                "id-sub",
                concl,
                Inst::new().bind("A", f.a.clone()).bind("s", f.sg.clone()),
                vec![],
            );
        }
    }
    push(
        "sub-refl",
        0,
        Inst::new().bind("A", f.a.clone()).bind("s", f.sg.clone()),
        vec![],
    );
    let sub_j_premises = vec![EqDerivation::axiom("d0-side")];
    push(
        "sub-j",
        0,
        Inst::new()
            .bind("A", f.a.clone())
            .bind("C", f.c0.clone())
            .bind("d", f.d0.clone())
            .bind("s", f.sg.clone()),
        sub_j_premises,
    );
    let subt_id_i_premises = if mode == Mode::Split {
        vec![]
    } else {
        vec![EqDerivation::axiom("coh-diag-one")]
    };
    push("subt-id-i", 0, Inst::new().bind("A", f.a.clone()), subt_id_i_premises);
    let subt_id_c_premises = if mode == Mode::Split {
        vec![]
    } else {
        vec![EqDerivation::axiom("coh-diag-comp")]
    };
    push(
        "subt-id-c",
        0,
        Inst::new().bind("t", f.f.clone()).bind("t2", f.f2.clone()),
        subt_id_c_premises,
    );
    push("subt-id-refl", 0, Inst::new().bind("t", f.f.clone()), vec![]);
    let subt_id_j_premises = vec![EqDerivation::axiom("d0-side")];
    // subt-id-j relates A's eliminator data to B's: instantiate at t : A2 → A
    // with the motive/base over A
    push(
        "subt-id-j",
        0,
        Inst::new()
            .bind("t", f.f.clone())
            .bind("C", f.c0.clone())
            .bind("d", f.d0.clone()),
        subt_id_j_premises,
    );
    if mode == Mode::NonSplit {
        push(
            "id-sub-id",
            0,
            Inst::new().bind("A", f.a.clone()),
            vec![EqDerivation::axiom("coh-base-id")],
        );
        push(
            "id-sub-comp",
            0,
            Inst::new()
                .bind("A", f.a.clone())
                .bind("s", f.sg.clone())
                .bind("s2", f.eps.clone()),
            vec![EqDerivation::axiom("coh-base-comp")],
        );
    }
    goals
}

/// Every equality conclusion registered for the mode that the goal list
/// must cover.
pub fn expected_equality_rules(mode: Mode) -> Vec<&'static str> {
    registry()
        .values()
        .filter_map(|spec| {
            let ms = spec.for_mode(mode)?;
            let has_eq = ms
                .conclusions
                .iter()
                .any(|c| !matches!(c, Concl::Formation(_)));
            has_eq.then_some(spec.id)
        })
        .collect()
}

// -- model bindings -------------------------------------------------------------

pub fn heyting_fixture_model() -> HeytingModel {
    build_heyting_model(FiniteHeytingAlgebra::sierpinski())
        .unwrap()
        .with_carrier(&["x", "y"])
}

/// Binds every constant of the standard theory into the Heyting model.
pub fn heyting_interpretation(fx: &Fixture, m: &HeytingModel) -> Interpretation<HeytingModel> {
    let mut interp = Interpretation::new();
    let set_g = SetObj::new(["x".to_string(), "y".to_string()]);
    let set_e = SetObj::new(["x".to_string()]);
    interp.ctxs.insert("G".into(), set_g.clone());
    interp.ctxs.insert("D".into(), set_g.clone());
    interp.ctxs.insert("E".into(), set_e.clone());
    let top_pred = |ctx: &SetObj| {
        HPredicate::new(
            ctx.clone(),
            ctx.0.iter().map(|x| (x.clone(), m.algebra.top)).collect(),
        )
        .unwrap()
    };
    let a_val = top_pred(&set_g);
    for name in ["A", "A2", "A3", "A4"] {
        interp.tys.insert(name.into(), a_val.clone());
    }
    let cut_a = m.comp_obj(&a_val).unwrap();
    let b_val = top_pred(&cut_a);
    for name in ["B", "Bp", "Bpp", "B2p", "B3p"] {
        interp.tys.insert(name.into(), b_val.clone());
    }
    // C0 lives over the Id context, which is again the cut
    let idf = m.id_obj(&a_val).unwrap();
    let id_total = m.comp_obj(&idf).unwrap();
    interp.tys.insert("C0".into(), top_pred(&id_total));
    let swap = m
        .morphisms(&set_g, &set_g)
        .into_iter()
        .find(|f| f.apply("x") == "y" && f.apply("y") == "x")
        .unwrap();
    interp.ctxmors.insert("sg".into(), swap.clone());
    interp.ctxmors.insert("tu".into(), swap.clone());
    interp.ctxmors.insert("rho".into(), m.identity(&set_g));
    let incl = m
        .morphisms(&set_e, &set_g)
        .into_iter()
        .find(|f| f.apply("x") == "x")
        .unwrap();
    interp.ctxmors.insert("eps".into(), incl);
    // sections: with all predicates ⊤ the cuts are the carriers
    interp.ctxmors.insert("c0sec".into(), m.identity(&set_g));
    interp.ctxmors.insert("cb".into(), m.identity(&set_g));
    interp.ctxmors.insert("d0".into(), m.identity(&set_g));
    interp
        .ctxmors
        .insert("e0".into(), m.bang(&set_g).unwrap());
    let wit = |d: &HPredicate, c: &HPredicate| HWitness {
        dom: d.clone(),
        cod: c.clone(),
    };
    for name in ["f", "f2", "f3", "fp2", "fs", "fs2"] {
        interp.tymors.insert(name.into(), wit(&a_val, &a_val));
    }
    for name in ["gp", "gp2", "gs", "gs2"] {
        interp.tymors.insert(name.into(), wit(&b_val, &b_val));
    }
    interp
}

pub fn groupoid_fixture_model() -> GroupoidModel {
    let interval = GObj::new(FiniteGroupoid::interval());
    let point = GObj::new(FiniteGroupoid::point());
    let two = GObj::new(FiniteGroupoid::discrete(&["p", "q"]));
    GroupoidModel::new()
        .with_base_seed(interval.clone())
        .with_base_seed(point.clone())
        .with_fiber_catalog(vec![point, two])
}

/// The swap family over the interval groupoid: two-point discrete fibers,
/// transport along the isomorphism exchanges the points.
pub fn swap_family() -> Family {
    let base = GObj::new(FiniteGroupoid::interval());
    let fib = GObj::new(FiniteGroupoid::discrete(&["p", "q"]));
    let swap = Functor::new(fib.clone(), fib.clone(), vec![1, 0], vec![1, 0]).unwrap();
    build_groupoid_family(
        base,
        vec![fib.clone(), fib.clone()],
        vec![
            Functor::identity(&fib),
            Functor::identity(&fib),
            swap.clone(),
            swap,
        ],
    )
    .unwrap()
}

pub fn groupoid_interpretation(fx: &Fixture, m: &GroupoidModel) -> Interpretation<GroupoidModel> {
    let _ = fx;
    let mut interp = Interpretation::new();
    let base = GObj::new(FiniteGroupoid::interval());
    let point = GObj::new(FiniteGroupoid::point());
    interp.ctxs.insert("G".into(), base.clone());
    interp.ctxs.insert("D".into(), base.clone());
    interp.ctxs.insert("E".into(), point.clone());
    let a_fam = swap_family();
    for name in ["A", "A2", "A3", "A4"] {
        interp.tys.insert(name.into(), a_fam.clone());
    }
    let total_a = m.comp_obj(&a_fam).unwrap();
    let b_fam = Family::constant(total_a.clone(), point.clone());
    for name in ["B", "Bp", "Bpp", "B2p", "B3p"] {
        interp.tys.insert(name.into(), b_fam.clone());
    }
    let idf = m.id_obj(&a_fam).unwrap();
    let id_total = m.comp_obj(&idf).unwrap();
    let c_fam = Family::constant(id_total.clone(), point.clone());
    interp.tys.insert("C0".into(), c_fam.clone());
    interp.ctxmors.insert("sg".into(), m.identity(&base));
    interp.ctxmors.insert("tu".into(), m.identity(&base));
    interp.ctxmors.insert("rho".into(), m.identity(&base));
    let eps = Functor::new(point.clone(), base.clone(), vec![0], vec![0]).unwrap();
    interp.ctxmors.insert("eps".into(), eps);
    // sections
    let a_sections = m.sections(&a_fam).unwrap();
    interp
        .ctxmors
        .insert("c0sec".into(), a_sections[0].clone());
    let b_sections = m.sections(&b_fam).unwrap();
    interp.ctxmors.insert("cb".into(), b_sections[0].clone());
    // d₀ := (unique section of C0) ∘ refl
    let c_sections = m.sections(&c_fam).unwrap();
    let refl = m.refl_mor(&a_fam).unwrap();
    let d0 = m.compose(&c_sections[0], &refl).unwrap();
    interp.ctxmors.insert("d0".into(), d0);
    interp.ctxmors.insert("e0".into(), m.bang(&base).unwrap());
    let vid = m.vert_identity(&a_fam);
    for name in ["f", "f2", "f3", "fp2", "fs", "fs2"] {
        interp.tymors.insert(name.into(), vid.clone());
    }
    let vid_b = m.vert_identity(&b_fam);
    for name in ["gp", "gp2", "gs", "gs2"] {
        interp.tymors.insert(name.into(), vid_b.clone());
    }
    interp
}
