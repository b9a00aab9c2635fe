//! Checkers for the Π-, Σ-, and Id-type rules.

use crate::env::Env;
use crate::error::{CheckError, Result};
use crate::kernel::derivation::{EqDerivation, Inst, InstExt};
use crate::kernel::rules::{bad_concl, ctx_eq_judgment, premise_deriv, ty_eq_judgment, type_eq_judgment, Premise};
use crate::synth::{mor_boundary, split_ext, ty_ctx, tymor_boundary};
use crate::syntax::judgment::Judgment;
use crate::syntax::term::{Ctx, CtxMor, CtxMorNode, Dir, Ty, TyMor, TyNode};
use crate::theory::elab::{
    self, d_cong_post, d_cong_pre, d_ext_c, d_ext_comp, d_ext_id, d_sub_beta0, d_sub_proj1,
    d_unit_l,
};

fn iso_laws(env: &Env, fwd: TyMor, bwd: TyMor, concl: u8, rule: &str) -> Result<Judgment> {
    let (_, dom, cod) = tymor_boundary(env, &fwd)?;
    match concl {
        2 => ty_eq_judgment(env, TyMor::comp(fwd, bwd), TyMor::id(cod)),
        3 => ty_eq_judgment(env, TyMor::comp(bwd, fwd), TyMor::id(dom)),
        _ => Err(bad_concl(rule, concl)),
    }
}

/// Destructures the domain of an MLTT-term metavariable `b : Δ.A → Δ.A.B`,
/// returning (Δ, A, B).
fn section_over(env: &Env, b: &CtxMor, rule: &str) -> Result<(Ctx, Ty, Ty)> {
    let (dom, cod) = mor_boundary(env, b)?;
    let (delta, a) = split_ext(env, &dom).ok_or_else(|| CheckError::SchemaMismatch {
        rule: rule.into(),
        metavar: "b".into(),
        expected: "a section over an extended context".into(),
        found: dom.to_string(),
    })?;
    let (_, bty) = split_ext(env, &cod).ok_or_else(|| CheckError::SchemaMismatch {
        rule: rule.into(),
        metavar: "b".into(),
        expected: "a section into an extension".into(),
        found: cod.to_string(),
    })?;
    Ok((delta, a, bty))
}

// -- Π rules -------------------------------------------------------------------

pub(crate) fn pi_intro(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 1 {
        return Err(bad_concl("pi-intro", concl));
    }
    let b = inst.ctxmor("b")?;
    let lam = CtxMor::lam(b);
    let (gamma, cod) = mor_boundary(env, &lam)?;
    let (_, pi) = split_ext(env, &cod).unwrap();
    ctx_eq_judgment(
        env,
        CtxMor::comp(CtxMor::proj(pi), lam),
        CtxMor::id(gamma),
    )
}

pub(crate) fn pi_elim(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 1 {
        return Err(bad_concl("pi-elim", concl));
    }
    let a = inst.ty("A")?;
    let b = inst.ty("B")?;
    let app = CtxMor::app(a.clone(), b.clone());
    let lhs = CtxMor::comp(CtxMor::proj(b.clone()), app);
    let rhs = CtxMor::proj(Ty::sub(
        Ty::pi(a.clone(), b),
        CtxMor::proj(a),
    ));
    ctx_eq_judgment(env, lhs, rhs)
}

pub(crate) fn pi_beta(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("pi-beta", concl));
    }
    let b = inst.ctxmor("b")?;
    let (gamma, a, bty) = section_over(env, &b, "pi-beta")?;
    let lam = CtxMor::lam(b.clone());
    let proj_a = CtxMor::proj(a.clone());
    let w = CtxMor::comp(lam.clone(), proj_a.clone());
    let weakened = if env.split() {
        CtxMor::p2(w)
    } else {
        // transport Π[π_Π ∘ (λb ∘ π_A)] to Π[π_A]
        let pi = Ty::pi(a.clone(), bty.clone());
        let p_pi = CtxMor::proj(pi.clone());
        let ev = EqDerivation::trans_chain(vec![
            elab::d_assoc(&p_pi, &lam, &proj_a),
            d_cong_pre(&proj_a, elab::d_pi_intro1(&b)),
            d_unit_l(&proj_a),
        ]);
        let fix = TyMor::iso_sub(
            pi,
            CtxMor::comp(p_pi, w.clone()),
            proj_a.clone(),
            ev,
            Dir::Fwd,
        );
        let ext_a = Ctx::ext(gamma, a.clone());
        CtxMor::comp(CtxMor::ext_mor(ext_a, fix), CtxMor::p2(w))
    };
    let lhs = CtxMor::comp(CtxMor::app(a, bty), weakened);
    ctx_eq_judgment(env, lhs, b)
}

pub(crate) fn pi_eta(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("pi-eta", concl));
    }
    let f = inst.ctxmor("f")?;
    let (_, cod) = mor_boundary(env, &f)?;
    let (_, pi) = split_ext(env, &cod).ok_or_else(|| CheckError::SchemaMismatch {
        rule: "pi-eta".into(),
        metavar: "f".into(),
        expected: "a term of a Π type".into(),
        found: cod.to_string(),
    })?;
    let (a, b) = match pi.node() {
        TyNode::Pi(a, b) => (a.clone(), b.clone()),
        _ => {
            return Err(CheckError::SchemaMismatch {
                rule: "pi-eta".into(),
                metavar: "f".into(),
                expected: "a term of a Π type".into(),
                found: pi.to_string(),
            })
        }
    };
    let proj_a = CtxMor::proj(a.clone());
    let w = CtxMor::comp(f.clone(), proj_a.clone());
    let weakened = if env.split() {
        CtxMor::p2(w)
    } else {
        let f_sec = elab::section_derivation(env, &f)?;
        let p_pi = CtxMor::proj(pi.clone());
        let ev = EqDerivation::trans_chain(vec![
            elab::d_assoc(&p_pi, &f, &proj_a),
            d_cong_pre(&proj_a, f_sec),
            d_unit_l(&proj_a),
        ]);
        let fix = TyMor::iso_sub(
            pi.clone(),
            CtxMor::comp(p_pi, w.clone()),
            proj_a.clone(),
            ev,
            Dir::Fwd,
        );
        let (gamma, _) = mor_boundary(env, &f)?;
        let ext_a = Ctx::ext(gamma, a.clone());
        CtxMor::comp(CtxMor::ext_mor(ext_a, fix), CtxMor::p2(w))
    };
    let lhs = CtxMor::lam(CtxMor::comp(CtxMor::app(a, b), weakened));
    ctx_eq_judgment(env, lhs, f)
}

pub(crate) fn pi_sub(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    let a = inst.ty("A")?;
    let b = inst.ty("B")?;
    let s = inst.ctxmor("s")?;
    if env.split() {
        if concl != 0 {
            return Err(bad_concl("pi-sub", concl));
        }
        let lifted = elab::lift(env, &s, &a)?;
        return type_eq_judgment(
            env,
            Ty::pi(Ty::sub(a.clone(), s.clone()), Ty::sub(b.clone(), lifted)),
            Ty::sub(Ty::pi(a, b), s),
        );
    }
    iso_laws(
        env,
        TyMor::iso_pi(a.clone(), b.clone(), s.clone(), Dir::Fwd),
        TyMor::iso_pi(a, b, s, Dir::Bwd),
        concl,
        "pi-sub",
    )
}

pub(crate) fn sub_lam(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-lam", concl));
    }
    let b = inst.ctxmor("b")?;
    let s = inst.ctxmor("s")?;
    let (_, a, bty) = section_over(env, &b, "sub-lam")?;
    let lhs = CtxMor::comp(CtxMor::lam(b.clone()), s.clone());
    let lift_a = elab::lift(env, &s, &a)?;
    let w = CtxMor::comp(b.clone(), lift_a.clone());
    let inner = if env.split() {
        CtxMor::p2(w)
    } else {
        // transport B[π_B ∘ (b ∘ s.A)] to B[s.A]
        let b_sec = premise_deriv(p, 0, "sub-lam")?;
        let p_b = CtxMor::proj(bty.clone());
        let ev = EqDerivation::trans_chain(vec![
            elab::d_assoc(&p_b, &b, &lift_a),
            d_cong_pre(&lift_a, b_sec),
            d_unit_l(&lift_a),
        ]);
        let fix = TyMor::iso_sub(
            bty.clone(),
            CtxMor::comp(p_b, w.clone()),
            lift_a.clone(),
            ev,
            Dir::Fwd,
        );
        let (x, _) = mor_boundary(env, &lift_a)?;
        CtxMor::comp(CtxMor::ext_mor(x, fix), CtxMor::p2(w))
    };
    let lam2 = CtxMor::lam(inner);
    let pi = Ty::pi(a.clone(), bty.clone());
    let lift_pi = elab::lift(env, &s, &pi)?;
    let rhs = if env.split() {
        CtxMor::comp(lift_pi, lam2)
    } else {
        let (gamma, _) = mor_boundary(env, &s)?;
        CtxMor::comp(
            lift_pi,
            CtxMor::comp(
                CtxMor::ext_mor(gamma, TyMor::iso_pi(a, bty, s, Dir::Fwd)),
                lam2,
            ),
        )
    };
    ctx_eq_judgment(env, lhs, rhs)
}

pub(crate) fn subt_pi(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 1 {
        return Err(bad_concl("subt-pi", concl));
    }
    let f = inst.tymor("f")?;
    let g = inst.tymor("g")?;
    let (gamma, _, _) = tymor_boundary(env, &f)?;
    let lhs = CtxMor::ext_mor(gamma, TyMor::pi_map(f.clone(), g.clone()));
    let rhs = chi0_pi_map(env, &f, &g)?;
    ctx_eq_judgment(env, lhs, rhs)
}

pub(crate) fn subt_pi_id(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("subt-pi-id", concl));
    }
    let a = inst.ty("A")?;
    let b = inst.ty("B")?;
    let g = if env.split() {
        TyMor::id(b.clone())
    } else {
        // B[Γ.1_A] → B[1_{Γ.A}] → B
        let gamma = ty_ctx(env, &a)?;
        let ext_mor_one = CtxMor::ext_mor(gamma.clone(), TyMor::id(a.clone()));
        let one = CtxMor::id(Ctx::ext(gamma, a.clone()));
        TyMor::comp(
            TyMor::iso_id(b.clone(), Dir::Fwd),
            TyMor::iso_sub(b.clone(), ext_mor_one, one, d_ext_id(&a), Dir::Fwd),
        )
    };
    let lhs = TyMor::pi_map(TyMor::id(a.clone()), g);
    ty_eq_judgment(env, lhs, TyMor::id(Ty::pi(a, b)))
}

pub(crate) fn subt_pi_comp(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("subt-pi-comp", concl));
    }
    let f = inst.tymor("f")?; // A' → A
    let g = inst.tymor("g")?; // B[Γ.f] → B'
    let f2 = inst.tymor("f2")?; // A'' → A'
    let g2 = inst.tymor("g2")?; // B'[Γ.f2] → B''
    let (gamma, _, _) = tymor_boundary(env, &f)?;
    let chi_f2 = CtxMor::ext_mor(gamma.clone(), f2.clone());
    let g_shifted = TyMor::sub(g.clone(), chi_f2.clone());
    let fused_g_core = TyMor::comp(g2.clone(), g_shifted);
    let fused_f = TyMor::comp(f.clone(), f2.clone());
    let lhs = if env.split() {
        TyMor::pi_map(fused_f.clone(), fused_g_core.clone())
    } else {
        // transport B[Γ.(f∘f₂)] → B[Γ.f][Γ.f₂] before applying g
        let (_, g_dom, _) = tymor_boundary(env, &g)?;
        let bty = match g_dom.node() {
            TyNode::Sub(bty, _) => bty.clone(),
            _ => {
                return Err(CheckError::VarianceError {
                    path: "subt-pi-comp".into(),
                    reason: "g's domain is not a substituted family".into(),
                })
            }
        };
        let chi_f = CtxMor::ext_mor(gamma.clone(), f.clone());
        let chi_fused = CtxMor::ext_mor(gamma.clone(), fused_f.clone());
        let coerce = TyMor::comp(
            TyMor::iso_comp(bty.clone(), chi_f.clone(), chi_f2.clone(), Dir::Fwd),
            TyMor::iso_sub(
                bty,
                chi_fused,
                CtxMor::comp(chi_f, chi_f2.clone()),
                d_ext_comp(&f, &f2),
                Dir::Fwd,
            ),
        );
        TyMor::pi_map(fused_f, TyMor::comp(fused_g_core, coerce))
    };
    let rhs = TyMor::comp(TyMor::pi_map(f2, g2), TyMor::pi_map(f, g));
    ty_eq_judgment(env, lhs, rhs)
}

/// pi-sub-id: i^id_Π ∘ i_{Π,1} ≡ Π_{i^id⁻_A, i^id_B ∘ i^sub ∘ i^comp⁻}.
/// The inner i^sub needs the lift coherence 1_Γ.A ∘ Γ.i^id⁻_A ≡ 1_{Γ.A},
/// supplied as the premise.
pub(crate) fn pi_sub_id(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("pi-sub-id", concl));
    }
    let a = inst.ty("A")?;
    let b = inst.ty("B")?;
    let coh = premise_deriv(p, 0, "pi-sub-id")?;
    let gamma = ty_ctx(env, &a)?;
    let pi = Ty::pi(a.clone(), b.clone());
    let lhs = TyMor::comp(
        TyMor::iso_id(pi.clone(), Dir::Fwd),
        TyMor::iso_pi(a.clone(), b.clone(), CtxMor::id(gamma.clone()), Dir::Fwd),
    );
    let lift_one = elab::lift(env, &CtxMor::id(gamma.clone()), &a)?;
    let ext_inv = CtxMor::ext_mor(gamma.clone(), TyMor::iso_id(a.clone(), Dir::Bwd));
    let one_ext = CtxMor::id(Ctx::ext(gamma, a.clone()));
    let g = TyMor::comp_chain(&[
        TyMor::iso_id(b.clone(), Dir::Fwd),
        TyMor::iso_sub(
            b.clone(),
            CtxMor::comp(lift_one.clone(), ext_inv.clone()),
            one_ext,
            coh,
            Dir::Fwd,
        ),
        TyMor::iso_comp(b, lift_one, ext_inv, Dir::Bwd),
    ]);
    let rhs = TyMor::pi_map(TyMor::iso_id(a, Dir::Bwd), g);
    ty_eq_judgment(env, lhs, rhs)
}

/// pi-sub-comp: i^comp_Π ∘ i_{Π,s∘s'} ≡ i_{Π,s}[s'] ∘ i_{Π(A[s],B[s.A]),s'} ∘ Π_{i^comp⁻_A, …}.
/// The premise supplies (s∘s').A ∘ Γ.i^comp⁻_A ≡ s.A ∘ s'.A[s].
pub(crate) fn pi_sub_comp(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("pi-sub-comp", concl));
    }
    let a = inst.ty("A")?;
    let b = inst.ty("B")?;
    let s = inst.ctxmor("s")?; // Δ → Θ
    let s2 = inst.ctxmor("s2")?; // Γ → Δ
    let coh = premise_deriv(p, 0, "pi-sub-comp")?;
    let pi = Ty::pi(a.clone(), b.clone());
    let fused = CtxMor::comp(s.clone(), s2.clone());
    let lhs = TyMor::comp(
        TyMor::iso_comp(pi.clone(), s.clone(), s2.clone(), Dir::Fwd),
        TyMor::iso_pi(a.clone(), b.clone(), fused.clone(), Dir::Fwd),
    );
    let (gamma, _) = mor_boundary(env, &s2)?;
    let lift_fused = elab::lift(env, &fused, &a)?;
    let lift_s = elab::lift(env, &s, &a)?;
    let a_s = Ty::sub(a.clone(), s.clone());
    let lift_s2 = elab::lift(env, &s2, &a_s)?;
    let ic = CtxMor::ext_mor(gamma, TyMor::iso_comp(a.clone(), s.clone(), s2.clone(), Dir::Bwd));
    let ll = CtxMor::comp(lift_s.clone(), lift_s2.clone());
    let g = TyMor::comp_chain(&[
        TyMor::iso_comp(b.clone(), lift_s.clone(), lift_s2.clone(), Dir::Fwd),
        TyMor::iso_sub(
            b.clone(),
            CtxMor::comp(lift_fused.clone(), ic.clone()),
            ll,
            coh,
            Dir::Fwd,
        ),
        TyMor::iso_comp(b.clone(), lift_fused, ic, Dir::Bwd),
    ]);
    let b_s = Ty::sub(b.clone(), lift_s.clone());
    let rhs = TyMor::comp_chain(&[
        TyMor::sub(TyMor::iso_pi(a.clone(), b, s.clone(), Dir::Fwd), s2.clone()),
        TyMor::iso_pi(a_s, b_s, s2.clone(), Dir::Fwd),
        TyMor::pi_map(TyMor::iso_comp(a, s, s2, Dir::Bwd), g),
    ]);
    ty_eq_judgment(env, lhs, rhs)
}

// -- Σ rules -------------------------------------------------------------------

pub(crate) fn sigma_intro(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 1 {
        return Err(bad_concl("sigma-intro", concl));
    }
    let a = inst.ty("A")?;
    let b = inst.ty("B")?;
    let pairing = CtxMor::sigma_pair(a.clone(), b.clone());
    let lhs = CtxMor::comp(CtxMor::proj(Ty::sigma(a.clone(), b.clone())), pairing);
    let rhs = CtxMor::comp(CtxMor::proj(a), CtxMor::proj(b));
    ctx_eq_judgment(env, lhs, rhs)
}

pub(crate) fn sigma_beta(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sigma-beta", concl));
    }
    let a = inst.ty("A")?;
    let b = inst.ty("B")?;
    let lhs = CtxMor::comp(
        CtxMor::sigma_proj(a.clone(), b.clone()),
        CtxMor::sigma_pair(a.clone(), b.clone()),
    );
    let dom = Ctx::ext(Ctx::ext(ty_ctx(env, &a)?, a), b);
    ctx_eq_judgment(env, lhs, CtxMor::id(dom))
}

pub(crate) fn sigma_eta(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sigma-eta", concl));
    }
    let a = inst.ty("A")?;
    let b = inst.ty("B")?;
    let lhs = CtxMor::comp(
        CtxMor::sigma_pair(a.clone(), b.clone()),
        CtxMor::sigma_proj(a.clone(), b.clone()),
    );
    let dom = Ctx::ext(ty_ctx(env, &a)?, Ty::sigma(a, b));
    ctx_eq_judgment(env, lhs, CtxMor::id(dom))
}

pub(crate) fn sigma_sub(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    let a = inst.ty("A")?;
    let b = inst.ty("B")?;
    let s = inst.ctxmor("s")?;
    if env.split() {
        if concl != 0 {
            return Err(bad_concl("sigma-sub", concl));
        }
        let lifted = elab::lift(env, &s, &a)?;
        return type_eq_judgment(
            env,
            Ty::sigma(Ty::sub(a.clone(), s.clone()), Ty::sub(b.clone(), lifted)),
            Ty::sub(Ty::sigma(a, b), s),
        );
    }
    iso_laws(
        env,
        TyMor::iso_sigma(a.clone(), b.clone(), s.clone(), Dir::Fwd),
        TyMor::iso_sigma(a, b, s, Dir::Bwd),
        concl,
        "sigma-sub",
    )
}

pub(crate) fn sub_pair(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-pair", concl));
    }
    let a = inst.ty("A")?;
    let b = inst.ty("B")?;
    let s = inst.ctxmor("s")?;
    let sig = Ty::sigma(a.clone(), b.clone());
    let lift_sig = elab::lift(env, &s, &sig)?;
    let lift_a = elab::lift(env, &s, &a)?;
    let lift_ab = elab::lift(env, &lift_a, &b)?;
    let pushed_pair = CtxMor::sigma_pair(
        Ty::sub(a.clone(), s.clone()),
        Ty::sub(b.clone(), lift_a.clone()),
    );
    let lhs = if env.split() {
        CtxMor::comp(lift_sig, pushed_pair)
    } else {
        let (gamma, _) = mor_boundary(env, &s)?;
        CtxMor::comp(
            lift_sig,
            CtxMor::comp(
                CtxMor::ext_mor(gamma, TyMor::iso_sigma(a.clone(), b.clone(), s, Dir::Fwd)),
                pushed_pair,
            ),
        )
    };
    let rhs = CtxMor::comp(CtxMor::sigma_pair(a, b), lift_ab);
    ctx_eq_judgment(env, lhs, rhs)
}

pub(crate) fn subt_sigma(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 1 {
        return Err(bad_concl("subt-sigma", concl));
    }
    let f = inst.tymor("f")?;
    let g = inst.tymor("g")?;
    let (gamma, _, _) = tymor_boundary(env, &f)?;
    let lhs = CtxMor::ext_mor(gamma, TyMor::sigma_map(f.clone(), g.clone()));
    let rhs = chi0_sigma_map(env, &f, &g)?;
    ctx_eq_judgment(env, lhs, rhs)
}

pub(crate) fn subt_sigma_id(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("subt-sigma-id", concl));
    }
    let a = inst.ty("A")?;
    let b = inst.ty("B")?;
    let g = if env.split() {
        TyMor::id(b.clone())
    } else {
        // B → B[1_{Γ.A}] → B[Γ.1_A]
        let gamma = ty_ctx(env, &a)?;
        let one = CtxMor::id(Ctx::ext(gamma.clone(), a.clone()));
        let ext_one = CtxMor::ext_mor(gamma, TyMor::id(a.clone()));
        TyMor::comp(
            TyMor::iso_sub(
                b.clone(),
                one,
                ext_one,
                EqDerivation::sym(d_ext_id(&a)),
                Dir::Fwd,
            ),
            TyMor::iso_id(b.clone(), Dir::Bwd),
        )
    };
    let lhs = TyMor::sigma_map(TyMor::id(a.clone()), g);
    ty_eq_judgment(env, lhs, TyMor::id(Ty::sigma(a, b)))
}

pub(crate) fn subt_sigma_comp(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("subt-sigma-comp", concl));
    }
    let f = inst.tymor("f")?; // A → A'
    let g = inst.tymor("g")?; // B → B'[Γ.f]
    let f2 = inst.tymor("f2")?; // A' → A''
    let g2 = inst.tymor("g2")?; // B' → B''[Γ.f2]
    let (gamma, _, _) = tymor_boundary(env, &f)?;
    let chi_f = CtxMor::ext_mor(gamma.clone(), f.clone());
    let fused_f = TyMor::comp(f2.clone(), f.clone());
    let core = TyMor::comp(TyMor::sub(g2.clone(), chi_f.clone()), g.clone());
    let lhs = if env.split() {
        TyMor::sigma_map(fused_f.clone(), core.clone())
    } else {
        // transport B''[Γ.f₂][Γ.f] → B''[Γ.(f₂∘f)] at the end
        let (_, _, g2_cod) = tymor_boundary(env, &g2)?;
        let b2 = match g2_cod.node() {
            TyNode::Sub(b2, _) => b2.clone(),
            _ => {
                return Err(CheckError::VarianceError {
                    path: "subt-sigma-comp".into(),
                    reason: "g₂'s codomain is not a substituted family".into(),
                })
            }
        };
        let chi_f2 = CtxMor::ext_mor(gamma.clone(), f2.clone());
        let chi_fused = CtxMor::ext_mor(gamma, fused_f.clone());
        let fix = TyMor::comp(
            TyMor::iso_sub(
                b2.clone(),
                CtxMor::comp(chi_f2.clone(), chi_f.clone()),
                chi_fused,
                EqDerivation::sym(d_ext_comp(&f2, &f)),
                Dir::Fwd,
            ),
            TyMor::iso_comp(b2, chi_f2, chi_f, Dir::Bwd),
        );
        TyMor::sigma_map(fused_f, TyMor::comp(fix, core))
    };
    let rhs = TyMor::comp(TyMor::sigma_map(f2, g2), TyMor::sigma_map(f, g));
    ty_eq_judgment(env, lhs, rhs)
}

/// sigma-sub-id with the premise 1_Γ.A ≡ Γ.i^id_A (lift coherence).
pub(crate) fn sigma_sub_id(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sigma-sub-id", concl));
    }
    let a = inst.ty("A")?;
    let b = inst.ty("B")?;
    let coh = premise_deriv(p, 0, "sigma-sub-id")?;
    let gamma = ty_ctx(env, &a)?;
    let sig = Ty::sigma(a.clone(), b.clone());
    let lhs = TyMor::comp(
        TyMor::iso_id(sig, Dir::Fwd),
        TyMor::iso_sigma(a.clone(), b.clone(), CtxMor::id(gamma.clone()), Dir::Fwd),
    );
    let lift_one = elab::lift(env, &CtxMor::id(gamma.clone()), &a)?;
    let ext_id_fwd = CtxMor::ext_mor(gamma, TyMor::iso_id(a.clone(), Dir::Fwd));
    let g = TyMor::iso_sub(b.clone(), lift_one, ext_id_fwd, coh, Dir::Fwd);
    let rhs = TyMor::sigma_map(TyMor::iso_id(a, Dir::Fwd), g);
    ty_eq_judgment(env, lhs, rhs)
}

/// sigma-sub-comp with the premise (s∘s').A ≡ s.A ∘ s'.A[s] ∘ Γ.i^comp_A.
pub(crate) fn sigma_sub_comp(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sigma-sub-comp", concl));
    }
    let a = inst.ty("A")?;
    let b = inst.ty("B")?;
    let s = inst.ctxmor("s")?;
    let s2 = inst.ctxmor("s2")?;
    let coh = premise_deriv(p, 0, "sigma-sub-comp")?;
    let sig = Ty::sigma(a.clone(), b.clone());
    let fused = CtxMor::comp(s.clone(), s2.clone());
    let lhs = TyMor::comp(
        TyMor::iso_comp(sig, s.clone(), s2.clone(), Dir::Fwd),
        TyMor::iso_sigma(a.clone(), b.clone(), fused.clone(), Dir::Fwd),
    );
    let (gamma, _) = mor_boundary(env, &s2)?;
    let lift_fused = elab::lift(env, &fused, &a)?;
    let lift_s = elab::lift(env, &s, &a)?;
    let a_s = Ty::sub(a.clone(), s.clone());
    let lift_s2 = elab::lift(env, &s2, &a_s)?;
    let ic_fwd = CtxMor::ext_mor(gamma, TyMor::iso_comp(a.clone(), s.clone(), s2.clone(), Dir::Fwd));
    let ll_ic = CtxMor::comp(CtxMor::comp(lift_s.clone(), lift_s2.clone()), ic_fwd.clone());
    let g = TyMor::comp_chain(&[
        TyMor::sub(
            TyMor::iso_comp(b.clone(), lift_s.clone(), lift_s2.clone(), Dir::Fwd),
            ic_fwd.clone(),
        ),
        TyMor::iso_comp(
            b.clone(),
            CtxMor::comp(lift_s.clone(), lift_s2.clone()),
            ic_fwd,
            Dir::Fwd,
        ),
        TyMor::iso_sub(b.clone(), lift_fused, ll_ic, coh, Dir::Fwd),
    ]);
    let b_s = Ty::sub(b.clone(), lift_s.clone());
    let rhs = TyMor::comp_chain(&[
        TyMor::sub(TyMor::iso_sigma(a.clone(), b, s.clone(), Dir::Fwd), s2.clone()),
        TyMor::iso_sigma(a_s, b_s, s2.clone(), Dir::Fwd),
        TyMor::sigma_map(TyMor::iso_comp(a, s, s2, Dir::Fwd), g),
    ]);
    ty_eq_judgment(env, lhs, rhs)
}

// -- Id rules ------------------------------------------------------------------

pub(crate) fn id_intro(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 1 {
        return Err(bad_concl("id-intro", concl));
    }
    let a = inst.ty("A")?;
    let gamma = ty_ctx(env, &a)?;
    let ext_a = Ctx::ext(gamma, a.clone());
    let lhs = CtxMor::comp(CtxMor::proj(Ty::id(a.clone())), CtxMor::refl(a.clone()));
    let one = CtxMor::id(ext_a.clone());
    let p2_one = CtxMor::p2(one.clone());
    let rhs = if env.split() {
        p2_one
    } else {
        // transport A[π_A ∘ 1] to A[π_A]
        let p = CtxMor::proj(a.clone());
        let fix = TyMor::iso_sub(
            a,
            CtxMor::comp(p.clone(), one),
            p.clone(),
            crate::theory::elab::d_unit_r(&p),
            Dir::Fwd,
        );
        CtxMor::comp(CtxMor::ext_mor(ext_a, fix), p2_one)
    };
    ctx_eq_judgment(env, lhs, rhs)
}

pub(crate) fn id_elim(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 1 {
        return Err(bad_concl("id-elim", concl));
    }
    let a = inst.ty("A")?;
    let c = inst.ty("C")?;
    let d = inst.ctxmor("d")?;
    let j = CtxMor::j(a, c.clone(), d);
    let (dom, _) = mor_boundary(env, &j)?;
    ctx_eq_judgment(
        env,
        CtxMor::comp(CtxMor::proj(c), j),
        CtxMor::id(dom),
    )
}

pub(crate) fn id_beta(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("id-beta", concl));
    }
    let a = inst.ty("A")?;
    let c = inst.ty("C")?;
    let d = inst.ctxmor("d")?;
    let lhs = CtxMor::comp(
        CtxMor::j(a.clone(), c, d.clone()),
        CtxMor::refl(a),
    );
    ctx_eq_judgment(env, lhs, d)
}

pub(crate) fn id_sub(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    let a = inst.ty("A")?;
    let s = inst.ctxmor("s")?;
    if env.split() {
        if concl != 0 {
            return Err(bad_concl("id-sub", concl));
        }
        let base = elab::id_sub_base(env, &s, &a)?;
        return type_eq_judgment(
            env,
            Ty::id(Ty::sub(a.clone(), s)),
            Ty::sub(Ty::id(a), base),
        );
    }
    iso_laws(
        env,
        TyMor::iso_id_ty(a.clone(), s.clone(), Dir::Fwd),
        TyMor::iso_id_ty(a, s, Dir::Bwd),
        concl,
        "id-sub",
    )
}

pub(crate) fn sub_refl(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-refl", concl));
    }
    let a = inst.ty("A")?;
    let s = inst.ctxmor("s")?;
    let a_s = Ty::sub(a.clone(), s.clone());
    let total = elab::id_sub_total(env, &s, &a)?;
    let refl_s = CtxMor::refl(a_s.clone());
    let lhs = if env.split() {
        CtxMor::comp(total, refl_s)
    } else {
        let ctx_i = crate::synth::id_context(&mor_boundary(env, &s)?.0, &a_s);
        CtxMor::comp(
            total,
            CtxMor::comp(
                CtxMor::ext_mor(ctx_i, TyMor::iso_id_ty(a.clone(), s.clone(), Dir::Fwd)),
                refl_s,
            ),
        )
    };
    let lift_a = elab::lift(env, &s, &a)?;
    let rhs = CtxMor::comp(CtxMor::refl(a), lift_a);
    ctx_eq_judgment(env, lhs, rhs)
}

pub(crate) fn sub_j(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("sub-j", concl));
    }
    let a = inst.ty("A")?;
    let c = inst.ty("C")?;
    let d = inst.ctxmor("d")?;
    let s = inst.ctxmor("s")?;
    let a_s = Ty::sub(a.clone(), s.clone());
    let (gamma, _) = mor_boundary(env, &s)?;
    // v : ctxI(A[s]).Id_{A[s]} → ctxI(A).Id_A
    let total = elab::id_sub_total(env, &s, &a)?;
    let ext_part = {
        let ctx_i = crate::synth::id_context(&gamma, &a_s);
        CtxMor::ext_mor(ctx_i, TyMor::iso_id_ty(a.clone(), s.clone(), Dir::Fwd))
    };
    let v = if env.split() {
        total.clone()
    } else {
        CtxMor::comp(total.clone(), ext_part.clone())
    };
    let c_pulled = Ty::sub(c.clone(), v.clone());
    // d' := (r_{A[s]}, transported p₂(d ∘ s.A))
    let lift_a = elab::lift(env, &s, &a)?;
    let d_shift = CtxMor::comp(d.clone(), lift_a.clone());
    let refl_s = CtxMor::refl(a_s.clone());
    let t_part = {
        let d_side = premise_deriv(p, 0, "sub-j")?;
        // π_C ∘ (d ∘ s.A) ≡ r_A ∘ s.A ≡ v ∘ r_{A[s]}
        let p_c = CtxMor::proj(c.clone());
        let sub_refl_leaf = EqDerivation::rule(
            "sub-refl",
            Inst::new().bind("A", a.clone()).bind("s", s.clone()),
        );
        let mut steps = vec![
            elab::d_assoc(&p_c, &d, &lift_a),
            d_cong_pre(&lift_a, d_side),
            EqDerivation::sym(sub_refl_leaf),
        ];
        if !env.split() {
            steps.push(elab::d_assoc(&total, &ext_part, &refl_s));
        }
        let ev = EqDerivation::trans_chain(steps);
        let fix = TyMor::comp(
            TyMor::iso_comp(c.clone(), v.clone(), refl_s.clone(), Dir::Fwd),
            TyMor::iso_sub(
                c.clone(),
                CtxMor::comp(p_c, d_shift.clone()),
                CtxMor::comp(v.clone(), refl_s.clone()),
                ev,
                Dir::Fwd,
            ),
        );
        let (x, _) = mor_boundary(env, &d_shift)?;
        CtxMor::comp(CtxMor::ext_mor(x, fix), CtxMor::p2(d_shift.clone()))
    };
    let d_pulled = CtxMor::pair(refl_s, t_part);
    let j_pulled = CtxMor::j(a_s, c_pulled.clone(), d_pulled);
    let lift_c = elab::lift(env, &v, &c)?;
    let lhs = CtxMor::comp(lift_c, j_pulled);
    let rhs = CtxMor::comp(CtxMor::j(a, c, d), v);
    ctx_eq_judgment(env, lhs, rhs)
}

pub(crate) fn subt_id_i(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("subt-id-i", concl));
    }
    let a = inst.ty("A")?;
    let lhs = TyMor::id_map(TyMor::id(a.clone()));
    if env.split() {
        return ty_eq_judgment(env, lhs, TyMor::id(Ty::id(a)));
    }
    // non-split: Id_{1_A} ≡ i^sub(diag(1_A) ≡ 1) ∘ i^id⁻_{Id_A}
    let coh = premise_deriv(p, 0, "subt-id-i")?;
    let diag = elab::diagonal_square_mor(env, &TyMor::id(a.clone()))?;
    let idty = Ty::id(a);
    let ctx = ty_ctx(env, &idty)?;
    let rhs = TyMor::comp(
        TyMor::iso_sub(idty.clone(), CtxMor::id(ctx), diag, coh, Dir::Fwd),
        TyMor::iso_id(idty, Dir::Bwd),
    );
    ty_eq_judgment(env, lhs, rhs)
}

pub(crate) fn subt_id_c(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("subt-id-c", concl));
    }
    let t = inst.tymor("t")?; // A → B
    let t2 = inst.tymor("t2")?; // B → C
    let diag_t = elab::diagonal_square_mor(env, &t)?;
    let lhs = TyMor::comp(
        TyMor::sub(TyMor::id_map(t2.clone()), diag_t.clone()),
        TyMor::id_map(t.clone()),
    );
    let fused = TyMor::id_map(TyMor::comp(t2.clone(), t.clone()));
    if env.split() {
        return ty_eq_judgment(env, lhs, fused);
    }
    let coh = premise_deriv(p, 0, "subt-id-c")?;
    let (_, _, cty) = tymor_boundary(env, &t2)?;
    let diag_t2 = elab::diagonal_square_mor(env, &t2)?;
    let diag_fused = elab::diagonal_square_mor(env, &TyMor::comp(t2, t))?;
    let idc = Ty::id(cty);
    let fix = TyMor::comp(
        TyMor::iso_comp(idc.clone(), diag_t2.clone(), diag_t.clone(), Dir::Fwd),
        TyMor::iso_sub(
            idc,
            diag_fused,
            CtxMor::comp(diag_t2, diag_t),
            coh,
            Dir::Fwd,
        ),
    );
    ty_eq_judgment(env, lhs, TyMor::comp(fix, fused))
}

pub(crate) fn subt_id_refl(env: &Env, inst: &Inst, concl: u8, _p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("subt-id-refl", concl));
    }
    let t = inst.tymor("t")?;
    let (gamma, a, b) = tymor_boundary(env, &t)?;
    let diag = elab::diagonal_square_mor(env, &t)?;
    let lift_id = elab::lift(env, &diag, &Ty::id(b.clone()))?;
    let ctx_i = crate::synth::id_context(&gamma, &a);
    let lhs = CtxMor::comp(
        lift_id,
        CtxMor::comp(
            CtxMor::ext_mor(ctx_i, TyMor::id_map(t.clone())),
            CtxMor::refl(a),
        ),
    );
    let rhs = CtxMor::comp(CtxMor::refl(b), CtxMor::ext_mor(gamma, t));
    ctx_eq_judgment(env, lhs, rhs)
}

pub(crate) fn subt_id_j(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("subt-id-j", concl));
    }
    let t = inst.tymor("t")?; // A → B
    let c = inst.ty("C")?; // over ctxI(B).Id_B
    let d = inst.ctxmor("d")?; // Γ.B → ctxI(B).Id_B.C
    let (gamma, a, b) = tymor_boundary(env, &t)?;
    let diag = elab::diagonal_square_mor(env, &t)?;
    let ctx_i_a = crate::synth::id_context(&gamma, &a);
    // v : ctxI(A).Id_A → ctxI(B).Id_B
    let lift_id = elab::lift(env, &diag, &Ty::id(b.clone()))?;
    let ext_idmap = CtxMor::ext_mor(ctx_i_a, TyMor::id_map(t.clone()));
    let v = CtxMor::comp(lift_id.clone(), ext_idmap.clone());
    let c_pulled = Ty::sub(c.clone(), v.clone());
    let chi_t = CtxMor::ext_mor(gamma, t.clone());
    let d_shift = CtxMor::comp(d.clone(), chi_t.clone());
    let refl_a = CtxMor::refl(a.clone());
    let t_part = {
        let d_side = premise_deriv(p, 0, "subt-id-j")?;
        let p_c = CtxMor::proj(c.clone());
        let refl_compat = EqDerivation::rule("subt-id-refl", Inst::new().bind("t", t.clone()));
        // π_C ∘ (d ∘ Γ.t) ≡ r_B ∘ Γ.t ≡ v ∘ r_A
        let ev = EqDerivation::trans_chain(vec![
            elab::d_assoc(&p_c, &d, &chi_t),
            d_cong_pre(&chi_t, d_side),
            EqDerivation::sym(refl_compat),
            elab::d_assoc(&lift_id, &ext_idmap, &refl_a),
        ]);
        let fix = TyMor::comp(
            TyMor::iso_comp(c.clone(), v.clone(), refl_a.clone(), Dir::Fwd),
            TyMor::iso_sub(
                c.clone(),
                CtxMor::comp(p_c, d_shift.clone()),
                CtxMor::comp(v.clone(), refl_a.clone()),
                ev,
                Dir::Fwd,
            ),
        );
        let (x, _) = mor_boundary(env, &d_shift)?;
        CtxMor::comp(CtxMor::ext_mor(x, fix), CtxMor::p2(d_shift.clone()))
    };
    let d_pulled = CtxMor::pair(refl_a, t_part);
    let j_pulled = CtxMor::j(a, c_pulled, d_pulled);
    let lift_c = elab::lift(env, &v, &c)?;
    let lhs = CtxMor::comp(lift_c, j_pulled);
    let rhs = CtxMor::comp(CtxMor::j(b, c, d), v);
    ctx_eq_judgment(env, lhs, rhs)
}

/// id-sub-id as the coherence square: i^sub(base(1) ≡ diag(i^id)) ∘ i_{Id,1}
/// ≡ Id_{i^id_A}. Premise: id_sub_base(1_Γ, A) ≡ Γ.i^id.i^id (the diagonal
/// of i^id_A).
pub(crate) fn id_sub_id(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("id-sub-id", concl));
    }
    let a = inst.ty("A")?;
    let coh = premise_deriv(p, 0, "id-sub-id")?;
    let gamma = ty_ctx(env, &a)?;
    let base = elab::id_sub_base(env, &CtxMor::id(gamma.clone()), &a)?;
    let diag = elab::diagonal_square_mor(env, &TyMor::iso_id(a.clone(), Dir::Fwd))?;
    let idty = Ty::id(a.clone());
    let lhs = TyMor::comp(
        TyMor::iso_sub(idty, base, diag, coh, Dir::Fwd),
        TyMor::iso_id_ty(a.clone(), CtxMor::id(gamma), Dir::Fwd),
    );
    let rhs = TyMor::id_map(TyMor::iso_id(a, Dir::Fwd));
    ty_eq_judgment(env, lhs, rhs)
}

/// id-sub-comp as the coherence square relating i_{Id,s∘s'} to
/// i_{Id,s}, i_{Id,s'}, and Id_{i^comp}. Premise: the corresponding base
/// substitution equality.
pub(crate) fn id_sub_comp(env: &Env, inst: &Inst, concl: u8, p: &[Premise]) -> Result<Judgment> {
    if concl != 0 {
        return Err(bad_concl("id-sub-comp", concl));
    }
    let a = inst.ty("A")?;
    let s = inst.ctxmor("s")?; // Δ → Θ
    let s2 = inst.ctxmor("s2")?; // Γ → Δ
    let coh = premise_deriv(p, 0, "id-sub-comp")?;
    let fused = CtxMor::comp(s.clone(), s2.clone());
    let base_fused = elab::id_sub_base(env, &fused, &a)?;
    let a_s = Ty::sub(a.clone(), s.clone());
    let base_s = elab::id_sub_base(env, &s, &a)?;
    let base_s2 = elab::id_sub_base(env, &s2, &a_s)?;
    let ic = TyMor::iso_comp(a.clone(), s.clone(), s2.clone(), Dir::Fwd);
    let diag_ic = elab::diagonal_square_mor(env, &ic)?;
    let idty = Ty::id(a.clone());
    let tail = CtxMor::comp(base_s2.clone(), diag_ic.clone());
    let chain = CtxMor::comp(base_s.clone(), tail.clone());
    let lhs = TyMor::comp_chain(&[
        TyMor::iso_comp(Ty::sub(idty.clone(), base_s.clone()), base_s2.clone(), diag_ic.clone(), Dir::Fwd),
        TyMor::iso_comp(idty.clone(), base_s.clone(), tail, Dir::Fwd),
        TyMor::iso_sub(idty.clone(), base_fused, chain, coh, Dir::Fwd),
        TyMor::iso_id_ty(a.clone(), fused, Dir::Fwd),
    ]);
    let big_iso = TyMor::comp(
        TyMor::sub(TyMor::iso_id_ty(a.clone(), s, Dir::Fwd), base_s2),
        TyMor::iso_id_ty(a_s, s2, Dir::Fwd),
    );
    let rhs = TyMor::comp(TyMor::sub(big_iso, diag_ic), TyMor::id_map(ic));
    ty_eq_judgment(env, lhs, rhs)
}

// -- χ₀ expansions ----------------------------------------------------------------

/// Γ.Σ_{f,g} = pair' ∘ (Γ.f).B' ∘ Γ.A.g ∘ proj — the same formula in both
/// modes.
pub(crate) fn chi0_sigma_map(env: &Env, f: &TyMor, g: &TyMor) -> Result<CtxMor> {
    let (gamma, a, a_prime) = tymor_boundary(env, f)?;
    let sm = TyMor::sigma_map(f.clone(), g.clone());
    let (_, sig_ab, sig_apbp) = tymor_boundary(env, &sm)?;
    let b = match sig_ab.node() {
        TyNode::Sigma(_, b) => b.clone(),
        _ => unreachable!(),
    };
    let b_prime = match sig_apbp.node() {
        TyNode::Sigma(_, b) => b.clone(),
        _ => unreachable!(),
    };
    let chi_f = CtxMor::ext_mor(gamma.clone(), f.clone());
    let chi_g = CtxMor::ext_mor(Ctx::ext(gamma, a.clone()), g.clone());
    let lift_f = elab::lift(env, &chi_f, &b_prime)?;
    Ok(CtxMor::comp_chain(&[
        CtxMor::sigma_pair(a_prime, b_prime),
        lift_f,
        chi_g,
        CtxMor::sigma_proj(a, b),
    ]))
}

/// Γ.Π_{f,g} as the Appendix-C composite, with explicit transports in
/// non-split mode.
pub(crate) fn chi0_pi_map(env: &Env, f: &TyMor, g: &TyMor) -> Result<CtxMor> {
    let (gamma, a_prime, a) = tymor_boundary(env, f)?;
    let pim = TyMor::pi_map(f.clone(), g.clone());
    let (_, pi_ab, pi_apbp) = tymor_boundary(env, &pim)?;
    let b = match pi_ab.node() {
        TyNode::Pi(_, b) => b.clone(),
        _ => unreachable!(),
    };
    let (_, b_prime) = match pi_apbp.node() {
        TyNode::Pi(x, y) => (x.clone(), y.clone()),
        _ => unreachable!(),
    };
    let chi_f = CtxMor::ext_mor(gamma.clone(), f.clone());
    let p_a = CtxMor::proj(a.clone());
    let p_ap = CtxMor::proj(a_prime.clone());
    let pi_weak = Ty::sub(pi_ab.clone(), p_a.clone());
    let pi_weak_prime = Ty::sub(pi_ab.clone(), p_ap.clone());
    let ext_ap = Ctx::ext(gamma.clone(), a_prime.clone());
    let x = Ctx::ext(ext_ap.clone(), pi_weak_prime.clone());
    // c₁ : Π[π_{A'}] → Π[π_A][χ₀f]
    let c1 = TyMor::comp(
        TyMor::iso_comp(pi_ab.clone(), p_a.clone(), chi_f.clone(), Dir::Fwd),
        TyMor::iso_sub(
            pi_ab.clone(),
            p_ap.clone(),
            CtxMor::comp(p_a.clone(), chi_f.clone()),
            EqDerivation::sym(d_ext_c(f)),
            Dir::Fwd,
        ),
    );
    let u1 = elab::lift(env, &chi_f, &pi_weak)?;
    let theta = CtxMor::comp(
        CtxMor::app(a.clone(), b.clone()),
        CtxMor::comp(u1.clone(), CtxMor::ext_mor(ext_ap.clone(), c1.clone())),
    );
    // mediator into Γ.A'.B[χ₀f]
    let w = CtxMor::proj(pi_weak_prime.clone());
    let (u1_f1, u1_f2) = elab::pair_components(&u1);
    // ev₂ : π_B ∘ θ ≡ χ₀f ∘ w
    let inner = CtxMor::comp(u1.clone(), CtxMor::ext_mor(ext_ap.clone(), c1.clone()));
    let p_b = CtxMor::proj(b.clone());
    let ev2 = EqDerivation::trans_chain(vec![
        elab::d_assoc(&p_b, &CtxMor::app(a.clone(), b.clone()), &inner),
        d_cong_pre(
            &inner,
            EqDerivation::rule_at(
                "pi-elim",
                1,
                Inst::new().bind("A", a.clone()).bind("B", b.clone()),
            ),
        ),
        elab::d_assoc(
            &CtxMor::proj(pi_weak.clone()),
            &u1,
            &CtxMor::ext_mor(ext_ap.clone(), c1.clone()),
        ),
        d_cong_pre(
            &CtxMor::ext_mor(ext_ap.clone(), c1.clone()),
            d_sub_beta0(&u1_f1, &u1_f2),
        ),
        EqDerivation::sym(elab::d_assoc(
            &chi_f,
            &CtxMor::proj(Ty::sub(pi_weak.clone(), chi_f.clone())),
            &CtxMor::ext_mor(ext_ap.clone(), c1.clone()),
        )),
        d_cong_post(&chi_f, d_ext_c(&c1)),
    ]);
    let c2 = TyMor::comp(
        TyMor::iso_comp(b.clone(), chi_f.clone(), w.clone(), Dir::Fwd),
        TyMor::iso_sub(
            b.clone(),
            CtxMor::comp(p_b.clone(), theta.clone()),
            CtxMor::comp(chi_f.clone(), w.clone()),
            ev2,
            Dir::Fwd,
        ),
    );
    let app_cf = CtxMor::pair(
        w.clone(),
        CtxMor::comp(CtxMor::ext_mor(x.clone(), c2), CtxMor::p2(theta)),
    );
    // λ-body over Γ' := Γ.Π(A,B)
    let pi_proj = CtxMor::proj(pi_ab.clone());
    let gamma_prime = Ctx::ext(gamma.clone(), pi_ab.clone());
    let ap_weak = Ty::sub(a_prime.clone(), pi_proj.clone());
    let x2 = Ctx::ext(gamma_prime.clone(), ap_weak.clone());
    let w_v = elab::lift(env, &pi_proj, &a_prime)?;
    let theta_v = CtxMor::proj(ap_weak.clone());
    let (wv_f1, wv_f2) = elab::pair_components(&w_v);
    let c3 = TyMor::comp(
        TyMor::iso_comp(pi_ab.clone(), p_ap.clone(), w_v.clone(), Dir::Fwd),
        TyMor::iso_sub(
            pi_ab.clone(),
            CtxMor::comp(pi_proj.clone(), theta_v.clone()),
            CtxMor::comp(p_ap.clone(), w_v.clone()),
            EqDerivation::sym(d_sub_beta0(&wv_f1, &wv_f2)),
            Dir::Fwd,
        ),
    );
    let v = CtxMor::pair(
        w_v.clone(),
        CtxMor::comp(CtxMor::ext_mor(x2.clone(), c3), CtxMor::p2(theta_v)),
    );
    let chi_g = CtxMor::ext_mor(ext_ap.clone(), g.clone());
    let theta2 = CtxMor::comp(chi_g.clone(), CtxMor::comp(app_cf.clone(), v.clone()));
    // ev₄ : π_{B'} ∘ θ₂ ≡ w_v
    let p_bp = CtxMor::proj(b_prime.clone());
    let av = CtxMor::comp(app_cf.clone(), v.clone());
    let ev4 = EqDerivation::trans_chain(vec![
        elab::d_assoc(&p_bp, &chi_g, &av),
        d_cong_pre(&av, d_ext_c(g)),
        elab::d_assoc(
            &CtxMor::proj(Ty::sub(b.clone(), chi_f.clone())),
            &app_cf,
            &v,
        ),
        d_cong_pre(&v, d_sub_beta0(&w, &pair_snd(&app_cf))),
        d_sub_beta0(&w_v, &pair_snd(&v)),
    ]);
    let c4 = TyMor::iso_sub(
        b_prime.clone(),
        CtxMor::comp(p_bp, theta2.clone()),
        w_v.clone(),
        ev4,
        Dir::Fwd,
    );
    let body = CtxMor::comp(CtxMor::ext_mor(x2, c4), CtxMor::p2(theta2));
    let lam = CtxMor::lam(body);
    let pi_prime = pi_apbp;
    let outer = elab::lift(env, &pi_proj, &pi_prime)?;
    Ok(CtxMor::comp(
        outer,
        CtxMor::comp(
            CtxMor::ext_mor(
                gamma_prime,
                TyMor::iso_pi(a_prime, b_prime, pi_proj, Dir::Fwd),
            ),
            lam,
        ),
    ))
}

fn pair_snd(m: &CtxMor) -> CtxMor {
    match m.node() {
        CtxMorNode::Pair(_, s) => s.clone(),
        _ => unreachable!("expected a pairing"),
    }
}

pub(crate) fn d_sub_proj1_export(s: &CtxMor) -> std::sync::Arc<EqDerivation> {
    d_sub_proj1(s)
}
