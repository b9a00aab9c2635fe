//! Elaborators for the derived constructions used inside rule statements:
//! lifted substitutions s.A, the diagonal square Γ.t.t, subsumption,
//! application and Σ-projection terms.
//!
//! In non-split mode the outputs carry the explicit coercion isomorphisms
//! that make them synthesize structurally; in split mode those factors are
//! omitted and boundaries match up to the rewriter.

use std::sync::Arc;

use crate::env::Env;
use crate::error::{CheckError, Result};
use crate::kernel::derivation::{EqDerivation, Inst};
use crate::synth::{mor_boundary, ty_ctx, tymor_boundary};
use crate::syntax::term::{Ctx, CtxMor, CtxMorNode, Dir, Ty, TyMor, TyNode};

// -- small derivation builders ------------------------------------------------
//
// Thin wrappers over rule leaves, with the metavariable conventions fixed by
// the rule registry. The kernel re-checks everything, so a mistake here
// surfaces as a check_eq failure, never as silent unsoundness.

/// s3 ∘ (s2 ∘ s) ≡ (s3 ∘ s2) ∘ s
pub fn d_assoc(s3: &CtxMor, s2: &CtxMor, s: &CtxMor) -> Arc<EqDerivation> {
    EqDerivation::rule(
        "ctx-comp-assoc",
        Inst::new()
            .bind("s", s.clone())
            .bind("s2", s2.clone())
            .bind("s3", s3.clone()),
    )
}

/// s ∘ 1 ≡ s
pub fn d_unit_r(s: &CtxMor) -> Arc<EqDerivation> {
    EqDerivation::rule_at("ctx-id-unit", 0, Inst::new().bind("s", s.clone()))
}

/// 1 ∘ s ≡ s
pub fn d_unit_l(s: &CtxMor) -> Arc<EqDerivation> {
    EqDerivation::rule_at("ctx-id-unit", 1, Inst::new().bind("s", s.clone()))
}

/// t ∘ s1 ≡ t ∘ s2 from s1 ≡ s2
pub fn d_cong_post(t: &CtxMor, d: Arc<EqDerivation>) -> Arc<EqDerivation> {
    EqDerivation::cong("ctx-comp-cong-1", Inst::new().bind("t", t.clone()), vec![d])
}

/// s1 ∘ t ≡ s2 ∘ t from s1 ≡ s2
pub fn d_cong_pre(t: &CtxMor, d: Arc<EqDerivation>) -> Arc<EqDerivation> {
    EqDerivation::cong("ctx-comp-cong-2", Inst::new().bind("t", t.clone()), vec![d])
}

/// t ∘ u1 ≡ t ∘ u2 from u1 ≡ u2 (vertical)
pub fn d_ty_cong_post(t: &TyMor, d: Arc<EqDerivation>) -> Arc<EqDerivation> {
    EqDerivation::cong("ty-comp-cong-1", Inst::new().bind("t", t.clone()), vec![d])
}

/// u1 ∘ t ≡ u2 ∘ t from u1 ≡ u2 (vertical)
pub fn d_ty_cong_pre(t: &TyMor, d: Arc<EqDerivation>) -> Arc<EqDerivation> {
    EqDerivation::cong("ty-comp-cong-2", Inst::new().bind("t", t.clone()), vec![d])
}

/// Γ.t1 ≡ Γ.t2 from t1 ≡ t2
pub fn d_ext_cong(d: Arc<EqDerivation>) -> Arc<EqDerivation> {
    EqDerivation::cong("ext-cong", Inst::new(), vec![d])
}

/// π_B ∘ Γ.t ≡ π_A
pub fn d_ext_c(t: &TyMor) -> Arc<EqDerivation> {
    EqDerivation::rule("ext-c", Inst::new().bind("t", t.clone()))
}

/// Γ.1_A ≡ 1_{Γ.A}
pub fn d_ext_id(a: &Ty) -> Arc<EqDerivation> {
    EqDerivation::rule("ext-id", Inst::new().bind("A", a.clone()))
}

/// Γ.(t2 ∘ t) ≡ Γ.t2 ∘ Γ.t
pub fn d_ext_comp(t2: &TyMor, t: &TyMor) -> Arc<EqDerivation> {
    EqDerivation::rule(
        "ext-comp",
        Inst::new().bind("t", t.clone()).bind("t2", t2.clone()),
    )
}

/// π_A ∘ (s,t) ≡ s
pub fn d_sub_beta0(s: &CtxMor, t: &CtxMor) -> Arc<EqDerivation> {
    EqDerivation::rule_at(
        "sub-beta",
        0,
        Inst::new().bind("s", s.clone()).bind("t", t.clone()),
    )
}

/// p₂((s,t)) ≡ t
pub fn d_sub_beta1(s: &CtxMor, t: &CtxMor) -> Arc<EqDerivation> {
    EqDerivation::rule_at(
        "sub-beta",
        1,
        Inst::new().bind("s", s.clone()).bind("t", t.clone()),
    )
}

/// π ∘ p₂(s) ≡ 1
pub fn d_sub_proj1(s: &CtxMor) -> Arc<EqDerivation> {
    EqDerivation::rule_at("sub-proj", 1, Inst::new().bind("s", s.clone()))
}

/// π_Π ∘ λb ≡ 1
pub fn d_pi_intro1(b: &CtxMor) -> Arc<EqDerivation> {
    EqDerivation::rule_at("pi-intro", 1, Inst::new().bind("b", b.clone()))
}

/// π_C ∘ j ≡ 1
pub fn d_id_elim1(a: &Ty, c: &Ty, d: &CtxMor) -> Arc<EqDerivation> {
    EqDerivation::rule_at(
        "id-elim",
        1,
        Inst::new()
            .bind("A", a.clone())
            .bind("C", c.clone())
            .bind("d", d.clone()),
    )
}

/// The bundled section equality π ∘ t ≡ 1 for the canonical section forms.
pub fn section_derivation(env: &Env, t: &CtxMor) -> Result<Arc<EqDerivation>> {
    match t.node() {
        CtxMorNode::P2(w) => Ok(d_sub_proj1(w)),
        CtxMorNode::Lam(b) => Ok(d_pi_intro1(b)),
        CtxMorNode::J(a, c, d) => Ok(d_id_elim1(a, c, d)),
        CtxMorNode::Pair(s0, t0) => {
            // π ∘ (1, t) ≡ 1 by sub-beta, provided the first component is 1
            let (g, _) = mor_boundary(env, t)?;
            if *s0 == CtxMor::id(g) {
                Ok(d_sub_beta0(s0, t0))
            } else {
                Err(CheckError::NotASection {
                    path: t.to_string(),
                    reason: "pairing with non-identity first component".into(),
                })
            }
        }
        _ => Err(CheckError::NotASection {
            path: t.to_string(),
            reason: "no canonical section derivation for this head".into(),
        }),
    }
}

// -- lifted substitutions -----------------------------------------------------

/// s.A : Γ.A[s] → Δ.A (Rule ctx-mor-lift, Prop. 3.2).
///
/// Non-split this is the pairing
/// (s ∘ π_{A[s]}, Γ.A[s].(i^comp⁻¹ ∘ i^sub) ∘ p₂(1)); split mode drops the
/// coercion factor.
pub fn lift(env: &Env, s: &CtxMor, a: &Ty) -> Result<CtxMor> {
    let (gamma, delta) = mor_boundary(env, s)?;
    let ca = ty_ctx(env, a)?;
    if !crate::synth::ctx_eq(env, &ca, &delta) {
        return Err(CheckError::ContextMismatch {
            expected: delta.to_string(),
            found: ca.to_string(),
            path: format!("lift({s},{a})"),
        });
    }
    let t = Ty::sub(a.clone(), s.clone());
    let x = Ctx::ext(gamma, t.clone());
    let p = CtxMor::proj(t.clone());
    let first = CtxMor::comp(s.clone(), p.clone());
    let second = if env.split() {
        CtxMor::p2(CtxMor::id(x.clone()))
    } else {
        // A[s][π ∘ 1] → A[s][π] → A[s ∘ π]
        let p_unit = CtxMor::comp(p.clone(), CtxMor::id(x.clone()));
        let fix_sub = TyMor::iso_sub(t.clone(), p_unit, p.clone(), d_unit_r(&p), Dir::Fwd);
        let fuse = TyMor::iso_comp(a.clone(), s.clone(), p, Dir::Bwd);
        let coerce = TyMor::comp(fuse, fix_sub);
        CtxMor::comp(
            CtxMor::ext_mor(x.clone(), coerce),
            CtxMor::p2(CtxMor::id(x)),
        )
    };
    Ok(CtxMor::pair(first, second))
}

/// s.A.A[π_A] := (s.A).(A[π_A]) — the doubly lifted substitution.
pub fn lift2(env: &Env, s: &CtxMor, a: &Ty) -> Result<CtxMor> {
    let weak = Ty::sub(a.clone(), CtxMor::proj(a.clone()));
    let l1 = lift(env, s, a)?;
    lift(env, &l1, &weak)
}

/// i_{s.A} : A[s][π_{A[s]}] ≅ A[π_A][s.A], the canonical comparison used by
/// the Id-type substitution rules.
pub fn i_lift(env: &Env, s: &CtxMor, a: &Ty) -> Result<TyMor> {
    let t = Ty::sub(a.clone(), s.clone());
    let p_t = CtxMor::proj(t.clone());
    let lifted = lift(env, s, a)?;
    let p_a = CtxMor::proj(a.clone());
    let (f1, f2) = pair_components(&lifted);
    // s ∘ π_{A[s]} ≡ π_A ∘ s.A  (sub-beta backwards on the lift pairing)
    let ev = EqDerivation::sym(d_sub_beta0(&f1, &f2));
    let step1 = TyMor::iso_comp(a.clone(), s.clone(), p_t.clone(), Dir::Bwd);
    let step2 = TyMor::iso_sub(
        a.clone(),
        CtxMor::comp(s.clone(), p_t),
        CtxMor::comp(p_a.clone(), lifted.clone()),
        ev,
        Dir::Fwd,
    );
    let step3 = TyMor::iso_comp(a.clone(), p_a, lifted, Dir::Fwd);
    Ok(TyMor::comp_chain(&[step3, step2, step1]))
}

/// The base substitution of Rule id-sub:
/// s.A.A[π_A] ∘ Γ.A[s].i_{s.A} : Γ.A[s].A[s][π_{A[s]}] → Δ.A.A[π_A].
/// In split mode the i factor is the identity and is omitted.
pub fn id_sub_base(env: &Env, s: &CtxMor, a: &Ty) -> Result<CtxMor> {
    let l2 = lift2(env, s, a)?;
    if env.split() {
        return Ok(l2);
    }
    let (gamma, _) = mor_boundary(env, s)?;
    let ext_as = Ctx::ext(gamma, Ty::sub(a.clone(), s.clone()));
    let i = i_lift(env, s, a)?;
    Ok(CtxMor::comp(l2, CtxMor::ext_mor(ext_as, i)))
}

/// The Id-extended lift of Rule sub-refl and sub-j:
/// (s.A.A[π_A] ∘ Γ.A[s].i_{s.A}).Id_A.
pub fn id_sub_total(env: &Env, s: &CtxMor, a: &Ty) -> Result<CtxMor> {
    let base = id_sub_base(env, s, a)?;
    lift(env, &base, &Ty::id(a.clone()))
}

pub fn pair_components(m: &CtxMor) -> (CtxMor, CtxMor) {
    match m.node() {
        CtxMorNode::Pair(f, s) => (f.clone(), s.clone()),
        _ => unreachable!("expected a pairing"),
    }
}

// -- the diagonal square ------------------------------------------------------

/// Γ.t.t : Γ.A.A[π_A] → Γ.B.B[π_B] for a vertical t : A → B.
pub fn diagonal_square_mor(env: &Env, t: &TyMor) -> Result<CtxMor> {
    let (gamma, a, b) = tymor_boundary(env, t)?;
    let weak_a = Ty::sub(a.clone(), CtxMor::proj(a.clone()));
    let x = Ctx::ext(Ctx::ext(gamma.clone(), a.clone()), weak_a.clone());
    let ext_t = CtxMor::ext_mor(gamma, t.clone());
    // inner : X → Γ.B moves the second A-component through t
    let pi_a_a = lift(env, &CtxMor::proj(a.clone()), &a)?;
    let inner = CtxMor::comp(ext_t.clone(), pi_a_a.clone());
    let p2_part = CtxMor::p2(inner.clone());
    // u : X → Γ.B moves the first A-component through t
    let w_proj = CtxMor::proj(weak_a.clone());
    let u = CtxMor::comp(ext_t.clone(), w_proj.clone());
    let weak_b = Ty::sub(b.clone(), CtxMor::proj(b.clone()));
    let lift_part = lift(env, &u, &weak_b)?;
    if env.split() {
        return Ok(CtxMor::comp(lift_part, p2_part));
    }
    // coerce B[π_B ∘ inner] to B[π_B][u]
    let p_b = CtxMor::proj(b.clone());
    let v1 = CtxMor::comp(p_b.clone(), inner.clone());
    let v2 = CtxMor::comp(p_b.clone(), u.clone());
    let (f1, f2) = pair_components(&pi_a_a);
    // π_B∘(Γ.t∘π_A.A) ≡ (π_B∘Γ.t)∘π_A.A ≡ π_A∘π_A.A ≡ π_A∘π_{A[π_A]}
    let chain_l = EqDerivation::trans_chain(vec![
        d_assoc(&p_b, &ext_t, &pi_a_a),
        d_cong_pre(&pi_a_a, d_ext_c(t)),
        d_sub_beta0(&f1, &f2),
    ]);
    // π_B∘(Γ.t∘π_{A[π_A]}) ≡ (π_B∘Γ.t)∘π_{A[π_A]} ≡ π_A∘π_{A[π_A]}
    let chain_r = EqDerivation::trans_chain(vec![
        d_assoc(&p_b, &ext_t, &w_proj),
        d_cong_pre(&w_proj, d_ext_c(t)),
    ]);
    let ev = EqDerivation::trans(chain_l, EqDerivation::sym(chain_r));
    let fix_sub = TyMor::iso_sub(b.clone(), v1, v2, ev, Dir::Fwd);
    let fuse = TyMor::iso_comp(b.clone(), p_b, u, Dir::Fwd);
    let coerce = TyMor::comp(fuse, fix_sub);
    Ok(CtxMor::comp(
        lift_part,
        CtxMor::comp(CtxMor::ext_mor(x, coerce), p2_part),
    ))
}

// -- derived term formers -----------------------------------------------------

/// Γ.t ∘ a — subsumption (Prop. 3.3). Returns the coerced term together with
/// a derivation that it is again a section (of π_B).
pub fn subsume(
    env: &Env,
    t: &TyMor,
    a: &CtxMor,
    a_section: Arc<EqDerivation>,
) -> Result<(CtxMor, Arc<EqDerivation>)> {
    let (gamma, _dom, cod) = tymor_boundary(env, t)?;
    let ext_t = CtxMor::ext_mor(gamma, t.clone());
    let term = CtxMor::comp(ext_t.clone(), a.clone());
    let p_b = CtxMor::proj(cod);
    // π_B ∘ (Γ.t ∘ a) ≡ (π_B ∘ Γ.t) ∘ a ≡ π_A ∘ a ≡ 1
    let deriv = EqDerivation::trans_chain(vec![
        d_assoc(&p_b, &ext_t, a),
        d_cong_pre(a, d_ext_c(t)),
        a_section,
    ]);
    Ok((term, deriv))
}

/// app(f, a) := Γ.i^sub ∘ p₂(app ∘ (coerced p₂(f ∘ π_A)) ∘ a), a term of B[a]
/// (Prop. 4.11). `f_section` is the bundled section equality of f.
pub fn app_term(
    env: &Env,
    f: &CtxMor,
    a: &CtxMor,
    f_section: Arc<EqDerivation>,
) -> Result<CtxMor> {
    env.require_feature("pi")?;
    let (gamma, cod_f) = mor_boundary(env, f)?;
    let (_, pi_ty) = crate::synth::split_ext(env, &cod_f).ok_or_else(|| {
        CheckError::IllFormedSubterm {
            path: format!("app_term({f},{a})"),
            reason: "f does not land in an extension".into(),
        }
    })?;
    let (aty, bty) = match pi_ty.node() {
        TyNode::Pi(x, y) => (x.clone(), y.clone()),
        _ => {
            return Err(CheckError::IllFormedSubterm {
                path: format!("app_term({f},{a})"),
                reason: format!("f has type {pi_ty}, not a Pi"),
            })
        }
    };
    let p_a = CtxMor::proj(aty.clone());
    let w1 = CtxMor::comp(f.clone(), p_a.clone());
    let p2_w1 = CtxMor::p2(w1.clone());
    let p_pi = CtxMor::proj(pi_ty.clone());
    let coerced = if env.split() {
        p2_w1
    } else {
        // Π(A,B)[π_Π ∘ (f ∘ π_A)] → Π(A,B)[π_A]
        let lhs_sub = CtxMor::comp(p_pi.clone(), w1.clone());
        let ev = EqDerivation::trans_chain(vec![
            d_assoc(&p_pi, f, &p_a),
            d_cong_pre(&p_a, f_section),
            d_unit_l(&p_a),
        ]);
        let ext_a_ctx = Ctx::ext(gamma.clone(), aty.clone());
        let fix = TyMor::iso_sub(pi_ty.clone(), lhs_sub, p_a.clone(), ev, Dir::Fwd);
        CtxMor::comp(CtxMor::ext_mor(ext_a_ctx, fix), CtxMor::p2(w1.clone()))
    };
    let app = CtxMor::app(aty.clone(), bty.clone());
    let ca = CtxMor::comp(coerced.clone(), a.clone());
    let w2 = CtxMor::comp(app.clone(), ca.clone());
    if env.split() {
        return Ok(CtxMor::p2(w2));
    }
    // π_B ∘ w2 ≡ a, so the raw p₂ lands in B[π_B ∘ w2]; transport to B[a].
    let p_b = CtxMor::proj(bty.clone());
    let pi_weak = Ty::sub(pi_ty.clone(), p_a.clone());
    let p_piw = CtxMor::proj(pi_weak);
    let ev2 = EqDerivation::trans_chain(vec![
        d_assoc(&p_b, &app, &ca),
        d_cong_pre(
            &ca,
            EqDerivation::rule_at(
                "pi-elim",
                1,
                Inst::new().bind("A", aty.clone()).bind("B", bty.clone()),
            ),
        ),
        d_assoc(&p_piw, &coerced, a),
        d_cong_pre(a, proj_through_coerced(env, &coerced)?),
        d_unit_l(a),
    ]);
    let sub_v = CtxMor::comp(p_b, w2.clone());
    let fix2 = TyMor::iso_sub(bty, sub_v, a.clone(), ev2, Dir::Fwd);
    Ok(CtxMor::comp(
        CtxMor::ext_mor(gamma, fix2),
        CtxMor::p2(w2),
    ))
}

/// π ∘ coerced ≡ 1 for the coerced p₂ shapes produced above.
fn proj_through_coerced(env: &Env, coerced: &CtxMor) -> Result<Arc<EqDerivation>> {
    match coerced.node() {
        CtxMorNode::P2(w) => Ok(d_sub_proj1(w)),
        CtxMorNode::Comp(ext, p2) => {
            let iso = match ext.node() {
                CtxMorNode::ExtMor(_, i) => i.clone(),
                _ => {
                    return Err(CheckError::IllFormedSubterm {
                        path: coerced.to_string(),
                        reason: "unexpected coerced p₂ shape".into(),
                    })
                }
            };
            let w = match p2.node() {
                CtxMorNode::P2(w) => w.clone(),
                _ => {
                    return Err(CheckError::IllFormedSubterm {
                        path: coerced.to_string(),
                        reason: "unexpected coerced p₂ shape".into(),
                    })
                }
            };
            let (_, _, cod_iso) = tymor_boundary(env, &iso)?;
            // π ∘ (Γ.i ∘ p₂(w)) ≡ (π ∘ Γ.i) ∘ p₂(w) ≡ π' ∘ p₂(w) ≡ 1
            Ok(EqDerivation::trans_chain(vec![
                d_assoc(&CtxMor::proj(cod_iso), ext, p2),
                d_cong_pre(p2, d_ext_c(&iso)),
                d_sub_proj1(&w),
            ]))
        }
        _ => Err(CheckError::IllFormedSubterm {
            path: coerced.to_string(),
            reason: "unexpected coerced p₂ shape".into(),
        }),
    }
}

/// (proj₁ p, proj₂ p) for a term p of Σ(A,B) (Prop. 4.15). Returns
/// ((proj₁ p, its section derivation), proj₂ p); proj₂ p synthesizes at
/// B[proj₁ p] on the nose.
pub fn sigma_proj_terms(
    env: &Env,
    p: &CtxMor,
    p_section: Arc<EqDerivation>,
) -> Result<((CtxMor, Arc<EqDerivation>), CtxMor)> {
    env.require_feature("sigma")?;
    let (_gamma, cod_p) = mor_boundary(env, p)?;
    let (_, sig_ty) = crate::synth::split_ext(env, &cod_p).ok_or_else(|| {
        CheckError::IllFormedSubterm {
            path: format!("sigma_proj_terms({p})"),
            reason: "p does not land in an extension".into(),
        }
    })?;
    let (aty, bty) = match sig_ty.node() {
        TyNode::Sigma(x, y) => (x.clone(), y.clone()),
        _ => {
            return Err(CheckError::IllFormedSubterm {
                path: format!("sigma_proj_terms({p})"),
                reason: format!("p has type {sig_ty}, not a Sigma"),
            })
        }
    };
    let unpair = CtxMor::sigma_proj(aty.clone(), bty.clone());
    let w = CtxMor::comp(unpair.clone(), p.clone());
    let p_b = CtxMor::proj(bty.clone());
    let proj1 = CtxMor::comp(p_b.clone(), w.clone());
    let proj2 = CtxMor::p2(w.clone());
    let p_a = CtxMor::proj(aty.clone());
    let p_sig = CtxMor::proj(sig_ty.clone());
    let pair = CtxMor::sigma_pair(aty.clone(), bty.clone());
    // π_A ∘ (π_B ∘ (unpair∘p)) ≡ (π_A∘π_B) ∘ (unpair∘p)
    //   ≡ (π_Σ∘pair) ∘ (unpair∘p) ≡ π_Σ ∘ (pair∘(unpair∘p)) ≡ π_Σ ∘ p ≡ 1
    let section = EqDerivation::trans_chain(vec![
        d_assoc(&p_a, &p_b, &w),
        d_cong_pre(
            &w,
            EqDerivation::sym(EqDerivation::rule_at(
                "sigma-intro",
                1,
                Inst::new().bind("A", aty.clone()).bind("B", bty.clone()),
            )),
        ),
        EqDerivation::sym(d_assoc(&p_sig, &pair, &w)),
        d_cong_post(
            &p_sig,
            EqDerivation::trans_chain(vec![
                d_assoc(&pair, &unpair, p),
                d_cong_pre(
                    p,
                    EqDerivation::rule(
                        "sigma-eta",
                        Inst::new().bind("A", aty.clone()).bind("B", bty.clone()),
                    ),
                ),
                d_unit_l(p),
            ]),
        ),
        p_section,
    ]);
    Ok(((proj1, section), proj2))
}
