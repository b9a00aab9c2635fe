//! Syntax-directed judgment synthesis.
//!
//! Every constructor synthesizes a unique judgment or fails. Boundary
//! comparisons are structural in non-split mode; in split mode contexts and
//! types are compared modulo the oriented rewrite system, mirroring the
//! type-equality judgment of the split calculus.

use crate::env::{Env, Mode};
use crate::error::{CheckError, Result};
use crate::kernel::rewrite;
use crate::syntax::judgment::Judgment;
use crate::syntax::term::{Ctx, CtxMor, CtxMorNode, CtxNode, Ty, TyMor, TyMorNode, TyNode};
use crate::theory::elab;

/// `synthesize_ctx(c)` per the syntax module contract.
pub fn synthesize_ctx(env: &Env, c: &Ctx) -> Result<Judgment> {
    check_ctx(env, c)?;
    Ok(Judgment::IsCtx(c.clone()))
}

pub fn synthesize_ty(env: &Env, a: &Ty) -> Result<Judgment> {
    let ctx = ty_ctx(env, a)?;
    Ok(Judgment::IsTy {
        ctx,
        ty: a.clone(),
    })
}

pub fn synthesize_ctxmor(env: &Env, s: &CtxMor) -> Result<Judgment> {
    let (dom, cod) = mor_boundary(env, s)?;
    Ok(Judgment::CtxMorJ {
        dom,
        mor: s.clone(),
        cod,
    })
}

pub fn synthesize_tymor(env: &Env, t: &TyMor) -> Result<Judgment> {
    let (ctx, dom, cod) = tymor_boundary(env, t)?;
    Ok(Judgment::TyMorJ {
        ctx,
        dom,
        mor: t.clone(),
        cod,
    })
}

/// Checks well-formedness of an arbitrary judgment (both sides of equalities
/// must synthesize with matching boundary).
pub fn check_judgment_wf(env: &Env, j: &Judgment) -> Result<()> {
    match j {
        Judgment::IsCtx(c) => check_ctx(env, c),
        Judgment::IsTy { ctx, ty } => {
            let found = ty_ctx(env, ty)?;
            expect_ctx_eq(env, ctx, &found, "is-ty")
        }
        Judgment::CtxMorJ { dom, mor, cod } => {
            let (d, c) = mor_boundary(env, mor)?;
            expect_ctx_eq(env, dom, &d, "ctxmor dom")?;
            expect_ctx_eq(env, cod, &c, "ctxmor cod")
        }
        Judgment::CtxMorEq { dom, lhs, rhs, cod } => {
            let (dl, cl) = mor_boundary(env, lhs)?;
            let (dr, cr) = mor_boundary(env, rhs)?;
            expect_ctx_eq(env, &dl, &dr, "eq sides dom")?;
            expect_ctx_eq(env, &cl, &cr, "eq sides cod")?;
            expect_ctx_eq(env, dom, &dl, "eq dom")?;
            expect_ctx_eq(env, cod, &cl, "eq cod")
        }
        Judgment::TyMorJ { ctx, dom, mor, cod } => {
            let (c, d, cd) = tymor_boundary(env, mor)?;
            expect_ctx_eq(env, ctx, &c, "tymor ctx")?;
            expect_ty_eq(env, dom, &d, "tymor dom")?;
            expect_ty_eq(env, cod, &cd, "tymor cod")
        }
        Judgment::TyMorEq {
            ctx,
            dom,
            lhs,
            rhs,
            cod,
        } => {
            let (c1, d1, e1) = tymor_boundary(env, lhs)?;
            let (c2, d2, e2) = tymor_boundary(env, rhs)?;
            expect_ctx_eq(env, &c1, &c2, "eq sides ctx")?;
            expect_ty_eq(env, &d1, &d2, "eq sides dom")?;
            expect_ty_eq(env, &e1, &e2, "eq sides cod")?;
            expect_ctx_eq(env, ctx, &c1, "eq ctx")?;
            expect_ty_eq(env, dom, &d1, "eq dom")?;
            expect_ty_eq(env, cod, &e1, "eq cod")
        }
        Judgment::TyEq { ctx, lhs, rhs } => {
            if env.mode != Mode::Split {
                return Err(CheckError::NotSplitMode);
            }
            let c1 = ty_ctx(env, lhs)?;
            let c2 = ty_ctx(env, rhs)?;
            expect_ctx_eq(env, &c1, &c2, "ty-eq sides")?;
            expect_ctx_eq(env, ctx, &c1, "ty-eq ctx")
        }
    }
}

pub fn check_ctx(env: &Env, c: &Ctx) -> Result<()> {
    if env.memo_ctx.borrow().contains_key(&c.ptr_id()) {
        return Ok(());
    }
    match c.node() {
        CtxNode::Const(_) => {}
        CtxNode::Empty => env.require_feature("empty")?,
        CtxNode::Ext(base, ty) => {
            check_ctx(env, base)?;
            let found = ty_ctx(env, ty).map_err(|e| CheckError::IllFormedType {
                path: format!("ext({base},{ty})"),
                reason: e.to_string(),
            })?;
            if !ctx_eq(env, base, &found) {
                return Err(CheckError::IllFormedType {
                    path: format!("ext({base},{ty})"),
                    reason: format!("type lives in {found}, not in {base}"),
                });
            }
        }
    }
    env.memo_ctx.borrow_mut().insert(c.ptr_id(), (c.clone(), ()));
    Ok(())
}

/// Context a type lives in.
pub fn ty_ctx(env: &Env, a: &Ty) -> Result<Ctx> {
    if let Some((_, c)) = env.memo_ty.borrow().get(&a.ptr_id()) {
        return Ok(c.clone());
    }
    let ctx = match a.node() {
        TyNode::Const(_, c) => {
            check_ctx(env, c)?;
            c.clone()
        }
        TyNode::Sub(t, s) => {
            let (dom, cod) = mor_boundary(env, s)?;
            let ct = ty_ctx(env, t)?;
            expect_ctx_eq(env, &cod, &ct, "sub-ty")?;
            dom
        }
        TyNode::Pi(x, y) => {
            env.require_feature("pi")?;
            binder_ctx(env, x, y, "pi-form")?
        }
        TyNode::Sigma(x, y) => {
            env.require_feature("sigma")?;
            binder_ctx(env, x, y, "sigma-form")?
        }
        TyNode::Id(x) => {
            env.require_feature("id")?;
            let cx = ty_ctx(env, x)?;
            let ext = Ctx::ext(cx, x.clone());
            let weakened = Ty::sub(x.clone(), CtxMor::proj(x.clone()));
            Ctx::ext(ext, weakened)
        }
    };
    env.memo_ty
        .borrow_mut()
        .insert(a.ptr_id(), (a.clone(), ctx.clone()));
    Ok(ctx)
}

fn binder_ctx(env: &Env, a: &Ty, b: &Ty, rule: &str) -> Result<Ctx> {
    let ca = ty_ctx(env, a)?;
    let cb = ty_ctx(env, b)?;
    let expected = Ctx::ext(ca.clone(), a.clone());
    if !ctx_eq(env, &cb, &expected) {
        return Err(CheckError::ContextMismatch {
            expected: expected.to_string(),
            found: cb.to_string(),
            path: rule.to_string(),
        });
    }
    Ok(ca)
}

/// Domain and codomain of a context morphism.
pub fn mor_boundary(env: &Env, s: &CtxMor) -> Result<(Ctx, Ctx)> {
    if let Some((_, b)) = env.memo_ctxmor.borrow().get(&s.ptr_id()) {
        return Ok(b.clone());
    }
    let b = mor_boundary_uncached(env, s)?;
    env.memo_ctxmor
        .borrow_mut()
        .insert(s.ptr_id(), (s.clone(), b.clone()));
    Ok(b)
}

fn mor_boundary_uncached(env: &Env, s: &CtxMor) -> Result<(Ctx, Ctx)> {
    match s.node() {
        CtxMorNode::Const(_, dom, cod) => {
            check_ctx(env, dom)?;
            check_ctx(env, cod)?;
            Ok((dom.clone(), cod.clone()))
        }
        CtxMorNode::Id(c) => {
            check_ctx(env, c)?;
            Ok((c.clone(), c.clone()))
        }
        CtxMorNode::Comp(after, before) => {
            let (d1, c1) = mor_boundary(env, before)?;
            let (d2, c2) = mor_boundary(env, after)?;
            if !ctx_eq(env, &c1, &d2) {
                return Err(CheckError::ContextMismatch {
                    expected: d2.to_string(),
                    found: c1.to_string(),
                    path: format!("comp({after},{before})"),
                });
            }
            Ok((d1, c2))
        }
        CtxMorNode::Proj(a) => {
            let ca = ty_ctx(env, a)?;
            Ok((Ctx::ext(ca.clone(), a.clone()), ca))
        }
        CtxMorNode::ExtMor(c, t) => {
            let (ct, d, cd) = tymor_boundary(env, t)?;
            expect_ctx_eq(env, c, &ct, "ext-tm")?;
            Ok((Ctx::ext(c.clone(), d), Ctx::ext(c.clone(), cd)))
        }
        CtxMorNode::Pair(sub, section) => {
            let (gs, ds) = mor_boundary(env, sub)?;
            let (gt, et) = mor_boundary(env, section)?;
            expect_ctx_eq(env, &gt, &gs, "sub-ext")?;
            let (base_ty, applied) = split_sub_ty(env, &et, &gs)?;
            let matches_sub = if env.split() {
                applied == *sub
            } else {
                mor_eq(env, &applied, sub)
            };
            let (base_ty, _applied) = if matches_sub {
                (base_ty, applied)
            } else if env.split() {
                // the section's type may only split as A[s] after fusing
                // substitutions; find the decomposition whose applied part
                // matches `sub` as a composition suffix
                match split_sub_ty_against(env, &et, &gs, sub)? {
                    Some(pair) => pair,
                    None => {
                        return Err(CheckError::NotASection {
                            path: format!("pair({sub},{section})"),
                            reason: format!(
                                "section has type {base_ty}[{applied}], expected substitution {sub}"
                            ),
                        })
                    }
                }
            } else {
                return Err(CheckError::NotASection {
                    path: format!("pair({sub},{section})"),
                    reason: format!(
                        "section has type {base_ty}[{applied}], expected substitution {sub}"
                    ),
                });
            };
            let cb = ty_ctx(env, &base_ty)?;
            expect_ctx_eq(env, &cb, &ds, "sub-ext type")?;
            section_obligation(env, section, &gs, &et)?;
            Ok((gs, Ctx::ext(ds, base_ty)))
        }
        CtxMorNode::P2(inner) => {
            let (g, e) = mor_boundary(env, inner)?;
            let (d0, a) = split_ext(env, &e).ok_or_else(|| CheckError::IllFormedSubterm {
                path: format!("p2({inner})"),
                reason: format!("codomain {e} is not a context extension"),
            })?;
            let _ = d0;
            let subst = CtxMor::comp(CtxMor::proj(a.clone()), inner.clone());
            Ok((g.clone(), Ctx::ext(g, Ty::sub(a, subst))))
        }
        CtxMorNode::Bang(c) => {
            env.require_feature("empty")?;
            check_ctx(env, c)?;
            Ok((c.clone(), Ctx::empty()))
        }
        CtxMorNode::Lam(body) => {
            env.require_feature("pi")?;
            let (gb, eb) = mor_boundary(env, body)?;
            let (gamma, a) = split_ext(env, &gb).ok_or_else(|| CheckError::NotASection {
                path: format!("lam({body})"),
                reason: format!("domain {gb} is not an extension"),
            })?;
            let (b, _) = split_ext_over(env, &eb, &gb).ok_or_else(|| CheckError::NotASection {
                path: format!("lam({body})"),
                reason: format!("body codomain {eb} does not extend {gb}"),
            })?;
            section_obligation(env, body, &gb, &eb)?;
            Ok((
                gamma.clone(),
                Ctx::ext(gamma, Ty::pi(a, b)),
            ))
        }
        CtxMorNode::App(a, b) => {
            env.require_feature("pi")?;
            let ca = binder_ctx(env, a, b, "pi-elim")?;
            let ext_a = Ctx::ext(ca, a.clone());
            let pi = Ty::pi(a.clone(), b.clone());
            let dom = Ctx::ext(ext_a.clone(), Ty::sub(pi, CtxMor::proj(a.clone())));
            let cod = Ctx::ext(ext_a, b.clone());
            Ok((dom, cod))
        }
        CtxMorNode::SigmaPair(a, b) => {
            env.require_feature("sigma")?;
            let ca = binder_ctx(env, a, b, "sigma-intro")?;
            let ext_a = Ctx::ext(ca.clone(), a.clone());
            Ok((
                Ctx::ext(ext_a, b.clone()),
                Ctx::ext(ca, Ty::sigma(a.clone(), b.clone())),
            ))
        }
        CtxMorNode::SigmaProj(a, b) => {
            env.require_feature("sigma")?;
            let ca = binder_ctx(env, a, b, "sigma-elim")?;
            let ext_a = Ctx::ext(ca.clone(), a.clone());
            Ok((
                Ctx::ext(ca, Ty::sigma(a.clone(), b.clone())),
                Ctx::ext(ext_a, b.clone()),
            ))
        }
        CtxMorNode::Refl(a) => {
            env.require_feature("id")?;
            let ca = ty_ctx(env, a)?;
            let ext_a = Ctx::ext(ca.clone(), a.clone());
            let id_ctx = id_context(&ca, a);
            Ok((ext_a, Ctx::ext(id_ctx, Ty::id(a.clone()))))
        }
        CtxMorNode::J(a, c, d) => {
            env.require_feature("id")?;
            let ca = ty_ctx(env, a)?;
            let ext_a = Ctx::ext(ca.clone(), a.clone());
            let i_ctx = Ctx::ext(id_context(&ca, a), Ty::id(a.clone()));
            let cc = ty_ctx(env, c)?;
            expect_ctx_eq(env, &cc, &i_ctx, "id-elim motive")?;
            let (gd, ed) = mor_boundary(env, d)?;
            expect_ctx_eq(env, &gd, &ext_a, "id-elim base dom")?;
            let expected = Ctx::ext(i_ctx.clone(), c.clone());
            expect_ctx_eq(env, &ed, &expected, "id-elim base cod")?;
            // side condition: π_C ∘ d ≡ r_A
            let goal = Judgment::CtxMorEq {
                dom: ext_a,
                lhs: CtxMor::comp(CtxMor::proj(c.clone()), d.clone()),
                rhs: CtxMor::refl(a.clone()),
                cod: i_ctx.clone(),
            };
            if !eq_holds(env, &goal) {
                return Err(CheckError::missing_side_condition("id-elim", &goal));
            }
            Ok((i_ctx, expected))
        }
    }
}

/// Γ.A.A[π_A] given Γ: the context of Id_A.
pub fn id_context(ca: &Ctx, a: &Ty) -> Ctx {
    let ext_a = Ctx::ext(ca.clone(), a.clone());
    let weakened = Ty::sub(a.clone(), CtxMor::proj(a.clone()));
    Ctx::ext(ext_a, weakened)
}

/// Vertical boundary of a type morphism: (ambient context, domain, codomain).
pub fn tymor_boundary(env: &Env, t: &TyMor) -> Result<(Ctx, Ty, Ty)> {
    if let Some((_, b)) = env.memo_tymor.borrow().get(&t.ptr_id()) {
        return Ok(b.clone());
    }
    let b = tymor_boundary_uncached(env, t)?;
    env.memo_tymor
        .borrow_mut()
        .insert(t.ptr_id(), (t.clone(), b.clone()));
    Ok(b)
}

fn tymor_boundary_uncached(env: &Env, t: &TyMor) -> Result<(Ctx, Ty, Ty)> {
    match t.node() {
        TyMorNode::Const(_, dom, cod) => {
            let cd = ty_ctx(env, dom)?;
            let cc = ty_ctx(env, cod)?;
            expect_ctx_eq(env, &cd, &cc, "tymor-const")?;
            Ok((cd, dom.clone(), cod.clone()))
        }
        TyMorNode::Id(a) => {
            let ca = ty_ctx(env, a)?;
            Ok((ca, a.clone(), a.clone()))
        }
        TyMorNode::Comp(after, before) => {
            let (c1, d1, e1) = tymor_boundary(env, before)?;
            let (c2, d2, e2) = tymor_boundary(env, after)?;
            expect_ctx_eq(env, &c1, &c2, "ty-mor-comp ctx")?;
            if !ty_eq(env, &e1, &d2) {
                return Err(CheckError::BoundaryMismatch {
                    path: format!("comp({after},{before})"),
                    reason: format!("middle types {e1} vs {d2}"),
                });
            }
            Ok((c1, d1, e2))
        }
        TyMorNode::Sub(inner, s) => {
            let (ct, d, cd) = tymor_boundary(env, inner)?;
            let (gs, ds) = mor_boundary(env, s)?;
            expect_ctx_eq(env, &ct, &ds, "sub-tm")?;
            Ok((gs, Ty::sub(d, s.clone()), Ty::sub(cd, s.clone())))
        }
        TyMorNode::IsoId(a, dir) => {
            let ca = ty_ctx(env, a)?;
            let lhs = Ty::sub(a.clone(), CtxMor::id(ca.clone()));
            Ok(orient(ca, lhs, a.clone(), *dir))
        }
        TyMorNode::IsoComp(a, outer, inner, dir) => {
            let (di, ci) = mor_boundary(env, inner)?;
            let (do_, co) = mor_boundary(env, outer)?;
            expect_ctx_eq(env, &ci, &do_, "sub-comp factors")?;
            let ca = ty_ctx(env, a)?;
            expect_ctx_eq(env, &ca, &co, "sub-comp type")?;
            let fused = Ty::sub(a.clone(), CtxMor::comp(outer.clone(), inner.clone()));
            let iterated = Ty::sub(Ty::sub(a.clone(), outer.clone()), inner.clone());
            Ok(orient(di, fused, iterated, *dir))
        }
        TyMorNode::IsoSub(a, l, r, ev, dir) => {
            let (dl, cl) = mor_boundary(env, l)?;
            let (dr, cr) = mor_boundary(env, r)?;
            expect_ctx_eq(env, &dl, &dr, "sub-cong dom")?;
            expect_ctx_eq(env, &cl, &cr, "sub-cong cod")?;
            let ca = ty_ctx(env, a)?;
            expect_ctx_eq(env, &ca, &cl, "sub-cong type")?;
            let want = Judgment::CtxMorEq {
                dom: dl.clone(),
                lhs: l.clone(),
                rhs: r.clone(),
                cod: cl.clone(),
            };
            let got = crate::kernel::check::check_eq(env, ev)
                .map_err(|e| CheckError::StaleEvidence(e.to_string()))?;
            if !eq_judgment_matches(env, &got, &want) {
                return Err(CheckError::StaleEvidence(format!(
                    "evidence proves {got}, node claims {want}"
                )));
            }
            Ok(orient(
                dl,
                Ty::sub(a.clone(), l.clone()),
                Ty::sub(a.clone(), r.clone()),
                *dir,
            ))
        }
        TyMorNode::IsoPi(a, b, s, dir) => {
            env.require_feature("pi")?;
            let ca = binder_ctx(env, a, b, "pi-sub")?;
            let (gs, ds) = mor_boundary(env, s)?;
            expect_ctx_eq(env, &ds, &ca, "pi-sub substitution")?;
            let lifted = elab::lift(env, s, a)?;
            let pushed = Ty::pi(Ty::sub(a.clone(), s.clone()), Ty::sub(b.clone(), lifted));
            let outer = Ty::sub(Ty::pi(a.clone(), b.clone()), s.clone());
            Ok(orient(gs, pushed, outer, *dir))
        }
        TyMorNode::IsoSigma(a, b, s, dir) => {
            env.require_feature("sigma")?;
            let ca = binder_ctx(env, a, b, "sigma-sub")?;
            let (gs, ds) = mor_boundary(env, s)?;
            expect_ctx_eq(env, &ds, &ca, "sigma-sub substitution")?;
            let lifted = elab::lift(env, s, a)?;
            let pushed = Ty::sigma(Ty::sub(a.clone(), s.clone()), Ty::sub(b.clone(), lifted));
            let outer = Ty::sub(Ty::sigma(a.clone(), b.clone()), s.clone());
            Ok(orient(gs, pushed, outer, *dir))
        }
        TyMorNode::IsoIdTy(a, s, dir) => {
            env.require_feature("id")?;
            let ca = ty_ctx(env, a)?;
            let (gs, ds) = mor_boundary(env, s)?;
            expect_ctx_eq(env, &ds, &ca, "id-sub substitution")?;
            let _ = gs;
            let a_s = Ty::sub(a.clone(), s.clone());
            let lhs = Ty::id(a_s);
            let u = elab::id_sub_base(env, s, a)?;
            let rhs = Ty::sub(Ty::id(a.clone()), u);
            let ctx = ty_ctx(env, &lhs)?;
            Ok(orient(ctx, lhs, rhs, *dir))
        }
        TyMorNode::PiMap(f, g) => {
            env.require_feature("pi")?;
            let (cf, a_prime, a) = tymor_boundary(env, f)?;
            let (cg, dg, b_prime) = tymor_boundary(env, g)?;
            let expected_cg = Ctx::ext(cf.clone(), a_prime.clone());
            if !ctx_eq(env, &cg, &expected_cg) {
                return Err(CheckError::VarianceError {
                    path: format!("pi-map({f},{g})"),
                    reason: format!(
                        "second argument must live over {expected_cg}, found {cg}"
                    ),
                });
            }
            let chi_f = CtxMor::ext_mor(cf.clone(), f.clone());
            let b = match dg.node() {
                TyNode::Sub(b, w) if *w == chi_f => b.clone(),
                _ => match match_family_sub(env, &dg, &chi_f) {
                    Some(b) => b,
                    None => {
                        return Err(CheckError::VarianceError {
                            path: format!("pi-map({f},{g})"),
                            reason: format!(
                                "second argument's domain must be B[{}.{f}], found {dg}",
                                cf
                            ),
                        })
                    }
                },
            };
            let cb = ty_ctx(env, &b)?;
            let expected_cb = Ctx::ext(cf.clone(), a.clone());
            expect_ctx_eq(env, &cb, &expected_cb, "pi-map cod family")?;
            Ok((
                cf,
                Ty::pi(a, b),
                Ty::pi(a_prime, b_prime),
            ))
        }
        TyMorNode::SigmaMap(f, g) => {
            env.require_feature("sigma")?;
            let (cf, a, a_prime) = tymor_boundary(env, f)?;
            let (cg, b, cg_cod) = tymor_boundary(env, g)?;
            let expected_cg = Ctx::ext(cf.clone(), a.clone());
            if !ctx_eq(env, &cg, &expected_cg) {
                return Err(CheckError::VarianceError {
                    path: format!("sigma-map({f},{g})"),
                    reason: format!(
                        "second argument must live over {expected_cg}, found {cg}"
                    ),
                });
            }
            let chi_f = CtxMor::ext_mor(cf.clone(), f.clone());
            let b_prime = match cg_cod.node() {
                TyNode::Sub(bp, w) if *w == chi_f => bp.clone(),
                _ => match match_family_sub(env, &cg_cod, &chi_f) {
                    Some(bp) => bp,
                    None => {
                        return Err(CheckError::VarianceError {
                            path: format!("sigma-map({f},{g})"),
                            reason: format!(
                                "second argument's codomain must be B'[{}.{f}], found {cg_cod}",
                                cf
                            ),
                        })
                    }
                },
            };
            let cbp = ty_ctx(env, &b_prime)?;
            let expected_cbp = Ctx::ext(cf.clone(), a_prime.clone());
            expect_ctx_eq(env, &cbp, &expected_cbp, "sigma-map cod family")?;
            Ok((
                cf,
                Ty::sigma(a, b),
                Ty::sigma(a_prime, b_prime),
            ))
        }
        TyMorNode::IdMap(inner) => {
            env.require_feature("id")?;
            let (ct, a, b) = tymor_boundary(env, inner)?;
            let _ = ct;
            let diag = elab::diagonal_square_mor(env, inner)?;
            let ctx = id_ctx_of(env, &a)?;
            Ok((
                ctx,
                Ty::id(a),
                Ty::sub(Ty::id(b), diag),
            ))
        }
    }
}

fn id_ctx_of(env: &Env, a: &Ty) -> Result<Ctx> {
    let ca = ty_ctx(env, a)?;
    let ext = Ctx::ext(ca, a.clone());
    Ok(Ctx::ext(
        ext,
        Ty::sub(a.clone(), CtxMor::proj(a.clone())),
    ))
}

fn orient(ctx: Ctx, from: Ty, to: Ty, dir: crate::syntax::term::Dir) -> (Ctx, Ty, Ty) {
    match dir {
        crate::syntax::term::Dir::Fwd => (ctx, from, to),
        crate::syntax::term::Dir::Bwd => (ctx, to, from),
    }
}

/// Destructures E as Γ.T, returning (base, T).
pub fn split_ext(env: &Env, e: &Ctx) -> Option<(Ctx, Ty)> {
    match e.node() {
        CtxNode::Ext(b, t) => Some((b.clone(), t.clone())),
        _ => {
            if env.split() {
                let n = rewrite::nf_ctx(env, e).ok()?;
                match n.node() {
                    CtxNode::Ext(b, t) => Some((b.clone(), t.clone())),
                    _ => None,
                }
            } else {
                None
            }
        }
    }
}

/// Destructures E as Γ₀.T where Γ₀ must equal `over`; returns (T, Γ₀).
fn split_ext_over(env: &Env, e: &Ctx, over: &Ctx) -> Option<(Ty, Ctx)> {
    let (b, t) = split_ext(env, e)?;
    if ctx_eq(env, &b, over) {
        Some((t, b))
    } else {
        None
    }
}

/// Destructures a section codomain Γ.(A[s]) into (A, s), reporting mismatch
/// against the expected Γ.
fn split_sub_ty(env: &Env, e: &Ctx, gamma: &Ctx) -> Result<(Ty, CtxMor)> {
    let (b, t) = split_ext(env, e).ok_or_else(|| CheckError::NotASection {
        path: e.to_string(),
        reason: "section codomain is not an extension".into(),
    })?;
    if !ctx_eq(env, &b, gamma) {
        return Err(CheckError::NotASection {
            path: e.to_string(),
            reason: format!("section codomain extends {b}, not {gamma}"),
        });
    }
    match t.node() {
        TyNode::Sub(a, s) => Ok((a.clone(), s.clone())),
        _ => Err(CheckError::NotASection {
            path: e.to_string(),
            reason: format!("section type {t} is not a substituted type"),
        }),
    }
}

/// The two-judgment bundle of an MLTT term: t must be a section of the
/// projection out of its codomain.
pub fn section_obligation(env: &Env, t: &CtxMor, gamma: &Ctx, ext: &Ctx) -> Result<()> {
    match t.node() {
        // sections by their own rule's conclusion
        CtxMorNode::P2(_) | CtxMorNode::Lam(_) | CtxMorNode::J(..) => return Ok(()),
        // Γ.c ∘ x is a section whenever x is (by ext-c)
        CtxMorNode::Comp(head, rest) if matches!(head.node(), CtxMorNode::ExtMor(..)) => {
            let (g2, e2) = mor_boundary(env, rest)?;
            if section_obligation(env, rest, &g2, &e2).is_ok() {
                return Ok(());
            }
        }
        // π_A ∘ (s, t) ≡ s, so a pair is a section when s ≡ 1
        CtxMorNode::Pair(s0, _) => {
            let goal = Judgment::CtxMorEq {
                dom: gamma.clone(),
                lhs: s0.clone(),
                rhs: CtxMor::id(gamma.clone()),
                cod: gamma.clone(),
            };
            if eq_holds(env, &goal) {
                return Ok(());
            }
        }
        _ => {}
    }
    let (_, a) = split_ext(env, ext).ok_or_else(|| CheckError::NotASection {
        path: t.to_string(),
        reason: "codomain is not an extension".into(),
    })?;
    let goal = Judgment::CtxMorEq {
        dom: gamma.clone(),
        lhs: CtxMor::comp(CtxMor::proj(a), t.clone()),
        rhs: CtxMor::id(gamma.clone()),
        cod: gamma.clone(),
    };
    if eq_holds(env, &goal) {
        Ok(())
    } else {
        Err(CheckError::NotASection {
            path: t.to_string(),
            reason: format!("cannot discharge {goal}"),
        })
    }
}

/// Discharges an equality side condition: structurally, by the split
/// decision procedure, or against the fact store.
pub fn eq_holds(env: &Env, goal: &Judgment) -> bool {
    match goal {
        Judgment::CtxMorEq { lhs, rhs, .. } => {
            if lhs == rhs {
                return true;
            }
            if env.facts.contains(goal) {
                return true;
            }
            // in non-split mode the normalizer only fires Fig. 5/6 rules,
            // so this comparison stays derivable
            if let (Ok(nl), Ok(nr)) =
                (rewrite::nf_ctxmor(env, lhs), rewrite::nf_ctxmor(env, rhs))
            {
                return nl == nr;
            }
            false
        }
        Judgment::TyMorEq { lhs, rhs, .. } => {
            if lhs == rhs {
                return true;
            }
            if env.facts.contains(goal) {
                return true;
            }
            if let (Ok(nl), Ok(nr)) =
                (rewrite::nf_tymor(env, lhs), rewrite::nf_tymor(env, rhs))
            {
                return nl == nr;
            }
            false
        }
        Judgment::TyEq { lhs, rhs, .. } => {
            if lhs == rhs {
                return true;
            }
            env.split() && ty_eq(env, lhs, rhs)
        }
        _ => false,
    }
}

/// Mode-aware context identity.
pub fn ctx_eq(env: &Env, a: &Ctx, b: &Ctx) -> bool {
    if a == b {
        return true;
    }
    if env.split() {
        match (rewrite::nf_ctx(env, a), rewrite::nf_ctx(env, b)) {
            (Ok(na), Ok(nb)) => na == nb,
            _ => false,
        }
    } else {
        false
    }
}

pub fn ty_eq(env: &Env, a: &Ty, b: &Ty) -> bool {
    if a == b {
        return true;
    }
    if env.split() {
        match (rewrite::nf_ty(env, a), rewrite::nf_ty(env, b)) {
            (Ok(na), Ok(nb)) => na == nb,
            _ => false,
        }
    } else {
        false
    }
}

pub fn mor_eq(env: &Env, a: &CtxMor, b: &CtxMor) -> bool {
    if a == b {
        return true;
    }
    if env.split() {
        match (rewrite::nf_ctxmor(env, a), rewrite::nf_ctxmor(env, b)) {
            (Ok(na), Ok(nb)) => na == nb,
            _ => false,
        }
    } else {
        false
    }
}

pub fn tymor_eq(env: &Env, a: &TyMor, b: &TyMor) -> bool {
    if a == b {
        return true;
    }
    if env.split() {
        match (rewrite::nf_tymor(env, a), rewrite::nf_tymor(env, b)) {
            (Ok(na), Ok(nb)) => na == nb,
            _ => false,
        }
    } else {
        false
    }
}

fn expect_ctx_eq(env: &Env, expected: &Ctx, found: &Ctx, path: &str) -> Result<()> {
    if ctx_eq(env, expected, found) {
        Ok(())
    } else {
        Err(CheckError::ContextMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
            path: path.to_string(),
        })
    }
}

fn expect_ty_eq(env: &Env, expected: &Ty, found: &Ty, path: &str) -> Result<()> {
    if ty_eq(env, expected, found) {
        Ok(())
    } else {
        Err(CheckError::BoundaryMismatch {
            path: path.to_string(),
            reason: format!("expected type {expected}, found {found}"),
        })
    }
}

/// Equality-judgment comparison used for evidence validation: sides must be
/// the claimed terms; boundaries may differ up to the ambient mode's
/// convertibility.
pub fn eq_judgment_matches(env: &Env, got: &Judgment, want: &Judgment) -> bool {
    match (got, want) {
        (
            Judgment::CtxMorEq {
                dom: d1,
                lhs: l1,
                rhs: r1,
                cod: c1,
            },
            Judgment::CtxMorEq {
                dom: d2,
                lhs: l2,
                rhs: r2,
                cod: c2,
            },
        ) => {
            ctx_eq(env, d1, d2)
                && ctx_eq(env, c1, c2)
                && ((l1 == l2 && r1 == r2) || (l1 == r2 && r1 == l2))
        }
        (
            Judgment::TyMorEq {
                lhs: l1, rhs: r1, ..
            },
            Judgment::TyMorEq {
                lhs: l2, rhs: r2, ..
            },
        ) => (l1 == l2 && r1 == r2) || (l1 == r2 && r1 == l2),
        (Judgment::TyEq { lhs: l1, rhs: r1, .. }, Judgment::TyEq { lhs: l2, rhs: r2, .. }) => {
            (l1 == l2 && r1 == r2) || (l1 == r2 && r1 == l2)
        }
        _ => false,
    }
}


/// Split-mode decomposition of a section's extension type against a target
/// substitution: peels substitution layers off the type and picks the split
/// whose applied part is convertible with `sub`.
fn split_sub_ty_against(
    env: &Env,
    e: &Ctx,
    gamma: &Ctx,
    sub: &CtxMor,
) -> Result<Option<(Ty, CtxMor)>> {
    let (b, t) = match e.node() {
        CtxNode::Ext(b, t) => (b.clone(), t.clone()),
        _ => match rewrite::nf_ctx(env, e)?.node() {
            CtxNode::Ext(b, t) => (b.clone(), t.clone()),
            _ => return Ok(None),
        },
    };
    if !ctx_eq(env, &b, gamma) {
        return Ok(None);
    }
    // layers[0] is the outermost substitution (applied last in context
    // order, first in the peel)
    let mut layers: Vec<CtxMor> = Vec::new();
    let mut core = t;
    loop {
        let next = match core.node() {
            TyNode::Sub(inner, w) => {
                layers.push(w.clone());
                inner.clone()
            }
            _ => break,
        };
        core = next;
    }
    // core[w_n]…[w_1] = core[w_n ∘ … ∘ w_1]; split after k peeled layers:
    // applied = w_k ∘ (… ∘ (w_2 ∘ w_1)), base = core[w_n]…[w_{k+1}].
    // Structural matches win; otherwise the deepest convertible split is
    // canonical (so elaborated lifts land at Δ.A, not Δ.A[1]).
    let weakening = {
        // for mediators into weakened families, X may be T[π_Z] with the
        // cone equation holding only up to conversion
        let (_, cod_sub) = mor_boundary(env, sub)?;
        split_ext(env, &cod_sub).map(|(_, z)| CtxMor::proj(z))
    };
    let splits: Vec<(CtxMor, Ty)> = (1..=layers.len())
        .map(|k| {
            let mut applied = layers[0].clone();
            for w in &layers[1..k] {
                applied = CtxMor::comp(w.clone(), applied);
            }
            let mut base = core.clone();
            for w in layers[k..].iter().rev() {
                base = Ty::sub(base, w.clone());
            }
            (applied, base)
        })
        .collect();
    for (applied, base) in &splits {
        if applied == sub {
            return Ok(Some((base.clone(), sub.clone())));
        }
    }
    for (applied, base) in splits.iter().rev() {
        if mor_eq(env, applied, sub) {
            return Ok(Some((base.clone(), sub.clone())));
        }
    }
    for (applied, base) in splits.iter().rev() {
        if let Some(u1) = &weakening {
            if mor_eq(env, applied, &CtxMor::comp(u1.clone(), sub.clone())) {
                return Ok(Some((Ty::sub(base.clone(), u1.clone()), sub.clone())));
            }
        }
    }
    // composition-spine suffix: fused layers may hide the split point inside
    // a composite, e.g. A[s∘(s'∘π)][π'] against the target π∘π'
    let full = {
        let mut composite = layers[0].clone();
        for w in &layers[1..] {
            composite = CtxMor::comp(w.clone(), composite);
        }
        composite
    };
    let full_spine = mor_spine(&rewrite::nf_ctxmor(env, &full)?);
    let sub_spine = mor_spine(&rewrite::nf_ctxmor(env, sub)?);
    if !sub_spine.is_empty() && sub_spine.len() < full_spine.len() {
        let split_at = full_spine.len() - sub_spine.len();
        let matches = full_spine[split_at..]
            .iter()
            .zip(sub_spine.iter())
            .all(|(a, b)| mor_eq(env, a, b));
        if matches {
            let prefix = &full_spine[..split_at];
            let mut pre = prefix[split_at - 1].clone();
            for w in prefix[..split_at - 1].iter().rev() {
                pre = CtxMor::comp(w.clone(), pre);
            }
            return Ok(Some((Ty::sub(core, pre), sub.clone())));
        }
    }
    Ok(None)
}

/// Flattens a composition into its factors, last-applied first.
fn mor_spine(m: &CtxMor) -> Vec<CtxMor> {
    fn go(m: &CtxMor, out: &mut Vec<CtxMor>) {
        match m.node() {
            CtxMorNode::Comp(a, b) => {
                go(a, out);
                go(b, out);
            }
            CtxMorNode::Id(_) => {}
            _ => out.push(m.clone()),
        }
    }
    let mut out = Vec::new();
    go(m, &mut out);
    if out.is_empty() {
        out.push(m.clone());
    }
    out
}


/// Finds B such that `ty` is convertible with B[target]: structural layers
/// are peeled and the applied composite compared up to the ambient mode's
/// convertibility. The k = 0 case covers targets convertible with the
/// identity.
pub fn match_family_sub(env: &Env, ty: &Ty, target: &CtxMor) -> Option<Ty> {
    let mut layers: Vec<CtxMor> = Vec::new();
    let mut core = ty.clone();
    loop {
        let next = match core.node() {
            TyNode::Sub(inner, w) => {
                layers.push(w.clone());
                inner.clone()
            }
            _ => break,
        };
        core = next;
    }
    // k = 0: target ≡ identity
    if let Ok((dom, _)) = mor_boundary(env, target) {
        if mor_eq(env, target, &CtxMor::id(dom)) {
            return Some(ty.clone());
        }
    }
    for k in 1..=layers.len() {
        let mut applied = layers[0].clone();
        for w in &layers[1..k] {
            applied = CtxMor::comp(w.clone(), applied);
        }
        if mor_eq(env, &applied, target) {
            let mut base = core.clone();
            for w in layers[k..].iter().rev() {
                base = Ty::sub(base, w.clone());
            }
            return Some(base);
        }
    }
    None
}
