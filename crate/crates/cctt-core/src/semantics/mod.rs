//! Abstract comprehension-category models, the interpreter, and the
//! soundness checker.

pub mod laws;

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use crate::env::Env;
use crate::synth;
use crate::syntax::judgment::Judgment;
use crate::syntax::term::{Ctx, CtxMor, CtxMorNode, CtxNode, Term, Ty, TyMor, TyMorNode, TyNode};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ModelError {
    #[error("unbound constant {0}")]
    UnboundConstant(String),

    #[error("model does not provide the {0} bundle")]
    MissingBundle(&'static str),

    #[error("model boundary mismatch: {0}")]
    ModelBoundaryMismatch(String),

    #[error("lattice law violated: {law} at {witness}")]
    LatticeLawViolation { law: String, witness: String },

    #[error("fibration law violated: {0}")]
    FibrationLawViolation(String),

    #[error("size budget exceeded: {0}")]
    SizeBudgetExceeded(String),

    #[error("enumeration budget exceeded at bound {0}")]
    EnumerationBudgetExceeded(usize),

    #[error("syntax error during evaluation: {0}")]
    Syntax(String),
}

pub type MResult<T> = std::result::Result<T, ModelError>;

pub trait Element: Clone + PartialEq + Eq + Hash + Debug + Send + Sync {}
impl<T: Clone + PartialEq + Eq + Hash + Debug + Send + Sync> Element for T {}

/// The abstract bundle: base category, cloven fibration via chosen
/// reindexing, comprehension, pullback factorization, and the optional
/// Π/Σ/Id structure.
pub trait ComprehensionModel {
    type Obj: Element;
    type Mor: Element;
    type TyObj: Element;
    type TyMor: Element;

    fn is_split(&self) -> bool;

    // base category
    fn mor_dom(&self, m: &Self::Mor) -> Self::Obj;
    fn mor_cod(&self, m: &Self::Mor) -> Self::Obj;
    fn identity(&self, o: &Self::Obj) -> Self::Mor;
    fn compose(&self, after: &Self::Mor, before: &Self::Mor) -> MResult<Self::Mor>;
    fn terminal(&self) -> Option<Self::Obj> {
        None
    }
    fn bang(&self, _o: &Self::Obj) -> MResult<Self::Mor> {
        Err(ModelError::MissingBundle("terminal"))
    }

    // fibers
    fn ty_ctx(&self, a: &Self::TyObj) -> Self::Obj;
    fn vert_dom(&self, t: &Self::TyMor) -> Self::TyObj;
    fn vert_cod(&self, t: &Self::TyMor) -> Self::TyObj;
    fn vert_identity(&self, a: &Self::TyObj) -> Self::TyMor;
    fn vert_compose(&self, after: &Self::TyMor, before: &Self::TyMor) -> MResult<Self::TyMor>;

    // chosen reindexing
    fn reindex_ty(&self, a: &Self::TyObj, s: &Self::Mor) -> MResult<Self::TyObj>;
    fn reindex_tymor(&self, t: &Self::TyMor, s: &Self::Mor) -> MResult<Self::TyMor>;

    // comprehension
    fn comp_obj(&self, a: &Self::TyObj) -> MResult<Self::Obj>;
    fn comp_proj(&self, a: &Self::TyObj) -> MResult<Self::Mor>;
    fn comp_mor(&self, t: &Self::TyMor) -> MResult<Self::Mor>;
    /// χ₀ of the chosen cartesian lift of s at A: Γ.A[s] → Δ.A.
    fn cart_lift(&self, a: &Self::TyObj, s: &Self::Mor) -> MResult<Self::Mor>;
    /// Pullback factorization: for A over Δ, s : Γ → Δ, and a cone
    /// (w : X → Γ, θ : X → Δ.A) with π_A ∘ θ = s ∘ w, the unique mediating
    /// morphism X → Γ.A[s].
    fn factor(
        &self,
        a: &Self::TyObj,
        s: &Self::Mor,
        w: &Self::Mor,
        theta: &Self::Mor,
    ) -> MResult<Self::Mor>;

    // Π bundle
    fn has_pi(&self) -> bool {
        false
    }
    fn pi_obj(&self, _a: &Self::TyObj, _b: &Self::TyObj) -> MResult<Self::TyObj> {
        Err(ModelError::MissingBundle("pi"))
    }
    fn app_mor(&self, _a: &Self::TyObj, _b: &Self::TyObj) -> MResult<Self::Mor> {
        Err(ModelError::MissingBundle("pi"))
    }
    fn lam(&self, _a: &Self::TyObj, _b: &Self::TyObj, _section: &Self::Mor) -> MResult<Self::Mor> {
        Err(ModelError::MissingBundle("pi"))
    }
    /// Π_{f,g} for f : A' → A and g : B[Γ.f] → B'; `b` is the unrestricted
    /// family B over Γ.A.
    fn pi_map(&self, _f: &Self::TyMor, _g: &Self::TyMor, _b: &Self::TyObj) -> MResult<Self::TyMor> {
        Err(ModelError::MissingBundle("pi"))
    }

    // Σ bundle
    fn has_sigma(&self) -> bool {
        false
    }
    fn sigma_obj(&self, _a: &Self::TyObj, _b: &Self::TyObj) -> MResult<Self::TyObj> {
        Err(ModelError::MissingBundle("sigma"))
    }
    fn pair_mor(&self, _a: &Self::TyObj, _b: &Self::TyObj) -> MResult<Self::Mor> {
        Err(ModelError::MissingBundle("sigma"))
    }
    fn proj_mor(&self, _a: &Self::TyObj, _b: &Self::TyObj) -> MResult<Self::Mor> {
        Err(ModelError::MissingBundle("sigma"))
    }
    /// Σ_{f,g} for f : A → A' and g : B → B'[Γ.f]; `b_prime` is the
    /// unrestricted family B' over Γ.A'.
    fn sigma_map(
        &self,
        _f: &Self::TyMor,
        _g: &Self::TyMor,
        _b_prime: &Self::TyObj,
    ) -> MResult<Self::TyMor> {
        Err(ModelError::MissingBundle("sigma"))
    }

    // Id bundle
    fn has_id(&self) -> bool {
        false
    }
    fn id_obj(&self, _a: &Self::TyObj) -> MResult<Self::TyObj> {
        Err(ModelError::MissingBundle("id"))
    }
    fn refl_mor(&self, _a: &Self::TyObj) -> MResult<Self::Mor> {
        Err(ModelError::MissingBundle("id"))
    }
    /// j for a motive C over Γ.A.A[π_A].Id_A and base point d : Γ.A → ….C.
    fn j_mor(&self, _a: &Self::TyObj, _c: &Self::TyObj, _d: &Self::Mor) -> MResult<Self::Mor> {
        Err(ModelError::MissingBundle("id"))
    }
    fn id_map(&self, _t: &Self::TyMor) -> MResult<Self::TyMor> {
        Err(ModelError::MissingBundle("id"))
    }

    // canonical isomorphisms — identities in any split model
    fn iso_id(&self, a: &Self::TyObj) -> MResult<Self::TyMor> {
        let one = self.identity(&self.ty_ctx(a));
        let l = self.reindex_ty(a, &one)?;
        if l == *a {
            Ok(self.vert_identity(a))
        } else {
            Err(ModelError::ModelBoundaryMismatch(
                "non-split model must override iso_id".into(),
            ))
        }
    }
    fn iso_comp(&self, a: &Self::TyObj, outer: &Self::Mor, inner: &Self::Mor) -> MResult<Self::TyMor> {
        let fused = self.reindex_ty(a, &self.compose(outer, inner)?)?;
        let iterated = self.reindex_ty(&self.reindex_ty(a, outer)?, inner)?;
        if fused == iterated {
            Ok(self.vert_identity(&fused))
        } else {
            Err(ModelError::ModelBoundaryMismatch(
                "non-split model must override iso_comp".into(),
            ))
        }
    }
}

/// Binding of declared constants to model data, plus the per-session memo
/// table.
pub struct Interpretation<M: ComprehensionModel> {
    pub ctxs: HashMap<String, M::Obj>,
    pub tys: HashMap<String, M::TyObj>,
    pub ctxmors: HashMap<String, M::Mor>,
    pub tymors: HashMap<String, M::TyMor>,
}

impl<M: ComprehensionModel> Default for Interpretation<M> {
    fn default() -> Self {
        Interpretation {
            ctxs: HashMap::new(),
            tys: HashMap::new(),
            ctxmors: HashMap::new(),
            tymors: HashMap::new(),
        }
    }
}

impl<M: ComprehensionModel> Interpretation<M> {
    pub fn new() -> Self {
        Self::default()
    }
}

/// One evaluation session; the memo table is confined here.
pub struct Evaluator<'a, M: ComprehensionModel> {
    pub model: &'a M,
    pub interp: &'a Interpretation<M>,
    pub env: &'a Env,
    memo_ctx: HashMap<Ctx, M::Obj>,
    memo_ty: HashMap<Ty, M::TyObj>,
    memo_mor: HashMap<CtxMor, M::Mor>,
    memo_tymor: HashMap<TyMor, M::TyMor>,
}

impl<'a, M: ComprehensionModel> Evaluator<'a, M> {
    pub fn new(model: &'a M, interp: &'a Interpretation<M>, env: &'a Env) -> Self {
        Evaluator {
            model,
            interp,
            env,
            memo_ctx: HashMap::new(),
            memo_ty: HashMap::new(),
            memo_mor: HashMap::new(),
            memo_tymor: HashMap::new(),
        }
    }

    pub fn eval_ctx(&mut self, c: &Ctx) -> MResult<M::Obj> {
        if let Some(v) = self.memo_ctx.get(c) {
            return Ok(v.clone());
        }
        let out = match c.node() {
            CtxNode::Const(n) => self
                .interp
                .ctxs
                .get(n)
                .cloned()
                .ok_or_else(|| ModelError::UnboundConstant(n.clone()))?,
            CtxNode::Empty => self
                .model
                .terminal()
                .ok_or(ModelError::MissingBundle("terminal"))?,
            CtxNode::Ext(b, t) => {
                let tb = self.eval_ty(t)?;
                let base = self.eval_ctx(b)?;
                if self.model.ty_ctx(&tb) != base {
                    return Err(ModelError::ModelBoundaryMismatch(format!(
                        "extension {c}: type lives over a different object"
                    )));
                }
                self.model.comp_obj(&tb)?
            }
        };
        self.memo_ctx.insert(c.clone(), out.clone());
        Ok(out)
    }

    pub fn eval_ty(&mut self, t: &Ty) -> MResult<M::TyObj> {
        if let Some(v) = self.memo_ty.get(t) {
            return Ok(v.clone());
        }
        let out = match t.node() {
            TyNode::Const(n, c) => {
                let v = self
                    .interp
                    .tys
                    .get(n)
                    .cloned()
                    .ok_or_else(|| ModelError::UnboundConstant(n.clone()))?;
                let base = self.eval_ctx(c)?;
                if self.model.ty_ctx(&v) != base {
                    return Err(ModelError::ModelBoundaryMismatch(format!(
                        "type constant {n} bound over the wrong object"
                    )));
                }
                v
            }
            TyNode::Sub(a, s) => {
                let av = self.eval_ty(a)?;
                let sv = self.eval_mor(s)?;
                self.model.reindex_ty(&av, &sv)?
            }
            TyNode::Pi(a, b) => {
                let av = self.eval_ty(a)?;
                let bv = self.eval_ty(b)?;
                self.model.pi_obj(&av, &bv)?
            }
            TyNode::Sigma(a, b) => {
                let av = self.eval_ty(a)?;
                let bv = self.eval_ty(b)?;
                self.model.sigma_obj(&av, &bv)?
            }
            TyNode::Id(a) => {
                let av = self.eval_ty(a)?;
                self.model.id_obj(&av)?
            }
        };
        self.memo_ty.insert(t.clone(), out.clone());
        Ok(out)
    }

    pub fn eval_mor(&mut self, m: &CtxMor) -> MResult<M::Mor> {
        if let Some(v) = self.memo_mor.get(m) {
            return Ok(v.clone());
        }
        let out = self.eval_mor_uncached(m)?;
        self.memo_mor.insert(m.clone(), out.clone());
        Ok(out)
    }

    fn eval_mor_uncached(&mut self, m: &CtxMor) -> MResult<M::Mor> {
        match m.node() {
            CtxMorNode::Const(n, dom, cod) => {
                let v = self
                    .interp
                    .ctxmors
                    .get(n)
                    .cloned()
                    .ok_or_else(|| ModelError::UnboundConstant(n.clone()))?;
                let dv = self.eval_ctx(dom)?;
                let cv = self.eval_ctx(cod)?;
                if self.model.mor_dom(&v) != dv || self.model.mor_cod(&v) != cv {
                    return Err(ModelError::ModelBoundaryMismatch(format!(
                        "morphism constant {n} bound at the wrong boundary"
                    )));
                }
                Ok(v)
            }
            CtxMorNode::Id(c) => {
                let cv = self.eval_ctx(c)?;
                Ok(self.model.identity(&cv))
            }
            CtxMorNode::Comp(a, b) => {
                let av = self.eval_mor(a)?;
                let bv = self.eval_mor(b)?;
                self.model.compose(&av, &bv)
            }
            CtxMorNode::Proj(t) => {
                let tv = self.eval_ty(t)?;
                self.model.comp_proj(&tv)
            }
            CtxMorNode::ExtMor(_, t) => {
                let tv = self.eval_tymor(t)?;
                self.model.comp_mor(&tv)
            }
            CtxMorNode::Pair(s, t) => {
                // ⟦(s,t)⟧ = ⟦s⟧.⟦A⟧ ∘ ⟦t⟧
                let (a, _) = self.pair_base_ty(m)?;
                let av = self.eval_ty(&a)?;
                let sv = self.eval_mor(s)?;
                let tv = self.eval_mor(t)?;
                let lift = self.model.cart_lift(&av, &sv)?;
                self.model.compose(&lift, &tv)
            }
            CtxMorNode::P2(s) => {
                // mediator of the cone (1_Γ, ⟦s⟧) over π_A ∘ s
                let (_, cod) = synth::mor_boundary(self.env, s)
                    .map_err(|e| ModelError::Syntax(e.to_string()))?;
                let (_, a) = synth::split_ext(self.env, &cod).ok_or_else(|| {
                    ModelError::Syntax(format!("p2 of a morphism into {cod}"))
                })?;
                let av = self.eval_ty(&a)?;
                let sv = self.eval_mor(s)?;
                let proj = self.model.comp_proj(&av)?;
                let base = self.model.compose(&proj, &sv)?;
                let w = self.model.identity(&self.model.mor_dom(&sv));
                self.model.factor(&av, &base, &w, &sv)
            }
            CtxMorNode::Bang(c) => {
                let cv = self.eval_ctx(c)?;
                self.model.bang(&cv)
            }
            CtxMorNode::Lam(b) => {
                let (dom, cod) = synth::mor_boundary(self.env, b)
                    .map_err(|e| ModelError::Syntax(e.to_string()))?;
                let (_, a) = synth::split_ext(self.env, &dom)
                    .ok_or_else(|| ModelError::Syntax("lam domain".into()))?;
                let (_, bty) = synth::split_ext(self.env, &cod)
                    .ok_or_else(|| ModelError::Syntax("lam codomain".into()))?;
                let av = self.eval_ty(&a)?;
                let bv = self.eval_ty(&bty)?;
                let sv = self.eval_mor(b)?;
                self.model.lam(&av, &bv, &sv)
            }
            CtxMorNode::App(a, b) => {
                let av = self.eval_ty(a)?;
                let bv = self.eval_ty(b)?;
                self.model.app_mor(&av, &bv)
            }
            CtxMorNode::SigmaPair(a, b) => {
                let av = self.eval_ty(a)?;
                let bv = self.eval_ty(b)?;
                self.model.pair_mor(&av, &bv)
            }
            CtxMorNode::SigmaProj(a, b) => {
                let av = self.eval_ty(a)?;
                let bv = self.eval_ty(b)?;
                self.model.proj_mor(&av, &bv)
            }
            CtxMorNode::Refl(a) => {
                let av = self.eval_ty(a)?;
                self.model.refl_mor(&av)
            }
            CtxMorNode::J(a, c, d) => {
                let av = self.eval_ty(a)?;
                let cv = self.eval_ty(c)?;
                let dv = self.eval_mor(d)?;
                self.model.j_mor(&av, &cv, &dv)
            }
        }
    }

    fn pair_base_ty(&mut self, m: &CtxMor) -> MResult<(Ty, CtxMor)> {
        let j = synth::synthesize_ctxmor(self.env, m)
            .map_err(|e| ModelError::Syntax(e.to_string()))?;
        match j {
            Judgment::CtxMorJ { cod, .. } => match cod.node() {
                CtxNode::Ext(_, a) => {
                    let sub = match m.node() {
                        CtxMorNode::Pair(s, _) => s.clone(),
                        _ => unreachable!(),
                    };
                    Ok((a.clone(), sub))
                }
                _ => Err(ModelError::Syntax("pair codomain".into())),
            },
            _ => unreachable!(),
        }
    }

    pub fn eval_tymor(&mut self, t: &TyMor) -> MResult<M::TyMor> {
        if let Some(v) = self.memo_tymor.get(t) {
            return Ok(v.clone());
        }
        let out = self.eval_tymor_uncached(t)?;
        self.memo_tymor.insert(t.clone(), out.clone());
        Ok(out)
    }

    fn eval_tymor_uncached(&mut self, t: &TyMor) -> MResult<M::TyMor> {
        match t.node() {
            TyMorNode::Const(n, dom, cod) => {
                let v = self
                    .interp
                    .tymors
                    .get(n)
                    .cloned()
                    .ok_or_else(|| ModelError::UnboundConstant(n.clone()))?;
                let dv = self.eval_ty(dom)?;
                let cv = self.eval_ty(cod)?;
                if self.model.vert_dom(&v) != dv || self.model.vert_cod(&v) != cv {
                    return Err(ModelError::ModelBoundaryMismatch(format!(
                        "type-morphism constant {n} bound at the wrong boundary"
                    )));
                }
                Ok(v)
            }
            TyMorNode::Id(a) => {
                let av = self.eval_ty(a)?;
                Ok(self.model.vert_identity(&av))
            }
            TyMorNode::Comp(x, y) => {
                let xv = self.eval_tymor(x)?;
                let yv = self.eval_tymor(y)?;
                self.model.vert_compose(&xv, &yv)
            }
            TyMorNode::Sub(x, s) => {
                let xv = self.eval_tymor(x)?;
                let sv = self.eval_mor(s)?;
                self.model.reindex_tymor(&xv, &sv)
            }
            TyMorNode::IsoId(a, _) => {
                let av = self.eval_ty(a)?;
                self.model.iso_id(&av)
            }
            TyMorNode::IsoComp(a, o, i, _) => {
                let av = self.eval_ty(a)?;
                let ov = self.eval_mor(o)?;
                let iv = self.eval_mor(i)?;
                self.model.iso_comp(&av, &ov, &iv)
            }
            TyMorNode::IsoSub(a, l, r, _, _) => {
                // interpreted as the identity of A[⟦l⟧]
                let lv = self.eval_mor(l)?;
                let rv = self.eval_mor(r)?;
                if lv != rv {
                    return Err(ModelError::ModelBoundaryMismatch(
                        "i^sub over morphisms with different denotations".into(),
                    ));
                }
                let av = self.eval_ty(a)?;
                let re = self.model.reindex_ty(&av, &lv)?;
                Ok(self.model.vert_identity(&re))
            }
            TyMorNode::IsoPi(a, b, s, _) => {
                let av = self.eval_ty(a)?;
                let bv = self.eval_ty(b)?;
                let sv = self.eval_mor(s)?;
                let pi = self.model.pi_obj(&av, &bv)?;
                let re = self.model.reindex_ty(&pi, &sv)?;
                Ok(self.model.vert_identity(&re))
            }
            TyMorNode::IsoSigma(a, b, s, _) => {
                let av = self.eval_ty(a)?;
                let bv = self.eval_ty(b)?;
                let sv = self.eval_mor(s)?;
                let sig = self.model.sigma_obj(&av, &bv)?;
                let re = self.model.reindex_ty(&sig, &sv)?;
                Ok(self.model.vert_identity(&re))
            }
            TyMorNode::IsoIdTy(a, s, _) => {
                let av = self.eval_ty(a)?;
                let sv = self.eval_mor(s)?;
                let re = self.model.reindex_ty(&av, &sv)?;
                let idv = self.model.id_obj(&re)?;
                Ok(self.model.vert_identity(&idv))
            }
            TyMorNode::PiMap(f, g) => {
                let fv = self.eval_tymor(f)?;
                let gv = self.eval_tymor(g)?;
                // the unrestricted B family, read off g's syntactic domain
                let (_, g_dom, _) = synth::tymor_boundary(self.env, g)
                    .map_err(|e| ModelError::Syntax(e.to_string()))?;
                let b = match g_dom.node() {
                    TyNode::Sub(b, _) => self.eval_ty(b)?,
                    _ => self.eval_ty(&g_dom)?,
                };
                self.model.pi_map(&fv, &gv, &b)
            }
            TyMorNode::SigmaMap(f, g) => {
                let fv = self.eval_tymor(f)?;
                let gv = self.eval_tymor(g)?;
                let (_, _, g_cod) = synth::tymor_boundary(self.env, g)
                    .map_err(|e| ModelError::Syntax(e.to_string()))?;
                let b_prime = match g_cod.node() {
                    TyNode::Sub(b, _) => self.eval_ty(b)?,
                    _ => self.eval_ty(&g_cod)?,
                };
                self.model.sigma_map(&fv, &gv, &b_prime)
            }
            TyMorNode::IdMap(x) => {
                let xv = self.eval_tymor(x)?;
                self.model.id_map(&xv)
            }
        }
    }

    pub fn eval_term(&mut self, t: &Term) -> MResult<String> {
        Ok(match t {
            Term::Ctx(c) => format!("{:?}", self.eval_ctx(c)?),
            Term::Ty(a) => format!("{:?}", self.eval_ty(a)?),
            Term::CtxMor(m) => format!("{:?}", self.eval_mor(m)?),
            Term::TyMor(m) => format!("{:?}", self.eval_tymor(m)?),
        })
    }
}

/// Verdict of a semantic equality check.
#[derive(Clone, Debug, PartialEq)]
pub enum SoundnessVerdict {
    Equal,
    Unequal { lhs: String, rhs: String },
}

/// Evaluates both sides of an equality goal and compares the results with
/// the model's extensional equality.
pub fn soundness_check<M: ComprehensionModel>(
    goal: &Judgment,
    interp: &Interpretation<M>,
    model: &M,
    env: &Env,
) -> MResult<SoundnessVerdict> {
    let mut ev = Evaluator::new(model, interp, env);
    match goal {
        Judgment::CtxMorEq { lhs, rhs, .. } => {
            let l = ev.eval_mor(lhs)?;
            let r = ev.eval_mor(rhs)?;
            Ok(if l == r {
                SoundnessVerdict::Equal
            } else {
                SoundnessVerdict::Unequal {
                    lhs: format!("{l:?}"),
                    rhs: format!("{r:?}"),
                }
            })
        }
        Judgment::TyMorEq { lhs, rhs, .. } => {
            let l = ev.eval_tymor(lhs)?;
            let r = ev.eval_tymor(rhs)?;
            Ok(if l == r {
                SoundnessVerdict::Equal
            } else {
                SoundnessVerdict::Unequal {
                    lhs: format!("{l:?}"),
                    rhs: format!("{r:?}"),
                }
            })
        }
        Judgment::TyEq { lhs, rhs, .. } => {
            if !model.is_split() {
                return Err(ModelError::ModelBoundaryMismatch(
                    "type-equality goals need a split model".into(),
                ));
            }
            let l = ev.eval_ty(lhs)?;
            let r = ev.eval_ty(rhs)?;
            Ok(if l == r {
                SoundnessVerdict::Equal
            } else {
                SoundnessVerdict::Unequal {
                    lhs: format!("{l:?}"),
                    rhs: format!("{r:?}"),
                }
            })
        }
        _ => Err(ModelError::Syntax(
            "soundness_check expects an equality goal".into(),
        )),
    }
}
