//! Combinator terms for the four syntactic classes.
//!
//! The calculus is variable-free: context morphisms are built from pairing,
//! projections, and sections, and substitution is an explicit node. Every
//! constant carries its boundary inline, so terms synthesize without a
//! separate signature lookup.

use std::fmt;
use std::sync::Arc;

use crate::kernel::derivation::EqDerivation;

/// Direction of a named coercion isomorphism.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Dir {
    Fwd,
    Bwd,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Fwd => Dir::Bwd,
            Dir::Bwd => Dir::Fwd,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dir::Fwd => write!(f, "fwd"),
            Dir::Bwd => write!(f, "bwd"),
        }
    }
}

macro_rules! term_class {
    ($wrapper:ident, $node:ident) => {
        #[derive(Clone, Eq, Debug)]
        pub struct $wrapper(pub(crate) Arc<$node>);

        impl $wrapper {
            pub fn node(&self) -> &$node {
                &self.0
            }

            pub fn ptr_id(&self) -> usize {
                Arc::as_ptr(&self.0) as usize
            }
        }

        impl From<$node> for $wrapper {
            fn from(n: $node) -> Self {
                $wrapper(Arc::new(n))
            }
        }

        impl PartialEq for $wrapper {
            fn eq(&self, other: &Self) -> bool {
                Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
            }
        }

        impl std::hash::Hash for $wrapper {
            fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
                self.0.hash(state)
            }
        }
    };
}

term_class!(Ctx, CtxNode);
term_class!(Ty, TyNode);
term_class!(CtxMor, CtxMorNode);
term_class!(TyMor, TyMorNode);

#[derive(PartialEq, Eq, Hash, Debug)]
pub enum CtxNode {
    Const(String),
    /// The empty context; only well-formed when the `empty` feature is on.
    Empty,
    /// Γ.A — requires the type to synthesize in `base`.
    Ext(Ctx, Ty),
}

#[derive(PartialEq, Eq, Hash, Debug)]
pub enum TyNode {
    Const(String, Ctx),
    /// A[s]
    Sub(Ty, CtxMor),
    /// Π(A, B) with B over Γ.A
    Pi(Ty, Ty),
    /// Σ(A, B) with B over Γ.A
    Sigma(Ty, Ty),
    /// Id_A, a type over Γ.A.A[π_A]
    Id(Ty),
}

#[derive(PartialEq, Eq, Hash, Debug)]
pub enum CtxMorNode {
    Const(String, Ctx, Ctx),
    Id(Ctx),
    /// after ∘ before
    Comp(CtxMor, CtxMor),
    /// π_A : Γ.A → Γ
    Proj(Ty),
    /// Γ.t : Γ.A → Γ.B for a vertical t : A → B
    ExtMor(Ctx, TyMor),
    /// (s, t) : Γ → Δ.A, where t is an MLTT term of A[s]
    Pair(CtxMor, CtxMor),
    /// p₂(s) : Γ → Γ.A[π_A ∘ s] for s : Γ → Δ.A
    P2(CtxMor),
    /// ⟨⟩_Γ : Γ → ⋄
    Bang(Ctx),
    /// λb : Γ → Γ.Π(A,B) for a section b of π_B
    Lam(CtxMor),
    /// app_{A,B} : Γ.A.Π(A,B)[π_A] → Γ.A.B
    App(Ty, Ty),
    /// pair_{A,B} : Γ.A.B → Γ.Σ(A,B)
    SigmaPair(Ty, Ty),
    /// proj_{A,B} : Γ.Σ(A,B) → Γ.A.B
    SigmaProj(Ty, Ty),
    /// r_A : Γ.A → Γ.A.A[π_A].Id_A
    Refl(Ty),
    /// j_{A,C,d} : Γ.A.A[π_A].Id_A → Γ.A.A[π_A].Id_A.C
    J(Ty, Ty, CtxMor),
}

#[derive(PartialEq, Eq, Hash, Debug)]
pub enum TyMorNode {
    Const(String, Ty, Ty),
    Id(Ty),
    /// after ∘ before (vertical composition)
    Comp(TyMor, TyMor),
    /// t[s]
    Sub(TyMor, CtxMor),
    /// i^id_A : A[1_Γ] ≅ A
    IsoId(Ty, Dir),
    /// i^comp_{A,s',s} : A[s' ∘ s] ≅ A[s'][s]
    IsoComp(Ty, CtxMor, CtxMor, Dir),
    /// i^sub_{A,s,s'} : A[s] ≅ A[s'], witnessed by a derivation of s ≡ s'
    IsoSub(Ty, CtxMor, CtxMor, Arc<EqDerivation>, Dir),
    /// i_{Π(A,B),s} : Π(A[s], B[s.A]) ≅ Π(A,B)[s]
    IsoPi(Ty, Ty, CtxMor, Dir),
    /// i_{Σ(A,B),s} : Σ(A[s], B[s.A]) ≅ Σ(A,B)[s]
    IsoSigma(Ty, Ty, CtxMor, Dir),
    /// i_{Id_A,s} : Id_{A[s]} ≅ Id_A[(s.A).A[π_A] ∘ …]
    IsoIdTy(Ty, CtxMor, Dir),
    /// Π_{f,g} : Π(A,B) → Π(A',B'), f contravariant, g covariant
    PiMap(TyMor, TyMor),
    /// Σ_{f,g} : Σ(A,B) → Σ(A',B'), both covariant
    SigmaMap(TyMor, TyMor),
    /// Id_t : Id_A → Id_B[Γ.t.t]
    IdMap(TyMor),
}

impl Ctx {
    pub fn const_(name: impl Into<String>) -> Ctx {
        CtxNode::Const(name.into()).into()
    }
    pub fn empty() -> Ctx {
        CtxNode::Empty.into()
    }
    pub fn ext(base: Ctx, ty: Ty) -> Ctx {
        CtxNode::Ext(base, ty).into()
    }
    /// Unfolds Γ.A into (Γ, A).
    pub fn as_ext(&self) -> Option<(&Ctx, &Ty)> {
        match self.node() {
            CtxNode::Ext(b, t) => Some((b, t)),
            _ => None,
        }
    }
}

impl Ty {
    pub fn const_(name: impl Into<String>, ctx: Ctx) -> Ty {
        TyNode::Const(name.into(), ctx).into()
    }
    pub fn sub(ty: Ty, s: CtxMor) -> Ty {
        TyNode::Sub(ty, s).into()
    }
    pub fn pi(a: Ty, b: Ty) -> Ty {
        TyNode::Pi(a, b).into()
    }
    pub fn sigma(a: Ty, b: Ty) -> Ty {
        TyNode::Sigma(a, b).into()
    }
    pub fn id(a: Ty) -> Ty {
        TyNode::Id(a).into()
    }
}

impl CtxMor {
    pub fn const_(name: impl Into<String>, dom: Ctx, cod: Ctx) -> CtxMor {
        CtxMorNode::Const(name.into(), dom, cod).into()
    }
    pub fn id(ctx: Ctx) -> CtxMor {
        CtxMorNode::Id(ctx).into()
    }
    pub fn comp(after: CtxMor, before: CtxMor) -> CtxMor {
        CtxMorNode::Comp(after, before).into()
    }
    /// Composition of a whole chain, first-to-apply last in the slice.
    pub fn comp_chain(factors: &[CtxMor]) -> CtxMor {
        let mut it = factors.iter().rev();
        let mut acc = it.next().expect("comp_chain of empty slice").clone();
        for f in it {
            acc = CtxMor::comp(f.clone(), acc);
        }
        acc
    }
    pub fn proj(ty: Ty) -> CtxMor {
        CtxMorNode::Proj(ty).into()
    }
    pub fn ext_mor(ctx: Ctx, t: TyMor) -> CtxMor {
        CtxMorNode::ExtMor(ctx, t).into()
    }
    pub fn pair(sub: CtxMor, section: CtxMor) -> CtxMor {
        CtxMorNode::Pair(sub, section).into()
    }
    pub fn p2(s: CtxMor) -> CtxMor {
        CtxMorNode::P2(s).into()
    }
    pub fn bang(ctx: Ctx) -> CtxMor {
        CtxMorNode::Bang(ctx).into()
    }
    pub fn lam(section: CtxMor) -> CtxMor {
        CtxMorNode::Lam(section).into()
    }
    pub fn app(a: Ty, b: Ty) -> CtxMor {
        CtxMorNode::App(a, b).into()
    }
    pub fn sigma_pair(a: Ty, b: Ty) -> CtxMor {
        CtxMorNode::SigmaPair(a, b).into()
    }
    pub fn sigma_proj(a: Ty, b: Ty) -> CtxMor {
        CtxMorNode::SigmaProj(a, b).into()
    }
    pub fn refl(a: Ty) -> CtxMor {
        CtxMorNode::Refl(a).into()
    }
    pub fn j(a: Ty, c: Ty, d: CtxMor) -> CtxMor {
        CtxMorNode::J(a, c, d).into()
    }
}

impl TyMor {
    pub fn const_(name: impl Into<String>, dom: Ty, cod: Ty) -> TyMor {
        TyMorNode::Const(name.into(), dom, cod).into()
    }
    pub fn id(ty: Ty) -> TyMor {
        TyMorNode::Id(ty).into()
    }
    pub fn comp(after: TyMor, before: TyMor) -> TyMor {
        TyMorNode::Comp(after, before).into()
    }
    pub fn comp_chain(factors: &[TyMor]) -> TyMor {
        let mut it = factors.iter().rev();
        let mut acc = it.next().expect("comp_chain of empty slice").clone();
        for f in it {
            acc = TyMor::comp(f.clone(), acc);
        }
        acc
    }
    pub fn sub(t: TyMor, s: CtxMor) -> TyMor {
        TyMorNode::Sub(t, s).into()
    }
    pub fn iso_id(a: Ty, dir: Dir) -> TyMor {
        TyMorNode::IsoId(a, dir).into()
    }
    pub fn iso_comp(a: Ty, outer: CtxMor, inner: CtxMor, dir: Dir) -> TyMor {
        TyMorNode::IsoComp(a, outer, inner, dir).into()
    }
    pub fn iso_sub(a: Ty, lhs: CtxMor, rhs: CtxMor, ev: Arc<EqDerivation>, dir: Dir) -> TyMor {
        TyMorNode::IsoSub(a, lhs, rhs, ev, dir).into()
    }
    pub fn iso_pi(a: Ty, b: Ty, s: CtxMor, dir: Dir) -> TyMor {
        TyMorNode::IsoPi(a, b, s, dir).into()
    }
    pub fn iso_sigma(a: Ty, b: Ty, s: CtxMor, dir: Dir) -> TyMor {
        TyMorNode::IsoSigma(a, b, s, dir).into()
    }
    pub fn iso_id_ty(a: Ty, s: CtxMor, dir: Dir) -> TyMor {
        TyMorNode::IsoIdTy(a, s, dir).into()
    }
    pub fn pi_map(f: TyMor, g: TyMor) -> TyMor {
        TyMorNode::PiMap(f, g).into()
    }
    pub fn sigma_map(f: TyMor, g: TyMor) -> TyMor {
        TyMorNode::SigmaMap(f, g).into()
    }
    pub fn id_map(t: TyMor) -> TyMor {
        TyMorNode::IdMap(t).into()
    }
}

/// A term of any of the four syntactic classes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Ctx(Ctx),
    Ty(Ty),
    CtxMor(CtxMor),
    TyMor(TyMor),
}

impl Term {
    pub fn class(&self) -> &'static str {
        match self {
            Term::Ctx(_) => "ctx",
            Term::Ty(_) => "ty",
            Term::CtxMor(_) => "ctxmor",
            Term::TyMor(_) => "tymor",
        }
    }
}

impl From<Ctx> for Term {
    fn from(c: Ctx) -> Term {
        Term::Ctx(c)
    }
}
impl From<Ty> for Term {
    fn from(t: Ty) -> Term {
        Term::Ty(t)
    }
}
impl From<CtxMor> for Term {
    fn from(m: CtxMor) -> Term {
        Term::CtxMor(m)
    }
}
impl From<TyMor> for Term {
    fn from(t: TyMor) -> Term {
        Term::TyMor(t)
    }
}

/// Structural equality across classes. Used for the kernel's context-identity
/// side conditions; never up to ≡.
pub fn ast_equal(x: &Term, y: &Term) -> bool {
    x == y
}

impl fmt::Display for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            CtxNode::Const(n) => write!(f, "{n}"),
            CtxNode::Empty => write!(f, "<>"),
            CtxNode::Ext(b, t) => write!(f, "{b}.{t}"),
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            TyNode::Const(n, _) => write!(f, "{n}"),
            TyNode::Sub(a, s) => write!(f, "{a}[{s}]"),
            TyNode::Pi(a, b) => write!(f, "Pi({a},{b})"),
            TyNode::Sigma(a, b) => write!(f, "Sigma({a},{b})"),
            TyNode::Id(a) => write!(f, "Id({a})"),
        }
    }
}

impl fmt::Display for CtxMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            CtxMorNode::Const(n, _, _) => write!(f, "{n}"),
            CtxMorNode::Id(c) => write!(f, "1_{{{c}}}"),
            CtxMorNode::Comp(a, b) => write!(f, "({a} o {b})"),
            CtxMorNode::Proj(t) => write!(f, "proj({t})"),
            CtxMorNode::ExtMor(c, t) => write!(f, "{c}.{t}"),
            CtxMorNode::Pair(s, t) => write!(f, "({s},{t})"),
            CtxMorNode::P2(s) => write!(f, "p2({s})"),
            CtxMorNode::Bang(c) => write!(f, "!_{{{c}}}"),
            CtxMorNode::Lam(b) => write!(f, "lam({b})"),
            CtxMorNode::App(a, b) => write!(f, "app({a},{b})"),
            CtxMorNode::SigmaPair(a, b) => write!(f, "pairing({a},{b})"),
            CtxMorNode::SigmaProj(a, b) => write!(f, "unpairing({a},{b})"),
            CtxMorNode::Refl(a) => write!(f, "refl({a})"),
            CtxMorNode::J(a, c, d) => write!(f, "j({a},{c},{d})"),
        }
    }
}

impl fmt::Display for TyMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            TyMorNode::Const(n, _, _) => write!(f, "{n}"),
            TyMorNode::Id(t) => write!(f, "1_{{{t}}}"),
            TyMorNode::Comp(a, b) => write!(f, "({a} o {b})"),
            TyMorNode::Sub(t, s) => write!(f, "{t}[{s}]"),
            TyMorNode::IsoId(a, d) => write!(f, "i-id({a},{d})"),
            TyMorNode::IsoComp(a, o, i, d) => write!(f, "i-comp({a},{o},{i},{d})"),
            TyMorNode::IsoSub(a, l, r, _, d) => write!(f, "i-sub({a},{l},{r},{d})"),
            TyMorNode::IsoPi(a, b, s, d) => write!(f, "i-pi({a},{b},{s},{d})"),
            TyMorNode::IsoSigma(a, b, s, d) => write!(f, "i-sigma({a},{b},{s},{d})"),
            TyMorNode::IsoIdTy(a, s, d) => write!(f, "i-id-ty({a},{s},{d})"),
            TyMorNode::PiMap(x, y) => write!(f, "pi-map({x},{y})"),
            TyMorNode::SigmaMap(x, y) => write!(f, "sigma-map({x},{y})"),
            TyMorNode::IdMap(t) => write!(f, "id-map({t})"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Ctx(c) => c.fmt(f),
            Term::Ty(t) => t.fmt(f),
            Term::CtxMor(m) => m.fmt(f),
            Term::TyMor(t) => t.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structural_equality_is_syntactic() {
        let g = Ctx::const_("G");
        let a = Ty::const_("A", g.clone());
        let pa = CtxMor::proj(a.clone());
        assert_eq!(
            Term::from(pa.clone()),
            Term::from(CtxMor::proj(a.clone()))
        );
        // A[1_Γ] and A are only ≡-related, never identical.
        let a1 = Ty::sub(a.clone(), CtxMor::id(g.clone()));
        assert_ne!(Term::from(a1), Term::from(a.clone()));
        // associativity is an ≡ rule, not identity
        let f = CtxMor::const_("f", g.clone(), g.clone());
        let l = CtxMor::comp(f.clone(), CtxMor::comp(f.clone(), f.clone()));
        let r = CtxMor::comp(CtxMor::comp(f.clone(), f.clone()), f.clone());
        assert!(!ast_equal(&l.clone().into(), &r.clone().into()));
        let _ = pa;
    }
}
